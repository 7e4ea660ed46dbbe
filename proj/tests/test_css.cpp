#include <doctest.h>

#include <filesystem>
#include <random>

#include "folink/css_code.hpp"
#include "folink/erasure.hpp"
#include "folink/foliation.hpp"

using namespace folink;

namespace {

void check_css_invariants(const CssCode& code) {
    REQUIRE(code.h_x.cols() == code.n);
    REQUIRE(code.h_z.cols() == code.n);
    CHECK((code.h_x * code.h_z.transposed()).is_zero());
    CHECK(code.k == code.n - rank(code.h_x) - rank(code.h_z));
    REQUIRE(code.l_x.rows() == code.k);
    REQUIRE(code.l_z.rows() == code.k);
    CHECK((code.l_x * code.h_z.transposed()).is_zero());
    CHECK((code.l_z * code.h_x.transposed()).is_zero());
    CHECK(code.l_x * code.l_z.transposed() == BitMatrix::identity(code.k));
}

Gf2Poly random_poly(std::mt19937_64& rng, std::size_t max_degree) {
    std::vector<std::size_t> exps;
    for (std::size_t e = 0; e <= max_degree; ++e) {
        if ((rng() & 1) != 0) {
            exps.push_back(e);
        }
    }
    return Gf2Poly::from_exponents(exps);
}

// True iff every erasure of at most `max_erased` data qubits on a single hop
// is fully recoverable by the exact decoder.
bool erasures_up_to_correctable(const CssCode& code, std::size_t max_erased) {
    const FoliatedChain chain = foliate(code, 1);
    const std::size_t n = code.n;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > max_erased) {
            continue;
        }
        ErasurePattern pat{SubgraphLabel::primal, BitVector(chain.primal.qubits.size())};
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1U) {
                pat.erased.set(i, true);  // site-1 data = leading columns
            }
        }
        if (!decode_exact(chain.primal, pat, false).success) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("Steane code parameters") {
    const CssCode code = steane();
    CHECK(code.n == 7);
    CHECK(code.k == 1);
    CHECK(code.claimed_distance == 3);
    CHECK(code.h_x == code.h_z);
    CHECK(rank(code.h_x) == 3);
    check_css_invariants(code);
}

TEST_CASE("toric code parameters") {
    for (std::size_t d = 2; d <= 4; ++d) {
        CAPTURE(d);
        const CssCode code = toric(d);
        CHECK(code.n == 2 * d * d);
        CHECK(code.k == 2);
        CHECK(code.h_x.rows() == d * d);  // redundant row retained
        CHECK(code.h_z.rows() == d * d);
        CHECK(rank(code.h_x) == d * d - 1);
        check_css_invariants(code);
        // Every star and plaquette touches exactly four edges.
        for (std::size_t r = 0; r < d * d; ++r) {
            CHECK(code.h_x.row_weight(r) == 4);
            CHECK(code.h_z.row_weight(r) == 4);
        }
    }
    CHECK_THROWS(toric(1));
}

TEST_CASE("gb48 parameters") {
    const CssCode code = gb48();
    CHECK(code.n == 48);
    CHECK(code.k == 6);
    CHECK(code.claimed_distance == 8);
    CHECK(code.h_x.rows() == 24);
    CHECK(rank(code.h_x) == 21);
    CHECK(rank(code.h_z) == 21);
    check_css_invariants(code);
}

TEST_CASE("generalized_bicycle k matches the gcd degree") {
    std::mt19937_64 rng(101);
    int built = 0;
    for (int iter = 0; iter < 400 && built < 80; ++iter) {
        const std::size_t ell = 2 + rng() % 11;
        const Gf2Poly a = random_poly(rng, ell - 1);
        const Gf2Poly b = random_poly(rng, ell - 1);
        if (a.is_zero() || b.is_zero()) {
            continue;
        }
        const Gf2Poly g = poly_gcd(a, poly_gcd(b, Gf2Poly::x_pow_plus_one(ell)));
        if (*g.degree() == 0) {
            CHECK_THROWS(generalized_bicycle(ell, a, b));
            continue;
        }
        const CssCode code = generalized_bicycle(ell, a, b);
        CHECK(code.n == 2 * ell);
        CHECK(code.k == 2 * *g.degree());
        check_css_invariants(code);
        ++built;
    }
    CHECK(built >= 40);
}

TEST_CASE("validate_css rejects non-orthogonal checks") {
    const BitMatrix h = BitMatrix::from_rows({{1, 1, 0}});
    const BitMatrix bad = BitMatrix::from_rows({{1, 0, 0}});
    CHECK_THROWS_WITH_AS(validate_css("bad", h, bad), doctest::Contains("row"),
                         std::runtime_error);
}

TEST_CASE("validate_css rejects k = 0") {
    const BitMatrix h_x = BitMatrix::from_rows({{1, 1}});
    const BitMatrix h_z = BitMatrix::from_rows({{1, 1}});
    CHECK_THROWS(validate_css("trivial", h_x, h_z));
}

TEST_CASE("row_reduced keeps parameters and drops redundancy") {
    const CssCode full = gb48();
    const CssCode red = row_reduced(full);
    CHECK(red.h_x.rows() == 21);
    CHECK(red.h_z.rows() == 21);
    CHECK(red.n == full.n);
    CHECK(red.k == full.k);
    check_css_invariants(red);
}

TEST_CASE("single-hop erasures below the distance are always correctable") {
    CHECK(erasures_up_to_correctable(steane(), 2));
    CHECK(erasures_up_to_correctable(toric(2), 1));
}

TEST_CASE("code JSON round trip") {
    for (const CssCode& code : {steane(), toric(3), gb48()}) {
        const CssCode back = code_from_json(code_to_json(code));
        CHECK(back.name == code.name);
        CHECK(back.n == code.n);
        CHECK(back.k == code.k);
        CHECK(back.h_x == code.h_x);
        CHECK(back.h_z == code.h_z);
        CHECK(back.claimed_distance == code.claimed_distance);
        check_css_invariants(back);
    }
}

TEST_CASE("code file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "folink_test_code.json";
    const CssCode code = gb48();
    save_code(code, path);
    const CssCode back = load_code(path);
    CHECK(back.h_x == code.h_x);
    CHECK(back.h_z == code.h_z);
    std::filesystem::remove(path);
}
