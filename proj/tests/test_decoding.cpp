#include <doctest.h>

#include <bit>
#include <random>

#include "folink/css_code.hpp"
#include "folink/erasure.hpp"
#include "folink/foliation.hpp"

using namespace folink;

namespace {

BitVector random_mask(std::mt19937_64& rng, std::size_t size, double p) {
    BitVector mask(size);
    for (std::size_t i = 0; i < size; ++i) {
        mask.set(i, std::uniform_real_distribution<double>{}(rng) < p);
    }
    return mask;
}

bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("correctable pattern census for the [[7,1,3]] code") {
    const std::vector<std::size_t> census = correctable_pattern_census_all(steane());
    REQUIRE(census.size() == 8);
    const std::vector<std::size_t> expected{0, 0, 0, 7, 28, 21, 7, 1};
    CHECK(census == expected);
    CHECK(correctable_pattern_census(steane(), 3) == 7);
    CHECK(correctable_pattern_census(steane(), 5) == 21);
}

TEST_CASE("correctable pattern census for the distance-2 toric code") {
    const std::vector<std::size_t> census = correctable_pattern_census_all(toric(2));
    const std::vector<std::size_t> expected{0, 0, 0, 0, 4, 32, 24, 8, 1};
    CHECK(census == expected);
}

TEST_CASE("greedy and exact decoders agree on every single-hop [[7,1,3]] pattern") {
    const FoliatedChain chain = foliate(steane(), 1);
    const std::size_t cols = chain.primal.qubits.size();
    for (unsigned mask = 0; mask < 128; ++mask) {
        ErasurePattern pat{SubgraphLabel::primal, BitVector(cols)};
        for (unsigned b = 0; b < 7; ++b) {
            if ((mask >> b) & 1U) {
                pat.erased.set(b, true);
            }
        }
        const DecodeOutcome greedy = decode_greedy(chain.primal, pat);
        const DecodeOutcome exact = decode_exact(chain.primal, pat);
        CAPTURE(mask);
        CHECK(greedy.success == exact.success);
        CHECK(greedy.recoverable == exact.recoverable);
    }
}

TEST_CASE("greedy decoder is sound against the exact oracle") {
    std::mt19937_64 rng(2024);
    for (const CssCode& code : {steane(), toric(3), gb48()}) {
        for (std::size_t hops : {1U, 2U, 4U}) {
            const FoliatedChain chain = foliate(code, hops);
            for (const SyndromeSubgraph* sub : {&chain.primal, &chain.dual}) {
                for (int iter = 0; iter < 300; ++iter) {
                    const double p = std::uniform_real_distribution<double>{0.0, 0.6}(rng);
                    ErasurePattern pat{sub->label, random_mask(rng, sub->qubits.size(), p)};
                    const DecodeOutcome greedy = decode_greedy(*sub, pat);
                    const DecodeOutcome exact = decode_exact(*sub, pat, false);
                    CHECK(is_subset(greedy.recoverable, exact.recoverable));
                }
            }
        }
    }
}

TEST_CASE("exact decoder recoverability is monotone in the erasure") {
    std::mt19937_64 rng(77);
    const FoliatedChain chain = foliate(toric(3), 2);
    const SyndromeSubgraph& sub = chain.primal;
    for (int iter = 0; iter < 400; ++iter) {
        ErasurePattern small{sub.label, random_mask(rng, sub.qubits.size(), 0.2)};
        ErasurePattern big = small;
        for (std::size_t i = 0; i < big.erased.size(); ++i) {
            if (std::uniform_real_distribution<double>{}(rng) < 0.15) {
                big.erased.set(i, true);
            }
        }
        const DecodeOutcome r_small = decode_exact(sub, small, false);
        const DecodeOutcome r_big = decode_exact(sub, big, false);
        CHECK(is_subset(r_big.recoverable, r_small.recoverable));
    }
}

TEST_CASE("exact decoder witnesses clear the erased support") {
    std::mt19937_64 rng(55);
    const FoliatedChain chain = foliate(gb48(), 2);
    for (const SyndromeSubgraph* sub : {&chain.primal, &chain.dual}) {
        for (int iter = 0; iter < 100; ++iter) {
            ErasurePattern pat{sub->label, random_mask(rng, sub->qubits.size(), 0.3)};
            const DecodeOutcome out = decode_exact(*sub, pat, true);
            REQUIRE(out.witnesses.size() == sub->logicals.rows());
            for (std::size_t li = 0; li < out.witnesses.size(); ++li) {
                if (!out.witnesses[li].has_value()) {
                    continue;
                }
                BitVector moved = sub->logicals.row(li);
                moved.xor_with(apply_witness(*sub, *out.witnesses[li]));
                for (const auto bit : moved.ones()) {
                    CHECK_FALSE(pat.erased.get(bit));
                }
            }
        }
    }
}

TEST_CASE("count_recoverable_exact matches decode_exact") {
    std::mt19937_64 rng(99);
    DecodeScratch scratch;
    for (const CssCode& code : {steane(), toric(2), gb48()}) {
        const FoliatedChain chain = foliate(code, 3);
        for (const SyndromeSubgraph* sub : {&chain.primal, &chain.dual}) {
            for (int iter = 0; iter < 200; ++iter) {
                const double p = std::uniform_real_distribution<double>{0.0, 0.5}(rng);
                const BitVector mask = random_mask(rng, sub->qubits.size(), p);
                std::vector<bool> per_logical;
                const std::size_t fast =
                    count_recoverable_exact(*sub, mask, scratch, &per_logical);
                const DecodeOutcome slow =
                    decode_exact(*sub, ErasurePattern{sub->label, mask}, false);
                CHECK(fast == slow.recoverable.size());
                for (std::size_t li = 0; li < per_logical.size(); ++li) {
                    const bool in_slow = std::find(slow.recoverable.begin(),
                                                   slow.recoverable.end(),
                                                   li) != slow.recoverable.end();
                    CHECK(per_logical[li] == in_slow);
                }
            }
        }
    }
}

TEST_CASE("erasing a full logical representative at both end layers is fatal") {
    // Exhaustive over the [[7,1,3]] logical coset: the single-hop primal
    // subgraph cannot recover its logical once any coset representative is
    // erased at both data layers.
    const CssCode code = steane();
    const FoliatedChain chain = foliate(code, 1);
    const std::size_t cols = chain.primal.qubits.size();
    // Columns 0..6 are site-1 data; find the site-3 data columns.
    std::vector<std::size_t> site3;
    for (std::size_t i = 0; i < cols; ++i) {
        const QubitId& q = chain.primal.qubits[i];
        if (q.site == 3 && q.kind == QubitKind::data) {
            site3.push_back(i);
        }
    }
    REQUIRE(site3.size() == 7);
    for (unsigned combo = 0; combo < 8; ++combo) {
        BitVector rep = code.l_x.row(0);
        for (unsigned b = 0; b < 3; ++b) {
            if ((combo >> b) & 1U) {
                rep.xor_with(code.h_x.row(b));
            }
        }
        ErasurePattern pat{SubgraphLabel::primal, BitVector(cols)};
        for (const auto bit : rep.ones()) {
            pat.erased.set(bit, true);
            pat.erased.set(site3[bit], true);
        }
        CAPTURE(combo);
        CHECK_FALSE(decode_exact(chain.primal, pat, false).success);
        CHECK_FALSE(decode_greedy(chain.primal, pat).success);
    }
}

TEST_CASE("empty and full erasures") {
    const FoliatedChain chain = foliate(toric(3), 2);
    const SyndromeSubgraph& sub = chain.primal;
    ErasurePattern none{sub.label, BitVector(sub.qubits.size())};
    CHECK(decode_exact(sub, none).success);
    CHECK(decode_greedy(sub, none).success);

    ErasurePattern all{sub.label, BitVector(sub.qubits.size())};
    for (std::size_t i = 0; i < all.erased.size(); ++i) {
        all.erased.set(i, true);
    }
    CHECK_FALSE(decode_exact(sub, all).success);
    CHECK_FALSE(decode_greedy(sub, all).success);
}
