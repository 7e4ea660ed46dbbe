#include "folink/css_code.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace folink {

namespace {

void check_orthogonal(const BitMatrix& h_x, const BitMatrix& h_z) {
    const BitMatrix prod = h_x * h_z.transposed();
    for (std::size_t r = 0; r < prod.rows(); ++r) {
        for (std::size_t c = 0; c < prod.cols(); ++c) {
            if (prod.get(r, c)) {
                throw std::runtime_error("H_X row " + std::to_string(r) +
                                         " is not orthogonal to H_Z row " + std::to_string(c));
            }
        }
    }
}

}  // namespace

std::pair<BitMatrix, BitMatrix> logical_operators(const BitMatrix& h_x, const BitMatrix& h_z) {
    const std::size_t n = h_x.cols();
    if (h_z.cols() != n) {
        throw std::invalid_argument("H_X and H_Z must act on the same qubits");
    }
    // Standard form: pivot H_X anywhere, then pivot H_Z only outside the H_X
    // pivot columns (orthogonality guarantees full rank there). The remaining
    // k free columns each seed one logical pair.
    const RrefResult rx = rref(h_x);
    std::vector<bool> allowed(n, true);
    for (const auto p : rx.pivots) {
        allowed[p] = false;
    }
    const RrefResult rz = rref_with_allowed_pivots(h_z, allowed);
    if (rz.pivots.size() != rank(h_z)) {
        throw std::runtime_error("H_Z loses rank outside the H_X pivot columns");
    }
    std::vector<bool> used(n, false);
    for (const auto p : rx.pivots) {
        used[p] = true;
    }
    for (const auto p : rz.pivots) {
        used[p] = true;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c) {
        if (!used[c]) {
            free_cols.push_back(c);
        }
    }
    const std::size_t k = free_cols.size();
    BitMatrix l_x(k, n);
    BitMatrix l_z(k, n);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t f = free_cols[i];
        // X logical: e_f plus the H_Z pivot columns needed to stay in ker H_Z.
        l_x.set(i, f, true);
        for (std::size_t j = 0; j < rz.pivots.size(); ++j) {
            if (rz.reduced.get(j, f)) {
                l_x.set(i, rz.pivots[j], true);
            }
        }
        // Z logical: e_f plus H_X pivot columns, staying in ker H_X.
        l_z.set(i, f, true);
        for (std::size_t j = 0; j < rx.pivots.size(); ++j) {
            if (rx.reduced.get(j, f)) {
                l_z.set(i, rx.pivots[j], true);
            }
        }
    }
    return {l_x, l_z};
}

CssCode validate_css(std::string name, BitMatrix h_x, BitMatrix h_z,
                     std::optional<std::size_t> claimed_distance) {
    const std::size_t n = h_x.cols();
    if (h_z.cols() != n) {
        throw std::invalid_argument("H_X and H_Z column counts differ");
    }
    check_orthogonal(h_x, h_z);
    const std::size_t r_x = rank(h_x);
    const std::size_t r_z = rank(h_z);
    if (r_x + r_z >= n) {
        throw std::runtime_error("code encodes no logical qubits");
    }
    const std::size_t k = n - r_x - r_z;
    auto [l_x, l_z] = logical_operators(h_x, h_z);
    if (l_x.rows() != k) {
        throw std::runtime_error("logical extraction produced wrong dimension");
    }
    CssCode code;
    code.name = std::move(name);
    code.n = n;
    code.k = k;
    code.h_x = std::move(h_x);
    code.h_z = std::move(h_z);
    code.l_x = std::move(l_x);
    code.l_z = std::move(l_z);
    code.claimed_distance = claimed_distance;
    return code;
}

CssCode steane() {
    const BitMatrix hamming = BitMatrix::from_rows({
        {1, 0, 1, 0, 1, 0, 1},
        {0, 1, 1, 0, 0, 1, 1},
        {0, 0, 0, 1, 1, 1, 1},
    });
    return validate_css("steane", hamming, hamming, 3);
}

CssCode toric(std::size_t d) {
    if (d < 2) {
        throw std::invalid_argument("toric lattice size must be at least 2");
    }
    const std::size_t n = 2 * d * d;
    auto h_edge = [d](std::size_t r, std::size_t c) { return r * d + c; };
    auto v_edge = [d](std::size_t r, std::size_t c) { return d * d + r * d + c; };
    BitMatrix stars(d * d, n);
    BitMatrix plaquettes(d * d, n);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const std::size_t i = r * d + c;
            // Star at vertex (r,c): the four incident edges.
            stars.set(i, h_edge(r, c), true);
            stars.set(i, h_edge(r, (c + d - 1) % d), true);
            stars.set(i, v_edge(r, c), true);
            stars.set(i, v_edge((r + d - 1) % d, c), true);
            // Plaquette with corner (r,c): the four bounding edges.
            plaquettes.set(i, h_edge(r, c), true);
            plaquettes.set(i, h_edge((r + 1) % d, c), true);
            plaquettes.set(i, v_edge(r, c), true);
            plaquettes.set(i, v_edge(r, (c + 1) % d), true);
        }
    }
    return validate_css("toric" + std::to_string(d), stars, plaquettes, d);
}

CssCode generalized_bicycle(std::size_t ell, const Gf2Poly& a, const Gf2Poly& b,
                            std::optional<std::size_t> claimed_distance, std::string name) {
    if (ell == 0) {
        throw std::invalid_argument("circulant size must be positive");
    }
    if (a.is_zero() || b.is_zero()) {
        throw std::invalid_argument("generalized bicycle polynomials must be nonzero");
    }
    const Gf2Poly g = poly_gcd(poly_gcd(a, b), Gf2Poly::x_pow_plus_one(ell));
    const std::size_t expected_k = 2 * g.degree().value_or(0);
    if (expected_k == 0) {
        throw std::runtime_error("degenerate polynomial choice: gcd(a, b, x^l+1) is constant");
    }
    const BitMatrix ca = circulant(ell, a);
    const BitMatrix cb = circulant(ell, b);
    const std::size_t n = 2 * ell;
    BitMatrix h_x(ell, n);
    BitMatrix h_z(ell, n);
    const BitMatrix cbt = cb.transposed();
    const BitMatrix cat = ca.transposed();
    for (std::size_t r = 0; r < ell; ++r) {
        for (std::size_t c = 0; c < ell; ++c) {
            if (ca.get(r, c)) {
                h_x.set(r, c, true);
            }
            if (cb.get(r, c)) {
                h_x.set(r, ell + c, true);
            }
            if (cbt.get(r, c)) {
                h_z.set(r, c, true);
            }
            if (cat.get(r, c)) {
                h_z.set(r, ell + c, true);
            }
        }
    }
    if (name.empty()) {
        name = "gb" + std::to_string(n);
    }
    CssCode code = validate_css(std::move(name), std::move(h_x), std::move(h_z), claimed_distance);
    if (code.k != expected_k) {
        throw std::runtime_error("generalized bicycle dimension mismatch: rank gives k=" +
                                 std::to_string(code.k) + ", gcd gives k=" +
                                 std::to_string(expected_k));
    }
    return code;
}

CssCode gb48() {
    return generalized_bicycle(24, Gf2Poly::from_exponents({0, 2, 8, 15}),
                               Gf2Poly::from_exponents({0, 2, 12, 17}), 8, "gb48");
}

CssCode row_reduced(const CssCode& code) {
    CssCode out = validate_css(code.name, independent_rows(code.h_x), independent_rows(code.h_z),
                               code.claimed_distance);
    return out;
}

namespace {

nlohmann::json matrix_to_json(const BitMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(m.get(r, c) ? 1 : 0);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

BitMatrix matrix_from_json(const nlohmann::json& rows) {
    std::vector<std::vector<int>> data;
    for (const auto& row : rows) {
        data.emplace_back();
        for (const auto& bit : row) {
            const int v = bit.get<int>();
            if (v != 0 && v != 1) {
                throw std::runtime_error("matrix entries must be 0 or 1");
            }
            data.back().push_back(v);
        }
    }
    return BitMatrix::from_rows(data);
}

}  // namespace

std::string code_to_json(const CssCode& code) {
    nlohmann::json j;
    j["name"] = code.name;
    j["n"] = code.n;
    if (code.claimed_distance) {
        j["claimed_distance"] = *code.claimed_distance;
    } else {
        j["claimed_distance"] = nullptr;
    }
    j["h_x"] = matrix_to_json(code.h_x);
    j["h_z"] = matrix_to_json(code.h_z);
    return j.dump(2) + "\n";
}

CssCode code_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    BitMatrix h_x = matrix_from_json(j.at("h_x"));
    BitMatrix h_z = matrix_from_json(j.at("h_z"));
    const auto n = j.at("n").get<std::size_t>();
    if (h_x.cols() != n || h_z.cols() != n) {
        throw std::runtime_error("declared n does not match matrix width");
    }
    std::optional<std::size_t> dist;
    if (j.contains("claimed_distance") && !j.at("claimed_distance").is_null()) {
        dist = j.at("claimed_distance").get<std::size_t>();
    }
    // Logical operators are recomputed on load so files stay minimal.
    return validate_css(j.at("name").get<std::string>(), std::move(h_x), std::move(h_z), dist);
}

CssCode load_code(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open code file: " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return code_from_json(text);
}

void save_code(const CssCode& code, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw std::runtime_error("cannot write code file: " + path.string());
        }
        out << code_to_json(code);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace folink
