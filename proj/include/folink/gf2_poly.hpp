#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "folink/bit_matrix.hpp"

namespace folink {

/// Polynomial over GF(2), coefficients packed by exponent. Addition is XOR,
/// multiplication is carry-less. Storage is canonical: no words above the
/// leading coefficient.
class Gf2Poly {
public:
    Gf2Poly() = default;  // zero polynomial

    static Gf2Poly one();
    static Gf2Poly monomial(std::size_t exponent);
    static Gf2Poly from_exponents(const std::vector<std::size_t>& exponents);
    /// x^ell + 1 (the GF(2) form of x^ell − 1).
    static Gf2Poly x_pow_plus_one(std::size_t ell);

    bool is_zero() const { return words_.empty(); }
    /// Degree, or nullopt for the zero polynomial.
    std::optional<std::size_t> degree() const;
    bool coeff(std::size_t exponent) const;
    std::size_t weight() const;  // number of nonzero coefficients
    std::vector<std::size_t> exponents() const;

    Gf2Poly operator+(const Gf2Poly& rhs) const;
    Gf2Poly operator*(const Gf2Poly& rhs) const;
    Gf2Poly operator%(const Gf2Poly& rhs) const;
    /// Quotient and remainder; divisor must be nonzero.
    std::pair<Gf2Poly, Gf2Poly> divmod(const Gf2Poly& rhs) const;

    std::string to_string() const;  // e.g. "1 + x^2 + x^8"

    bool operator==(const Gf2Poly&) const = default;

private:
    void trim();
    std::vector<std::uint64_t> words_;
};

/// Euclid's algorithm; errors if both inputs are zero.
Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b);

/// ℓ×ℓ circulant a₀I + a₁P + … with P the right-cyclic-shift permutation
/// (entry (i,j) = 1 iff i−1 ≡ j mod ℓ). p is reduced mod x^ℓ + 1 first.
BitMatrix circulant(std::size_t ell, const Gf2Poly& p);

}  // namespace folink
