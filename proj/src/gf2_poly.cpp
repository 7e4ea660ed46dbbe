#include "folink/gf2_poly.hpp"

#include <bit>
#include <stdexcept>

namespace folink {

void Gf2Poly::trim() {
    while (!words_.empty() && words_.back() == 0) {
        words_.pop_back();
    }
}

Gf2Poly Gf2Poly::one() { return monomial(0); }

Gf2Poly Gf2Poly::monomial(std::size_t exponent) {
    Gf2Poly p;
    p.words_.assign(exponent / 64 + 1, 0);
    p.words_[exponent / 64] = std::uint64_t{1} << (exponent % 64);
    return p;
}

Gf2Poly Gf2Poly::from_exponents(const std::vector<std::size_t>& exponents) {
    Gf2Poly p;
    for (const auto e : exponents) {
        if (e / 64 >= p.words_.size()) {
            p.words_.resize(e / 64 + 1, 0);
        }
        p.words_[e / 64] ^= std::uint64_t{1} << (e % 64);
    }
    p.trim();
    return p;
}

Gf2Poly Gf2Poly::x_pow_plus_one(std::size_t ell) {
    return from_exponents({0, ell});
}

std::optional<std::size_t> Gf2Poly::degree() const {
    if (words_.empty()) {
        return std::nullopt;
    }
    const std::size_t top = words_.size() - 1;
    return top * 64 + (63 - static_cast<std::size_t>(std::countl_zero(words_[top])));
}

bool Gf2Poly::coeff(std::size_t exponent) const {
    const std::size_t w = exponent / 64;
    if (w >= words_.size()) {
        return false;
    }
    return (words_[w] >> (exponent % 64)) & 1U;
}

std::size_t Gf2Poly::weight() const {
    std::size_t total = 0;
    for (const auto w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

std::vector<std::size_t> Gf2Poly::exponents() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits != 0) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

Gf2Poly Gf2Poly::operator+(const Gf2Poly& rhs) const {
    Gf2Poly out = *this;
    if (rhs.words_.size() > out.words_.size()) {
        out.words_.resize(rhs.words_.size(), 0);
    }
    for (std::size_t w = 0; w < rhs.words_.size(); ++w) {
        out.words_[w] ^= rhs.words_[w];
    }
    out.trim();
    return out;
}

Gf2Poly Gf2Poly::operator*(const Gf2Poly& rhs) const {
    Gf2Poly out;
    if (is_zero() || rhs.is_zero()) {
        return out;
    }
    const std::size_t deg = *degree() + *rhs.degree();
    out.words_.assign(deg / 64 + 1, 0);
    for (const auto e : exponents()) {
        // out ^= rhs << e
        const std::size_t word_shift = e / 64;
        const std::size_t bit_shift = e % 64;
        for (std::size_t w = 0; w < rhs.words_.size(); ++w) {
            const std::uint64_t v = rhs.words_[w];
            out.words_[w + word_shift] ^= v << bit_shift;
            if (bit_shift != 0) {
                out.words_[w + word_shift + 1] ^= v >> (64 - bit_shift);
            }
        }
    }
    out.trim();
    return out;
}

std::pair<Gf2Poly, Gf2Poly> Gf2Poly::divmod(const Gf2Poly& rhs) const {
    if (rhs.is_zero()) {
        throw std::invalid_argument("division by zero polynomial");
    }
    Gf2Poly quotient;
    Gf2Poly remainder = *this;
    const std::size_t ddeg = *rhs.degree();
    while (!remainder.is_zero() && *remainder.degree() >= ddeg) {
        const std::size_t shift = *remainder.degree() - ddeg;
        remainder = remainder + rhs * monomial(shift);
        quotient = quotient + monomial(shift);
    }
    return {quotient, remainder};
}

Gf2Poly Gf2Poly::operator%(const Gf2Poly& rhs) const { return divmod(rhs).second; }

std::string Gf2Poly::to_string() const {
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto e : exponents()) {
        if (!out.empty()) {
            out += " + ";
        }
        if (e == 0) {
            out += "1";
        } else if (e == 1) {
            out += "x";
        } else {
            out += "x^" + std::to_string(e);
        }
    }
    return out;
}

Gf2Poly poly_gcd(Gf2Poly a, Gf2Poly b) {
    if (a.is_zero() && b.is_zero()) {
        throw std::invalid_argument("undefined gcd");
    }
    while (!b.is_zero()) {
        Gf2Poly r = a % b;
        a = b;
        b = r;
    }
    return a;
}

BitMatrix circulant(std::size_t ell, const Gf2Poly& p) {
    if (ell == 0) {
        throw std::invalid_argument("circulant size must be positive");
    }
    const Gf2Poly reduced = p % Gf2Poly::x_pow_plus_one(ell);
    BitMatrix m(ell, ell);
    for (const auto e : reduced.exponents()) {
        for (std::size_t i = 0; i < ell; ++i) {
            m.set(i, (i + ell - e % ell) % ell, true);
        }
    }
    return m;
}

}  // namespace folink
