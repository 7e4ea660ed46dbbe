#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include "folink/bit_matrix.hpp"
#include "folink/gf2_poly.hpp"

namespace folink {

/// Validated [[n,k,d]] CSS code. claimed_distance is metadata only and is
/// never verified for large codes.
struct CssCode {
    std::string name;
    std::size_t n = 0;
    std::size_t k = 0;
    BitMatrix h_x;  // r_x × n
    BitMatrix h_z;  // r_z × n
    BitMatrix l_x;  // k × n
    BitMatrix l_z;  // k × n
    std::optional<std::size_t> claimed_distance;
};

/// Checks H_X·H_Zᵀ = 0, computes k = n − rank(H_X) − rank(H_Z), extracts
/// logical operators, and returns the populated code. Throws on an
/// orthogonality violation (naming the first offending row pair) or k = 0.
CssCode validate_css(std::string name, BitMatrix h_x, BitMatrix h_z,
                     std::optional<std::size_t> claimed_distance = std::nullopt);

/// Standard-form logical extraction: returns k L_X/L_Z row pairs with
/// L_X·H_Zᵀ = 0, L_Z·H_Xᵀ = 0, and L_X·L_Zᵀ = I_k. Deterministic.
std::pair<BitMatrix, BitMatrix> logical_operators(const BitMatrix& h_x, const BitMatrix& h_z);

/// [[7,1,3]] Steane code, lexicographic Hamming parity-check form.
CssCode steane();

/// Toric code on a d×d periodic lattice: n = 2d², k = 2. Qubits sit on
/// edges, horizontal edges first then vertical, row-major; stars form H_X
/// and plaquettes H_Z with one redundant row each retained.
CssCode toric(std::size_t d);

/// Generalized bicycle code H_X = [A,B], H_Z = [Bᵀ,Aᵀ] from circulants of
/// a and b; k = 2·deg gcd(a, b, x^ℓ+1). Throws when k would be 0.
CssCode generalized_bicycle(std::size_t ell, const Gf2Poly& a, const Gf2Poly& b,
                            std::optional<std::size_t> claimed_distance = std::nullopt,
                            std::string name = "");

/// The [[48,6,8]] instance: ℓ=24, a = 1+x²+x⁸+x¹⁵, b = 1+x²+x¹²+x¹⁷.
CssCode gb48();

/// Replace each parity matrix with its first maximal independent row subset.
CssCode row_reduced(const CssCode& code);

CssCode load_code(const std::filesystem::path& path);
void save_code(const CssCode& code, const std::filesystem::path& path);

std::string code_to_json(const CssCode& code);
CssCode code_from_json(const std::string& text);

}  // namespace folink
