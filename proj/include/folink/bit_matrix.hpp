#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace folink {

/// Packed bit vector over GF(2). Bit i lives in word i/64, position i%64.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size);

    std::size_t size() const { return size_; }
    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63U)) & 1U;
    }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63U);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63U); }

    void xor_with(const BitVector& other);
    bool is_zero() const;
    std::size_t count() const;
    /// Indices of set bits, ascending.
    std::vector<std::size_t> ones() const;

    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    bool operator==(const BitVector&) const = default;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense binary matrix with word-packed rows. Dimensions are fixed at
/// construction; all row operations are word-parallel XORs.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    /// Rows given as 0/1 integer lists; all rows must share one length.
    static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * wpr_ + (c >> 6)] >> (c & 63U)) & 1U;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (c & 63U);
        if (v) {
            words_[r * wpr_ + (c >> 6)] |= mask;
        } else {
            words_[r * wpr_ + (c >> 6)] &= ~mask;
        }
    }

    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {words_.data() + r * wpr_, wpr_};
    }
    std::span<std::uint64_t> row_words(std::size_t r) {
        return {words_.data() + r * wpr_, wpr_};
    }

    /// row dst ^= row src.
    void xor_rows(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);
    std::size_t row_weight(std::size_t r) const;
    BitVector row(std::size_t r) const;
    void set_row(std::size_t r, const BitVector& v);

    BitMatrix transposed() const;
    BitMatrix operator*(const BitMatrix& rhs) const;
    bool is_zero() const;

    /// New matrix keeping only the listed columns, in the given order.
    BitMatrix select_columns(std::span<const std::size_t> cols) const;
    /// Vertical concatenation; column counts must match.
    BitMatrix vstack(const BitMatrix& below) const;

    bool operator==(const BitMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;  // words per row
    std::vector<std::uint64_t> words_;
};

struct RrefResult {
    BitMatrix reduced;
    std::vector<std::size_t> pivots;  // strictly increasing column indices
};

/// Reduced row-echelon form over GF(2). Pivot search scans columns left to
/// right and rows top to bottom, so the output is deterministic.
RrefResult rref(const BitMatrix& m);

/// As rref, but pivot columns are restricted to those with allowed[c] true.
/// Excluded columns are never eliminated against.
RrefResult rref_with_allowed_pivots(const BitMatrix& m, const std::vector<bool>& allowed);

std::size_t rank(const BitMatrix& m);

/// Returns x with xᵀ·M = v when v lies in the row span of M, otherwise
/// nullopt. The witness is canonical: free coefficients are zero.
std::optional<BitVector> solve_in_row_span(const BitMatrix& m, const BitVector& v);

/// Drops rows that are linear combinations of earlier ones (keeps the first
/// maximal independent subset, in order).
BitMatrix independent_rows(const BitMatrix& m);

}  // namespace folink
