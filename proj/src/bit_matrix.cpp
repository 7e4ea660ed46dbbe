#include "folink/bit_matrix.hpp"

#include <bit>
#include <stdexcept>

namespace folink {

namespace {
std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }
}  // namespace

BitVector::BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

void BitVector::xor_with(const BitVector& other) {
    if (other.size_ != size_) {
        throw std::invalid_argument("BitVector size mismatch in xor_with");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
}

bool BitVector::is_zero() const {
    for (const auto w : words_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

std::size_t BitVector::count() const {
    std::size_t total = 0;
    for (const auto w : words_) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

std::vector<std::size_t> BitVector::ones() const {
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

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(words_for(cols)), words_(rows * wpr_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) {
            throw std::invalid_argument("ragged row lengths in BitMatrix::from_rows");
        }
        for (std::size_t j = 0; j < c; ++j) {
            m.set(i, j, rows[i][j] != 0);
        }
    }
    return m;
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
    std::uint64_t* d = words_.data() + dst * wpr_;
    const std::uint64_t* s = words_.data() + src * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) {
        d[w] ^= s[w];
    }
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    std::uint64_t* pa = words_.data() + a * wpr_;
    std::uint64_t* pb = words_.data() + b * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) {
        std::swap(pa[w], pb[w]);
    }
}

std::size_t BitMatrix::row_weight(std::size_t r) const {
    std::size_t total = 0;
    for (const auto w : row_words(r)) {
        total += static_cast<std::size_t>(std::popcount(w));
    }
    return total;
}

BitVector BitMatrix::row(std::size_t r) const {
    BitVector v(cols_);
    const auto src = row_words(r);
    for (std::size_t w = 0; w < wpr_; ++w) {
        v.words()[w] = src[w];
    }
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVector& v) {
    if (v.size() != cols_) {
        throw std::invalid_argument("row length mismatch in set_row");
    }
    auto dst = row_words(r);
    for (std::size_t w = 0; w < wpr_; ++w) {
        dst[w] = v.words()[w];
    }
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto src = row_words(r);
        for (std::size_t w = 0; w < wpr_; ++w) {
            std::uint64_t bits = src[w];
            while (bits != 0) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                t.set(c, r, true);
                bits &= bits - 1;
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("dimension mismatch in BitMatrix multiply");
    }
    BitMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        const auto src = row_words(r);
        std::uint64_t* dst = out.words_.data() + r * out.wpr_;
        for (std::size_t w = 0; w < wpr_; ++w) {
            std::uint64_t bits = src[w];
            while (bits != 0) {
                const std::size_t c = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                const std::uint64_t* rrow = rhs.words_.data() + c * rhs.wpr_;
                for (std::size_t v = 0; v < rhs.wpr_; ++v) {
                    dst[v] ^= rrow[v];
                }
                bits &= bits - 1;
            }
        }
    }
    return out;
}

bool BitMatrix::is_zero() const {
    for (const auto w : words_) {
        if (w != 0) {
            return false;
        }
    }
    return true;
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> cols) const {
    BitMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (get(r, cols[j])) {
                out.set(r, j, true);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& below) const {
    if (below.cols_ != cols_ && below.rows_ != 0 && rows_ != 0) {
        throw std::invalid_argument("column mismatch in vstack");
    }
    const std::size_t c = rows_ != 0 ? cols_ : below.cols_;
    BitMatrix out(rows_ + below.rows_, c);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto dst = out.row_words(r);
        const auto src = row_words(r);
        for (std::size_t w = 0; w < wpr_; ++w) {
            dst[w] = src[w];
        }
    }
    for (std::size_t r = 0; r < below.rows_; ++r) {
        auto dst = out.row_words(rows_ + r);
        const auto src = below.row_words(r);
        for (std::size_t w = 0; w < below.wpr_; ++w) {
            dst[w] = src[w];
        }
    }
    return out;
}

RrefResult rref(const BitMatrix& m) {
    return rref_with_allowed_pivots(m, std::vector<bool>(m.cols(), true));
}

RrefResult rref_with_allowed_pivots(const BitMatrix& m, const std::vector<bool>& allowed) {
    if (allowed.size() != m.cols()) {
        throw std::invalid_argument("allowed mask length mismatch");
    }
    RrefResult res{m, {}};
    BitMatrix& r = res.reduced;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < r.cols() && pivot_row < r.rows(); ++col) {
        if (!allowed[col]) {
            continue;
        }
        std::size_t sel = pivot_row;
        while (sel < r.rows() && !r.get(sel, col)) {
            ++sel;
        }
        if (sel == r.rows()) {
            continue;
        }
        r.swap_rows(pivot_row, sel);
        for (std::size_t other = 0; other < r.rows(); ++other) {
            if (other != pivot_row && r.get(other, col)) {
                r.xor_rows(other, pivot_row);
            }
        }
        res.pivots.push_back(col);
        ++pivot_row;
    }
    return res;
}

std::size_t rank(const BitMatrix& m) { return rref(m).pivots.size(); }

std::optional<BitVector> solve_in_row_span(const BitMatrix& m, const BitVector& v) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument("vector length mismatch in solve_in_row_span");
    }
    // Echelonize a working copy while tracking row combinations, then reduce v
    // against the pivot rows.
    BitMatrix work = m;
    BitMatrix combo = BitMatrix::identity(m.rows());
    std::vector<std::size_t> pivot_cols;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < work.cols() && pivot_row < work.rows(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < work.rows() && !work.get(sel, col)) {
            ++sel;
        }
        if (sel == work.rows()) {
            continue;
        }
        work.swap_rows(pivot_row, sel);
        combo.swap_rows(pivot_row, sel);
        for (std::size_t other = 0; other < work.rows(); ++other) {
            if (other != pivot_row && work.get(other, col)) {
                work.xor_rows(other, pivot_row);
                combo.xor_rows(other, pivot_row);
            }
        }
        pivot_cols.push_back(col);
        ++pivot_row;
    }
    BitVector residue = v;
    BitVector coeff(m.rows());
    for (std::size_t t = 0; t < pivot_cols.size(); ++t) {
        if (residue.get(pivot_cols[t])) {
            residue.xor_with(work.row(t));
            coeff.xor_with(combo.row(t));
        }
    }
    if (!residue.is_zero()) {
        return std::nullopt;
    }
    return coeff;
}

BitMatrix independent_rows(const BitMatrix& m) {
    BitMatrix echelon(m.rows(), m.cols());
    std::vector<std::size_t> keep;
    std::size_t filled = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BitVector cand = m.row(r);
        for (std::size_t e = 0; e < filled; ++e) {
            const auto lead = echelon.row(e).ones();
            if (!lead.empty() && cand.get(lead.front())) {
                cand.xor_with(echelon.row(e));
            }
        }
        if (!cand.is_zero()) {
            // Keep echelon rows sorted by leading bit for the reduction above.
            echelon.set_row(filled, cand);
            for (std::size_t e = filled; e > 0; --e) {
                const auto a = echelon.row(e - 1).ones();
                const auto b = echelon.row(e).ones();
                if (!a.empty() && !b.empty() && a.front() > b.front()) {
                    echelon.swap_rows(e - 1, e);
                } else {
                    break;
                }
            }
            ++filled;
            keep.push_back(r);
        }
    }
    BitMatrix out(keep.size(), m.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        out.set_row(i, m.row(keep[i]));
    }
    return out;
}

}  // namespace folink
