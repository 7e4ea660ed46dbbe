#include "folink/erasure.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#ifdef FOLINK_HAVE_OPENMP
#include <omp.h>
#endif

namespace folink {

namespace {

void check_pattern(const SyndromeSubgraph& sub, const ErasurePattern& pattern) {
    if (pattern.label != sub.label || pattern.erased.size() != sub.qubits.size()) {
        throw std::invalid_argument("erasure pattern does not match subgraph");
    }
}

}  // namespace

DecodeOutcome decode_greedy(const SyndromeSubgraph& sub, const ErasurePattern& pattern) {
    check_pattern(sub, pattern);
    const std::size_t k = sub.logicals.rows();

    struct Logical {
        std::size_t index;
        BitVector bits;
    };
    std::vector<Logical> logicals;
    logicals.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        logicals.push_back({i, sub.logicals.row(i)});
    }
    std::vector<BitVector> stabs;
    stabs.reserve(sub.stabilizers.rows());
    for (std::size_t r = 0; r < sub.stabilizers.rows(); ++r) {
        stabs.push_back(sub.stabilizers.row(r));
    }

    DecodeOutcome outcome;
    for (const std::size_t q : pattern.erased.ones()) {
        if (logicals.empty()) {
            outcome.success = k == 0;
            return outcome;
        }
        // Clean each surviving logical off q, or drop it.
        for (std::size_t j = 0; j < logicals.size();) {
            if (!logicals[j].bits.get(q)) {
                ++j;
                continue;
            }
            std::size_t found = stabs.size();
            for (std::size_t s = 0; s < stabs.size(); ++s) {
                if (stabs[s].get(q)) {
                    found = s;
                    break;
                }
            }
            if (found < stabs.size()) {
                logicals[j].bits.xor_with(stabs[found]);
                ++j;
            } else {
                logicals.erase(logicals.begin() + static_cast<std::ptrdiff_t>(j));
            }
        }
        // Retire the stabilizers acting on q: drop a unique one, otherwise
        // replace the set with consecutive pairwise products.
        std::vector<std::size_t> acting;
        for (std::size_t s = 0; s < stabs.size(); ++s) {
            if (stabs[s].get(q)) {
                acting.push_back(s);
            }
        }
        if (acting.size() == 1) {
            stabs.erase(stabs.begin() + static_cast<std::ptrdiff_t>(acting.front()));
        } else if (acting.size() > 1) {
            std::vector<BitVector> products;
            products.reserve(acting.size() - 1);
            for (std::size_t t = 0; t + 1 < acting.size(); ++t) {
                BitVector prod = stabs[acting[t]];
                prod.xor_with(stabs[acting[t + 1]]);
                products.push_back(std::move(prod));
            }
            std::vector<BitVector> next;
            next.reserve(stabs.size() - 1);
            for (std::size_t s = 0; s < stabs.size(); ++s) {
                if (s == acting.front()) {
                    for (auto& p : products) {
                        next.push_back(std::move(p));
                    }
                } else if (std::find(acting.begin(), acting.end(), s) == acting.end()) {
                    next.push_back(std::move(stabs[s]));
                }
            }
            stabs = std::move(next);
        }
    }
    for (const auto& l : logicals) {
        outcome.recoverable.push_back(l.index);
    }
    outcome.success = outcome.recoverable.size() == k;
    return outcome;
}

DecodeOutcome decode_exact(const SyndromeSubgraph& sub, const ErasurePattern& pattern,
                           bool want_witness) {
    check_pattern(sub, pattern);
    const std::vector<std::size_t> erased_cols = pattern.erased.ones();
    const BitMatrix restricted = sub.stabilizers.select_columns(erased_cols);

    DecodeOutcome outcome;
    const std::size_t k = sub.logicals.rows();
    outcome.witnesses.assign(k, std::nullopt);
    for (std::size_t i = 0; i < k; ++i) {
        BitVector target(erased_cols.size());
        for (std::size_t j = 0; j < erased_cols.size(); ++j) {
            if (sub.logicals.get(i, erased_cols[j])) {
                target.set(j, true);
            }
        }
        const auto coeffs = solve_in_row_span(restricted, target);
        if (coeffs) {
            outcome.recoverable.push_back(i);
            if (want_witness) {
                outcome.witnesses[i] = *coeffs;
            }
        }
    }
    outcome.success = outcome.recoverable.size() == k;
    return outcome;
}

std::size_t count_recoverable_exact(const SyndromeSubgraph& sub, const BitVector& erased,
                                    DecodeScratch& scratch,
                                    std::vector<bool>* per_logical) {
    const std::size_t k = sub.logicals.rows();
    if (per_logical != nullptr) {
        per_logical->assign(k, false);
    }
    scratch.erased_cols.clear();
    for (const auto c : erased.ones()) {
        scratch.erased_cols.push_back(c);
    }
    const std::size_t m = scratch.erased_cols.size();
    if (m == 0) {
        if (per_logical != nullptr) {
            per_logical->assign(k, true);
        }
        return k;
    }
    const std::size_t words = (m + 63) / 64;
    scratch.echelon.clear();
    scratch.pivots.clear();
    scratch.work_row.assign(words, 0);
    scratch.pivot_owner.assign(m, -1);

    auto restrict_row = [&](const BitMatrix& mat, std::size_t r) {
        std::fill(scratch.work_row.begin(), scratch.work_row.end(), 0);
        for (std::size_t j = 0; j < m; ++j) {
            if (mat.get(r, scratch.erased_cols[j])) {
                scratch.work_row[j >> 6] |= std::uint64_t{1} << (j & 63U);
            }
        }
    };
    auto leading_bit = [&]() -> std::size_t {
        for (std::size_t w = 0; w < words; ++w) {
            if (scratch.work_row[w] != 0) {
                return w * 64 + static_cast<std::size_t>(std::countr_zero(scratch.work_row[w]));
            }
        }
        return m;
    };
    // Reduce work_row against the echelon basis; returns true if it vanishes.
    auto reduce_work = [&]() {
        std::size_t lead = leading_bit();
        while (lead < m) {
            const std::int32_t owner = scratch.pivot_owner[lead];
            if (owner < 0) {
                return false;
            }
            const std::uint64_t* row =
                scratch.echelon.data() + static_cast<std::size_t>(owner) * words;
            for (std::size_t w = lead >> 6; w < words; ++w) {
                scratch.work_row[w] ^= row[w];
            }
            lead = leading_bit();
        }
        return true;
    };

    // Build the echelon basis of the restricted stabilizer rows. Rows with no
    // erased support restrict to zero and are skipped cheaply.
    const std::size_t erased_words = erased.words().size();
    for (std::size_t r = 0; r < sub.stabilizers.rows() && scratch.pivots.size() < m; ++r) {
        const auto row_w = sub.stabilizers.row_words(r);
        bool intersects = false;
        for (std::size_t w = 0; w < erased_words; ++w) {
            if ((row_w[w] & erased.words()[w]) != 0) {
                intersects = true;
                break;
            }
        }
        if (!intersects) {
            continue;
        }
        restrict_row(sub.stabilizers, r);
        if (!reduce_work()) {
            const std::size_t lead = leading_bit();
            scratch.pivot_owner[lead] = static_cast<std::int32_t>(scratch.pivots.size());
            scratch.pivots.push_back(static_cast<std::uint32_t>(lead));
            scratch.echelon.insert(scratch.echelon.end(), scratch.work_row.begin(),
                                   scratch.work_row.end());
        }
    }

    std::size_t recovered = 0;
    for (std::size_t i = 0; i < k; ++i) {
        restrict_row(sub.logicals, i);
        if (reduce_work()) {
            ++recovered;
            if (per_logical != nullptr) {
                (*per_logical)[i] = true;
            }
        }
    }
    return recovered;
}

std::vector<std::size_t> correctable_pattern_census_all(const CssCode& code) {
    if (code.n > 20) {
        throw std::invalid_argument("enumeration infeasible for n > 20");
    }
    const FoliatedChain chain = foliate(code, 1);
    const SyndromeSubgraph& sub = chain.primal;
    const std::size_t n = code.n;
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::size_t> census(n + 1, 0);

#ifdef FOLINK_HAVE_OPENMP
#pragma omp parallel
#endif
    {
        std::vector<std::size_t> local(n + 1, 0);
        DecodeScratch scratch;
        BitVector erased(sub.qubits.size());
#ifdef FOLINK_HAVE_OPENMP
#pragma omp for schedule(static)
#endif
        for (std::int64_t mask = 0; mask < static_cast<std::int64_t>(total); ++mask) {
            // Site-1 data qubits occupy the first n subgraph columns.
            erased.words()[0] = static_cast<std::uint64_t>(mask);
            if (count_recoverable_exact(sub, erased, scratch) == code.k) {
                ++local[n - static_cast<std::size_t>(std::popcount(
                                 static_cast<std::uint64_t>(mask)))];
            }
        }
#ifdef FOLINK_HAVE_OPENMP
#pragma omp critical
#endif
        {
            for (std::size_t j = 0; j <= n; ++j) {
                census[j] += local[j];
            }
        }
    }
    return census;
}

std::size_t correctable_pattern_census(const CssCode& code, std::size_t surviving) {
    if (surviving > code.n) {
        throw std::invalid_argument("surviving count exceeds qubit count");
    }
    return correctable_pattern_census_all(code)[surviving];
}

BitVector apply_witness(const SyndromeSubgraph& sub, const BitVector& coefficients) {
    if (coefficients.size() != sub.stabilizers.rows()) {
        throw std::invalid_argument("witness length does not match stabilizer count");
    }
    BitVector out(sub.qubits.size());
    for (const auto r : coefficients.ones()) {
        out.xor_with(sub.stabilizers.row(r));
    }
    return out;
}

}  // namespace folink
