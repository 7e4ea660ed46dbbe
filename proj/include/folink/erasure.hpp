#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "folink/foliation.hpp"

namespace folink {

/// Sampled set of lost qubits on one syndrome subgraph. The mask is indexed
/// by subgraph column (which is ascending in global qubit index).
struct ErasurePattern {
    SubgraphLabel label = SubgraphLabel::primal;
    BitVector erased;
};

struct DecodeOutcome {
    std::vector<std::size_t> recoverable;  // logical indices, ascending
    bool success = false;                  // all k recoverable
    /// Exact decoder only: per recoverable logical, coefficients over the
    /// subgraph's stabilizer rows whose combination clears the erased support.
    std::vector<std::optional<BitVector>> witnesses;
};

/// Greedy erasure decoder. Erased qubits are processed in ascending index
/// order; "find a stabilizer acting on q" picks the lowest surviving row;
/// when several stabilizers act on q, the set is replaced by consecutive
/// pairwise products.
DecodeOutcome decode_greedy(const SyndromeSubgraph& sub, const ErasurePattern& pattern);

/// Exact oracle: logical i is recoverable iff its restriction to the erased
/// columns lies in the row span of the restricted stabilizers.
DecodeOutcome decode_exact(const SyndromeSubgraph& sub, const ErasurePattern& pattern,
                           bool want_witness = true);

/// Reusable scratch space for the hot Monte Carlo path.
struct DecodeScratch {
    std::vector<std::size_t> erased_cols;
    std::vector<std::uint64_t> echelon;  // packed restricted rows, rank × words
    std::vector<std::uint32_t> pivots;
    std::vector<std::int32_t> pivot_owner;  // erased column -> echelon row, or -1
    std::vector<std::uint64_t> work_row;
};

/// Fast all-or-per-logical exact decode used by the simulator. Returns the
/// number of recoverable logicals; if per_logical is non-null it receives one
/// flag per logical.
std::size_t count_recoverable_exact(const SyndromeSubgraph& sub, const BitVector& erased,
                                    DecodeScratch& scratch,
                                    std::vector<bool>* per_logical = nullptr);

/// Per-j counts of fully recoverable site-1 data erasure patterns on the
/// single-hop primal subgraph; index j = number of surviving data qubits.
/// Feasible for n ≤ 20 only. The coefficient at j is a_j of the closed-form
/// single-hop success polynomial.
std::vector<std::size_t> correctable_pattern_census_all(const CssCode& code);
std::size_t correctable_pattern_census(const CssCode& code, std::size_t surviving);

/// Expand a witness (stabilizer-row coefficients) into its support vector.
BitVector apply_witness(const SyndromeSubgraph& sub, const BitVector& coefficients);

}  // namespace folink
