#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "folink/css_code.hpp"

namespace folink {

enum class QubitKind { data, ancilla };
enum class LossClass { channel, internal };
enum class SubgraphLabel { primal, dual };

/// One physical qubit in the (2N+1)-site cluster. Sites run 1..2N+1; odd
/// sites carry Z-check ancillas, even sites X-check ancillas. The global
/// index is site-major with data qubits before ancillas.
struct QubitId {
    std::size_t site = 0;
    QubitKind kind = QubitKind::data;
    std::size_t local = 0;
    std::size_t global = 0;
};

/// One of the two independent decoding subproblems. Matrix columns are the
/// subgraph's qubits, ordered by ascending global index.
struct SyndromeSubgraph {
    SubgraphLabel label = SubgraphLabel::primal;
    std::vector<QubitId> qubits;
    BitMatrix stabilizers;  // one row per reduced stabilizer
    BitMatrix logicals;     // k rows spanning all sites of this parity
    std::vector<LossClass> loss_class;
};

struct FoliatedChain {
    CssCode code;
    std::size_t hops = 0;   // N
    std::size_t sites = 0;  // 2N+1
    std::size_t total_qubits = 0;
    SyndromeSubgraph primal;
    SyndromeSubgraph dual;
};

/// Builds the primal (H_X structure, odd-site data + even-site ancillas) and
/// dual (H_Z structure, even-site data + odd-site ancillas) syndrome graphs.
/// Channel-class qubits are the data qubits at odd sites 1..2N−1; everything
/// else is internal.
FoliatedChain foliate(const CssCode& code, std::size_t hops);

struct ConsistencyReport {
    std::size_t primal_stabilizers = 0;
    std::size_t dual_stabilizers = 0;
    std::size_t primal_logicals = 0;
    std::size_t dual_logicals = 0;
    std::size_t channel_qubits = 0;  // always N·n
};

/// Asserts the structural invariants of both subgraphs (per-row data support
/// matches a parity-check row, ancilla bits sit at neighbor sites, logicals
/// restrict per-site to the single-code logical rows, loss classes). Throws
/// naming the offending site/row on any violation.
ConsistencyReport subgraph_consistency_check(const FoliatedChain& chain);

/// JSON dump for golden-file testing and the `decode` subcommand: qubit
/// table plus stabilizer/logical rows as sorted global-index lists.
std::string chain_to_json(const FoliatedChain& chain);
FoliatedChain chain_from_json(const std::string& text);

}  // namespace folink
