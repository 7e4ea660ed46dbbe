#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "folink/erasure.hpp"
#include "folink/foliation.hpp"

namespace folink {

/// Two-tier loss model: channel-class qubits see the fiber attenuation plus
/// the repeater in/out loss, internal qubits see √η_r.
struct LossModel {
    double alpha0_db_per_km = 0.2;
    double eta_r = 1.0;   // repeater efficiency, (0, 1]
    double l0_km = 0.0;   // repeater spacing

    /// η(L) = η_r · 10^(−α₀·L/10).
    double channel_transmission(double l_km) const;
    double channel_loss() const { return 1.0 - channel_transmission(l0_km); }
    double internal_loss() const;

    /// Spacing whose channel transmission equals eta (for the given η_r).
    static LossModel from_channel_eta(double eta, double eta_r = 1.0,
                                      double alpha0 = 0.2);
};

double channel_transmission(double l_km, const LossModel& model);

enum class DecoderKind { exact, greedy };
enum class ExecutionPolicy { serial, parallel };

struct SimResult {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double p_primal = 0.0;
    double p_dual = 0.0;
    double eta_eff = 0.0;  // p_primal · p_dual
    double stderr_primal = 0.0;
    double stderr_dual = 0.0;
    double stderr_eta_eff = 0.0;
    DecoderKind decoder = DecoderKind::exact;
    /// Marginal per-logical success rates, k entries each.
    std::vector<double> logical_rates_primal;
    std::vector<double> logical_rates_dual;
};

/// One independent erasure draw for the given subgraph; deterministic in
/// (seed, trial) regardless of caller threading.
ErasurePattern sample_erasure(const SyndromeSubgraph& sub, const LossModel& model,
                              std::uint64_t seed, std::uint64_t trial);

/// Monte Carlo ETR estimate. Success per subgraph means all k logicals are
/// recoverable. The serial and parallel policies produce bitwise identical
/// results; the serial path is the reference implementation.
SimResult estimate_etr(const FoliatedChain& chain, const LossModel& model, std::uint64_t trials,
                       std::uint64_t seed, DecoderKind decoder = DecoderKind::exact,
                       ExecutionPolicy policy = ExecutionPolicy::parallel);

/// Closed-form single-hop ETR of the [[7,1,3]] code at η_r = 1:
/// Σ_{j=3..7} a_j η^j (1−η)^{7−j} with (a₃..a₇) = (7,28,21,7,1).
double steane_single_hop_etr(double eta);

/// Exact η_r = 1 single-hop ETR by exhaustive pattern enumeration (n ≤ 20).
double brute_force_single_hop_etr(const CssCode& code, double eta);
/// Same, reusing a precomputed census from correctable_pattern_census_all.
double brute_force_single_hop_etr(const std::vector<std::size_t>& census, double eta);

std::string sim_result_to_json(const SimResult& result);

}  // namespace folink
