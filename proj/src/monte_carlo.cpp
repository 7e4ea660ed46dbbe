#include "folink/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "folink/rng.hpp"

#ifdef FOLINK_HAVE_OPENMP
#include <omp.h>
#endif

namespace folink {

double LossModel::channel_transmission(double l_km) const {
    return eta_r * std::pow(10.0, -alpha0_db_per_km * l_km / 10.0);
}

double LossModel::internal_loss() const { return 1.0 - std::sqrt(eta_r); }

LossModel LossModel::from_channel_eta(double eta, double eta_r, double alpha0) {
    if (eta <= 0.0 || eta > eta_r) {
        throw std::invalid_argument("channel transmission must lie in (0, eta_r]");
    }
    LossModel model;
    model.alpha0_db_per_km = alpha0;
    model.eta_r = eta_r;
    model.l0_km = -10.0 * std::log10(eta / eta_r) / alpha0;
    return model;
}

double channel_transmission(double l_km, const LossModel& model) {
    return model.channel_transmission(l_km);
}

namespace {

constexpr std::uint64_t kPrimalLane = 0;
constexpr std::uint64_t kDualLane = 1;

void sample_into(const SyndromeSubgraph& sub, std::uint64_t channel_threshold,
                 std::uint64_t internal_threshold, std::uint64_t seed, std::uint64_t trial,
                 std::uint64_t lane, BitVector& erased) {
    for (std::size_t q = 0; q < sub.qubits.size(); ++q) {
        const std::uint64_t threshold =
            sub.loss_class[q] == LossClass::channel ? channel_threshold : internal_threshold;
        erased.set(q, counter_rng(seed, trial, lane, q) < threshold);
    }
}

struct TrialTally {
    std::uint64_t primal_ok = 0;
    std::uint64_t dual_ok = 0;
    std::vector<std::uint64_t> primal_logical;
    std::vector<std::uint64_t> dual_logical;
};

}  // namespace

ErasurePattern sample_erasure(const SyndromeSubgraph& sub, const LossModel& model,
                              std::uint64_t seed, std::uint64_t trial) {
    ErasurePattern pattern;
    pattern.label = sub.label;
    pattern.erased = BitVector(sub.qubits.size());
    sample_into(sub, probability_threshold(model.channel_loss()),
                probability_threshold(model.internal_loss()), seed, trial,
                sub.label == SubgraphLabel::primal ? kPrimalLane : kDualLane, pattern.erased);
    return pattern;
}

SimResult estimate_etr(const FoliatedChain& chain, const LossModel& model, std::uint64_t trials,
                       std::uint64_t seed, DecoderKind decoder, ExecutionPolicy policy) {
    if (trials < 1) {
        throw std::invalid_argument("trial count must be at least 1");
    }
    const std::size_t k = chain.code.k;
    const std::uint64_t channel_threshold = probability_threshold(model.channel_loss());
    const std::uint64_t internal_threshold = probability_threshold(model.internal_loss());

    TrialTally total;
    total.primal_logical.assign(k, 0);
    total.dual_logical.assign(k, 0);

    auto run_trial = [&](std::uint64_t trial, TrialTally& tally, DecodeScratch& scratch,
                         BitVector& primal_erased, BitVector& dual_erased,
                         std::vector<bool>& per_logical) {
        sample_into(chain.primal, channel_threshold, internal_threshold, seed, trial, kPrimalLane,
                    primal_erased);
        sample_into(chain.dual, channel_threshold, internal_threshold, seed, trial, kDualLane,
                    dual_erased);
        if (decoder == DecoderKind::exact) {
            count_recoverable_exact(chain.primal, primal_erased, scratch, &per_logical);
            std::size_t ok = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (per_logical[i]) {
                    ++tally.primal_logical[i];
                    ++ok;
                }
            }
            tally.primal_ok += ok == k ? 1 : 0;
            count_recoverable_exact(chain.dual, dual_erased, scratch, &per_logical);
            ok = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (per_logical[i]) {
                    ++tally.dual_logical[i];
                    ++ok;
                }
            }
            tally.dual_ok += ok == k ? 1 : 0;
        } else {
            const DecodeOutcome primal =
                decode_greedy(chain.primal, {SubgraphLabel::primal, primal_erased});
            for (const auto i : primal.recoverable) {
                ++tally.primal_logical[i];
            }
            tally.primal_ok += primal.success ? 1 : 0;
            const DecodeOutcome dual =
                decode_greedy(chain.dual, {SubgraphLabel::dual, dual_erased});
            for (const auto i : dual.recoverable) {
                ++tally.dual_logical[i];
            }
            tally.dual_ok += dual.success ? 1 : 0;
        }
    };

#ifdef FOLINK_HAVE_OPENMP
    const bool parallel = policy == ExecutionPolicy::parallel;
#else
    const bool parallel = false;
    (void)policy;
#endif

    if (parallel) {
#ifdef FOLINK_HAVE_OPENMP
#pragma omp parallel
        {
            TrialTally tally;
            tally.primal_logical.assign(k, 0);
            tally.dual_logical.assign(k, 0);
            DecodeScratch scratch;
            BitVector primal_erased(chain.primal.qubits.size());
            BitVector dual_erased(chain.dual.qubits.size());
            std::vector<bool> per_logical;
#pragma omp for schedule(static)
            for (std::int64_t t = 0; t < static_cast<std::int64_t>(trials); ++t) {
                run_trial(static_cast<std::uint64_t>(t), tally, scratch, primal_erased,
                          dual_erased, per_logical);
            }
#pragma omp critical
            {
                total.primal_ok += tally.primal_ok;
                total.dual_ok += tally.dual_ok;
                for (std::size_t i = 0; i < k; ++i) {
                    total.primal_logical[i] += tally.primal_logical[i];
                    total.dual_logical[i] += tally.dual_logical[i];
                }
            }
        }
#endif
    } else {
        DecodeScratch scratch;
        BitVector primal_erased(chain.primal.qubits.size());
        BitVector dual_erased(chain.dual.qubits.size());
        std::vector<bool> per_logical;
        for (std::uint64_t t = 0; t < trials; ++t) {
            run_trial(t, total, scratch, primal_erased, dual_erased, per_logical);
        }
    }

    SimResult result;
    result.trials = trials;
    result.seed = seed;
    result.decoder = decoder;
    const double nt = static_cast<double>(trials);
    result.p_primal = static_cast<double>(total.primal_ok) / nt;
    result.p_dual = static_cast<double>(total.dual_ok) / nt;
    result.eta_eff = result.p_primal * result.p_dual;
    auto binom_stderr = [nt](double p) { return std::sqrt(p * (1.0 - p) / nt); };
    result.stderr_primal = binom_stderr(result.p_primal);
    result.stderr_dual = binom_stderr(result.p_dual);
    result.stderr_eta_eff = binom_stderr(result.eta_eff);
    result.logical_rates_primal.resize(k);
    result.logical_rates_dual.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        result.logical_rates_primal[i] = static_cast<double>(total.primal_logical[i]) / nt;
        result.logical_rates_dual[i] = static_cast<double>(total.dual_logical[i]) / nt;
    }
    return result;
}

double steane_single_hop_etr(double eta) {
    if (eta < 0.0 || eta > 1.0) {
        throw std::invalid_argument("transmission must lie in [0, 1]");
    }
    static constexpr double coeff[5] = {7, 28, 21, 7, 1};
    double total = 0.0;
    for (int j = 3; j <= 7; ++j) {
        total += coeff[j - 3] * std::pow(eta, j) * std::pow(1.0 - eta, 7 - j);
    }
    return total;
}

double brute_force_single_hop_etr(const std::vector<std::size_t>& census, double eta) {
    const std::size_t n = census.size() - 1;
    double total = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        if (census[j] != 0) {
            total += static_cast<double>(census[j]) * std::pow(eta, static_cast<double>(j)) *
                     std::pow(1.0 - eta, static_cast<double>(n - j));
        }
    }
    return total;
}

double brute_force_single_hop_etr(const CssCode& code, double eta) {
    return brute_force_single_hop_etr(correctable_pattern_census_all(code), eta);
}

std::string sim_result_to_json(const SimResult& result) {
    nlohmann::json j;
    j["trials"] = result.trials;
    j["seed"] = result.seed;
    j["p_primal"] = result.p_primal;
    j["p_dual"] = result.p_dual;
    j["eta_eff"] = result.eta_eff;
    j["stderr_primal"] = result.stderr_primal;
    j["stderr_dual"] = result.stderr_dual;
    j["stderr_eta_eff"] = result.stderr_eta_eff;
    j["decoder"] = result.decoder == DecoderKind::exact ? "exact" : "greedy";
    j["logical_rates_primal"] = result.logical_rates_primal;
    j["logical_rates_dual"] = result.logical_rates_dual;
    return j.dump(2) + "\n";
}

}  // namespace folink
