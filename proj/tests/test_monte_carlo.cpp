#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "folink/css_code.hpp"
#include "folink/monte_carlo.hpp"
#include "folink/rng.hpp"

using namespace folink;

TEST_CASE("loss model transmission") {
    LossModel m;
    m.eta_r = 0.9;
    m.l0_km = 50.0;
    CHECK(m.channel_transmission(0.0) == doctest::Approx(0.9));
    // 0.2 dB/km over 50 km is 10 dB, a factor of 10.
    CHECK(m.channel_transmission(50.0) == doctest::Approx(0.09));
    CHECK(m.channel_loss() == doctest::Approx(1.0 - 0.09));
    CHECK(m.internal_loss() == doctest::Approx(1.0 - std::sqrt(0.9)));

    const LossModel inv = LossModel::from_channel_eta(0.09, 0.9);
    CHECK(inv.l0_km == doctest::Approx(50.0));
    CHECK(inv.channel_transmission(inv.l0_km) == doctest::Approx(0.09));
}

TEST_CASE("counter rng is a pure function of its key") {
    CHECK(counter_rng(1, 2, 3, 4) == counter_rng(1, 2, 3, 4));
    CHECK(counter_rng(1, 2, 3, 4) != counter_rng(1, 2, 3, 5));
    CHECK(counter_rng(1, 2, 0, 4) != counter_rng(1, 2, 1, 4));
    CHECK(probability_threshold(0.0) == 0);
    CHECK(probability_threshold(0.5) == (std::uint64_t{1} << 63));
}

TEST_CASE("closed-form single-hop transmission rate of the [[7,1,3]] code") {
    CHECK(steane_single_hop_etr(0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(steane_single_hop_etr(1.0) == doctest::Approx(1.0));
    CHECK(steane_single_hop_etr(0.0) == doctest::Approx(0.0));
    // Matches exhaustive enumeration everywhere.
    for (double eta = 0.05; eta < 1.0; eta += 0.05) {
        CHECK(steane_single_hop_etr(eta) ==
              doctest::Approx(brute_force_single_hop_etr(steane(), eta)).epsilon(1e-12));
    }
}

TEST_CASE("frozen exhaustive rate for the distance-2 toric code") {
    CHECK(brute_force_single_hop_etr(toric(2), 0.7) ==
          doctest::Approx(0.66241189).epsilon(1e-9));
    CHECK(brute_force_single_hop_etr(toric(2), 0.5) ==
          doctest::Approx(0.26953125).epsilon(1e-12));
}

TEST_CASE("sample_erasure is deterministic and respects the loss model") {
    const FoliatedChain chain = foliate(steane(), 2);
    LossModel m = LossModel::from_channel_eta(0.6, 1.0);
    const ErasurePattern a = sample_erasure(chain.primal, m, 42, 7);
    const ErasurePattern b = sample_erasure(chain.primal, m, 42, 7);
    CHECK(a.erased == b.erased);
    const ErasurePattern c = sample_erasure(chain.primal, m, 42, 8);
    CHECK(a.erased != c.erased);

    // eta_r = 1: internal qubits are never lost, so the dual draw is empty.
    const ErasurePattern dual = sample_erasure(chain.dual, m, 42, 7);
    CHECK(dual.erased.is_zero());
    for (std::size_t i = 0; i < chain.primal.qubits.size(); ++i) {
        if (chain.primal.loss_class[i] == LossClass::internal) {
            CHECK_FALSE(a.erased.get(i));
        }
    }
}

TEST_CASE("monte carlo matches the closed form at the break-even point") {
    const FoliatedChain chain = foliate(steane(), 1);
    const LossModel m = LossModel::from_channel_eta(0.5, 1.0);
    const SimResult r = estimate_etr(chain, m, 100000, 7);
    CHECK(r.p_dual == 1.0);
    CHECK(std::abs(r.eta_eff - 0.5) <= 3.0 * r.stderr_eta_eff);
    CHECK(r.stderr_eta_eff < 0.01);
}

TEST_CASE("lossless-repeater rate factorizes across hops") {
    for (const CssCode& code : {steane(), toric(2)}) {
        const std::vector<std::size_t> census = correctable_pattern_census_all(code);
        for (std::size_t hops : {2U, 3U}) {
            const FoliatedChain chain = foliate(code, hops);
            for (double eta : {0.6, 0.8}) {
                const LossModel m = LossModel::from_channel_eta(eta, 1.0);
                const SimResult r = estimate_etr(chain, m, 40000, 11);
                const double expected =
                    std::pow(brute_force_single_hop_etr(census, eta), double(hops));
                CAPTURE(code.name);
                CAPTURE(hops);
                CAPTURE(eta);
                CHECK(std::abs(r.eta_eff - expected) <= 3.0 * r.stderr_eta_eff);
            }
        }
    }
}

TEST_CASE("serial and parallel execution agree bit for bit") {
    const FoliatedChain chain = foliate(gb48(), 2);
    const LossModel m = LossModel::from_channel_eta(0.85, 0.95);
    const SimResult serial = estimate_etr(chain, m, 5000, 123, DecoderKind::exact,
                                          ExecutionPolicy::serial);
    const SimResult parallel = estimate_etr(chain, m, 5000, 123, DecoderKind::exact,
                                            ExecutionPolicy::parallel);
    CHECK(serial.p_primal == parallel.p_primal);
    CHECK(serial.p_dual == parallel.p_dual);
    CHECK(serial.eta_eff == parallel.eta_eff);
    CHECK(serial.stderr_eta_eff == parallel.stderr_eta_eff);
    CHECK(serial.logical_rates_primal == parallel.logical_rates_primal);
    CHECK(serial.logical_rates_dual == parallel.logical_rates_dual);
    CHECK(sim_result_to_json(serial) == sim_result_to_json(parallel));
}

TEST_CASE("identical seeds reproduce, different seeds differ but agree statistically") {
    const FoliatedChain chain = foliate(steane(), 2);
    const LossModel m = LossModel::from_channel_eta(0.7, 1.0);
    const SimResult a = estimate_etr(chain, m, 30000, 1);
    const SimResult b = estimate_etr(chain, m, 30000, 1);
    CHECK(sim_result_to_json(a) == sim_result_to_json(b));
    const SimResult c = estimate_etr(chain, m, 30000, 2);
    CHECK(a.p_primal != c.p_primal);
    const double sigma = std::hypot(a.stderr_eta_eff, c.stderr_eta_eff);
    CHECK(std::abs(a.eta_eff - c.eta_eff) <= 5.0 * sigma);
}

TEST_CASE("greedy decoding never beats the exact oracle") {
    const FoliatedChain chain = foliate(toric(3), 2);
    const LossModel m = LossModel::from_channel_eta(0.8, 0.98);
    const SimResult exact = estimate_etr(chain, m, 20000, 9, DecoderKind::exact);
    const SimResult greedy = estimate_etr(chain, m, 20000, 9, DecoderKind::greedy);
    CHECK(greedy.p_primal <= exact.p_primal);
    CHECK(greedy.p_dual <= exact.p_dual);
}

TEST_CASE("simulation JSON carries all result fields") {
    const FoliatedChain chain = foliate(steane(), 1);
    const LossModel m = LossModel::from_channel_eta(0.5, 1.0);
    const SimResult r = estimate_etr(chain, m, 1000, 3);
    const auto j = nlohmann::json::parse(sim_result_to_json(r));
    CHECK(j.at("trials").get<std::uint64_t>() == 1000);
    CHECK(j.at("seed").get<std::uint64_t>() == 3);
    CHECK(j.at("eta_eff").get<double>() == r.eta_eff);
    CHECK(j.at("decoder").get<std::string>() == "exact");
    CHECK(j.at("logical_rates_primal").size() == 1);
}
