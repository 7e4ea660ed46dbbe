// Throughput comparison: serial reference loop vs the OpenMP trial loop.
// Also cross-checks that both policies return bitwise identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "folink/css_code.hpp"
#include "folink/monte_carlo.hpp"

using namespace folink;

namespace {

double run_once(const FoliatedChain& chain, const LossModel& model, std::uint64_t trials,
                ExecutionPolicy policy, SimResult& out) {
    const auto start = std::chrono::steady_clock::now();
    out = estimate_etr(chain, model, trials, 7, DecoderKind::exact, policy);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_case(const CssCode& code, std::size_t hops, double eta_r, double l0_km,
                std::uint64_t trials) {
    const FoliatedChain chain = foliate(code, hops);
    LossModel model;
    model.eta_r = eta_r;
    model.l0_km = l0_km;

    SimResult serial_result, parallel_result;
    const double t_serial = run_once(chain, model, trials, ExecutionPolicy::serial, serial_result);
    const double t_parallel =
        run_once(chain, model, trials, ExecutionPolicy::parallel, parallel_result);

    const bool identical = sim_result_to_json(serial_result) == sim_result_to_json(parallel_result);
    std::printf("%-8s hops=%-2zu trials=%-8llu serial %8.0f/s  parallel %8.0f/s  speedup %.2fx  %s\n",
                code.name.c_str(), hops, static_cast<unsigned long long>(trials),
                trials / t_serial, trials / t_parallel, t_serial / t_parallel,
                identical ? "results identical" : "RESULTS DIFFER");
    if (!identical) {
        std::exit(1);
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t trials = 100000;
    if (argc > 1) {
        trials = std::strtoull(argv[1], nullptr, 10);
    }
    bench_case(steane(), 2, 1.0, 2.0, trials);
    bench_case(toric(3), 4, 0.95, 4.0, trials);
    bench_case(gb48(), 4, 0.9, 4.0, trials / 4);
    bench_case(gb48(), 12, 0.9, 4.0, trials / 10);
    return 0;
}
