// folink: photonic repeater chain simulator.
//
// Subcommands: code, foliate, decode, simulate, sweep, fit, optimize, plot.
// All randomness flows from --seed; identical invocations produce
// byte-identical outputs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "folink/analysis.hpp"
#include "folink/csv.hpp"
#include "folink/css_code.hpp"
#include "folink/erasure.hpp"
#include "folink/foliation.hpp"
#include "folink/monte_carlo.hpp"
#include "folink/rng.hpp"
#include "folink/svg_plot.hpp"

#ifdef FOLINK_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace folink;

void apply_thread_cap() {
#ifdef FOLINK_HAVE_OPENMP
    if (const char* env = std::getenv("FOLIATED_LINK_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) {
            omp_set_num_threads(cap);
        }
    }
#endif
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            throw std::runtime_error("cannot write file: " + path);
        }
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

DecoderKind parse_decoder(const std::string& name) {
    if (name == "exact") {
        return DecoderKind::exact;
    }
    if (name == "greedy") {
        return DecoderKind::greedy;
    }
    throw CLI::ValidationError("--decoder", "must be 'exact' or 'greedy'");
}

// ---- code -----------------------------------------------------------------

struct CodeArgs {
    std::string out;
    bool row_reduce = false;
    std::size_t ell = 24;
    std::vector<std::size_t> a_exponents{0, 2, 8, 15};
    std::vector<std::size_t> b_exponents{0, 2, 12, 17};
    std::size_t toric_d = 6;
    std::size_t claimed_distance = 0;
    std::string name;
};

void emit_code(CssCode code, const CodeArgs& args) {
    if (args.row_reduce) {
        code = row_reduced(code);
    }
    if (!args.name.empty()) {
        code.name = args.name;
    }
    std::cout << code.name << ": [[" << code.n << "," << code.k
              << (code.claimed_distance ? "," + std::to_string(*code.claimed_distance) : "")
              << "]] rank(H_X)=" << rank(code.h_x) << " rank(H_Z)=" << rank(code.h_z) << "\n";
    if (!args.out.empty()) {
        save_code(code, args.out);
        std::cout << "wrote " << args.out << "\n";
    }
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
    std::string code_path;
    std::vector<std::size_t> hops{1};
    std::vector<double> eta_r{1.0};
    std::vector<double> l0_km;
    std::vector<double> loss;
    double alpha0 = 0.2;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    std::string decoder = "exact";
    std::string profile;
    std::string out;
};

int run_sweep(const SweepArgs& args) {
    std::uint64_t trials = args.trials;
    if (args.profile == "fig3") {
        trials = 2000000;
    } else if (args.profile == "fig4") {
        trials = 500000;
    } else if (!args.profile.empty()) {
        throw CLI::ValidationError("--profile", "must be 'fig3' or 'fig4'");
    }
    const CssCode code = load_code(args.code_path);
    const DecoderKind decoder = parse_decoder(args.decoder);

    CsvTable table;
    std::map<std::string, bool> existing;
    if (std::filesystem::exists(args.out)) {
        table = read_csv(args.out);
        const auto c0 = table.column("code");
        const auto c1 = table.column("eta_r");
        const auto c2 = table.column("l0_km");
        const auto c3 = table.column("hops");
        for (const auto& row : table.rows) {
            existing[row[c0] + "|" + row[c1] + "|" + row[c2] + "|" + row[c3]] = true;
        }
    } else {
        std::ostringstream canonical;
        canonical << args.code_path << ";" << trials << ";" << args.seed << ";" << args.decoder;
        table.comments = {"folink-version: " + std::string(kVersion),
                          "config: " + config_hash(canonical.str())};
        table.header = {"code",  "eta_r", "l0_km",    "hops",   "trials",
                        "seed",  "p_primal", "p_dual", "eta_eff", "stderr"};
    }

    std::map<std::size_t, FoliatedChain> chains;
    for (const auto hops : args.hops) {
        chains.emplace(hops, foliate(code, hops));
    }
    std::size_t cell = 0;
    for (const double eta_r : args.eta_r) {
        std::vector<double> spacings = args.l0_km;
        for (const double loss : args.loss) {
            spacings.push_back(
                LossModel::from_channel_eta((1.0 - loss) * eta_r, eta_r, args.alpha0).l0_km);
        }
        for (const double l0 : spacings) {
            for (const auto hops : args.hops) {
                ++cell;
                LossModel model;
                model.alpha0_db_per_km = args.alpha0;
                model.eta_r = eta_r;
                model.l0_km = l0;
                const std::string key = code.name + "|" + format_double(eta_r) + "|" +
                                        format_double(l0) + "|" + std::to_string(hops);
                if (existing.count(key) != 0) {
                    continue;
                }
                const std::uint64_t cell_seed = mix64(args.seed ^ mix64(cell));
                const SimResult sim =
                    estimate_etr(chains.at(hops), model, trials, cell_seed, decoder);
                table.rows.push_back({code.name, format_double(eta_r), format_double(l0),
                                      std::to_string(hops), std::to_string(trials),
                                      std::to_string(cell_seed), format_double(sim.p_primal),
                                      format_double(sim.p_dual), format_double(sim.eta_eff),
                                      format_double(sim.stderr_eta_eff)});
            }
        }
    }
    write_csv_atomic(args.out, table);
    std::cout << "wrote " << args.out << " (" << table.rows.size() << " rows)\n";
    return 0;
}

// ---- fit ------------------------------------------------------------------

int run_fit(const std::string& in, const std::string& out) {
    const CsvTable grid = read_csv(in);
    const auto c_code = grid.column("code");
    const auto c_eta_r = grid.column("eta_r");
    const auto c_l0 = grid.column("l0_km");
    const auto c_hops = grid.column("hops");
    const auto c_eta = grid.column("eta_eff");

    std::map<std::tuple<std::string, std::string, double>,
             std::vector<std::pair<double, double>>> groups;
    for (const auto& row : grid.rows) {
        const double l0 = parse_double(row[c_l0]);
        const double eta = parse_double(row[c_eta]);
        const double hops = parse_double(row[c_hops]);
        if (eta <= 0.0) {
            std::cerr << "warning: dropping zero-success row (l0=" << row[c_l0]
                      << ", hops=" << row[c_hops] << ")\n";
            continue;
        }
        groups[{row[c_code], row[c_eta_r], l0}].emplace_back(hops * l0, eta);
    }
    CsvTable alpha;
    alpha.comments = {"folink-version: " + std::string(kVersion)};
    alpha.header = {"code", "eta_r", "l0_km", "alpha_eff_db_per_km", "log10_prefactor",
                    "rms_residual"};
    for (const auto& [key, points] : groups) {
        const FitResult fit = fit_attenuation(points);
        alpha.rows.push_back({std::get<0>(key), std::get<1>(key),
                              format_double(std::get<2>(key)),
                              format_double(fit.alpha_eff_db_per_km),
                              format_double(fit.log10_prefactor),
                              format_double(fit.rms_residual)});
    }
    write_csv_atomic(out, alpha);
    std::cout << "wrote " << out << " (" << alpha.rows.size() << " rows)\n";
    return 0;
}

AlphaGrid load_alpha_grid(const std::string& path) {
    const CsvTable table = read_csv(path);
    const auto c_code = table.column("code");
    const auto c_eta_r = table.column("eta_r");
    const auto c_l0 = table.column("l0_km");
    const auto c_alpha = table.column("alpha_eff_db_per_km");
    const auto c_pref = table.column("log10_prefactor");
    const auto c_rms = table.column("rms_residual");
    AlphaGrid grid;
    for (const auto& row : table.rows) {
        if (grid.rows.empty()) {
            grid.code = row[c_code];
            grid.eta_r = parse_double(row[c_eta_r]);
        } else if (grid.code != row[c_code] ||
                   grid.eta_r != parse_double(row[c_eta_r])) {
            throw std::runtime_error(
                "alpha grid file mixes codes or repeater efficiencies; filter it first");
        }
        grid.rows.push_back({parse_double(row[c_l0]), parse_double(row[c_alpha]),
                             parse_double(row[c_pref]), parse_double(row[c_rms])});
    }
    if (grid.rows.empty()) {
        throw std::runtime_error("alpha grid file has no rows");
    }
    return grid;
}

// ---- plot -----------------------------------------------------------------

int run_plot(const std::string& kind, const std::string& in, const std::string& out,
             double alpha0) {
    const CsvTable table = read_csv(in);
    if (kind == "loss-tolerance") {
        const auto c_code = table.column("code");
        const auto c_eta_r = table.column("eta_r");
        const auto c_l0 = table.column("l0_km");
        const auto c_eta = table.column("eta_eff");
        SvgPlot plot("Loss tolerance", "single-photon loss 1 - eta(L0)",
                     "effective transmission rate");
        std::map<std::string, std::vector<std::pair<double, double>>> series;
        double max_loss = 0.0;
        for (const auto& row : table.rows) {
            const double eta_r = parse_double(row[c_eta_r]);
            LossModel model;
            model.alpha0_db_per_km = alpha0;
            model.eta_r = eta_r;
            model.l0_km = parse_double(row[c_l0]);
            const double loss = model.channel_loss();
            max_loss = std::max(max_loss, loss);
            series[row[c_code] + " eta_r=" + row[c_eta_r]].emplace_back(
                loss, parse_double(row[c_eta]));
        }
        for (auto& [name, points] : series) {
            std::sort(points.begin(), points.end());
            plot.add_series(name, std::move(points));
        }
        plot.add_series("direct transmission", {{0.0, 1.0}, {max_loss, 1.0 - max_loss}});
        plot.save(out);
    } else if (kind == "attenuation") {
        const auto c_code = table.column("code");
        const auto c_eta_r = table.column("eta_r");
        const auto c_l0 = table.column("l0_km");
        const auto c_alpha = table.column("alpha_eff_db_per_km");
        SvgPlot plot("Effective attenuation", "repeater spacing L0 (km)",
                     "alpha_eff (dB/km)");
        std::map<std::string, std::vector<std::pair<double, double>>> series;
        for (const auto& row : table.rows) {
            series[row[c_code] + " eta_r=" + row[c_eta_r]].emplace_back(
                parse_double(row[c_l0]), parse_double(row[c_alpha]));
        }
        for (auto& [name, points] : series) {
            std::sort(points.begin(), points.end());
            plot.add_series(name, std::move(points));
        }
        plot.save(out);
    } else if (kind == "etr") {
        const auto c_l = table.column("distance_km");
        const auto c_eta = table.column("eta_eff");
        SvgPlot plot("Optimized effective transmission rate", "total distance L (km)",
                     "eta_eff");
        plot.set_log_y(true);
        std::vector<std::pair<double, double>> points;
        for (const auto& row : table.rows) {
            points.emplace_back(parse_double(row[c_l]), parse_double(row[c_eta]));
        }
        std::sort(points.begin(), points.end());
        plot.add_series("optimized chain", std::move(points));
        plot.save(out);
    } else {
        throw CLI::ValidationError("--kind",
                                   "must be 'loss-tolerance', 'attenuation', or 'etr'");
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();
    CLI::App app{"photonic repeater chain simulator"};
    app.require_subcommand(1);

    // code
    CodeArgs code_args;
    auto* code_cmd = app.add_subcommand("code", "construct and persist a CSS code");
    code_cmd->require_subcommand(1);
    auto* gb_cmd = code_cmd->add_subcommand("gb", "generalized bicycle code");
    gb_cmd->add_option("--ell", code_args.ell, "circulant size");
    gb_cmd->add_option("--a", code_args.a_exponents, "exponents of a(x)")->delimiter(',');
    gb_cmd->add_option("--b", code_args.b_exponents, "exponents of b(x)")->delimiter(',');
    gb_cmd->add_option("--claimed-distance", code_args.claimed_distance, "distance metadata");
    auto* steane_cmd = code_cmd->add_subcommand("steane", "[[7,1,3]] Steane code");
    auto* toric_cmd = code_cmd->add_subcommand("toric", "toric code on a d x d lattice");
    toric_cmd->add_option("--d", code_args.toric_d, "lattice size");
    for (auto* cmd : {gb_cmd, steane_cmd, toric_cmd}) {
        cmd->add_option("--out", code_args.out, "output code JSON path");
        cmd->add_option("--name", code_args.name, "override code name");
        cmd->add_flag("--row-reduce", code_args.row_reduce,
                      "drop redundant parity rows (full-rank form)");
    }

    // foliate
    std::string foliate_code_path;
    std::size_t foliate_hops = 1;
    std::string foliate_dump;
    auto* foliate_cmd = app.add_subcommand("foliate", "build the (2N+1)-site syndrome graphs");
    foliate_cmd->add_option("--code", foliate_code_path, "code JSON path")->required();
    foliate_cmd->add_option("--hops", foliate_hops, "hop count N")->required();
    foliate_cmd->add_option("--dump", foliate_dump, "chain JSON output path");

    // decode
    std::string decode_chain_path;
    std::string decode_erasure;
    std::string decode_decoder = "exact";
    auto* decode_cmd = app.add_subcommand("decode", "decode one erasure pattern");
    decode_cmd->add_option("--chain", decode_chain_path, "chain JSON path")->required();
    decode_cmd->add_option("--erasure", decode_erasure,
                           "comma-separated global qubit indices")->required();
    decode_cmd->add_option("--decoder", decode_decoder, "exact|greedy");

    // simulate
    struct {
        std::string code_path;
        std::size_t hops = 1;
        double eta_r = 1.0;
        double l0_km = 0.0;
        double alpha0 = 0.2;
        std::uint64_t trials = 100000;
        std::uint64_t seed = 1;
        std::string decoder = "exact";
        bool serial = false;
        std::string out;
    } sim_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo ETR estimate");
    sim_cmd->add_option("--code", sim_args.code_path, "code JSON path")->required();
    sim_cmd->add_option("--hops", sim_args.hops, "hop count N")->required();
    sim_cmd->add_option("--eta-r", sim_args.eta_r, "repeater efficiency");
    sim_cmd->add_option("--l0-km", sim_args.l0_km, "repeater spacing (km)");
    sim_cmd->add_option("--alpha0", sim_args.alpha0, "fiber attenuation (dB/km)");
    sim_cmd->add_option("--trials", sim_args.trials, "Monte Carlo iterations");
    sim_cmd->add_option("--seed", sim_args.seed, "RNG seed");
    sim_cmd->add_option("--decoder", sim_args.decoder, "exact|greedy");
    sim_cmd->add_flag("--serial", sim_args.serial, "use the serial reference path");
    sim_cmd->add_option("--out", sim_args.out, "result JSON path (stdout if omitted)");

    // sweep
    SweepArgs sweep_args;
    auto* sweep_cmd = app.add_subcommand("sweep", "grid of Monte Carlo runs to CSV");
    sweep_cmd->add_option("--code", sweep_args.code_path, "code JSON path")->required();
    sweep_cmd->add_option("--hops", sweep_args.hops, "hop counts")->delimiter(',');
    sweep_cmd->add_option("--eta-r", sweep_args.eta_r, "repeater efficiencies")->delimiter(',');
    sweep_cmd->add_option("--l0-km", sweep_args.l0_km, "repeater spacings (km)")->delimiter(',');
    sweep_cmd->add_option("--loss", sweep_args.loss,
                          "channel loss points 1-eta(L0), converted to spacings")
        ->delimiter(',');
    sweep_cmd->add_option("--alpha0", sweep_args.alpha0, "fiber attenuation (dB/km)");
    sweep_cmd->add_option("--trials", sweep_args.trials, "Monte Carlo iterations per cell");
    sweep_cmd->add_option("--seed", sweep_args.seed, "RNG seed");
    sweep_cmd->add_option("--decoder", sweep_args.decoder, "exact|greedy");
    sweep_cmd->add_option("--profile", sweep_args.profile,
                          "trial tier: fig3 (2e6) or fig4 (5e5)");
    sweep_cmd->add_option("--out", sweep_args.out, "grid CSV path")->required();

    // fit
    std::string fit_in;
    std::string fit_out;
    auto* fit_cmd = app.add_subcommand("fit", "fit effective attenuation per spacing");
    fit_cmd->add_option("--in", fit_in, "grid CSV path")->required();
    fit_cmd->add_option("--out", fit_out, "alpha CSV path")->required();

    // optimize
    struct {
        std::string grid_path;
        std::vector<double> distances;
        std::size_t n_max = 0;
        std::string code_path;
        std::string out;
    } opt_args;
    auto* opt_cmd = app.add_subcommand("optimize", "cost-optimal repeater count per distance");
    opt_cmd->add_option("--grid", opt_args.grid_path, "alpha CSV path")->required();
    opt_cmd->add_option("--distance-km", opt_args.distances, "total distances (km)")
        ->required()
        ->delimiter(',');
    opt_cmd->add_option("--n-max", opt_args.n_max, "scan ceiling (default ceil(2L), max 1e5)");
    opt_cmd->add_option("--code", opt_args.code_path,
                        "code JSON used for the n/k cost factor (default 1)");
    opt_cmd->add_option("--out", opt_args.out, "optimization CSV path")->required();

    // plot
    std::string plot_kind;
    std::string plot_in;
    std::string plot_out;
    double plot_alpha0 = 0.2;
    auto* plot_cmd = app.add_subcommand("plot", "render CSV data as an SVG line plot");
    plot_cmd->add_option("--kind", plot_kind, "loss-tolerance|attenuation|etr")->required();
    plot_cmd->add_option("--in", plot_in, "input CSV path")->required();
    plot_cmd->add_option("--out", plot_out, "output SVG path")->required();
    plot_cmd->add_option("--alpha0", plot_alpha0, "fiber attenuation (dB/km)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        app.exit(e);
        return 2;
    }

    try {
        if (gb_cmd->parsed()) {
            emit_code(generalized_bicycle(
                          code_args.ell, Gf2Poly::from_exponents(code_args.a_exponents),
                          Gf2Poly::from_exponents(code_args.b_exponents),
                          code_args.claimed_distance != 0
                              ? std::optional<std::size_t>(code_args.claimed_distance)
                              : std::nullopt),
                      code_args);
        } else if (steane_cmd->parsed()) {
            emit_code(steane(), code_args);
        } else if (toric_cmd->parsed()) {
            emit_code(toric(code_args.toric_d), code_args);
        } else if (foliate_cmd->parsed()) {
            const FoliatedChain chain = foliate(load_code(foliate_code_path), foliate_hops);
            const ConsistencyReport report = subgraph_consistency_check(chain);
            std::cout << "sites=" << chain.sites << " qubits=" << chain.total_qubits
                      << " primal_stabilizers=" << report.primal_stabilizers
                      << " dual_stabilizers=" << report.dual_stabilizers
                      << " channel_qubits=" << report.channel_qubits << "\n";
            if (!foliate_dump.empty()) {
                write_text_atomic(foliate_dump, chain_to_json(chain));
                std::cout << "wrote " << foliate_dump << "\n";
            }
        } else if (decode_cmd->parsed()) {
            std::ifstream in(decode_chain_path);
            if (!in) {
                throw std::runtime_error("cannot open chain file: " + decode_chain_path);
            }
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            const FoliatedChain chain = chain_from_json(text);
            std::vector<std::size_t> globals;
            std::stringstream ss(decode_erasure);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (!tok.empty()) {
                    globals.push_back(std::stoull(tok));
                }
            }
            const DecoderKind decoder = parse_decoder(decode_decoder);
            for (const SyndromeSubgraph* sub : {&chain.primal, &chain.dual}) {
                ErasurePattern pattern{sub->label, BitVector(sub->qubits.size())};
                for (std::size_t c = 0; c < sub->qubits.size(); ++c) {
                    for (const auto g : globals) {
                        if (sub->qubits[c].global == g) {
                            pattern.erased.set(c, true);
                        }
                    }
                }
                const DecodeOutcome outcome = decoder == DecoderKind::exact
                                                  ? decode_exact(*sub, pattern)
                                                  : decode_greedy(*sub, pattern);
                std::cout << (sub->label == SubgraphLabel::primal ? "primal" : "dual")
                          << ": recoverable=[";
                for (std::size_t i = 0; i < outcome.recoverable.size(); ++i) {
                    std::cout << (i == 0 ? "" : ",") << outcome.recoverable[i];
                }
                std::cout << "] success=" << (outcome.success ? "true" : "false") << "\n";
                for (std::size_t i = 0; i < outcome.witnesses.size(); ++i) {
                    if (outcome.witnesses[i]) {
                        std::cout << "  witness[" << i << "]: stabilizer rows ";
                        const auto rows = outcome.witnesses[i]->ones();
                        for (std::size_t t = 0; t < rows.size(); ++t) {
                            std::cout << (t == 0 ? "" : ",") << rows[t];
                        }
                        std::cout << "\n";
                    }
                }
            }
        } else if (sim_cmd->parsed()) {
            const CssCode code = load_code(sim_args.code_path);
            const FoliatedChain chain = foliate(code, sim_args.hops);
            LossModel model;
            model.alpha0_db_per_km = sim_args.alpha0;
            model.eta_r = sim_args.eta_r;
            model.l0_km = sim_args.l0_km;
            const SimResult result = estimate_etr(
                chain, model, sim_args.trials, sim_args.seed, parse_decoder(sim_args.decoder),
                sim_args.serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel);
            const std::string json = sim_result_to_json(result);
            if (sim_args.out.empty()) {
                std::cout << json;
            } else {
                write_text_atomic(sim_args.out, json);
                std::cout << "wrote " << sim_args.out << "\n";
            }
        } else if (sweep_cmd->parsed()) {
            return run_sweep(sweep_args);
        } else if (fit_cmd->parsed()) {
            return run_fit(fit_in, fit_out);
        } else if (opt_cmd->parsed()) {
            const AlphaGrid grid = load_alpha_grid(opt_args.grid_path);
            std::size_t n = 1;
            std::size_t k = 1;
            if (!opt_args.code_path.empty()) {
                const CssCode code = load_code(opt_args.code_path);
                n = code.n;
                k = code.k;
            }
            CsvTable out;
            out.comments = {"folink-version: " + std::string(kVersion)};
            out.header = {"distance_km", "n_opt", "l0_km", "eta_eff", "cost"};
            for (const double l : opt_args.distances) {
                const std::size_t n_max =
                    opt_args.n_max != 0 ? opt_args.n_max : default_n_max(l);
                const OptimizationResult res = optimize_repeaters(grid, l, n_max, n, k);
                out.rows.push_back({format_double(l), std::to_string(res.n_opt),
                                    format_double(res.l0_km), format_double(res.eta_eff),
                                    format_double(res.cost_value)});
            }
            write_csv_atomic(opt_args.out, out);
            std::cout << "wrote " << opt_args.out << " (" << out.rows.size() << " rows)\n";
        } else if (plot_cmd->parsed()) {
            return run_plot(plot_kind, plot_in, plot_out, plot_alpha0);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
