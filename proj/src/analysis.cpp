#include "folink/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "folink/rng.hpp"

namespace folink {

FitResult fit_attenuation(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) {
        throw std::invalid_argument("at least two points are required for a fit");
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [l, eta] : points) {
        if (eta <= 0.0) {
            throw std::invalid_argument("cannot fit zero rate");
        }
        const double y = std::log10(eta);
        sx += l;
        sy += y;
        sxx += l * l;
        sxy += l * y;
    }
    const double n = static_cast<double>(points.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw std::invalid_argument("degenerate fit: all distances equal");
    }
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (const auto& [l, eta] : points) {
        const double r = std::log10(eta) - (intercept + slope * l);
        ss += r * r;
    }
    FitResult fit;
    fit.alpha_eff_db_per_km = -10.0 * slope;
    fit.log10_prefactor = intercept;
    fit.rms_residual = std::sqrt(ss / n);
    fit.points = points.size();
    return fit;
}

AlphaGrid build_alpha_grid(const CssCode& code, double eta_r, std::span<const double> l0_list,
                           std::size_t n_min, std::size_t n_max, std::uint64_t trials,
                           std::uint64_t seed, DecoderKind decoder) {
    if (n_min < 1 || n_max < n_min) {
        throw std::invalid_argument("invalid hop range");
    }
    AlphaGrid grid;
    grid.code = code.name;
    grid.eta_r = eta_r;
    grid.n_min = n_min;
    grid.n_max = n_max;
    std::vector<double> sorted(l0_list.begin(), l0_list.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t idx = 0; idx < sorted.size(); ++idx) {
        const double l0 = sorted[idx];
        LossModel model;
        model.eta_r = eta_r;
        model.l0_km = l0;
        const double eta = model.channel_transmission(l0);
        if (eta <= 0.0 || eta >= 1.0) {
            throw std::invalid_argument("channel transmission out of (0,1) at l0=" +
                                        std::to_string(l0));
        }
        std::vector<std::pair<double, double>> points;
        for (std::size_t hops = n_min; hops <= n_max; ++hops) {
            const FoliatedChain chain = foliate(code, hops);
            const std::uint64_t cell_seed = mix64(seed ^ mix64(idx * 1000003 + hops));
            const SimResult sim = estimate_etr(chain, model, trials, cell_seed, decoder);
            if (sim.eta_eff <= 0.0) {
                std::cerr << "warning: dropping zero-success point (l0=" << l0
                          << " km, hops=" << hops << ") from fit\n";
                continue;
            }
            points.emplace_back(static_cast<double>(hops) * l0, sim.eta_eff);
        }
        try {
            const FitResult fit = fit_attenuation(points);
            grid.rows.push_back({l0, fit.alpha_eff_db_per_km, fit.log10_prefactor,
                                 fit.rms_residual});
        } catch (const std::exception& e) {
            throw std::runtime_error("fit failed at l0=" + std::to_string(l0) + " km: " +
                                     e.what());
        }
    }
    return grid;
}

double eta_eff_model(const AlphaGrid& grid, double l0_km, double l_km) {
    if (grid.rows.empty()) {
        throw std::invalid_argument("empty attenuation grid");
    }
    if (l_km <= 0.0) {
        throw std::invalid_argument("total distance must be positive");
    }
    const double lo = grid.rows.front().l0_km;
    const double hi = grid.rows.back().l0_km;
    if (l0_km < lo || l0_km > hi) {
        throw std::out_of_range("repeater spacing outside grid range");
    }
    double alpha = grid.rows.back().alpha_eff_db_per_km;
    double prefactor = grid.rows.back().log10_prefactor;
    for (std::size_t i = 0; i + 1 < grid.rows.size(); ++i) {
        const auto& a = grid.rows[i];
        const auto& b = grid.rows[i + 1];
        if (l0_km <= b.l0_km) {
            const double t = b.l0_km == a.l0_km ? 0.0 : (l0_km - a.l0_km) / (b.l0_km - a.l0_km);
            alpha = a.alpha_eff_db_per_km + t * (b.alpha_eff_db_per_km - a.alpha_eff_db_per_km);
            prefactor = a.log10_prefactor + t * (b.log10_prefactor - a.log10_prefactor);
            break;
        }
    }
    if (grid.rows.size() == 1) {
        alpha = grid.rows.front().alpha_eff_db_per_km;
        prefactor = grid.rows.front().log10_prefactor;
    }
    const double eta = std::pow(10.0, prefactor - alpha * l_km / 10.0);
    return std::clamp(eta, 0.0, 1.0);
}

double cost(std::size_t repeaters, double l_km, double eta_eff, std::size_t n, std::size_t k) {
    if (l_km <= 0.0) {
        throw std::invalid_argument("total distance must be positive");
    }
    if (k < 1) {
        throw std::invalid_argument("cost needs at least one logical qubit");
    }
    if (eta_eff <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return (static_cast<double>(repeaters) / l_km) / eta_eff *
           (static_cast<double>(n) / static_cast<double>(k));
}

OptimizationResult optimize_repeaters(const AlphaGrid& grid, double l_km, std::size_t n_max,
                                      std::size_t code_n, std::size_t code_k) {
    if (n_max < 1) {
        throw std::invalid_argument("n_max must be at least 1");
    }
    OptimizationResult best;
    best.l_total_km = l_km;
    best.n_max_scanned = n_max;
    best.cost_value = std::numeric_limits<double>::infinity();
    bool feasible = false;
    const double lo = grid.rows.empty() ? 0.0 : grid.rows.front().l0_km;
    const double hi = grid.rows.empty() ? 0.0 : grid.rows.back().l0_km;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const double l0 = l_km / static_cast<double>(n);
        if (l0 < lo || l0 > hi) {
            continue;
        }
        const double eta = eta_eff_model(grid, l0, l_km);
        const double c = cost(n, l_km, eta, code_n, code_k);
        if (c < best.cost_value) {
            best.n_opt = n;
            best.l0_km = l0;
            best.eta_eff = eta;
            best.cost_value = c;
            feasible = true;
        }
    }
    if (!feasible) {
        throw std::runtime_error("grid range insufficient: no feasible repeater count");
    }
    return best;
}

std::size_t default_n_max(double l_km) {
    const double raw = std::ceil(2.0 * l_km);
    return static_cast<std::size_t>(std::min(raw, 1e5));
}

}  // namespace folink
