#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "folink/monte_carlo.hpp"

namespace folink {

struct FitResult {
    double alpha_eff_db_per_km = 0.0;
    double log10_prefactor = 0.0;
    double rms_residual = 0.0;  // in log10 space
    std::size_t points = 0;
};

/// Least squares on log10(eta_eff) = log10_prefactor − (alpha_eff/10)·L.
/// Requires at least two points with positive eta_eff.
FitResult fit_attenuation(std::span<const std::pair<double, double>> points);

struct AlphaGridRow {
    double l0_km = 0.0;
    double alpha_eff_db_per_km = 0.0;
    double log10_prefactor = 0.0;
    double rms_residual = 0.0;
};

/// Fitted effective-attenuation table over repeater spacing, one code and
/// one repeater efficiency per grid. Rows are sorted by strictly increasing
/// L0; queries outside the range are refused rather than clamped.
struct AlphaGrid {
    std::string code;
    double eta_r = 1.0;
    std::size_t n_min = 2;
    std::size_t n_max = 30;
    std::vector<AlphaGridRow> rows;
};

/// For each spacing, simulates eta_eff over hops n_min..n_max and fits the
/// exponential model. Zero-success points are dropped from the fit with a
/// warning on stderr.
AlphaGrid build_alpha_grid(const CssCode& code, double eta_r, std::span<const double> l0_list,
                           std::size_t n_min, std::size_t n_max, std::uint64_t trials,
                           std::uint64_t seed, DecoderKind decoder = DecoderKind::exact);

/// Piecewise-linear interpolation of alpha_eff and log10_prefactor in L0,
/// then 10^(log10_prefactor − alpha_eff·L/10) clamped to [0,1]. Errors when
/// L0 falls outside the grid range.
double eta_eff_model(const AlphaGrid& grid, double l0_km, double l_km);

/// Eq.-style cost: (N/L)/eta_eff · (n/k); infinite when eta_eff is zero.
double cost(std::size_t repeaters, double l_km, double eta_eff, std::size_t n, std::size_t k);

struct OptimizationResult {
    double l_total_km = 0.0;
    std::size_t n_opt = 0;
    double l0_km = 0.0;
    double eta_eff = 0.0;
    double cost_value = 0.0;
    std::size_t n_max_scanned = 0;
};

/// Scans N = 1..n_max, keeping the feasible arg-min of the cost function
/// (ties broken toward smaller N). Errors when no N puts L/N inside the grid.
OptimizationResult optimize_repeaters(const AlphaGrid& grid, double l_km, std::size_t n_max,
                                      std::size_t code_n, std::size_t code_k);

/// Default scan ceiling: ceil(2·L km) capped at 10^5.
std::size_t default_n_max(double l_km);

}  // namespace folink
