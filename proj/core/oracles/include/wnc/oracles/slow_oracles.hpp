#pragma once

// Brute-force reference solutions for the slow-fading designs. Nothing here
// calls the closed-form optimizers: the grid and sweep searches evaluate only
// the steady-state cost and SNR expressions of a linear loop.

#include <cstddef>
#include <functional>
#include <vector>

#include "wnc/model.hpp"

namespace wnc::oracles {

/// (G^2 sigma_z^2 + sigma_w^2) / (1 - A_c^2), +inf when A_c^2 >= 1.
double steady_cost(double a, double sigma_w2, double sigma_z2, double g, double k, double h);
/// K^2 (G^2 sigma_z^2 + sigma_w^2) / ((1 - A_c^2) sigma_z^2), +inf when unstable.
double steady_snr(double a, double sigma_w2, double sigma_z2, double g, double k, double h);

struct GridOptimum {
  double cost = 0.0;  ///< +inf when no grid point is feasible
  double k = 0.0;
  double g = 0.0;
};

/// Minimizes the steady cost over a resolution x resolution grid in
/// (log|K|, log G), K < 0 < G, keeping points whose SNR is within gamma0.
/// |K| spans [1e-3, 1] * sqrt(gamma0 / SSR); G spans the values that can put
/// A + G H K inside (-1, 1) for that |K| range.
GridOptimum grid_search_single_slow(const PlantParams& plant, const NoisePowers& noise, double h,
                                    std::size_t resolution = 2000);

/// Best cost of one plant at SNR gamma, found by a bisection on |K| along the
/// SNR boundary (independent of the closed form).
double best_cost_at_snr_slow(const PlantParams& plant, double sigma_z2, double h, double gamma);

struct SplitOptimum {
  double total_cost = 0.0;
  double gamma1 = 0.0;
};

/// Sweeps gamma1 over `points` interior values of (floor1, gamma0 - floor2)
/// with gamma2 = gamma0 - gamma1 and the per-plant optimum
///   sigma_w^2 (1 + H^2 gamma) / (1 + H^2 gamma - A^2).
SplitOptimum sweep_split_slow(const PlantParams& plant, const NoisePowers& noise, double h1, double h2,
                              std::size_t points = 10000);

/// Identical actuator factor G: sweeps the split of the reduced budget
/// G^2 gamma0 / (G^2 + SSR) between two plants; each plant takes the largest
/// |K_i G| in its monotone region whose SNR fits its share.
SplitOptimum sweep_split_identical_actuator(const PlantParams& plant, const NoisePowers& noise, double g_common,
                                            double h1, double h2, std::size_t points = 10000);

struct ScalarOptimum {
  double arg = 0.0;
  double value = 0.0;
};

/// Golden-section search for the minimum of a unimodal f on [lo, hi].
ScalarOptimum golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                              std::size_t iterations = 200);

/// Minimizes the steady cost over G > 0 for fixed K < 0 by a dense log grid
/// followed by golden-section refinement.
ScalarOptimum minimize_cost_over_g(const PlantParams& plant, double sigma_z2, double h, double k);

/// Smallest power (dBm) at which every plant of `hs` can be remotely
/// controlled, by bisection on the summed stabilizability floors.
double all_selected_threshold_dbm_slow(const PlantParams& plant, double sigma_z2, const std::vector<double>& hs);

}  // namespace wnc::oracles
