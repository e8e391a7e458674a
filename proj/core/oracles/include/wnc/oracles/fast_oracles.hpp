#pragma once

#include <cstddef>
#include <vector>

#include "wnc/model.hpp"
#include "wnc/rng.hpp"
#include "wnc/oracles/slow_oracles.hpp"

namespace wnc::oracles {

/// Sample mean of (A + u |h|)^2 with h ~ N(0, sigma_h2): the closed-loop
/// parameter seen by the sign-flipping law with G K = u.
double expected_ac2_monte_carlo(double a, double sigma_h2, double u, std::size_t draws, Rng& rng);

/// Best cost of one fast-fading plant at SNR gamma: minimizes
/// gamma sigma_w^2 / ((1 - E[A_c^2](U)) gamma - U^2) over U < 0 numerically.
double best_cost_at_snr_fast(const PlantParams& plant, double sigma_h2, double gamma);

/// Fast-fading analogue of sweep_split_slow; the per-plant cost is
/// best_cost_at_snr_fast.
SplitOptimum sweep_split_fast(const PlantParams& plant, const NoisePowers& noise, double sigma_h2_1,
                              double sigma_h2_2, std::size_t points = 10000);

/// Smallest power (dBm) admitting all plants under the partial-CSI criterion.
double all_selected_threshold_dbm_fast(const PlantParams& plant, double sigma_z2,
                                       const std::vector<double>& sigma_h2);

}  // namespace wnc::oracles
