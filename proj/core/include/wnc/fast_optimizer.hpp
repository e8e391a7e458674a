#pragma once

// Coding-free control over fast (per-symbol Gaussian) fading with partial CSI:
// the controller knows only sgn(H(t)) and flips the sign of K accordingly.

#include <numbers>
#include <span>
#include <vector>

#include "wnc/model.hpp"
#include "wnc/slow_optimizer.hpp"

namespace wnc {

/// 1 - 2/pi. A plant is stabilizable under partial CSI iff A^2 * eta < 1.
inline constexpr double kEta = 1.0 - 2.0 / std::numbers::pi;

struct FastLink {
  int id = 0;
  double sigma_h2 = 0.0;
};

struct FastDesign {
  std::vector<GainPair> gains;  ///< K < 0, G > 0; K's sign is flipped per symbol
  std::vector<double> u_star;   ///< G K
  std::vector<double> e_ac2;    ///< E[A_c^2]
  std::vector<PredictedCost> predicted_costs;
  std::vector<bool> boundary;
  PredictedCost total_cost = PredictedCost::unbounded();
  double eta = kEta;
};

struct FastAllocationResult {
  FastDesign design;
  SnrAllocation allocation;
};

/// v = sgn(h) K x. A zero sign is treated as +1.
double partial_csi_control_symbol(double x, const GainPair& gains, int h_sign);

/// E[(A + U |H|)^2] = sigma_h^2 U^2 + 2 sqrt(2 sigma_h^2 / pi) A U + A^2.
double expected_ac2(const PlantParams& plant, double sigma_h2, double u);

/// A^2 (1 - 2/pi) < 1.
bool stabilizable_fast(const PlantParams& plant) noexcept;

/// Minimum SNR (A^2 - 1) / ((1 - eta A^2) sigma_h^2); +inf when the plant is
/// not stabilizable at any power.
double snr_floor_fast(const PlantParams& plant, double sigma_h2);

/// A^2 <= (1 + sigma_h^2 gamma0) / (1 + eta sigma_h^2 gamma0).
bool feasible_single_fast(const PlantParams& plant, const NoisePowers& noise, double sigma_h2);

/// Steady-state cost (G^2 sigma_z^2 + sigma_w^2) / (1 - E[A_c^2]) of the
/// sign-flipping law with fixed |K|, G.
PredictedCost predicted_cost_fast(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains,
                                  double sigma_h2);

/// Controller SNR K^2 (G^2 + SSR) / (1 - E[A_c^2]); +inf when unstable.
double snr_fast(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains, double sigma_h2);

/// Single-plant optimum at the noise's SNR budget. Throws InfeasibleError.
FastDesign optimize_single_fast(const PlantParams& plant, const NoisePowers& noise, double sigma_h2);

/// Sort by sigma_h^2 descending (ties by id); longest prefix within budget.
/// Empty when the plant is not stabilizable under partial CSI.
std::vector<int> select_plants_fast(std::span<const FastLink> links, const PlantParams& plant,
                                    const NoisePowers& noise);

/// Optimal SNR split over `selected`:
///   gamma_i = ((A^2-1) + sqrt(2/pi) A sigma_{h,i} / sqrt(lambda)) / ((1 - eta A^2) sigma_{h,i}^2)
/// with lambda the root of sum_i gamma_i = gamma0.
FastAllocationResult allocate_multi_fast(std::span<const FastLink> selected, const PlantParams& plant,
                                         const NoisePowers& noise);

}  // namespace wnc
