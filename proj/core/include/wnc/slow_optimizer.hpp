#pragma once

// Closed-form controller/actuator design for slow (block) fading: single
// plant, multi-plant SNR allocation, and the two reduced-signalling variants
// (identical actuator factors / identical controller factors), together with
// the mode-selection criteria deciding which plants are controlled remotely.

#include <span>
#include <vector>

#include "wnc/model.hpp"

namespace wnc {

/// A plant id and its slow-fading magnitude |H|.
struct SlowLink {
  int id = 0;
  double h = 0.0;
};

/// Per-plant SNR shares gamma_i (aligned with `selected`) and the multiplier
/// that produced them. lambda is +inf when the budget is exactly the sum of
/// the floors and 0 when no multiplier was needed.
struct SnrAllocation {
  std::vector<double> gamma;
  std::vector<int> selected;
  double lambda = 0.0;
};

/// Optimum of one slow-fading plant at SNR budget gamma.
struct SingleSlowDesign {
  GainPair gains;
  double a_c_star = 0.0;
  PredictedCost j_star = PredictedCost::unbounded();
  /// G*K*, always finite; the only meaningful quantity when `boundary`.
  double gk_product = 0.0;
  /// Budget sits exactly on the feasibility floor: K* = 0, G* unbounded and
  /// the cost diverges. `gains` holds {0, +inf}.
  bool boundary = false;
};

struct SlowDesign {
  std::vector<GainPair> gains;
  std::vector<double> closed_loop;
  std::vector<PredictedCost> predicted_costs;
  std::vector<bool> boundary;
  PredictedCost total_cost = PredictedCost::unbounded();
};

/// Minimum SNR (A^2 - 1) / H^2 needed to stabilize one plant.
double snr_floor_slow(const PlantParams& plant, double h);

/// (A^2 - 1) / H^2 <= gamma0. Requires h > 0.
bool feasible_single(const PlantParams& plant, const NoisePowers& noise, double h);

/// Optimal gains at the noise's SNR budget. Throws InfeasibleError
/// ("plant not remotely stabilizable") when the floor exceeds the budget.
SingleSlowDesign optimize_single_slow(const PlantParams& plant, const NoisePowers& noise, double h);

/// Same optimum with the SNR budget given explicitly (the per-plant solve of
/// the multi-plant allocation).
SingleSlowDesign optimize_single_slow_at(const PlantParams& plant, double ssr, double h, double gamma);

/// Sorts links by h descending (ties by id) and returns the ids of the
/// longest prefix whose floors sum to at most gamma0.
std::vector<int> select_plants_slow(std::span<const SlowLink> links, const PlantParams& plant,
                                    const NoisePowers& noise);

struct SlowAllocationResult {
  SnrAllocation allocation;
  SlowDesign design;
};

/// Optimal SNR split over `selected` (in the given order) and the resulting
/// per-plant designs. gamma_i = (A^2 - 1)/H_i^2 + A / (H_i sqrt(lambda)), with
/// lambda the root of sum_i gamma_i = gamma0 found by bisection. Throws
/// InfeasibleError when the floors exceed the budget.
SlowAllocationResult allocate_multi_slow(std::span<const SlowLink> selected, const PlantParams& plant,
                                         const NoisePowers& noise);

// --- identical actuator factors -------------------------------------------

struct IdenticalActuatorDesign {
  double g = 0.0;
  double gamma_tilde0 = 0.0;  ///< G^2 gamma0 / (G^2 + SSR)
  bool unconstrained = false; ///< gamma_tilde0 >= sum A^2 / H_i^2
  double lambda = 0.0;        ///< multiplier lambda' (0 when unconstrained)
  std::vector<double> k_tilde;  ///< K_i G
  std::vector<double> k;        ///< K_i
  std::vector<PredictedCost> predicted_costs;
  PredictedCost total_cost = PredictedCost::unbounded();
};

/// sum_i (A^2-1)/H_i^2 <= G^2 gamma0 / (G^2 + SSR).
bool feasible_identical_actuator(std::span<const SlowLink> selected, const PlantParams& plant,
                                 const NoisePowers& noise, double g_common);

/// Longest prefix (h descending) meeting feasible_identical_actuator.
std::vector<int> select_plants_identical_actuator(std::span<const SlowLink> links, const PlantParams& plant,
                                                  const NoisePowers& noise, double g_common);

/// Optimal controller factors when every actuator uses `g_common` (> 0).
/// Throws InfeasibleError naming the identical-actuator criterion otherwise.
IdenticalActuatorDesign optimize_identical_actuator(std::span<const SlowLink> selected, const PlantParams& plant,
                                                    const NoisePowers& noise, double g_common);

// --- identical controller factors -----------------------------------------

struct IdenticalControllerDesign {
  double k = 0.0;
  std::vector<double> g;
  std::vector<double> closed_loop;
  std::vector<PredictedCost> predicted_costs;
  PredictedCost total_cost = PredictedCost::unbounded();
  /// P0 / K^2: the largest sum cost the power limit allows with this K.
  double cost_limit = 0.0;
  /// total cost <= cost_limit.
  bool feasible = false;
};

/// Below this |K| the identical-controller design is rejected as degenerate
/// (G* diverges as K -> 0).
inline constexpr double kDegenerateControllerFactor = 1e-12;

/// Optimal actuator factor for each plant given a shared K < 0. Feasibility
/// against the power limit is checked afterwards and reported in the result.
/// Throws std::invalid_argument for K >= 0 or |K| below the degeneracy limit.
IdenticalControllerDesign optimize_identical_controller(std::span<const SlowLink> selected,
                                                        const PlantParams& plant, const NoisePowers& noise,
                                                        double k_common);

/// Longest prefix (h descending) whose identical-controller design is feasible.
std::vector<int> select_plants_identical_controller(std::span<const SlowLink> links, const PlantParams& plant,
                                                    const NoisePowers& noise, double k_common);

}  // namespace wnc
