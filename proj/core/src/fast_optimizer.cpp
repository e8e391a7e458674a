#include "wnc/fast_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wnc/root_finding.hpp"

namespace wnc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryTol = 1e-12;
constexpr double kBudgetTol = 1e-12;

void require_positive_variances(std::span<const FastLink> links) {
  for (const auto& l : links) {
    if (!(l.sigma_h2 > 0.0)) {
      throw std::invalid_argument("sigma_h2 of plant " + std::to_string(l.id) + " must be positive");
    }
  }
}

struct PlantOptimum {
  GainPair gains;
  double u = 0.0;
  double e_ac2 = 0.0;
  PredictedCost cost = PredictedCost::unbounded();
  bool boundary = false;
};

// Optimum of one plant at SNR share `gamma` (caller checked gamma >= floor).
PlantOptimum optimize_at(const PlantParams& plant, double ssr, double sigma_h2, double gamma) {
  const double a = plant.a();
  const double mean_abs_h = std::sqrt(2.0 * sigma_h2 / std::numbers::pi);
  PlantOptimum out;
  out.u = -mean_abs_h * a * gamma / (1.0 + sigma_h2 * gamma);
  out.e_ac2 = expected_ac2(plant, sigma_h2, out.u);
  const double margin = (1.0 - out.e_ac2) * gamma;
  const double slack = margin - out.u * out.u;
  if (slack <= kBoundaryTol * margin || !(margin > 0.0)) {
    out.boundary = true;
    out.gains = {0.0, kInf};
    return out;
  }
  out.gains.k = -std::sqrt(slack / ssr);
  out.gains.g = out.u / out.gains.k;
  out.cost = PredictedCost::bounded(gamma * plant.sigma_w2() / slack);
  return out;
}

void append(FastDesign& design, const PlantOptimum& p) {
  design.gains.push_back(p.gains);
  design.u_star.push_back(p.u);
  design.e_ac2.push_back(p.e_ac2);
  design.predicted_costs.push_back(p.cost);
  design.boundary.push_back(p.boundary);
}

PredictedCost sum_costs(const std::vector<PredictedCost>& costs) {
  double total = 0.0;
  for (const auto& c : costs) {
    if (!c.is_bounded()) return PredictedCost::unbounded();
    total += c.value();
  }
  return PredictedCost::bounded(total);
}

}  // namespace

double partial_csi_control_symbol(double x, const GainPair& gains, int h_sign) {
  const double s = h_sign < 0 ? -1.0 : 1.0;
  return s * gains.k * x;
}

double expected_ac2(const PlantParams& plant, double sigma_h2, double u) {
  if (!(sigma_h2 > 0.0)) {
    throw std::invalid_argument("sigma_h2 must be positive");
  }
  const double a = plant.a();
  return sigma_h2 * u * u + 2.0 * std::sqrt(2.0 * sigma_h2 / std::numbers::pi) * a * u + a * a;
}

bool stabilizable_fast(const PlantParams& plant) noexcept { return plant.a() * plant.a() * kEta < 1.0; }

double snr_floor_fast(const PlantParams& plant, double sigma_h2) {
  if (!(sigma_h2 > 0.0)) {
    throw std::invalid_argument("sigma_h2 must be positive");
  }
  if (!stabilizable_fast(plant)) return kInf;
  const double a2 = plant.a() * plant.a();
  return (a2 - 1.0) / ((1.0 - kEta * a2) * sigma_h2);
}

bool feasible_single_fast(const PlantParams& plant, const NoisePowers& noise, double sigma_h2) {
  const double q = sigma_h2 * noise.gamma0();
  return plant.a() * plant.a() <= (1.0 + q) / (1.0 + kEta * q);
}

PredictedCost predicted_cost_fast(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains,
                                  double sigma_h2) {
  const double e = expected_ac2(plant, sigma_h2, gains.g * gains.k);
  if (!(e < 1.0)) return PredictedCost::unbounded();
  const double cost = (gains.g * gains.g * noise.sigma_z2() + plant.sigma_w2()) / (1.0 - e);
  if (!std::isfinite(cost)) return PredictedCost::unbounded();
  return PredictedCost::bounded(cost);
}

double snr_fast(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains, double sigma_h2) {
  const double e = expected_ac2(plant, sigma_h2, gains.g * gains.k);
  if (!(e < 1.0)) return kInf;
  return gains.k * gains.k * (gains.g * gains.g + noise.ssr(plant)) / (1.0 - e);
}

FastDesign optimize_single_fast(const PlantParams& plant, const NoisePowers& noise, double sigma_h2) {
  if (!(sigma_h2 > 0.0)) {
    throw std::invalid_argument("sigma_h2 must be positive");
  }
  if (!stabilizable_fast(plant) || !feasible_single_fast(plant, noise, sigma_h2)) {
    throw InfeasibleError("plant not remotely stabilizable under fast fading");
  }
  FastDesign design;
  append(design, optimize_at(plant, noise.ssr(plant), sigma_h2, noise.gamma0()));
  design.total_cost = design.predicted_costs.front();
  return design;
}

std::vector<int> select_plants_fast(std::span<const FastLink> links, const PlantParams& plant,
                                    const NoisePowers& noise) {
  require_positive_variances(links);
  if (!stabilizable_fast(plant)) return {};
  std::vector<FastLink> sorted(links.begin(), links.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const FastLink& x, const FastLink& y) {
    if (x.sigma_h2 != y.sigma_h2) return x.sigma_h2 > y.sigma_h2;
    return x.id < y.id;
  });
  std::vector<int> selected;
  double used = 0.0;
  for (const auto& l : sorted) {
    used += snr_floor_fast(plant, l.sigma_h2);
    if (used > noise.gamma0()) break;
    selected.push_back(l.id);
  }
  return selected;
}

FastAllocationResult allocate_multi_fast(std::span<const FastLink> selected, const PlantParams& plant,
                                         const NoisePowers& noise) {
  if (selected.empty()) {
    throw std::invalid_argument("no plants selected");
  }
  require_positive_variances(selected);
  if (!stabilizable_fast(plant)) {
    throw InfeasibleError("plant gain exceeds the partial-CSI stabilizability limit A^2 eta < 1");
  }
  const double gamma0 = noise.gamma0();
  const double a = plant.a();
  const double a2 = a * a;
  double floors = 0.0;
  for (const auto& l : selected) floors += snr_floor_fast(plant, l.sigma_h2);
  if (floors > gamma0) {
    std::ostringstream msg;
    msg << "selected plants not jointly stabilizable under fast fading: sum of SNR floors " << floors
        << " exceeds budget " << gamma0;
    throw InfeasibleError(msg.str());
  }

  FastAllocationResult out;
  auto& alloc = out.allocation;
  for (const auto& l : selected) alloc.selected.push_back(l.id);

  const double inv_pi_factor = std::sqrt(2.0 / std::numbers::pi);
  auto share = [&](const FastLink& l, double lambda) {
    const double floor = snr_floor_fast(plant, l.sigma_h2);
    const double g =
        ((a2 - 1.0) + inv_pi_factor * std::abs(a) * std::sqrt(l.sigma_h2) / std::sqrt(lambda)) /
        ((1.0 - kEta * a2) * l.sigma_h2);
    // The clamp never binds for a positive lambda; kept for bracket overshoot.
    return std::max(g, floor);
  };

  if (selected.size() == 1) {
    alloc.gamma = {gamma0};
    const double extra = (gamma0 - floors) * (1.0 - kEta * a2) * selected[0].sigma_h2;
    alloc.lambda =
        extra > 0.0 ? std::pow(inv_pi_factor * std::abs(a) * std::sqrt(selected[0].sigma_h2) / extra, 2) : kInf;
  } else if (gamma0 <= floors * (1.0 + kBoundaryTol)) {
    for (const auto& l : selected) alloc.gamma.push_back(snr_floor_fast(plant, l.sigma_h2));
    alloc.lambda = kInf;
  } else {
    auto total = [&](double lambda) {
      double t = 0.0;
      for (const auto& l : selected) t += share(l, lambda);
      return t;
    };
    const MultiplierRoot root = solve_budget_multiplier(total, gamma0, kBudgetTol);
    alloc.lambda = root.lambda;
    for (const auto& l : selected) alloc.gamma.push_back(share(l, root.lambda));
  }

  const double ssr = noise.ssr(plant);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    append(out.design, optimize_at(plant, ssr, selected[i].sigma_h2, alloc.gamma[i]));
  }
  out.design.total_cost = sum_costs(out.design.predicted_costs);
  return out;
}

}  // namespace wnc
