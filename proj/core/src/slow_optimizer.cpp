#include "wnc/slow_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wnc/root_finding.hpp"

namespace wnc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack below which a budget is treated as sitting on its floor.
constexpr double kBoundaryTol = 1e-12;
constexpr double kBudgetTol = 1e-12;

void require_positive_channels(std::span<const SlowLink> links) {
  for (const auto& l : links) {
    if (!(l.h > 0.0)) {
      throw std::invalid_argument("channel coefficient of plant " + std::to_string(l.id) + " must be positive");
    }
  }
}

std::vector<SlowLink> sorted_by_channel(std::span<const SlowLink> links) {
  std::vector<SlowLink> sorted(links.begin(), links.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const SlowLink& x, const SlowLink& y) {
    if (x.h != y.h) return x.h > y.h;
    return x.id < y.id;
  });
  return sorted;
}

double floor_sum(std::span<const SlowLink> links, const PlantParams& plant) {
  double s = 0.0;
  for (const auto& l : links) s += snr_floor_slow(plant, l.h);
  return s;
}

PredictedCost sum_costs(const std::vector<PredictedCost>& costs) {
  double total = 0.0;
  for (const auto& c : costs) {
    if (!c.is_bounded()) return PredictedCost::unbounded();
    total += c.value();
  }
  return PredictedCost::bounded(total);
}

// k~(lambda') for one plant of the identical-actuator problem, written in the
// cancellation-free form for D >= 0.
double k_tilde_at(double a, double h, double lambda) {
  const double d = (1.0 - a * a) * lambda + h * h;
  const double c = 4.0 * a * a * h * h * lambda;
  const double root = std::sqrt(d * d + c);
  if (d >= 0.0) {
    return -2.0 * a * h / (d + root);
  }
  return (d - root) / (2.0 * a * h * lambda);
}

double snr_share_tilde(double a, double h, double k_tilde) {
  const double ac = a + h * k_tilde;
  return k_tilde * k_tilde / (1.0 - ac * ac);
}

}  // namespace

double snr_floor_slow(const PlantParams& plant, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("channel coefficient h must be positive");
  }
  return (plant.a() * plant.a() - 1.0) / (h * h);
}

bool feasible_single(const PlantParams& plant, const NoisePowers& noise, double h) {
  return snr_floor_slow(plant, h) <= noise.gamma0();
}

SingleSlowDesign optimize_single_slow_at(const PlantParams& plant, double ssr, double h, double gamma) {
  const double a = plant.a();
  if (snr_floor_slow(plant, h) > gamma) {
    throw InfeasibleError("plant not remotely stabilizable");
  }
  const double s = h * h * gamma;
  const double slack = 1.0 + s - a * a;

  SingleSlowDesign out;
  out.a_c_star = a / (1.0 + s);
  out.gk_product = (out.a_c_star - a) / h;
  if (slack <= kBoundaryTol * (1.0 + s)) {
    out.boundary = true;
    out.gains = {0.0, kInf};
    out.gk_product = -(a * a - 1.0) / (a * h);
    out.j_star = PredictedCost::unbounded();
    return out;
  }
  out.gains.k = -std::sqrt(gamma * slack / ((1.0 + s) * ssr));
  out.gains.g = a * h * std::sqrt(gamma * ssr / ((1.0 + s) * slack));
  out.j_star = PredictedCost::bounded(plant.sigma_w2() * (1.0 + s) / slack);
  return out;
}

SingleSlowDesign optimize_single_slow(const PlantParams& plant, const NoisePowers& noise, double h) {
  return optimize_single_slow_at(plant, noise.ssr(plant), h, noise.gamma0());
}

std::vector<int> select_plants_slow(std::span<const SlowLink> links, const PlantParams& plant,
                                    const NoisePowers& noise) {
  require_positive_channels(links);
  std::vector<int> selected;
  double used = 0.0;
  for (const auto& l : sorted_by_channel(links)) {
    used += snr_floor_slow(plant, l.h);
    if (used > noise.gamma0()) break;
    selected.push_back(l.id);
  }
  return selected;
}

SlowAllocationResult allocate_multi_slow(std::span<const SlowLink> selected, const PlantParams& plant,
                                         const NoisePowers& noise) {
  if (selected.empty()) {
    throw std::invalid_argument("no plants selected");
  }
  require_positive_channels(selected);
  const double gamma0 = noise.gamma0();
  const double a = plant.a();
  const double floors = floor_sum(selected, plant);
  if (floors > gamma0) {
    std::ostringstream msg;
    msg << "selected plants not jointly stabilizable: sum of SNR floors " << floors << " exceeds budget " << gamma0;
    throw InfeasibleError(msg.str());
  }

  SlowAllocationResult out;
  auto& alloc = out.allocation;
  for (const auto& l : selected) alloc.selected.push_back(l.id);

  auto share = [&](const SlowLink& l, double lambda) {
    const double floor = snr_floor_slow(plant, l.h);
    return std::max(floor + std::abs(a) / (l.h * std::sqrt(lambda)), floor);
  };

  if (selected.size() == 1) {
    alloc.gamma = {gamma0};
    const double extra = gamma0 - floors;
    alloc.lambda = extra > 0.0 ? std::pow(std::abs(a) / (selected[0].h * extra), 2) : kInf;
  } else if (gamma0 <= floors * (1.0 + kBoundaryTol)) {
    for (const auto& l : selected) alloc.gamma.push_back(snr_floor_slow(plant, l.h));
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
  auto& design = out.design;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const SingleSlowDesign d = optimize_single_slow_at(plant, ssr, selected[i].h, alloc.gamma[i]);
    design.gains.push_back(d.gains);
    design.closed_loop.push_back(d.a_c_star);
    design.predicted_costs.push_back(d.j_star);
    design.boundary.push_back(d.boundary);
  }
  design.total_cost = sum_costs(design.predicted_costs);
  return out;
}

// --- identical actuator factors -------------------------------------------

bool feasible_identical_actuator(std::span<const SlowLink> selected, const PlantParams& plant,
                                 const NoisePowers& noise, double g_common) {
  const double g2 = g_common * g_common;
  const double gamma_tilde0 = g2 * noise.gamma0() / (g2 + noise.ssr(plant));
  return floor_sum(selected, plant) <= gamma_tilde0;
}

std::vector<int> select_plants_identical_actuator(std::span<const SlowLink> links, const PlantParams& plant,
                                                  const NoisePowers& noise, double g_common) {
  require_positive_channels(links);
  const double g2 = g_common * g_common;
  const double gamma_tilde0 = g2 * noise.gamma0() / (g2 + noise.ssr(plant));
  std::vector<int> selected;
  double used = 0.0;
  for (const auto& l : sorted_by_channel(links)) {
    used += snr_floor_slow(plant, l.h);
    if (used > gamma_tilde0) break;
    selected.push_back(l.id);
  }
  return selected;
}

IdenticalActuatorDesign optimize_identical_actuator(std::span<const SlowLink> selected, const PlantParams& plant,
                                                    const NoisePowers& noise, double g_common) {
  if (selected.empty()) {
    throw std::invalid_argument("no plants selected");
  }
  if (!(g_common > 0.0) || !std::isfinite(g_common)) {
    throw std::invalid_argument("common actuator factor must be positive");
  }
  require_positive_channels(selected);
  const double a = plant.a();
  const double g2 = g_common * g_common;

  IdenticalActuatorDesign out;
  out.g = g_common;
  out.gamma_tilde0 = g2 * noise.gamma0() / (g2 + noise.ssr(plant));

  const double floors = floor_sum(selected, plant);
  if (floors > out.gamma_tilde0) {
    std::ostringstream msg;
    msg << "identical-actuator criterion violated: sum (A^2-1)/H_i^2 = " << floors
        << " exceeds G^2 gamma0/(G^2+SSR) = " << out.gamma_tilde0;
    throw InfeasibleError(msg.str());
  }

  double unconstrained_snr = 0.0;
  for (const auto& l : selected) unconstrained_snr += a * a / (l.h * l.h);

  if (out.gamma_tilde0 >= unconstrained_snr) {
    out.unconstrained = true;
    for (const auto& l : selected) out.k_tilde.push_back(-a / l.h);
  } else if (out.gamma_tilde0 <= floors * (1.0 + kBoundaryTol)) {
    out.lambda = kInf;
    for (const auto& l : selected) out.k_tilde.push_back(-(a * a - 1.0) / (a * l.h));
  } else {
    auto total = [&](double lambda) {
      double t = 0.0;
      for (const auto& l : selected) t += snr_share_tilde(a, l.h, k_tilde_at(a, l.h, lambda));
      return t;
    };
    const MultiplierRoot root = solve_budget_multiplier(total, out.gamma_tilde0, kBudgetTol);
    out.lambda = root.lambda;
    for (const auto& l : selected) out.k_tilde.push_back(k_tilde_at(a, l.h, root.lambda));
  }

  for (std::size_t i = 0; i < selected.size(); ++i) {
    const GainPair gains{out.k_tilde[i] / g_common, g_common};
    out.k.push_back(gains.k);
    out.predicted_costs.push_back(predicted_cost_slow(plant, noise, gains, selected[i].h));
  }
  out.total_cost = sum_costs(out.predicted_costs);
  return out;
}

// --- identical controller factors -----------------------------------------

IdenticalControllerDesign optimize_identical_controller(std::span<const SlowLink> selected,
                                                        const PlantParams& plant, const NoisePowers& noise,
                                                        double k_common) {
  if (selected.empty()) {
    throw std::invalid_argument("no plants selected");
  }
  if (!(k_common < 0.0)) {
    throw std::invalid_argument("common controller factor must be negative");
  }
  if (std::abs(k_common) < kDegenerateControllerFactor) {
    throw std::invalid_argument("common controller factor is degenerate (|K| too small)");
  }
  require_positive_channels(selected);
  const double a = plant.a();
  const double ssr = noise.ssr(plant);

  IdenticalControllerDesign out;
  out.k = k_common;
  for (const auto& l : selected) {
    const double hk = l.h * k_common;
    const double e = 1.0 - a * a + hk * hk * ssr;
    const double c = 4.0 * a * a * hk * hk * ssr;
    const double root = std::sqrt(e * e + c);
    const double g = e >= 0.0 ? -2.0 * a * hk * ssr / (e + root) : (e - root) / (2.0 * a * hk);
    out.g.push_back(g);
    out.closed_loop.push_back(a + hk * g);
    out.predicted_costs.push_back(predicted_cost_slow(plant, noise, {k_common, g}, l.h));
  }
  out.total_cost = sum_costs(out.predicted_costs);
  out.cost_limit = noise.p0() / (k_common * k_common);
  out.feasible = out.total_cost.is_bounded() && out.total_cost.value() <= out.cost_limit;
  return out;
}

std::vector<int> select_plants_identical_controller(std::span<const SlowLink> links, const PlantParams& plant,
                                                    const NoisePowers& noise, double k_common) {
  require_positive_channels(links);
  const auto sorted = sorted_by_channel(links);
  std::vector<int> selected;
  for (std::size_t m = 1; m <= sorted.size(); ++m) {
    const auto design = optimize_identical_controller(std::span(sorted.data(), m), plant, noise, k_common);
    if (!design.feasible) break;
    selected.push_back(sorted[m - 1].id);
  }
  return selected;
}

}  // namespace wnc
