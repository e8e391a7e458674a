#include "wnc/oracles/fast_oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "wnc/units.hpp"

namespace wnc::oracles {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ac2_formula(double a, double sigma_h2, double u) {
  // Only used inside the numeric search below; the closed-form optimizer is
  // never consulted.
  return sigma_h2 * u * u + 2.0 * std::sqrt(2.0 * sigma_h2 / std::numbers::pi) * a * u + a * a;
}

}  // namespace

double expected_ac2_monte_carlo(double a, double sigma_h2, double u, std::size_t draws, Rng& rng) {
  const double sd = std::sqrt(sigma_h2);
  double sum = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double h = sd * rng.normal();
    // Sign-flipped K turns G K H into u |H|.
    const double ac = a + u * std::abs(h);
    sum += ac * ac;
  }
  return sum / static_cast<double>(draws);
}

double best_cost_at_snr_fast(const PlantParams& plant, double sigma_h2, double gamma) {
  const double a = plant.a();
  const double u_floor = -2.0 * a * std::sqrt(2.0 / (std::numbers::pi * sigma_h2));
  const auto neg_slack = [&](double u) { return -((1.0 - ac2_formula(a, sigma_h2, u)) * gamma - u * u); };
  const auto opt = golden_minimize(neg_slack, u_floor, 0.0);
  const double slack = -opt.value;
  if (!(slack > 0.0)) return kInf;
  return gamma * plant.sigma_w2() / slack;
}

SplitOptimum sweep_split_fast(const PlantParams& plant, const NoisePowers& noise, double sigma_h2_1,
                              double sigma_h2_2, std::size_t points) {
  const double a2 = plant.a() * plant.a();
  const double eta = 1.0 - 2.0 / std::numbers::pi;
  const double f1 = (a2 - 1.0) / ((1.0 - eta * a2) * sigma_h2_1);
  const double f2 = (a2 - 1.0) / ((1.0 - eta * a2) * sigma_h2_2);
  const double gamma0 = noise.gamma0();
  SplitOptimum out;
  out.total_cost = kInf;
  for (std::size_t j = 1; j <= points; ++j) {
    const double g1 = f1 + (gamma0 - f2 - f1) * static_cast<double>(j) / static_cast<double>(points + 1);
    const double c = best_cost_at_snr_fast(plant, sigma_h2_1, g1) + best_cost_at_snr_fast(plant, sigma_h2_2, gamma0 - g1);
    if (c < out.total_cost) {
      out.total_cost = c;
      out.gamma1 = g1;
    }
  }
  return out;
}

double all_selected_threshold_dbm_fast(const PlantParams& plant, double sigma_z2,
                                       const std::vector<double>& sigma_h2) {
  const double a2 = plant.a() * plant.a();
  const double eta = 1.0 - 2.0 / std::numbers::pi;
  if (!(a2 * eta < 1.0)) return kInf;
  const auto admits = [&](double dbm) {
    const double gamma0 = dbm_to_watts(dbm) / sigma_z2;
    double need = 0.0;
    for (double s : sigma_h2) need += (a2 - 1.0) / ((1.0 - a2 * eta) * s);
    return need <= gamma0;
  };
  double lo = -200.0, hi = 200.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (admits(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace wnc::oracles
