#include "wnc/model.hpp"

#include <cmath>
#include <limits>

namespace wnc {

PlantParams::PlantParams(double a, double sigma_w2) : a_(a), sigma_w2_(sigma_w2) {
  if (!(std::abs(a) > 1.0)) {
    throw std::invalid_argument("plant gain A must satisfy |A| > 1 (open-loop unstable)");
  }
  if (!(sigma_w2 > 0.0)) {
    throw std::invalid_argument("sigma_w2 must be positive");
  }
}

NoisePowers::NoisePowers(double sigma_z2, double p0) : sigma_z2_(sigma_z2), p0_(p0) {
  if (!(sigma_z2 > 0.0)) {
    throw std::invalid_argument("sigma_z2 must be positive");
  }
  if (!(p0 > 0.0)) {
    throw std::invalid_argument("p0 must be positive");
  }
}

PredictedCost PredictedCost::bounded(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("bounded cost must be finite and non-negative");
  }
  PredictedCost c;
  c.value_ = value;
  c.bounded_ = true;
  return c;
}

double PredictedCost::value() const {
  if (!bounded_) {
    throw std::logic_error("cost is unbounded");
  }
  return value_;
}

PlantState step_plant(const PlantState& state, double u, double w, const PlantParams& plant) noexcept {
  return {plant.a() * state.x + u + w, state.t + 1};
}

CostReport empirical_cost(std::span<const PlantTrajectories> plants, std::size_t horizon,
                          std::size_t burn_in) {
  if (plants.empty()) {
    throw std::invalid_argument("no plants");
  }
  if (horizon == 0) {
    throw std::invalid_argument("horizon must be at least 1");
  }
  if (burn_in >= horizon) {
    throw std::invalid_argument("burn-in must be shorter than the horizon");
  }

  CostReport report;
  report.horizon = horizon;
  for (const auto& plant : plants) {
    if (plant.replicas.empty()) {
      throw std::invalid_argument("plant " + std::to_string(plant.id) + " has no replicas");
    }
    CostAccumulator acc(burn_in);
    for (const auto& seq : plant.replicas) {
      if (seq.size() < horizon) {
        throw std::invalid_argument("trajectory of plant " + std::to_string(plant.id) +
                                    " is shorter than the horizon");
      }
      for (std::size_t j = 0; j < horizon; ++j) {
        acc.add(j + 1, seq[j]);
      }
    }
    const double cost = acc.mean();
    report.per_plant.push_back({plant.id, cost, std::isfinite(cost)});
    report.j_t += cost;
  }
  return report;
}

PredictedCost predicted_cost_slow(const PlantParams& plant, const NoisePowers& noise,
                                  const GainPair& gains, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("channel coefficient h must be positive");
  }
  const double ac = closed_loop_slow(plant, gains, h);
  const double margin = 1.0 - ac * ac;
  if (!(margin > 0.0)) {
    return PredictedCost::unbounded();
  }
  const double cost = (gains.g * gains.g * noise.sigma_z2() + plant.sigma_w2()) / margin;
  if (!std::isfinite(cost)) {
    return PredictedCost::unbounded();
  }
  return PredictedCost::bounded(cost);
}

double snr_slow(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains,
                double h) noexcept {
  const double ac = closed_loop_slow(plant, gains, h);
  const double margin = 1.0 - ac * ac;
  if (!(margin > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  return gains.k * gains.k * (gains.g * gains.g + noise.ssr(plant)) / margin;
}

}  // namespace wnc
