#include "wnc/simulation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wnc/fading.hpp"
#include "wnc/fast_optimizer.hpp"

namespace wnc {
namespace {

template <class ChannelStep>
LoopOutcome run_loop(const PlantParams& plant, std::size_t horizon, const LoopOptions& options,
                     std::vector<double>* path, Rng& rng, ChannelStep&& actuation) {
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");
  if (options.burn_in >= horizon) throw std::invalid_argument("burn-in must be shorter than the horizon");
  if (path) {
    path->clear();
    path->reserve(horizon);
  }
  CostAccumulator acc(options.burn_in);
  PlantState state{options.x0, 0};
  for (std::size_t t = 0; t < horizon; ++t) {
    const double u = actuation(state.x);
    const double w = options.noiseless ? 0.0 : rng.normal(plant.sigma_w2());
    state = step_plant(state, u, w, plant);
    acc.add(state.t, state.x);
    if (path) path->push_back(state.x);
    if (!(std::abs(state.x) <= options.divergence_limit)) {
      return {std::numeric_limits<double>::infinity(), true};
    }
  }
  return {acc.mean(), false};
}

}  // namespace

LoopOutcome simulate_slow_loop(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains,
                               double h, std::size_t horizon, Rng& rng, const LoopOptions& options,
                               std::vector<double>* path) {
  const double sigma_z2 = noise.sigma_z2();
  return run_loop(plant, horizon, options, path, rng, [&](double x) {
    const double v = gains.k * x;
    const double r = options.noiseless ? h * v : apply_channel(v, h, sigma_z2, rng);
    return gains.g * r;
  });
}

LoopOutcome simulate_fast_loop(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains,
                               double sigma_h2, std::size_t horizon, Rng& rng, const LoopOptions& options,
                               std::vector<double>* path) {
  if (!(sigma_h2 > 0.0)) throw std::invalid_argument("sigma_h2 must be positive");
  const double sigma_z2 = noise.sigma_z2();
  const double sigma_h = std::sqrt(sigma_h2);
  return run_loop(plant, horizon, options, path, rng, [&](double x) {
    const double h = sigma_h * rng.normal();
    const int sign = h < 0.0 ? -1 : 1;
    const double v = options.sign_flip ? partial_csi_control_symbol(x, gains, sign) : gains.k * x;
    const double r = options.noiseless ? h * v : apply_channel(v, h, sigma_z2, rng);
    return gains.g * r;
  });
}

}  // namespace wnc
