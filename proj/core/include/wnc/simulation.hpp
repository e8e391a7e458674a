#pragma once

// Symbol-level simulation of one coding-free control loop: the controller
// sends v = K x, the channel delivers h v + z, the actuator applies u = G r.

#include <cstddef>
#include <vector>

#include "wnc/model.hpp"
#include "wnc/rng.hpp"

namespace wnc {

struct LoopOptions {
  double x0 = 0.0;
  std::size_t burn_in = 0;
  double divergence_limit = 1e12;
  /// Drop both the plant disturbance and the actuator noise.
  bool noiseless = false;
  /// Fast fading only: apply K(t) = sgn(H(t)) K. Disabled means the
  /// controller ignores the channel (no CSI at all).
  bool sign_flip = true;
};

struct LoopOutcome {
  double cost = 0.0;  ///< mean x(t)^2 over the counted window; +inf if diverged
  bool diverged = false;
};

/// Slow fading with fixed |H| = h. If `path` is given it receives x(1..T).
LoopOutcome simulate_slow_loop(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains,
                               double h, std::size_t horizon, Rng& rng, const LoopOptions& options = {},
                               std::vector<double>* path = nullptr);

/// Fast fading with H(t) ~ N(0, sigma_h2) drawn every symbol.
LoopOutcome simulate_fast_loop(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains,
                               double sigma_h2, std::size_t horizon, Rng& rng, const LoopOptions& options = {},
                               std::vector<double>* path = nullptr);

}  // namespace wnc
