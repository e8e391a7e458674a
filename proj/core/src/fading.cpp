#include "wnc/fading.hpp"

#include <cmath>
#include <stdexcept>

namespace wnc {

SlowChannel::SlowChannel(double h) : h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("slow-fading coefficient must be positive");
  }
}

FastChannel::FastChannel(double sigma_h2, Rng rng)
    : sigma_h2_(sigma_h2), sigma_h_(std::sqrt(sigma_h2)), rng_(std::move(rng)) {
  if (!(sigma_h2 > 0.0)) {
    throw std::invalid_argument("sigma_h2 must be positive");
  }
}

FastSample FastChannel::sample() {
  const double h = sigma_h_ * rng_.normal();
  return {h, h < 0.0 ? -1 : 1};
}

SlowChannel sample_rayleigh_block(double mean_power_gain, Rng& rng) {
  if (!(mean_power_gain > 0.0)) {
    throw std::invalid_argument("mean power gain must be positive");
  }
  const double per_dim = mean_power_gain / 2.0;
  double re = 0.0;
  double im = 0.0;
  // A zero magnitude has probability zero; redraw to keep SlowChannel's h > 0.
  do {
    re = rng.normal(per_dim);
    im = rng.normal(per_dim);
  } while (re == 0.0 && im == 0.0);
  return SlowChannel(std::hypot(re, im));
}

double apply_channel(double v, double h, double sigma_z2, Rng& rng) {
  if (!(sigma_z2 > 0.0)) {
    throw std::invalid_argument("sigma_z2 must be positive");
  }
  return h * v + rng.normal(sigma_z2);
}

}  // namespace wnc
