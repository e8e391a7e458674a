#pragma once

// Channel models. Slow fading uses the positive magnitude |H| (block
// constant over a control process); fast fading uses the signed real part
// H(t) drawn afresh every symbol. The two are distinct types so that the
// formulas cannot be fed the wrong projection.

#include "wnc/rng.hpp"

namespace wnc {

/// |H| of one link, constant within a control process.
class SlowChannel {
 public:
  explicit SlowChannel(double h);
  double h() const noexcept { return h_; }

 private:
  double h_;
};

struct FastSample {
  double h = 0.0;
  int sign = 1;  ///< signum(h), with sign(0) taken as +1
};

/// Zero-mean Gaussian real coefficient, i.i.d. per symbol.
class FastChannel {
 public:
  FastChannel(double sigma_h2, Rng rng);

  double sigma_h2() const noexcept { return sigma_h2_; }
  FastSample sample();

 private:
  double sigma_h2_;
  double sigma_h_;
  Rng rng_;
};

/// h = |c| with c circular complex Gaussian, E|c|^2 = mean_power_gain; so
/// h^2 ~ Exp(mean = mean_power_gain).
SlowChannel sample_rayleigh_block(double mean_power_gain, Rng& rng);

inline FastSample sample_fast_symbol(FastChannel& ch) { return ch.sample(); }

/// h v + z, z ~ N(0, sigma_z2).
double apply_channel(double v, double h, double sigma_z2, Rng& rng);

}  // namespace wnc
