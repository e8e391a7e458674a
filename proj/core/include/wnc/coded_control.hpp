#pragma once

// Coding-based baseline: deadbeat control computed every d symbols, carried
// by a BCH codeword over d Gray-mapped QAM symbols, applied only when the
// actuator recovers the transmitted bits.
//
// Timing (symbols t = 0..T-1, state x(0) = x0): an epoch starts at every
// t = k d with t + d <= T. The controller computes u_c = -A^d x(t) and sends
// it over symbols t..t+d-1; the actuator applies it at t + d - 1 if the
// information bits were recovered, otherwise applies nothing. u = 0 at every
// other symbol. On success x(t + d) is driven to the accumulated disturbance.
//
// Quantization is taken as distortion-free: each epoch carries k random
// information bits as a stand-in payload, and on exact recovery the actuator
// applies the exact real value u_c. The link is a real positive coefficient
// h with complex AWGN of variance sigma_z^2 per real dimension; the
// constellation's average energy is P0. Coded bits are whitened with a
// fresh shared mask per codeword, so delivery odds do not depend on the
// payload.

#include <cstddef>
#include <vector>

#include "wnc/bch.hpp"
#include "wnc/model.hpp"
#include "wnc/qam.hpp"
#include "wnc/rng.hpp"

namespace wnc {

/// One codeword's trip through encoder, modulator, channel, detector and
/// decoder.
class CodedLink {
 public:
  CodedLink(const CodingScheme& scheme, double power, double h, double sigma_z2);

  const CodingScheme& scheme() const noexcept { return scheme_; }

  /// Sends `info` (k bits); returns true iff the decoded bits equal `info`.
  bool deliver(std::span<const std::uint8_t> info, Rng& rng) const;
  /// Sends k uniformly random information bits.
  bool deliver_random(Rng& rng) const;

 private:
  CodingScheme scheme_;
  QamConstellation constellation_;
  double h_;
  double noise_sd_;
};

struct CodedControlOptions {
  double x0 = 0.0;
  std::size_t burn_in = 0;
  /// Force every detection to fail (no control ever reaches the plant).
  bool jam_detector = false;
  double divergence_limit = 1e12;
};

struct CodedControlResult {
  CostReport report;
  std::size_t epochs = 0;
  std::size_t successes = 0;
  bool diverged = false;
  /// x((k+1) d)^2 for each completed epoch k; shorter if the run diverged.
  std::vector<double> boundary_x2;
};

/// Simulates one control process of `horizon` symbols. Requires
/// horizon >= scheme.symbols().
CodedControlResult run_coded_control(const PlantParams& plant, const NoisePowers& noise, double h,
                                     const CodingScheme& scheme, std::size_t horizon, Rng& rng,
                                     const CodedControlOptions& options = {});

/// Fraction of `trials` random payloads delivered intact.
double estimate_success_probability(const CodingScheme& scheme, const NoisePowers& noise, double h,
                                    std::size_t trials, Rng& rng);

/// i.i.d.-dropout abstraction of the protocol: epoch-boundary variance after
/// each of `epochs` epochs, V+ = (1-p) A^(2d) V + sigma_w^2 sum_{j<d} A^(2j),
/// starting from V = v0.
std::vector<double> dropout_boundary_variance(const PlantParams& plant, int d, double success_probability,
                                              double v0, std::size_t epochs);

}  // namespace wnc
