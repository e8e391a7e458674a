#pragma once

// Square 2^L-QAM with per-axis Gray mapping. The first L/2 bits of a symbol
// select the in-phase level, the last L/2 the quadrature level; within an
// axis, level index i in [0, m) carries the Gray word i ^ (i >> 1) and sits at
// amplitude (2i - (m - 1)) * scale. Scale is chosen so the average symbol
// energy over the full constellation equals `power`.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "wnc/bch.hpp"

namespace wnc {

using Symbol = std::complex<double>;

class QamConstellation {
 public:
  /// L in {2, 4, 6, 8}; power >= 0.
  QamConstellation(int bits_per_symbol, double power);

  int bits_per_symbol() const noexcept { return bits_; }
  int levels_per_axis() const noexcept { return levels_; }
  double scale() const noexcept { return scale_; }

  /// Point for an L-bit label (MSB first across I then Q).
  Symbol point(std::uint32_t label) const;
  /// ML (nearest point) label for an already equalized sample.
  std::uint32_t detect(Symbol equalized) const;

 private:
  double axis_amplitude(std::uint32_t gray) const;
  std::uint32_t axis_detect(double y) const;

  int bits_;
  int levels_;
  double scale_;
};

/// Modulates `bits` into ceil(size / L) symbols; the final symbol is padded
/// with zero bits.
std::vector<Symbol> qam_modulate(std::span<const std::uint8_t> bits, int bits_per_symbol, double power);

/// Equalizes by the known real channel h and returns the L bits of the
/// nearest constellation point. With zero power every point is the origin and
/// the all-zero label is returned.
Bits qam_detect(Symbol received, double h, int bits_per_symbol, double power);

}  // namespace wnc
