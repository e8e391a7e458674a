#include "wnc/qam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wnc {

QamConstellation::QamConstellation(int bits_per_symbol, double power)
    : bits_(bits_per_symbol), levels_(1 << (bits_per_symbol / 2)), scale_(0.0) {
  if (bits_per_symbol < 2 || bits_per_symbol > 16 || bits_per_symbol % 2 != 0) {
    throw std::invalid_argument("square QAM needs an even number of bits per symbol, got " +
                                std::to_string(bits_per_symbol));
  }
  if (!(power >= 0.0) || !std::isfinite(power)) {
    throw std::invalid_argument("QAM power must be non-negative");
  }
  // mean of (2i - (m-1))^2 over one axis is (m^2 - 1) / 3; two axes
  const double m = static_cast<double>(levels_);
  const double unit_energy = 2.0 * (m * m - 1.0) / 3.0;
  scale_ = std::sqrt(power / unit_energy);
}

double QamConstellation::axis_amplitude(std::uint32_t gray) const {
  std::uint32_t index = gray;
  for (std::uint32_t shift = gray >> 1; shift != 0; shift >>= 1) index ^= shift;
  return (2.0 * static_cast<double>(index) - static_cast<double>(levels_ - 1)) * scale_;
}

std::uint32_t QamConstellation::axis_detect(double y) const {
  const double pos = std::round((y / scale_ + static_cast<double>(levels_ - 1)) / 2.0);
  const double clamped = std::min(std::max(pos, 0.0), static_cast<double>(levels_ - 1));
  const auto index = static_cast<std::uint32_t>(clamped);
  return index ^ (index >> 1);
}

Symbol QamConstellation::point(std::uint32_t label) const {
  const int half = bits_ / 2;
  const std::uint32_t mask = (1u << half) - 1u;
  return {axis_amplitude((label >> half) & mask), axis_amplitude(label & mask)};
}

std::uint32_t QamConstellation::detect(Symbol equalized) const {
  if (scale_ == 0.0) return 0;
  const int half = bits_ / 2;
  return (axis_detect(equalized.real()) << half) | axis_detect(equalized.imag());
}

std::vector<Symbol> qam_modulate(std::span<const std::uint8_t> bits, int bits_per_symbol, double power) {
  const QamConstellation constellation(bits_per_symbol, power);
  const std::size_t l = static_cast<std::size_t>(bits_per_symbol);
  const std::size_t count = (bits.size() + l - 1) / l;
  std::vector<Symbol> symbols;
  symbols.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::uint32_t label = 0;
    for (std::size_t j = 0; j < l; ++j) {
      const std::size_t idx = s * l + j;
      const std::uint32_t bit = idx < bits.size() ? (bits[idx] & 1u) : 0u;
      label = (label << 1) | bit;
    }
    symbols.push_back(constellation.point(label));
  }
  return symbols;
}

Bits qam_detect(Symbol received, double h, int bits_per_symbol, double power) {
  if (h == 0.0) {
    throw std::invalid_argument("QAM detection needs a nonzero channel coefficient");
  }
  const QamConstellation constellation(bits_per_symbol, power);
  const std::uint32_t label = constellation.detect(received / h);
  Bits out(static_cast<std::size_t>(bits_per_symbol));
  for (int j = 0; j < bits_per_symbol; ++j) {
    out[static_cast<std::size_t>(j)] = (label >> (bits_per_symbol - 1 - j)) & 1u;
  }
  return out;
}

}  // namespace wnc
