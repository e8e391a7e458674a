#include "wnc/bch.hpp"

#include <array>
#include <stdexcept>

namespace wnc {
namespace {

int degree(std::uint32_t poly) {
  int d = -1;
  while (poly != 0) {
    poly >>= 1;
    ++d;
  }
  return d;
}

// Remainder of a(x) modulo g(x) over GF(2).
std::uint32_t poly_mod(std::uint32_t a, std::uint32_t g) {
  const int dg = degree(g);
  for (int d = degree(a); d >= dg; d = degree(a)) {
    a ^= g << (d - dg);
  }
  return a;
}

// Codeword bit order: position j < k holds message bit j (coefficient of
// x^(n-1-j)); positions k..n-1 hold parity (coefficients x^(n-k-1)..x^0).
std::uint32_t pack(std::span<const std::uint8_t> word) {
  std::uint32_t v = 0;
  for (auto b : word) v = (v << 1) | (b & 1u);
  return v;
}

Bits unpack(std::uint32_t v, int n) {
  Bits out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = (v >> (n - 1 - i)) & 1u;
  return out;
}

void require_binary(std::span<const std::uint8_t> bits) {
  for (auto b : bits) {
    if (b > 1) throw std::invalid_argument("bit values must be 0 or 1");
  }
}

}  // namespace

CodingScheme::CodingScheme(int n, int k, int bits_per_symbol)
    : n_(n), k_(k), bits_per_symbol_(bits_per_symbol), generator_(0) {
  if (n == 15 && k == 11) {
    generator_ = 0b10011;  // x^4 + x + 1
  } else if (n == 7 && k == 4) {
    generator_ = 0b1011;  // x^3 + x + 1
  } else {
    throw std::invalid_argument("unsupported BCH code (" + std::to_string(n) + "," + std::to_string(k) +
                                "); supported: (15,11), (7,4)");
  }
  if (bits_per_symbol != 4 && bits_per_symbol != 8) {
    throw std::invalid_argument("unsupported QAM order 2^" + std::to_string(bits_per_symbol) +
                                "; supported: 16-QAM, 256-QAM");
  }
}

std::string CodingScheme::name() const {
  return "BCH(" + std::to_string(n_) + "," + std::to_string(k_) + ")-" + std::to_string(1 << bits_per_symbol_) +
         "QAM";
}

std::vector<CodingScheme> standard_schemes() {
  return {CodingScheme(15, 11, 4), CodingScheme(7, 4, 8), CodingScheme(15, 11, 8), CodingScheme(7, 4, 4)};
}

Bits bch_encode(std::span<const std::uint8_t> bits, const CodingScheme& scheme) {
  if (static_cast<int>(bits.size()) != scheme.k()) {
    throw std::invalid_argument("BCH encode expects " + std::to_string(scheme.k()) + " bits, got " +
                                std::to_string(bits.size()));
  }
  require_binary(bits);
  const int r = scheme.n() - scheme.k();
  const std::uint32_t shifted = pack(bits) << r;
  return unpack(shifted | poly_mod(shifted, scheme.generator()), scheme.n());
}

DecodeResult bch_decode(std::span<const std::uint8_t> word, const CodingScheme& scheme) {
  if (static_cast<int>(word.size()) != scheme.n()) {
    throw std::invalid_argument("BCH decode expects " + std::to_string(scheme.n()) + " bits, got " +
                                std::to_string(word.size()));
  }
  require_binary(word);
  const int n = scheme.n();
  const std::uint32_t g = scheme.generator();

  // syndrome -> position of the single error producing it
  std::array<int, 16> table{};
  table.fill(-1);
  for (int pos = 0; pos < n; ++pos) {
    table[poly_mod(1u << (n - 1 - pos), g)] = pos;
  }

  std::uint32_t received = pack(word);
  DecodeResult out;
  const std::uint32_t syndrome = poly_mod(received, g);
  if (syndrome != 0) {
    out.corrected_position = table[syndrome];
    if (out.corrected_position < 0) {
      // Unreachable for perfect codes; reported as a decoding failure.
      out.bits = Bits(word.begin(), word.begin() + scheme.k());
      return out;
    }
    received ^= 1u << (n - 1 - out.corrected_position);
  }
  const Bits corrected = unpack(received, n);
  out.bits.assign(corrected.begin(), corrected.begin() + scheme.k());
  out.success = true;
  return out;
}

}  // namespace wnc
