#pragma once

// Binary BCH codes used by the coding-based baseline. Only the two
// single-error-correcting (Hamming) members are supported:
//   BCH(15,11), g(x) = x^4 + x + 1
//   BCH(7,4),   g(x) = x^3 + x + 1
// Codewords are systematic: the k message bits come first, followed by the
// n-k parity bits of m(x) x^(n-k) mod g(x).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace wnc {

using Bits = std::vector<std::uint8_t>;

class CodingScheme {
 public:
  /// Throws std::invalid_argument for anything outside
  /// (n,k) in {(15,11), (7,4)} and L in {4, 8}.
  CodingScheme(int n, int k, int bits_per_symbol);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int t_corr() const noexcept { return 1; }
  int bits_per_symbol() const noexcept { return bits_per_symbol_; }
  /// Symbols per codeword, ceil(n / L).
  int symbols() const noexcept { return (n_ + bits_per_symbol_ - 1) / bits_per_symbol_; }
  /// Generator polynomial, bit i = coefficient of x^i.
  std::uint32_t generator() const noexcept { return generator_; }
  /// "BCH(15,11)-16QAM"
  std::string name() const;

  friend bool operator==(const CodingScheme&, const CodingScheme&) = default;

 private:
  int n_;
  int k_;
  int bits_per_symbol_;
  std::uint32_t generator_;
};

/// The four combinations of the coding-based comparison.
std::vector<CodingScheme> standard_schemes();

struct DecodeResult {
  Bits bits;
  /// The decoder produced a codeword. Always true for these perfect codes;
  /// whether the recovered bits are the transmitted ones is only known by
  /// comparison at the protocol layer.
  bool success = false;
  /// Bit position flipped by the syndrome lookup, or -1.
  int corrected_position = -1;
};

Bits bch_encode(std::span<const std::uint8_t> bits, const CodingScheme& scheme);

/// Single-error correction by syndrome lookup.
DecodeResult bch_decode(std::span<const std::uint8_t> word, const CodingScheme& scheme);

}  // namespace wnc
