#include "wnc/coded_control.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wnc {

CodedLink::CodedLink(const CodingScheme& scheme, double power, double h, double sigma_z2)
    : scheme_(scheme),
      constellation_(scheme.bits_per_symbol(), power),
      h_(h),
      noise_sd_(std::sqrt(sigma_z2)) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("coded link needs a positive channel coefficient");
  }
  if (!(sigma_z2 > 0.0)) {
    throw std::invalid_argument("sigma_z2 must be positive");
  }
}

bool CodedLink::deliver(std::span<const std::uint8_t> info, Rng& rng) const {
  const Bits codeword = bch_encode(info, scheme_);
  const int l = scheme_.bits_per_symbol();
  const int d = scheme_.symbols();
  const int n = scheme_.n();

  // Whitening mask shared by both ends, fresh per codeword. It makes the
  // error pattern independent of the payload: without it, labels on the
  // constellation edge fail less often than interior ones.
  const std::uint64_t mask = rng.bits();

  std::array<std::uint8_t, 32> received{};
  for (int s = 0; s < d; ++s) {
    std::uint32_t label = 0;
    for (int j = 0; j < l; ++j) {
      const int idx = s * l + j;
      const std::uint32_t bit = idx < n ? (codeword[static_cast<std::size_t>(idx)] ^ ((mask >> idx) & 1u)) : 0u;
      label = (label << 1) | bit;
    }
    const Symbol tx = constellation_.point(label);
    const Symbol noise{noise_sd_ * rng.normal(), noise_sd_ * rng.normal()};
    const Symbol rx = h_ * tx + noise;
    const std::uint32_t detected = constellation_.detect(rx / h_);
    for (int j = 0; j < l; ++j) {
      const int idx = s * l + j;
      received[static_cast<std::size_t>(idx)] = ((detected >> (l - 1 - j)) & 1u) ^ ((mask >> idx) & 1u);
    }
  }
  // Padding bits of the final symbol are dropped before decoding.
  const DecodeResult decoded = bch_decode(std::span(received.data(), static_cast<std::size_t>(n)), scheme_);
  if (!decoded.success) return false;
  for (std::size_t i = 0; i < info.size(); ++i) {
    if (decoded.bits[i] != info[i]) return false;
  }
  return true;
}

bool CodedLink::deliver_random(Rng& rng) const {
  std::array<std::uint8_t, 16> info{};
  const auto k = static_cast<std::size_t>(scheme_.k());
  const std::uint64_t word = rng.bits();
  for (std::size_t i = 0; i < k; ++i) info[i] = (word >> i) & 1u;
  return deliver(std::span(info.data(), k), rng);
}

CodedControlResult run_coded_control(const PlantParams& plant, const NoisePowers& noise, double h,
                                     const CodingScheme& scheme, std::size_t horizon, Rng& rng,
                                     const CodedControlOptions& options) {
  const auto d = static_cast<std::size_t>(scheme.symbols());
  if (horizon < d) {
    throw std::invalid_argument("horizon shorter than one coded epoch");
  }
  if (options.burn_in >= horizon) {
    throw std::invalid_argument("burn-in must be shorter than the horizon");
  }
  const CodedLink link(scheme, noise.p0(), h, noise.sigma_z2());
  const double a = plant.a();
  const double a_pow_d = std::pow(a, static_cast<double>(d));

  CodedControlResult out;
  out.boundary_x2.reserve(horizon / d);
  CostAccumulator acc(options.burn_in);
  PlantState state{options.x0, 0};
  double pending_u = 0.0;
  bool pending_ok = false;

  for (std::size_t t = 0; t < horizon; ++t) {
    const std::size_t offset = t % d;
    const bool epoch_open = (t - offset) + d <= horizon;
    if (offset == 0 && epoch_open) {
      pending_u = -a_pow_d * state.x;
      pending_ok = link.deliver_random(rng) && !options.jam_detector;
    }
    double u = 0.0;
    const bool epoch_end = epoch_open && offset == d - 1;
    if (epoch_end) {
      ++out.epochs;
      if (pending_ok) {
        u = pending_u;
        ++out.successes;
      }
    }
    state = step_plant(state, u, rng.normal(plant.sigma_w2()), plant);
    acc.add(state.t, state.x);
    if (epoch_end) out.boundary_x2.push_back(state.x * state.x);
    if (!(std::abs(state.x) <= options.divergence_limit)) {
      out.diverged = true;
      break;
    }
  }

  out.report.horizon = horizon;
  const double cost = out.diverged ? std::numeric_limits<double>::infinity() : acc.mean();
  out.report.j_t = cost;
  out.report.per_plant.push_back({0, cost, !out.diverged});
  return out;
}

double estimate_success_probability(const CodingScheme& scheme, const NoisePowers& noise, double h,
                                    std::size_t trials, Rng& rng) {
  if (trials == 0) {
    throw std::invalid_argument("trials must be positive");
  }
  const CodedLink link(scheme, noise.p0(), h, noise.sigma_z2());
  std::size_t ok = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    if (link.deliver_random(rng)) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(trials);
}

std::vector<double> dropout_boundary_variance(const PlantParams& plant, int d, double success_probability,
                                              double v0, std::size_t epochs) {
  if (d < 1) throw std::invalid_argument("latency must be at least one symbol");
  const double a2 = plant.a() * plant.a();
  const double growth = std::pow(a2, d);
  double disturbance = 0.0;
  for (int j = 0; j < d; ++j) disturbance += plant.sigma_w2() * std::pow(a2, j);
  std::vector<double> v;
  v.reserve(epochs);
  double current = v0;
  for (std::size_t e = 0; e < epochs; ++e) {
    current = (1.0 - success_probability) * growth * current + disturbance;
    v.push_back(current);
  }
  return v;
}

}  // namespace wnc
