#pragma once

// Shared domain types for scalar plants controlled over a wireless link,
// the plant recursion, and cost accounting.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wnc {

/// Raised when a plant (or set of plants) cannot be stabilized by the
/// coding-free controller under the given power budget.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Open-loop gain A and disturbance variance of one plant. |A| > 1.
class PlantParams {
 public:
  PlantParams(double a, double sigma_w2);

  double a() const noexcept { return a_; }
  double sigma_w2() const noexcept { return sigma_w2_; }

 private:
  double a_;
  double sigma_w2_;
};

/// Actuator-side noise variance and the controller's transmit power limit,
/// both in linear power units (W).
class NoisePowers {
 public:
  NoisePowers(double sigma_z2, double p0);

  double sigma_z2() const noexcept { return sigma_z2_; }
  double p0() const noexcept { return p0_; }
  /// SNR budget P0 / sigma_z^2.
  double gamma0() const noexcept { return p0_ / sigma_z2_; }
  /// Disturbance-to-noise ratio sigma_w^2 / sigma_z^2.
  double ssr(const PlantParams& plant) const noexcept { return plant.sigma_w2() / sigma_z2_; }

  /// Same noise, different power limit.
  NoisePowers with_p0(double p0) const { return {sigma_z2_, p0}; }

 private:
  double sigma_z2_;
  double p0_;
};

/// Controller factor K (sent v = K x) and actuator factor G (applied u = G r).
struct GainPair {
  double k = 0.0;
  double g = 0.0;
};

struct PlantState {
  double x = 0.0;
  std::uint64_t t = 0;
};

/// Long-term cost that is either a finite value or provably unbounded
/// (closed loop not mean-square stable). Kept distinct from +inf so that a
/// numerically diverged simulation is never confused with an unstable design.
class PredictedCost {
 public:
  static PredictedCost bounded(double value);
  static PredictedCost unbounded() noexcept { return PredictedCost{}; }

  bool is_bounded() const noexcept { return bounded_; }
  /// Throws std::logic_error when unbounded.
  double value() const;
  double value_or(double fallback) const noexcept { return bounded_ ? value_ : fallback; }

  friend bool operator==(const PredictedCost&, const PredictedCost&) = default;

 private:
  PredictedCost() = default;
  double value_ = 0.0;
  bool bounded_ = false;
};

struct PlantCost {
  int id = 0;
  double cost = 0.0;
  bool stable = true;
};

struct CostReport {
  double j_t = 0.0;
  PredictedCost j_ave_predicted = PredictedCost::unbounded();
  std::vector<PlantCost> per_plant;
  std::size_t horizon = 0;
};

/// x' = A x + u + w, t' = t + 1.
PlantState step_plant(const PlantState& state, double u, double w, const PlantParams& plant) noexcept;

/// Monte-Carlo replicas of one plant's state sequence. Element j of a
/// replica holds x(j + 1), i.e. the state after the (j+1)-th symbol.
struct PlantTrajectories {
  int id = 0;
  std::vector<std::vector<double>> replicas;
};

/// Finite-horizon cost (1/T) sum_{t=1..T} sum_i x_i(t)^2, averaged over the
/// replicas of each plant. With burn_in b > 0 the average runs over
/// t = b+1..T instead. Throws std::invalid_argument("no plants") on an empty
/// set and when a sequence is shorter than the horizon.
CostReport empirical_cost(std::span<const PlantTrajectories> plants, std::size_t horizon,
                          std::size_t burn_in = 0);

/// Streaming version of the per-plant part of empirical_cost: feed x(t) for
/// t = 1..T of each replica, read the mean of x^2 over the counted window.
class CostAccumulator {
 public:
  explicit CostAccumulator(std::size_t burn_in = 0) : burn_in_(burn_in) {}

  /// `t` is 1-based.
  void add(std::uint64_t t, double x) noexcept {
    if (t > burn_in_) {
      sum_ += x * x;
      ++count_;
    }
  }
  void merge(const CostAccumulator& other) noexcept {
    sum_ += other.sum_;
    count_ += other.count_;
  }
  double mean() const noexcept { return count_ == 0 ? 0.0 : sum_ / static_cast<double>(count_); }
  std::size_t count() const noexcept { return count_; }

 private:
  std::size_t burn_in_;
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

/// Closed-loop parameter A + G H K under slow fading.
inline double closed_loop_slow(const PlantParams& plant, const GainPair& gains, double h) noexcept {
  return plant.a() + gains.g * h * gains.k;
}

/// Steady-state E[x^2] = (G^2 sigma_z^2 + sigma_w^2) / (1 - A_c^2) when
/// A_c^2 < 1, otherwise unbounded. Requires h > 0.
PredictedCost predicted_cost_slow(const PlantParams& plant, const NoisePowers& noise,
                                  const GainPair& gains, double h);

/// Controller-side SNR K^2 (G^2 + SSR) / (1 - A_c^2) of a stable slow-fading
/// loop; +inf when A_c^2 >= 1.
double snr_slow(const PlantParams& plant, const NoisePowers& noise, const GainPair& gains,
                double h) noexcept;

}  // namespace wnc
