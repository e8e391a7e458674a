#pragma once

// Experiment recipes: state traces, coding-free vs coding-based cost sweeps,
// multi-plant optimal-parameter sweeps (slow and fast fading), and the
// Rayleigh mode-selection sweep.
//
// Every random draw is keyed by (recipe, grid index, series, replica), and
// replica results are reduced in index order, so a (spec, seed) pair gives
// the same SweepResult for any worker count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wnc/bch.hpp"
#include "wnc/model.hpp"
#include "wnc/sweep_result.hpp"

namespace wnc {

enum class ExperimentKind { trace, single_compare, multi_slow_sweep, multi_fast_sweep, selection_sweep };
enum class FadingRegime { slow, fast };

std::string to_string(ExperimentKind kind);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::single_compare;
  PlantParams plant{1.5, 0.1};
  double sigma_z2 = 1e-7;  ///< W (-40 dBm)
  /// Controller power limits swept, W, strictly increasing.
  std::vector<double> p0_grid;
  /// Power limit of the trace recipe, W.
  double p0 = 0.1;

  std::vector<double> h{0.01};              ///< slow-fading |H_i|
  std::vector<double> sigma_h2{1e-4, 4e-4};  ///< fast-fading variances

  /// Slow multi-plant sweep extras: the identical-actuator design with this
  /// common G, and the identical-controller design with this common K < 0.
  std::optional<double> g_common;
  std::optional<double> k_common;

  std::vector<double> closed_loop{0.5, 0.9, 1.01};  ///< trace A_c values
  bool noiseless = false;                           ///< trace only

  std::vector<CodingScheme> schemes = standard_schemes();

  double rayleigh_mean_gain = 1e-4;
  std::vector<int> m0{2, 5, 10};
  std::size_t realizations = 10000;

  std::size_t horizon = 500;
  std::size_t replicas = 1000;
  std::size_t burn_in = 0;
  double x0 = 0.0;
  std::uint64_t seed = 1;
  /// 0 = hardware concurrency.
  unsigned threads = 0;
};

/// Throws std::invalid_argument describing the first violated field.
void validate(const ExperimentSpec& spec);

/// Gains realizing closed-loop parameter `a_c` on channel h: G K = (A_c - A)/H
/// with K on the SNR boundary when that exists, otherwise the single-plant
/// optimal G for the budget (or G = 1 when even that is infeasible).
GainPair implied_gains(const PlantParams& plant, const NoisePowers& noise, double h, double a_c);

/// Rows t = 1..T. Per A_c: one sample path x(t) (replica 0), running J_t
/// averaged over replicas, and the steady-state prediction.
SweepResult run_trace(const ExperimentSpec& spec);

/// Per P0 (dBm): simulated and predicted coding-free cost with optimal gains
/// on h[0], and the simulated cost of each coded scheme.
SweepResult run_single_compare(const ExperimentSpec& spec);

/// Per P0 (dBm): selected count, and for each plant the allocated power,
/// K, G, predicted and simulated cost; totals. With g_common / k_common set
/// (slow only) the selected count and predicted total of the reduced
/// signalling designs are appended.
SweepResult run_multi_sweep(const ExperimentSpec& spec, FadingRegime regime);

/// Per P0 (dBm): average number of plants selected for coding-free control
/// among M0 Rayleigh links, for each M0. The same channel draws are reused at
/// every power.
SweepResult run_selection_sweep(const ExperimentSpec& spec);

/// Dispatches on spec.kind (multi sweeps by regime).
SweepResult run_experiment(const ExperimentSpec& spec);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

struct ReplicaEstimate {
  double mean = 0.0;
  bool diverged = false;
};

/// Mean of `replica(i)` over i in [0, replicas), reduced in index order.
/// A replica returning a non-finite value marks the estimate diverged.
ReplicaEstimate average_replicas(std::size_t replicas, unsigned threads,
                                 const std::function<double(std::size_t)>& replica);

}  // namespace wnc
