#pragma once

#include <cmath>
#include <stdexcept>

namespace wnc {

struct MultiplierRoot {
  double lambda = 0.0;
  double total = 0.0;  ///< budget consumed at `lambda`
  int iterations = 0;
};

/// Finds the Lagrange multiplier lambda > 0 with total(lambda) == target.
///
/// `total` must be continuous and strictly decreasing in lambda, unbounded as
/// lambda -> 0+ and below `target` as lambda -> inf (the per-plant SNR shares
/// of the power-allocation problems all have this shape). A bracket is found
/// by doubling/halving from lambda = 1, then refined by bisection on
/// log(lambda) until |total - target| <= rel_tol * target or the bracket
/// collapses to adjacent doubles.
template <class Total>
MultiplierRoot solve_budget_multiplier(Total&& total, double target, double rel_tol = 1e-12) {
  constexpr int kMaxBracketSteps = 4096;
  constexpr int kMaxBisections = 4096;

  MultiplierRoot out;
  double lo = 1.0;
  double hi = 1.0;
  double t = total(1.0);
  if (t > target) {
    // consumed too much: raise lambda
    int steps = 0;
    while (t > target) {
      lo = hi;
      hi *= 2.0;
      t = total(hi);
      if (++steps > kMaxBracketSteps || !std::isfinite(hi)) {
        throw std::logic_error("multiplier bracket not found (budget infeasible?)");
      }
    }
  } else {
    int steps = 0;
    while (t <= target) {
      hi = lo;
      lo *= 0.5;
      t = total(lo);
      if (++steps > kMaxBracketSteps || lo == 0.0) {
        throw std::logic_error("multiplier bracket not found (budget infeasible?)");
      }
    }
  }
  // total(lo) > target >= total(hi)
  double mid = hi;
  double t_mid = total(hi);
  for (int i = 0; i < kMaxBisections; ++i) {
    if (std::abs(t_mid - target) <= rel_tol * target) break;
    mid = std::sqrt(lo) * std::sqrt(hi);
    if (!(mid > lo && mid < hi)) {
      mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
    }
    t_mid = total(mid);
    ++out.iterations;
    if (t_mid > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.lambda = mid;
  out.total = t_mid;
  return out;
}

}  // namespace wnc
