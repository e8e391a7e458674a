#include "wnc/oracles/slow_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wnc/units.hpp"

namespace wnc::oracles {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double split_cost(double floor1, double floor2, double gamma0, std::size_t points,
                  const std::function<double(double, double)>& total, double* best_gamma1) {
  const double lo = floor1;
  const double hi = gamma0 - floor2;
  if (!(hi > lo)) throw std::invalid_argument("split sweep needs budget above the summed floors");
  double best = kInf;
  for (std::size_t j = 1; j <= points; ++j) {
    const double g1 = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(points + 1);
    const double c = total(g1, gamma0 - g1);
    if (c < best) {
      best = c;
      if (best_gamma1) *best_gamma1 = g1;
    }
  }
  return best;
}

}  // namespace

double steady_cost(double a, double sigma_w2, double sigma_z2, double g, double k, double h) {
  const double ac = a + g * h * k;
  if (!(ac * ac < 1.0)) return kInf;
  return (g * g * sigma_z2 + sigma_w2) / (1.0 - ac * ac);
}

double steady_snr(double a, double sigma_w2, double sigma_z2, double g, double k, double h) {
  const double ac = a + g * h * k;
  if (!(ac * ac < 1.0)) return kInf;
  return k * k * (g * g * sigma_z2 + sigma_w2) / ((1.0 - ac * ac) * sigma_z2);
}

ScalarOptimum golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                              std::size_t iterations) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - r * (hi - lo);
  double d = lo + r * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (std::size_t i = 0; i < iterations; ++i) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

GridOptimum grid_search_single_slow(const PlantParams& plant, const NoisePowers& noise, double h,
                                    std::size_t resolution) {
  if (!(plant.a() > 1.0)) throw std::invalid_argument("grid oracle assumes A > 1");
  if (resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  const double a = plant.a();
  const double sw = plant.sigma_w2();
  const double sz = noise.sigma_z2();
  const double gamma0 = noise.gamma0();

  // K^2 SSR <= gamma0 (1 - A_c^2) <= gamma0 bounds |K| from above.
  const double k_max = std::sqrt(gamma0 / noise.ssr(plant));
  const double k_min = 1e-3 * k_max;
  const double g_min = (a - 1.0) / (h * k_max);
  const double g_max = (a + 1.0) / (h * k_min);
  const double lk0 = std::log(k_min), lk1 = std::log(k_max);
  const double lg0 = std::log(g_min), lg1 = std::log(g_max);
  const double n1 = static_cast<double>(resolution - 1);

  std::vector<double> gs(resolution);
  for (std::size_t j = 0; j < resolution; ++j) gs[j] = std::exp(lg0 + (lg1 - lg0) * static_cast<double>(j) / n1);

  GridOptimum best{kInf, 0.0, 0.0};
  for (std::size_t i = 0; i < resolution; ++i) {
    const double k = -std::exp(lk0 + (lk1 - lk0) * static_cast<double>(i) / n1);
    for (double g : gs) {
      const double ac = a + g * h * k;
      const double one_minus = 1.0 - ac * ac;
      if (!(one_minus > 0.0)) continue;
      const double num = g * g * sz + sw;
      if (k * k * num > gamma0 * one_minus * sz) continue;
      const double cost = num / one_minus;
      if (cost < best.cost) best = {cost, k, g};
    }
  }
  return best;
}

double best_cost_at_snr_slow(const PlantParams& plant, double sigma_z2, double h, double gamma) {
  const double a = plant.a();
  const double sw = plant.sigma_w2();
  const double ssr = sw / sigma_z2;
  // On the SNR boundary, K^2 SSR = gamma (1 - A_c^2) - (G K)^2 and the cost
  // is sigma_w^2 gamma / (K^2 SSR), so search A_c for the largest slack.
  const auto neg_slack = [&](double ac) {
    const double u = (ac - a) / h;
    return -(gamma * (1.0 - ac * ac) - u * u);
  };
  const auto opt = golden_minimize(neg_slack, -1.0, 1.0);
  const double k2ssr = -opt.value;
  if (!(k2ssr > 0.0)) return kInf;
  const double k = -std::sqrt(k2ssr / ssr);
  const double g = ((opt.arg - a) / h) / k;
  return steady_cost(a, sw, sigma_z2, g, k, h);
}

SplitOptimum sweep_split_slow(const PlantParams& plant, const NoisePowers& noise, double h1, double h2,
                              std::size_t points) {
  const double a2 = plant.a() * plant.a();
  const double sw = plant.sigma_w2();
  const auto per_plant = [&](double h, double gamma) {
    const double s = h * h * gamma;
    const double den = 1.0 + s - a2;
    return den > 0.0 ? sw * (1.0 + s) / den : kInf;
  };
  SplitOptimum out;
  out.total_cost = split_cost((a2 - 1.0) / (h1 * h1), (a2 - 1.0) / (h2 * h2), noise.gamma0(), points,
                              [&](double g1, double g2) { return per_plant(h1, g1) + per_plant(h2, g2); },
                              &out.gamma1);
  return out;
}

SplitOptimum sweep_split_identical_actuator(const PlantParams& plant, const NoisePowers& noise, double g_common,
                                            double h1, double h2, std::size_t points) {
  const double a = plant.a();
  const double a2 = a * a;
  const double g2 = g_common * g_common;
  const double gamma_tilde = g2 * noise.gamma0() / (g2 + noise.ssr(plant));
  const double numerator = g2 * noise.sigma_z2() + plant.sigma_w2();

  // Largest |k| in [(A^2-1)/(A H), A/H] whose SNR k^2 / (1 - A_c^2) fits b.
  const auto per_plant = [&](double h, double b) {
    const auto snr = [&](double mag) {
      const double ac = a - h * mag;
      return mag * mag / (1.0 - ac * ac);
    };
    double lo = (a2 - 1.0) / (a * h);
    double hi = a / h;
    if (snr(lo) > b) return kInf;
    if (snr(hi) <= b) {
      lo = hi;
    } else {
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (snr(mid) <= b ? lo : hi) = mid;
      }
    }
    const double ac = a - h * lo;
    return numerator / (1.0 - ac * ac);
  };
  SplitOptimum out;
  out.total_cost = split_cost((a2 - 1.0) / (h1 * h1), (a2 - 1.0) / (h2 * h2), gamma_tilde, points,
                              [&](double b1, double b2) { return per_plant(h1, b1) + per_plant(h2, b2); },
                              &out.gamma1);
  return out;
}

ScalarOptimum minimize_cost_over_g(const PlantParams& plant, double sigma_z2, double h, double k) {
  if (!(k < 0.0)) throw std::invalid_argument("K must be negative");
  const double a = plant.a();
  const double c = h * -k;
  // Stability: A - G c in (-1, 1).
  const double lo = (a - 1.0) / c;
  const double hi = (a + 1.0) / c;
  const auto cost = [&](double g) { return steady_cost(a, plant.sigma_w2(), sigma_z2, g, k, h); };
  constexpr std::size_t n = 20000;
  double best_g = lo;
  double best = kInf;
  for (std::size_t j = 1; j < n; ++j) {
    const double g = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n);
    const double v = cost(g);
    if (v < best) {
      best = v;
      best_g = g;
    }
  }
  const double step = (hi - lo) / static_cast<double>(n);
  return golden_minimize(cost, std::max(lo, best_g - step), std::min(hi, best_g + step));
}

double all_selected_threshold_dbm_slow(const PlantParams& plant, double sigma_z2, const std::vector<double>& hs) {
  const double a2 = plant.a() * plant.a();
  const auto admits = [&](double dbm) {
    const double gamma0 = dbm_to_watts(dbm) / sigma_z2;
    double need = 0.0;
    for (double h : hs) need += (a2 - 1.0) / (h * h);
    return need <= gamma0;
  };
  double lo = -200.0, hi = 200.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (admits(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace wnc::oracles
