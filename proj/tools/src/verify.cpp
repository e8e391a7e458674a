#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <functional>
#include <ostream>

#include "wnc/cli.hpp"
#include "wnc/fast_optimizer.hpp"
#include "wnc/oracles/fast_oracles.hpp"
#include "wnc/oracles/slow_oracles.hpp"
#include "wnc/slow_optimizer.hpp"
#include "wnc/units.hpp"

namespace wnc::cli {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

bool run_verify(const RunConfig& config, std::ostream& out) {
  const ExperimentSpec& spec = config.spec;
  const PlantParams& plant = spec.plant;
  const NoisePowers noise(spec.sigma_z2, spec.p0);
  bool all = true;

  const auto check = [&](const std::string& name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    all = all && o.pass;
    out << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << "\n";
  };

  const double h1 = spec.h.at(0);

  check("slow single vs 2000x2000 grid", [&] {
    const auto d = optimize_single_slow(plant, noise, h1);
    const auto grid = oracles::grid_search_single_slow(plant, noise, h1, 2000);
    const double j = d.j_star.value();
    const bool ok = grid.cost >= j * (1.0 - 0.005) && grid.cost <= j * 1.005;
    return Outcome{ok, fmt::format("closed form {:.7g}, grid {:.7g}", j, grid.cost)};
  });

  check("slow single uses the whole SNR budget", [&] {
    const auto d = optimize_single_slow(plant, noise, h1);
    const double snr = snr_slow(plant, noise, d.gains, h1);
    return Outcome{rel(snr, noise.gamma0()) < 1e-9, fmt::format("SNR {:.12g} of {:.12g}", snr, noise.gamma0())};
  });

  if (spec.h.size() == 2) {
    const double h2 = spec.h[1];
    std::vector<SlowLink> links{{1, h1}, {2, h2}};
    if (h2 > h1) std::swap(links[0], links[1]);

    check("slow two-plant allocation vs 1e4-point split sweep", [&] {
      const auto res = allocate_multi_slow(links, plant, noise);
      const auto sweep = oracles::sweep_split_slow(plant, noise, links[0].h, links[1].h, 10000);
      const double j = res.design.total_cost.value();
      const bool ok = sweep.total_cost >= j * (1.0 - 1e-3) && rel(sweep.total_cost, j) < 1e-3;
      return Outcome{ok, fmt::format("closed form {:.9g}, sweep {:.9g}", j, sweep.total_cost)};
    });

    if (spec.g_common) {
      check("identical actuator vs split sweep", [&] {
        const auto d = optimize_identical_actuator(links, plant, noise, *spec.g_common);
        const auto sweep =
            oracles::sweep_split_identical_actuator(plant, noise, *spec.g_common, links[0].h, links[1].h, 10000);
        const double j = d.total_cost.value();
        const bool ok = sweep.total_cost >= j * (1.0 - 1e-3) && rel(sweep.total_cost, j) < 1e-3;
        return Outcome{ok, fmt::format("G {:g}: closed form {:.9g}, sweep {:.9g}{}", *spec.g_common, j,
                                       sweep.total_cost, d.unconstrained ? " (unconstrained)" : "")};
      });
    }

    check("all-plants threshold (slow)", [&] {
      const double thr = oracles::all_selected_threshold_dbm_slow(plant, spec.sigma_z2, spec.h);
      const auto below = select_plants_slow(links, plant, noise.with_p0(dbm_to_watts(thr - 0.01)));
      const auto above = select_plants_slow(links, plant, noise.with_p0(dbm_to_watts(thr + 0.01)));
      return Outcome{below.size() < 2 && above.size() == 2, fmt::format("{:.3f} dBm", thr)};
    });
  }

  if (spec.k_common) {
    check("identical controller vs 1-D minimization over G", [&] {
      std::vector<SlowLink> links;
      for (std::size_t i = 0; i < spec.h.size(); ++i) links.push_back({static_cast<int>(i + 1), spec.h[i]});
      const auto d = optimize_identical_controller(links, plant, noise, *spec.k_common);
      double worst = 0.0;
      for (std::size_t i = 0; i < links.size(); ++i) {
        const auto best = oracles::minimize_cost_over_g(plant, spec.sigma_z2, links[i].h, *spec.k_common);
        worst = std::max(worst, rel(d.g[i], best.arg));
      }
      return Outcome{worst < 1e-6, fmt::format("K {:g}: worst relative G gap {:.2e}", *spec.k_common, worst)};
    });
  }

  check("single-plant threshold (slow)", [&] {
    const double thr = oracles::all_selected_threshold_dbm_slow(plant, spec.sigma_z2, {h1});
    const bool ok = !feasible_single(plant, noise.with_p0(dbm_to_watts(thr - 0.01)), h1) &&
                    feasible_single(plant, noise.with_p0(dbm_to_watts(thr + 0.01)), h1);
    return Outcome{ok, fmt::format("{:.3f} dBm at H = {:g}", thr, h1)};
  });

  if (stabilizable_fast(plant)) {
    const double s1 = spec.sigma_h2.at(0);
    check("fast single vs numeric optimum", [&] {
      const auto d = optimize_single_fast(plant, noise, s1);
      const double oracle = oracles::best_cost_at_snr_fast(plant, s1, noise.gamma0());
      const double j = d.total_cost.value();
      return Outcome{rel(j, oracle) < 1e-6, fmt::format("closed form {:.9g}, oracle {:.9g}", j, oracle)};
    });

    check("E[A_c^2] vs Monte Carlo (1e6 draws)", [&] {
      Rng rng(spec.seed, {0x7665726966ull});
      const double u = -plant.a() * std::sqrt(2.0 / (std::numbers::pi * s1));
      const double mc = oracles::expected_ac2_monte_carlo(plant.a(), s1, u, 1000000, rng);
      const double f = expected_ac2(plant, s1, u);
      return Outcome{rel(mc, f) < 0.005, fmt::format("formula {:.6g}, sampled {:.6g}", f, mc)};
    });

    if (spec.sigma_h2.size() == 2) {
      std::vector<FastLink> links{{1, spec.sigma_h2[0]}, {2, spec.sigma_h2[1]}};
      if (links[1].sigma_h2 > links[0].sigma_h2) std::swap(links[0], links[1]);
      check("fast two-plant allocation vs 1e4-point split sweep", [&] {
        const auto res = allocate_multi_fast(links, plant, noise);
        const auto sweep = oracles::sweep_split_fast(plant, noise, links[0].sigma_h2, links[1].sigma_h2, 10000);
        const double j = res.design.total_cost.value();
        const bool ok = sweep.total_cost >= j * (1.0 - 1e-3) && rel(sweep.total_cost, j) < 1e-3;
        return Outcome{ok, fmt::format("closed form {:.9g}, sweep {:.9g}", j, sweep.total_cost)};
      });
      check("all-plants threshold (fast)", [&] {
        const double thr = oracles::all_selected_threshold_dbm_fast(plant, spec.sigma_z2, spec.sigma_h2);
        const auto below = select_plants_fast(links, plant, noise.with_p0(dbm_to_watts(thr - 0.01)));
        const auto above = select_plants_fast(links, plant, noise.with_p0(dbm_to_watts(thr + 0.01)));
        return Outcome{below.size() < 2 && above.size() == 2, fmt::format("{:.3f} dBm", thr)};
      });
    }
  } else {
    out << "SKIP fast-fading checks: A^2 (1 - 2/pi) >= 1\n";
  }

  out << (all ? "verify: all checks passed\n" : "verify: FAILED\n");
  return all;
}

}  // namespace wnc::cli
