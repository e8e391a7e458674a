#include "wnc/montecarlo.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "wnc/coded_control.hpp"
#include "wnc/fading.hpp"
#include "wnc/fast_optimizer.hpp"
#include "wnc/simulation.hpp"
#include "wnc/slow_optimizer.hpp"
#include "wnc/units.hpp"

namespace wnc {
namespace {

// Stream tags; first element of every derived-seed path.
constexpr std::uint64_t kTagTrace = 1;
constexpr std::uint64_t kTagCompareFree = 2;
constexpr std::uint64_t kTagCompareCoded = 3;
constexpr std::uint64_t kTagMultiSlow = 4;
constexpr std::uint64_t kTagMultiFast = 5;
constexpr std::uint64_t kTagSelection = 6;

std::string fmt_num(double v) { return fmt::format("{:g}", v); }

void base_metadata(const ExperimentSpec& spec, SweepResult& out) {
  out.metadata.emplace_back("experiment", to_string(spec.kind));
  out.metadata.emplace_back("seed", std::to_string(spec.seed));
  out.metadata.emplace_back("replicas", std::to_string(spec.replicas));
  out.metadata.emplace_back("horizon", std::to_string(spec.horizon));
  out.metadata.emplace_back("burn_in", std::to_string(spec.burn_in));
  out.metadata.emplace_back("provenance", "wnc 0.1.0");
}

Cell estimate_cell(const ReplicaEstimate& e) { return e.diverged ? Cell::diverged() : Cell::of(e.mean); }

Cell predicted_cell(const PredictedCost& c) { return c.is_bounded() ? Cell::of(c.value()) : Cell::diverged(); }

void require_grid(const ExperimentSpec& spec) {
  if (spec.p0_grid.empty()) throw std::invalid_argument("p0_grid: at least one power value required");
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::trace: return "trace";
    case ExperimentKind::single_compare: return "single-compare";
    case ExperimentKind::multi_slow_sweep: return "multi-slow-sweep";
    case ExperimentKind::multi_fast_sweep: return "multi-fast-sweep";
    case ExperimentKind::selection_sweep: return "selection-sweep";
  }
  return "unknown";
}

void validate(const ExperimentSpec& spec) {
  if (spec.replicas < 1) throw std::invalid_argument("replicas must be at least 1");
  if (spec.horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (spec.burn_in >= spec.horizon) throw std::invalid_argument("burn_in must be shorter than horizon");
  if (!(spec.sigma_z2 > 0.0)) throw std::invalid_argument("sigma_z2 must be positive");
  if (!(spec.p0 > 0.0)) throw std::invalid_argument("p0 must be positive");
  for (std::size_t i = 0; i < spec.p0_grid.size(); ++i) {
    if (!(spec.p0_grid[i] > 0.0)) throw std::invalid_argument("p0_grid: values must be positive");
    if (i > 0 && !(spec.p0_grid[i] > spec.p0_grid[i - 1])) {
      throw std::invalid_argument("p0_grid: values must be strictly increasing");
    }
  }
  for (double h : spec.h) {
    if (!(h > 0.0)) throw std::invalid_argument("h: channel coefficients must be positive");
  }
  for (double s : spec.sigma_h2) {
    if (!(s > 0.0)) throw std::invalid_argument("sigma_h2: variances must be positive");
  }
  for (int m : spec.m0) {
    if (m < 1) throw std::invalid_argument("m0: plant counts must be at least 1");
  }
  if (!(spec.rayleigh_mean_gain > 0.0)) throw std::invalid_argument("rayleigh_mean_gain must be positive");

  switch (spec.kind) {
    case ExperimentKind::trace:
      if (spec.h.empty()) throw std::invalid_argument("h: trace needs a channel coefficient");
      if (spec.closed_loop.empty()) throw std::invalid_argument("closed_loop: at least one A_c required");
      break;
    case ExperimentKind::single_compare:
      require_grid(spec);
      if (spec.h.empty()) throw std::invalid_argument("h: compare needs a channel coefficient");
      for (const auto& s : spec.schemes) {
        if (spec.horizon < static_cast<std::size_t>(s.symbols())) {
          throw std::invalid_argument("horizon shorter than one coded epoch of " + s.name());
        }
      }
      break;
    case ExperimentKind::multi_slow_sweep:
      require_grid(spec);
      if (spec.h.empty()) throw std::invalid_argument("h: at least one plant required");
      break;
    case ExperimentKind::multi_fast_sweep:
      require_grid(spec);
      if (spec.sigma_h2.empty()) throw std::invalid_argument("sigma_h2: at least one plant required");
      break;
    case ExperimentKind::selection_sweep:
      require_grid(spec);
      if (spec.m0.empty()) throw std::invalid_argument("m0: at least one plant count required");
      if (spec.realizations < 1) throw std::invalid_argument("realizations must be at least 1");
      break;
  }
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

ReplicaEstimate average_replicas(std::size_t replicas, unsigned threads,
                                 const std::function<double(std::size_t)>& replica) {
  std::vector<double> values(replicas, 0.0);
  parallel_for(replicas, threads, [&](std::size_t i) { values[i] = replica(i); });
  ReplicaEstimate out;
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) {
      out.diverged = true;
      return out;
    }
    sum += v;
  }
  out.mean = replicas == 0 ? 0.0 : sum / static_cast<double>(replicas);
  return out;
}

GainPair implied_gains(const PlantParams& plant, const NoisePowers& noise, double h, double a_c) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  const double u = (a_c - plant.a()) / h;  // G K
  const double ssr = noise.ssr(plant);
  // Put K on the SNR boundary: K^2 SSR = gamma0 (1 - A_c^2) - (G K)^2.
  const double slack = noise.gamma0() * (1.0 - a_c * a_c) - u * u;
  if (slack > 0.0) {
    const double k = -std::sqrt(slack / ssr);
    return {k, u / k};
  }
  double g = 1.0;
  if (feasible_single(plant, noise, h)) {
    const auto best = optimize_single_slow(plant, noise, h);
    if (!best.boundary) g = best.gains.g;
  }
  return {u / g, g};
}

SweepResult run_trace(const ExperimentSpec& spec) {
  validate(spec);
  const NoisePowers noise(spec.sigma_z2, spec.p0);
  const double h = spec.h.front();
  const std::size_t horizon = spec.horizon;

  SweepResult out;
  out.x_label = "t";
  for (double ac : spec.closed_loop) {
    const std::string tag = fmt_num(ac);
    out.columns.push_back("x_Ac=" + tag);
    out.columns.push_back("J_Ac=" + tag);
    out.columns.push_back("Jpred_Ac=" + tag);
  }
  out.rows.resize(horizon);
  for (std::size_t t = 0; t < horizon; ++t) out.rows[t].x = static_cast<double>(t + 1);

  LoopOptions options;
  options.x0 = spec.x0;
  options.noiseless = spec.noiseless;
  options.divergence_limit = std::numeric_limits<double>::infinity();

  for (std::size_t s = 0; s < spec.closed_loop.size(); ++s) {
    const double ac = spec.closed_loop[s];
    const GainPair gains = implied_gains(spec.plant, noise, h, ac);
    const PredictedCost pred = spec.noiseless ? (ac * ac < 1.0 ? PredictedCost::bounded(0.0) : PredictedCost::unbounded())
                                              : predicted_cost_slow(spec.plant, noise, gains, h);

    std::vector<std::vector<double>> paths(spec.replicas);
    parallel_for(spec.replicas, spec.threads, [&](std::size_t r) {
      Rng rng(spec.seed, {kTagTrace, s, r});
      simulate_slow_loop(spec.plant, noise, gains, h, horizon, rng, options, &paths[r]);
    });

    double running = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
      double sum = 0.0;
      for (const auto& p : paths) sum += p[t] * p[t];
      running += sum / static_cast<double>(spec.replicas);
      const double jt = running / static_cast<double>(t + 1);
      auto& cells = out.rows[t].cells;
      const double x = paths.front()[t];
      cells.push_back(std::isfinite(x) ? Cell::of(x) : Cell::diverged());
      cells.push_back(std::isfinite(jt) ? Cell::of(jt) : Cell::diverged());
      cells.push_back(predicted_cell(pred));
    }
  }
  base_metadata(spec, out);
  out.metadata.emplace_back("x0", fmt_num(spec.x0));
  return out;
}

SweepResult run_single_compare(const ExperimentSpec& spec) {
  validate(spec);
  const double h = spec.h.front();

  SweepResult out;
  out.x_label = "P0_dBm";
  out.columns = {"J_free_sim", "J_free_pred"};
  for (const auto& s : spec.schemes) out.columns.push_back("J_" + s.name());

  for (std::size_t gi = 0; gi < spec.p0_grid.size(); ++gi) {
    const NoisePowers noise(spec.sigma_z2, spec.p0_grid[gi]);
    SweepRow row;
    row.x = watts_to_dbm(noise.p0());

    if (feasible_single(spec.plant, noise, h)) {
      const auto design = optimize_single_slow(spec.plant, noise, h);
      if (design.boundary) {
        row.cells.push_back(Cell::diverged());
        row.cells.push_back(Cell::diverged());
      } else {
        LoopOptions options;
        options.x0 = spec.x0;
        options.burn_in = spec.burn_in;
        const auto est = average_replicas(spec.replicas, spec.threads, [&](std::size_t r) {
          Rng rng(spec.seed, {kTagCompareFree, gi, r});
          return simulate_slow_loop(spec.plant, noise, design.gains, h, spec.horizon, rng, options).cost;
        });
        row.cells.push_back(estimate_cell(est));
        row.cells.push_back(predicted_cell(design.j_star));
      }
    } else {
      row.cells.push_back(Cell::infeasible());
      row.cells.push_back(Cell::infeasible());
    }

    for (std::size_t si = 0; si < spec.schemes.size(); ++si) {
      CodedControlOptions options;
      options.x0 = spec.x0;
      options.burn_in = spec.burn_in;
      const auto est = average_replicas(spec.replicas, spec.threads, [&](std::size_t r) {
        Rng rng(spec.seed, {kTagCompareCoded, gi, si, r});
        const auto res = run_coded_control(spec.plant, noise, h, spec.schemes[si], spec.horizon, rng, options);
        return res.diverged ? std::numeric_limits<double>::infinity() : res.report.j_t;
      });
      row.cells.push_back(estimate_cell(est));
    }
    out.rows.push_back(std::move(row));
  }
  base_metadata(spec, out);
  out.metadata.emplace_back("h", fmt_num(h));
  return out;
}

namespace {

struct PlantColumns {
  double gamma = 0.0;
  GainPair gains;
  PredictedCost pred = PredictedCost::unbounded();
  bool boundary = false;
};

}  // namespace

SweepResult run_multi_sweep(const ExperimentSpec& spec, FadingRegime regime) {
  ExperimentSpec checked = spec;
  checked.kind = regime == FadingRegime::slow ? ExperimentKind::multi_slow_sweep : ExperimentKind::multi_fast_sweep;
  validate(checked);
  const bool slow = regime == FadingRegime::slow;
  const std::vector<double>& channel = slow ? spec.h : spec.sigma_h2;
  const std::size_t m = channel.size();

  SweepResult out;
  out.x_label = "P0_dBm";
  out.columns.push_back("selected");
  for (std::size_t i = 1; i <= m; ++i) {
    for (const char* name : {"P", "K", "G", "Jpred", "Jsim"}) {
      out.columns.push_back(fmt::format("{}{}", name, i) + (std::string(name) == "P" ? "_dBm" : ""));
    }
  }
  out.columns.push_back("Jpred_total");
  out.columns.push_back("Jsim_total");
  const bool with_ia = slow && spec.g_common.has_value();
  const bool with_ic = slow && spec.k_common.has_value();
  if (with_ia) {
    out.columns.push_back("IA_selected");
    out.columns.push_back("IA_Jpred_total");
  }
  if (with_ic) {
    out.columns.push_back("IC_selected");
    out.columns.push_back("IC_Jpred_total");
  }

  for (std::size_t gi = 0; gi < spec.p0_grid.size(); ++gi) {
    const NoisePowers noise(spec.sigma_z2, spec.p0_grid[gi]);
    std::vector<PlantColumns> plants(m);
    std::vector<bool> chosen(m, false);
    std::size_t selected_count = 0;

    if (slow) {
      std::vector<SlowLink> links;
      for (std::size_t i = 0; i < m; ++i) links.push_back({static_cast<int>(i + 1), channel[i]});
      const auto ids = select_plants_slow(links, spec.plant, noise);
      if (!ids.empty()) {
        std::vector<SlowLink> sel;
        for (int id : ids) sel.push_back(links[static_cast<std::size_t>(id - 1)]);
        const auto res = allocate_multi_slow(sel, spec.plant, noise);
        for (std::size_t j = 0; j < sel.size(); ++j) {
          const auto i = static_cast<std::size_t>(sel[j].id - 1);
          chosen[i] = true;
          plants[i] = {res.allocation.gamma[j], res.design.gains[j], res.design.predicted_costs[j],
                       static_cast<bool>(res.design.boundary[j])};
        }
      }
      selected_count = ids.size();
    } else {
      std::vector<FastLink> links;
      for (std::size_t i = 0; i < m; ++i) links.push_back({static_cast<int>(i + 1), channel[i]});
      const auto ids = select_plants_fast(links, spec.plant, noise);
      if (!ids.empty()) {
        std::vector<FastLink> sel;
        for (int id : ids) sel.push_back(links[static_cast<std::size_t>(id - 1)]);
        const auto res = allocate_multi_fast(sel, spec.plant, noise);
        for (std::size_t j = 0; j < sel.size(); ++j) {
          const auto i = static_cast<std::size_t>(sel[j].id - 1);
          chosen[i] = true;
          plants[i] = {res.allocation.gamma[j], res.design.gains[j], res.design.predicted_costs[j],
                       static_cast<bool>(res.design.boundary[j])};
        }
      }
      selected_count = ids.size();
    }

    SweepRow row;
    row.x = watts_to_dbm(noise.p0());
    row.cells.push_back(Cell::of(static_cast<double>(selected_count)));
    double pred_total = 0.0;
    double sim_total = 0.0;
    bool pred_ok = selected_count > 0;
    bool sim_ok = selected_count > 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!chosen[i]) {
        for (int c = 0; c < 5; ++c) row.cells.push_back(Cell::infeasible());
        continue;
      }
      const auto& p = plants[i];
      row.cells.push_back(Cell::of(watts_to_dbm(p.gamma * noise.sigma_z2())));
      if (p.boundary) {
        row.cells.push_back(Cell::diverged());
        row.cells.push_back(Cell::diverged());
        row.cells.push_back(Cell::diverged());
        row.cells.push_back(Cell::diverged());
        pred_ok = sim_ok = false;
        continue;
      }
      row.cells.push_back(Cell::of(p.gains.k));
      row.cells.push_back(Cell::of(p.gains.g));
      row.cells.push_back(predicted_cell(p.pred));
      pred_ok = pred_ok && p.pred.is_bounded();
      if (p.pred.is_bounded()) pred_total += p.pred.value();

      LoopOptions options;
      options.x0 = spec.x0;
      options.burn_in = spec.burn_in;
      const auto est = average_replicas(spec.replicas, spec.threads, [&](std::size_t r) {
        if (slow) {
          Rng rng(spec.seed, {kTagMultiSlow, gi, i, r});
          return simulate_slow_loop(spec.plant, noise, p.gains, channel[i], spec.horizon, rng, options).cost;
        }
        Rng rng(spec.seed, {kTagMultiFast, gi, i, r});
        return simulate_fast_loop(spec.plant, noise, p.gains, channel[i], spec.horizon, rng, options).cost;
      });
      row.cells.push_back(estimate_cell(est));
      sim_ok = sim_ok && !est.diverged;
      sim_total += est.mean;
    }
    row.cells.push_back(pred_ok ? Cell::of(pred_total) : (selected_count == 0 ? Cell::infeasible() : Cell::diverged()));
    row.cells.push_back(sim_ok ? Cell::of(sim_total) : (selected_count == 0 ? Cell::infeasible() : Cell::diverged()));

    if (with_ia || with_ic) {
      std::vector<SlowLink> links;
      for (std::size_t i = 0; i < m; ++i) links.push_back({static_cast<int>(i + 1), channel[i]});
      const auto pick = [&](const std::vector<int>& ids) {
        std::vector<SlowLink> sel;
        for (int id : ids) sel.push_back(links[static_cast<std::size_t>(id - 1)]);
        return sel;
      };
      if (with_ia) {
        const auto sel = pick(select_plants_identical_actuator(links, spec.plant, noise, *spec.g_common));
        row.cells.push_back(Cell::of(static_cast<double>(sel.size())));
        if (sel.empty()) {
          row.cells.push_back(Cell::infeasible());
        } else {
          row.cells.push_back(
              predicted_cell(optimize_identical_actuator(sel, spec.plant, noise, *spec.g_common).total_cost));
        }
      }
      if (with_ic) {
        const auto sel = pick(select_plants_identical_controller(links, spec.plant, noise, *spec.k_common));
        row.cells.push_back(Cell::of(static_cast<double>(sel.size())));
        if (sel.empty()) {
          row.cells.push_back(Cell::infeasible());
        } else {
          row.cells.push_back(
              predicted_cell(optimize_identical_controller(sel, spec.plant, noise, *spec.k_common).total_cost));
        }
      }
    }
    out.rows.push_back(std::move(row));
  }
  base_metadata(checked, out);
  if (with_ia) out.metadata.emplace_back("g_common", fmt_num(*spec.g_common));
  if (with_ic) out.metadata.emplace_back("k_common", fmt_num(*spec.k_common));
  return out;
}

SweepResult run_selection_sweep(const ExperimentSpec& spec) {
  validate(spec);
  SweepResult out;
  out.x_label = "P0_dBm";
  for (int m0 : spec.m0) out.columns.push_back(fmt::format("M_avg_M0={}", m0));
  for (double p0 : spec.p0_grid) out.rows.push_back({watts_to_dbm(p0), {}});

  for (std::size_t mi = 0; mi < spec.m0.size(); ++mi) {
    const auto m0 = static_cast<std::size_t>(spec.m0[mi]);
    // counts[r * grid + g]: plants selected in realization r at power g.
    const std::size_t grid = spec.p0_grid.size();
    std::vector<std::uint32_t> counts(spec.realizations * grid, 0);
    parallel_for(spec.realizations, spec.threads, [&](std::size_t r) {
      Rng rng(spec.seed, {kTagSelection, mi, r});
      std::vector<SlowLink> links;
      links.reserve(m0);
      for (std::size_t i = 0; i < m0; ++i) {
        links.push_back({static_cast<int>(i + 1), sample_rayleigh_block(spec.rayleigh_mean_gain, rng).h()});
      }
      for (std::size_t g = 0; g < grid; ++g) {
        const NoisePowers noise(spec.sigma_z2, spec.p0_grid[g]);
        counts[r * grid + g] = static_cast<std::uint32_t>(select_plants_slow(links, spec.plant, noise).size());
      }
    });
    for (std::size_t g = 0; g < grid; ++g) {
      std::uint64_t total = 0;
      for (std::size_t r = 0; r < spec.realizations; ++r) total += counts[r * grid + g];
      out.rows[g].cells.push_back(Cell::of(static_cast<double>(total) / static_cast<double>(spec.realizations)));
    }
  }
  base_metadata(spec, out);
  out.metadata.emplace_back("realizations", std::to_string(spec.realizations));
  out.metadata.emplace_back("rayleigh_mean_gain", fmt_num(spec.rayleigh_mean_gain));
  return out;
}

SweepResult run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::trace: return run_trace(spec);
    case ExperimentKind::single_compare: return run_single_compare(spec);
    case ExperimentKind::multi_slow_sweep: return run_multi_sweep(spec, FadingRegime::slow);
    case ExperimentKind::multi_fast_sweep: return run_multi_sweep(spec, FadingRegime::fast);
    case ExperimentKind::selection_sweep: return run_selection_sweep(spec);
  }
  throw std::invalid_argument("unknown experiment kind");
}

}  // namespace wnc
