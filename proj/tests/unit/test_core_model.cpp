#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "wnc/model.hpp"
#include "wnc/simulation.hpp"
#include "wnc/slow_optimizer.hpp"

using namespace wnc;

TEST_SUITE("core-model") {
  TEST_CASE("plant and noise invariants") {
    CHECK_THROWS_AS(PlantParams(1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(PlantParams(-0.5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(PlantParams(1.5, 0.0), std::invalid_argument);
    CHECK_NOTHROW(PlantParams(-1.2, 0.1));
    CHECK_THROWS_AS(NoisePowers(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(NoisePowers(1e-7, 0.0), std::invalid_argument);

    const NoisePowers n(1e-7, 0.1);
    const PlantParams p(1.5, 0.1);
    CHECK(n.gamma0() == 0.1 / 1e-7);
    CHECK(n.ssr(p) == 0.1 / 1e-7);
    CHECK(n.with_p0(0.2).p0() == 0.2);
  }

  TEST_CASE("step_plant") {
    const PlantParams p(1.5, 0.1);
    CHECK(step_plant({5.0, 0}, 0.0, 0.0, p).x == 7.5);
    CHECK(step_plant({0.0, 0}, 0.0, 0.3, p).x == doctest::Approx(0.3));
    CHECK(step_plant({5.0, 0}, -7.5, 0.0, p).x == 0.0);
    const auto s = step_plant({1.0, 41}, 0.0, 0.0, p);
    CHECK(s.t == 42);
    // Pure function: identical inputs give identical bits.
    CHECK(step_plant({0.123, 3}, 0.7, -0.2, p).x == step_plant({0.123, 3}, 0.7, -0.2, p).x);
  }

  TEST_CASE("empirical_cost") {
    SUBCASE("steady at origin") {
      std::vector<PlantTrajectories> t{{1, {std::vector<double>(10, 0.0)}}};
      CHECK(empirical_cost(t, 10).j_t == 0.0);
    }
    SUBCASE("arithmetic by definition") {
      std::vector<PlantTrajectories> t{{1, {{1.0, -2.0}}}};
      CHECK(empirical_cost(t, 2).j_t == doctest::Approx(2.5));
    }
    SUBCASE("sum over plants") {
      std::vector<PlantTrajectories> t{{1, {std::vector<double>(7, 1.0)}}, {2, {std::vector<double>(7, 1.0)}}};
      const auto r = empirical_cost(t, 7);
      CHECK(r.j_t == doctest::Approx(2.0));
      REQUIRE(r.per_plant.size() == 2);
      CHECK(r.per_plant[0].cost + r.per_plant[1].cost == doctest::Approx(r.j_t).epsilon(1e-9));
      CHECK(r.horizon == 7);
    }
    SUBCASE("replicas are averaged") {
      std::vector<PlantTrajectories> t{{1, {{1.0, 1.0}, {3.0, 3.0}}}};
      CHECK(empirical_cost(t, 2).j_t == doctest::Approx(5.0));
    }
    SUBCASE("burn-in skips the transient") {
      std::vector<PlantTrajectories> t{{1, {{10.0, 1.0, 1.0}}}};
      CHECK(empirical_cost(t, 3, 1).j_t == doctest::Approx(1.0));
    }
    SUBCASE("errors") {
      std::vector<PlantTrajectories> none;
      CHECK_THROWS_WITH_AS(empirical_cost(none, 5), "no plants", std::invalid_argument);
      std::vector<PlantTrajectories> short_one{{1, {{1.0}}}};
      CHECK_THROWS_AS(empirical_cost(short_one, 2), std::invalid_argument);
    }
  }

  TEST_CASE("predicted_cost_slow") {
    const PlantParams p(1.5, 0.1);
    const NoisePowers n(1e-7, 0.1);
    const double h = 0.01;

    CHECK_FALSE(predicted_cost_slow(p, n, {0.0, 100.0}, h).is_bounded());
    CHECK_FALSE(predicted_cost_slow(p, n, {-1.0, 0.0}, h).is_bounded());
    CHECK_THROWS_AS(PredictedCost::unbounded().value(), std::logic_error);
    CHECK(PredictedCost::unbounded().value_or(-1.0) == -1.0);

    // Optimal gains at gamma0 = 1e6 (the corrected closed form; the steady
    // state of the optimal loop is 0.1022785).
    const auto d = optimize_single_slow(p, n, h);
    CHECK(predicted_cost_slow(p, n, d.gains, h).value() == doctest::Approx(0.1022785).epsilon(1e-6));

    // G -> 0 with A_c = 0: noise term vanishes.
    const double g = 1e-9;
    const GainPair tiny{-1.5 / (g * h), g};
    CHECK(predicted_cost_slow(p, n, tiny, h).value() == doctest::Approx(0.1).epsilon(1e-9));

    CHECK_THROWS_AS(predicted_cost_slow(p, n, d.gains, 0.0), std::invalid_argument);
  }

  TEST_CASE("long run matches prediction within 1%") {
    const PlantParams p(1.5, 0.1);
    const NoisePowers n(1e-7, 0.1);
    const double h = 0.01;
    const auto d = optimize_single_slow(p, n, h);
    Rng rng(2024);
    LoopOptions opt;
    opt.burn_in = 1000;
    const auto out = simulate_slow_loop(p, n, d.gains, h, 1'001'000, rng, opt);
    CHECK_FALSE(out.diverged);
    CHECK(out.cost == doctest::Approx(d.j_star.value()).epsilon(0.01));
  }

  TEST_CASE("exponential blow-up without noise") {
    const PlantParams p(1.5, 0.1);
    const NoisePowers n(1e-7, 0.1);
    const double h = 0.01;
    const double ac = 1.2;
    const GainPair gains{-1.0, (ac - 1.5) / (h * -1.0)};
    Rng rng(1);
    LoopOptions opt;
    opt.x0 = 1.0;
    opt.noiseless = true;
    std::vector<double> path;
    simulate_slow_loop(p, n, gains, h, 60, rng, opt, &path);
    for (std::size_t t = 0; t < path.size(); ++t) {
      CHECK(std::abs(path[t]) == doctest::Approx(std::pow(ac, static_cast<double>(t + 1))).epsilon(1e-12));
    }
  }

  TEST_CASE("cost accumulator merge") {
    CostAccumulator a(0), b(0);
    a.add(1, 1.0);
    b.add(1, 3.0);
    a.merge(b);
    CHECK(a.count() == 2);
    CHECK(a.mean() == doctest::Approx(5.0));
  }
}
