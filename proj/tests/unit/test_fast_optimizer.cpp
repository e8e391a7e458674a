#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "wnc/fast_optimizer.hpp"
#include "wnc/oracles/fast_oracles.hpp"
#include "wnc/simulation.hpp"

using namespace wnc;

namespace {
const PlantParams kPlant(1.5, 0.1);
const NoisePowers kNoise(1e-7, 0.1);
}  // namespace

TEST_SUITE("fast-optimizer") {
  TEST_CASE("eta") { CHECK(kEta == doctest::Approx(0.3634).epsilon(1e-4)); }

  TEST_CASE("partial_csi_control_symbol") {
    CHECK(partial_csi_control_symbol(1.0, {-1.0, 1.0}, +1) == -1.0);
    CHECK(partial_csi_control_symbol(1.0, {-1.0, 1.0}, -1) == 1.0);
    CHECK(partial_csi_control_symbol(1.0, {-1.0, 1.0}, 0) == -1.0);
    // G K(t) H(t) = G K |H| <= 0 for any H.
    for (double h : {-0.3, -1e-6, 1e-6, 0.2}) {
      const double v = partial_csi_control_symbol(1.0, {-2.0, 3.0}, h < 0 ? -1 : 1);
      CHECK(3.0 * v * h < 0.0);
    }
  }

  TEST_CASE("expected_ac2") {
    const double s2 = 1e-4;
    CHECK(expected_ac2(kPlant, s2, 0.0) == 2.25);
    const double u_min = -1.5 * std::sqrt(2.0 / (std::numbers::pi * s2));
    CHECK(expected_ac2(kPlant, s2, u_min) == doctest::Approx(2.25 * kEta).epsilon(1e-12));
    CHECK(expected_ac2(kPlant, s2, u_min) == doctest::Approx(0.81761).epsilon(1e-4));

    Rng rng(8);
    const double mc = oracles::expected_ac2_monte_carlo(1.5, s2, -100.0, 1'000'000, rng);
    CHECK(mc == doctest::Approx(expected_ac2(kPlant, s2, -100.0)).epsilon(0.005));

    // Exactly quadratic: second difference is 2 sigma_h^2.
    const double du = 1.0;
    const double second = (expected_ac2(kPlant, s2, -50.0 + du) - 2.0 * expected_ac2(kPlant, s2, -50.0) +
                           expected_ac2(kPlant, s2, -50.0 - du)) / (du * du);
    CHECK(second == doctest::Approx(2.0 * s2).epsilon(1e-6));
  }

  TEST_CASE("stabilizable_fast") {
    CHECK(stabilizable_fast(kPlant));
    CHECK_FALSE(stabilizable_fast(PlantParams(1.66, 0.1)));
    const double edge = 1.0 / std::sqrt(kEta);
    CHECK(edge == doctest::Approx(1.65889).epsilon(1e-5));
    CHECK(stabilizable_fast(PlantParams(edge - 1e-6, 0.1)));
    CHECK_FALSE(stabilizable_fast(PlantParams(edge + 1e-6, 0.1)));
  }

  TEST_CASE("feasible_single_fast") {
    CHECK(feasible_single_fast(kPlant, kNoise, 1e-4));
    CHECK_FALSE(feasible_single_fast(kPlant, NoisePowers(1e-7, 1e-300), 1e-4));
    CHECK(feasible_single_fast(PlantParams(1.65, 0.1), NoisePowers(1e-7, 1e30), 1e-4));
    CHECK_FALSE(feasible_single_fast(PlantParams(1.66, 0.1), NoisePowers(1e-7, 1e30), 1e-4));
  }

  TEST_CASE("optimize_single_fast at the reference instance") {
    const auto d = optimize_single_fast(kPlant, kNoise, 1e-4);
    CHECK(d.u_star[0] == doctest::Approx(-118.50).epsilon(1e-4));
    CHECK(d.e_ac2[0] == doctest::Approx(0.81773).epsilon(1e-4));
    CHECK(d.total_cost.value() == doctest::Approx(0.5945).epsilon(1e-4));
    CHECK(d.e_ac2[0] == doctest::Approx(expected_ac2(kPlant, 1e-4, d.u_star[0])).epsilon(1e-14));
    CHECK(d.gains[0].k < 0.0);
    CHECK(d.gains[0].g > 0.0);
    CHECK(d.gains[0].g * d.gains[0].k == doctest::Approx(d.u_star[0]).epsilon(1e-12));
    CHECK(snr_fast(kPlant, kNoise, d.gains[0], 1e-4) == doctest::Approx(kNoise.gamma0()).epsilon(1e-9));
    CHECK(d.eta == kEta);
  }

  TEST_CASE("unconstrained limit") {
    const double s2 = 1e-4;
    const auto d = optimize_single_fast(kPlant, NoisePowers(1e-7, 1e12), s2);
    CHECK(d.u_star[0] == doctest::Approx(-1.5 * std::sqrt(2.0 / (std::numbers::pi * s2))).epsilon(1e-6));
    CHECK(d.e_ac2[0] == doctest::Approx(2.25 * kEta).epsilon(1e-6));
  }

  TEST_CASE("fast fading costs more than slow fading at matched channel power") {
    const auto f = optimize_single_fast(kPlant, kNoise, 1e-4);
    const auto s = optimize_single_slow(kPlant, kNoise, 0.01);
    CHECK(f.total_cost.value() > s.j_star.value());
  }

  TEST_CASE("select_plants_fast") {
    std::vector<FastLink> links{{1, 1e-4}, {2, 4e-4}};
    CHECK(snr_floor_fast(kPlant, 4e-4) == doctest::Approx(17132).epsilon(1e-4));
    CHECK(snr_floor_fast(kPlant, 1e-4) == doctest::Approx(68530).epsilon(1e-4));
    CHECK(select_plants_fast(links, kPlant, kNoise) == std::vector<int>{2, 1});
    CHECK(select_plants_fast(links, PlantParams(1.66, 0.1), kNoise).empty());
    CHECK(select_plants_fast(links, kPlant, NoisePowers(1e-7, 1e-4)).empty());
  }

  TEST_CASE("allocate_multi_fast") {
    SUBCASE("singleton") {
      std::vector<FastLink> one{{1, 1e-4}};
      const auto r = allocate_multi_fast(one, kPlant, kNoise);
      const auto d = optimize_single_fast(kPlant, kNoise, 1e-4);
      CHECK(r.design.gains[0].k == d.gains[0].k);
      CHECK(r.design.gains[0].g == d.gains[0].g);
      CHECK(r.design.total_cost.value() == d.total_cost.value());
    }
    SUBCASE("reference pair") {
      std::vector<FastLink> links{{2, 4e-4}, {1, 1e-4}};
      const auto r = allocate_multi_fast(links, kPlant, kNoise);
      CHECK(r.allocation.gamma[0] < r.allocation.gamma[1]);
      CHECK(r.allocation.gamma[0] + r.allocation.gamma[1] == doctest::Approx(kNoise.gamma0()).epsilon(1e-10));
      for (std::size_t i = 0; i < 2; ++i) {
        CHECK(r.allocation.gamma[i] >= snr_floor_fast(kPlant, links[i].sigma_h2));
        CHECK(r.design.e_ac2[i] < 1.0);
      }
      const auto sweep = oracles::sweep_split_fast(kPlant, kNoise, 4e-4, 1e-4, 10000);
      CHECK(sweep.total_cost >= r.design.total_cost.value() * (1.0 - 1e-3));
      CHECK(sweep.total_cost <= r.design.total_cost.value() * (1.0 + 1e-3));
    }
  }

  TEST_CASE("second-moment recursion under the partial-CSI law") {
    const auto d = optimize_single_fast(kPlant, kNoise, 1e-4);
    const GainPair g = d.gains[0];
    const std::size_t replicas = 1'000'000;
    double m4 = 0.0, m5 = 0.0;
    LoopOptions opt;
    opt.x0 = 1.0;
    std::vector<double> path;
    for (std::size_t r = 0; r < replicas; ++r) {
      Rng rng(77, {r});
      simulate_fast_loop(kPlant, kNoise, g, 1e-4, 5, rng, opt, &path);
      m4 += path[3] * path[3];
      m5 += path[4] * path[4];
    }
    m4 /= replicas;
    m5 /= replicas;
    const double predicted = d.e_ac2[0] * m4 + g.g * g.g * kNoise.sigma_z2() + kPlant.sigma_w2();
    CHECK(m5 == doctest::Approx(predicted).epsilon(0.01));
  }

  TEST_CASE("no CSI: second moment grows") {
    LoopOptions opt;
    opt.sign_flip = false;
    opt.divergence_limit = INFINITY;
    const GainPair g{-1.0, 50.0};
    std::vector<double> mean(30, 0.0);
    std::vector<double> path;
    const std::size_t replicas = 10000;
    for (std::size_t r = 0; r < replicas; ++r) {
      Rng rng(3, {r});
      simulate_fast_loop(kPlant, kNoise, g, 1e-4, 30, rng, opt, &path);
      for (std::size_t t = 0; t < 30; ++t) mean[t] += path[t] * path[t] / replicas;
    }
    for (std::size_t t = 1; t < 30; ++t) CHECK(mean[t] > mean[t - 1]);
  }
}
