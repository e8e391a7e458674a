#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>
#include <vector>

#include "wnc/fading.hpp"
#include "wnc/rng.hpp"

using namespace wnc;

namespace {
constexpr std::size_t kDraws = 1'000'000;
}

TEST_SUITE("fading") {
  TEST_CASE("slow channel rejects non-positive magnitudes") {
    CHECK_THROWS_AS(SlowChannel(0.0), std::invalid_argument);
    CHECK(SlowChannel(0.01).h() == 0.01);
  }

  TEST_CASE("rayleigh block power gain") {
    Rng rng(11);
    double sum = 0.0;
    for (std::size_t i = 0; i < kDraws; ++i) {
      const double h = sample_rayleigh_block(1e-4, rng).h();
      sum += h * h;
    }
    CHECK(sum / kDraws == doctest::Approx(1e-4).epsilon(0.01));
  }

  TEST_CASE("rayleigh block exponential median") {
    Rng rng(12);
    std::size_t above = 0;
    for (std::size_t i = 0; i < kDraws; ++i) {
      const double h = sample_rayleigh_block(1.0, rng).h();
      if (h * h > std::log(2.0)) ++above;
    }
    CHECK(static_cast<double>(above) / kDraws == doctest::Approx(0.5).epsilon(0.01));
  }

  TEST_CASE("rayleigh block determinism") {
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) CHECK(sample_rayleigh_block(1e-4, a).h() == sample_rayleigh_block(1e-4, b).h());
  }

  TEST_CASE("fast symbol statistics") {
    const double s2 = 1e-4;
    const double sd = std::sqrt(s2);
    FastChannel ch(s2, Rng(5));
    double sum = 0.0, abs_sum = 0.0;
    std::size_t positive = 0;
    for (std::size_t i = 0; i < kDraws; ++i) {
      const auto s = sample_fast_symbol(ch);
      CHECK(s.sign == (s.h < 0.0 ? -1 : 1));
      sum += s.h;
      abs_sum += std::abs(s.h);
      if (s.sign > 0) ++positive;
    }
    CHECK(std::abs(sum / kDraws) <= 3.0 * sd / 1000.0);
    CHECK(abs_sum / kDraws == doctest::Approx(std::sqrt(2.0 * s2 / std::numbers::pi)).epsilon(0.01));
    CHECK(abs_sum / kDraws == doctest::Approx(7.9788e-3).epsilon(0.01));
    CHECK(std::abs(static_cast<double>(positive) / kDraws - 0.5) <= 0.002);
    CHECK_THROWS_AS(FastChannel(0.0, Rng(1)), std::invalid_argument);
  }

  TEST_CASE("apply_channel") {
    Rng rng(3);
    SUBCASE("noise only") {
      double sum = 0.0, sq = 0.0;
      for (std::size_t i = 0; i < kDraws; ++i) {
        const double r = apply_channel(0.0, 0.5, 1e-7, rng);
        sum += r;
        sq += r * r;
      }
      CHECK(sq / kDraws == doctest::Approx(1e-7).epsilon(0.01));
      CHECK(std::abs(sum / kDraws) < 3.0 * std::sqrt(1e-7 / kDraws));
    }
    SUBCASE("noiseless limit") { CHECK(apply_channel(1.0, 2.0, 1e-300, rng) == doctest::Approx(2.0)); }
    SUBCASE("unbiased") {
      double sum = 0.0;
      for (std::size_t i = 0; i < kDraws; ++i) sum += apply_channel(1.0, 0.01, 1e-7, rng);
      CHECK(sum / kDraws == doctest::Approx(0.01).epsilon(0.01));
    }
  }

  TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, {1, 2, 3}) == derive_seed(1, {1, 2, 3}));
    CHECK(derive_seed(1, {1, 2, 3}) != derive_seed(1, {1, 2, 4}));
    CHECK(derive_seed(1, {1, 2}) != derive_seed(1, {1, 2, 0}));
    CHECK(derive_seed(1, {7}) != derive_seed(2, {7}));
    // Adding a plant never perturbs another plant's stream.
    Rng a(5, {4, 0, 1}), b(5, {4, 0, 1});
    Rng other(5, {4, 0, 2});
    (void)other.normal();
    CHECK(a.normal() == b.normal());
  }
}
