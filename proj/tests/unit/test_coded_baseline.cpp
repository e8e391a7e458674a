#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>
#include <vector>

#include "wnc/bch.hpp"
#include "wnc/coded_control.hpp"
#include "wnc/qam.hpp"
#include "wnc/units.hpp"

using namespace wnc;

namespace {

Bits word_bits(std::uint32_t w, int k) {
  Bits b(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) b[static_cast<std::size_t>(i)] = (w >> i) & 1u;
  return b;
}

int weight(const Bits& b) {
  int w = 0;
  for (auto v : b) w += v;
  return w;
}

Bits xor_bits(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] ^ b[i];
  return out;
}

const PlantParams kPlant(1.5, 0.1);

}  // namespace

TEST_SUITE("coded-baseline") {
  TEST_CASE("scheme table") {
    CHECK(CodingScheme(15, 11, 4).symbols() == 4);
    CHECK(CodingScheme(7, 4, 8).symbols() == 1);
    CHECK(CodingScheme(15, 11, 8).symbols() == 2);
    CHECK(CodingScheme(7, 4, 4).symbols() == 2);
    CHECK(CodingScheme(15, 11, 4).name() == "BCH(15,11)-16QAM");
    CHECK(CodingScheme(7, 4, 4).t_corr() == 1);
    CHECK_THROWS_AS(CodingScheme(31, 26, 4), std::invalid_argument);
    CHECK_THROWS_AS(CodingScheme(7, 4, 6), std::invalid_argument);
    CHECK(standard_schemes().size() == 4);
  }

  TEST_CASE("bch encode") {
    const CodingScheme s(7, 4, 4);
    CHECK(weight(bch_encode(Bits(4, 0), s)) == 0);
    CHECK_THROWS_AS(bch_encode(Bits(5, 0), s), std::invalid_argument);
    for (std::uint32_t a = 0; a < 16; ++a) {
      const Bits ca = bch_encode(word_bits(a, 4), s);
      // systematic
      for (int i = 0; i < 4; ++i) CHECK(ca[static_cast<std::size_t>(i)] == ((a >> i) & 1u));
      if (a != 0) CHECK(weight(ca) >= 3);
      for (std::uint32_t b = 0; b < 16; ++b) {
        CHECK(xor_bits(ca, bch_encode(word_bits(b, 4), s)) == bch_encode(word_bits(a ^ b, 4), s));
      }
    }
  }

  TEST_CASE("bch decode") {
    const CodingScheme s(7, 4, 4);
    CHECK_THROWS_AS(bch_decode(Bits(6, 0), s), std::invalid_argument);
    std::size_t miscorrected = 0;
    for (std::uint32_t a = 0; a < 16; ++a) {
      const Bits info = word_bits(a, 4);
      const Bits cw = bch_encode(info, s);
      const auto clean = bch_decode(cw, s);
      CHECK(clean.success);
      CHECK(clean.bits == info);
      CHECK(clean.corrected_position == -1);
      for (int i = 0; i < 7; ++i) {
        Bits e = cw;
        e[static_cast<std::size_t>(i)] ^= 1u;
        const auto r = bch_decode(e, s);
        CHECK(r.bits == info);
        CHECK(r.corrected_position == i);
        for (int j = i + 1; j < 7; ++j) {
          Bits e2 = cw;
          e2[static_cast<std::size_t>(i)] ^= 1u;
          e2[static_cast<std::size_t>(j)] ^= 1u;
          const auto r2 = bch_decode(e2, s);
          CHECK(r2.success);
          if (r2.bits != info) ++miscorrected;
        }
      }
    }
    // Hamming codes miscorrect every double error.
    CHECK(miscorrected == 16 * 21);
  }

  TEST_CASE("qam constellation") {
    for (int l : {4, 8}) {
      const QamConstellation c(l, 0.1);
      const std::uint32_t size = 1u << l;
      double energy = 0.0;
      std::set<std::pair<double, double>> points;
      for (std::uint32_t label = 0; label < size; ++label) {
        const auto p = c.point(label);
        energy += std::norm(p);
        points.insert({p.real(), p.imag()});
      }
      CHECK(points.size() == size);
      CHECK(energy / size == doctest::Approx(0.1).epsilon(1e-12));

      // Gray: axis-adjacent points differ in one bit.
      const double step = 2.0 * c.scale();
      for (std::uint32_t a = 0; a < size; ++a) {
        for (std::uint32_t b = a + 1; b < size; ++b) {
          const auto d = c.point(a) - c.point(b);
          const bool adjacent = (std::abs(std::abs(d.real()) - step) < 1e-9 * step && std::abs(d.imag()) < 1e-12) ||
                                (std::abs(std::abs(d.imag()) - step) < 1e-9 * step && std::abs(d.real()) < 1e-12);
          if (adjacent) CHECK(__builtin_popcount(a ^ b) == 1);
        }
      }

      // Noiseless round trip.
      for (std::uint32_t label = 0; label < size; ++label) {
        Bits bits(static_cast<std::size_t>(l));
        for (int j = 0; j < l; ++j) bits[static_cast<std::size_t>(j)] = (label >> (l - 1 - j)) & 1u;
        const auto syms = qam_modulate(bits, l, 0.1);
        REQUIRE(syms.size() == 1);
        CHECK(qam_detect(0.01 * syms[0], 0.01, l, 0.1) == bits);
      }
    }
    const QamConstellation zero(4, 0.0);
    for (std::uint32_t label = 0; label < 16; ++label) CHECK(zero.point(label) == Symbol(0.0, 0.0));
    CHECK(qam_detect(Symbol(0.3, -0.2), 1.0, 4, 0.0) == Bits(4, 0));
    CHECK_THROWS(qam_detect(Symbol(1.0, 0.0), 0.0, 4, 0.1));
  }

  TEST_CASE("qam padding and scale invariance") {
    const Bits seven(7, 1);
    const auto syms = qam_modulate(seven, 4, 1.0);
    REQUIRE(syms.size() == 2);
    CHECK(qam_detect(syms[1], 1.0, 4, 1.0) == Bits{1, 1, 1, 0});

    Rng rng(4);
    for (int i = 0; i < 1000; ++i) {
      const Symbol tx = QamConstellation(8, 1.0).point(static_cast<std::uint32_t>(rng.bits() & 255u));
      const Symbol z(0.05 * rng.normal(), 0.05 * rng.normal());
      const double c = 3.7;
      CHECK(qam_detect(0.5 * tx + z, 0.5, 8, 1.0) == qam_detect(c * (0.5 * tx + z), c * 0.5, 8, 1.0));
    }
  }

  TEST_CASE("symbol error rate is seed independent") {
    const QamConstellation c(4, 1.0);
    const double sd = 0.25;
    const auto ser = [&](std::uint64_t seed, std::size_t n) {
      Rng rng(seed);
      std::size_t errors = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto label = static_cast<std::uint32_t>(rng.bits() & 15u);
        const Symbol rx = c.point(label) + Symbol(sd * rng.normal(), sd * rng.normal());
        if (c.detect(rx) != label) ++errors;
      }
      return static_cast<double>(errors) / static_cast<double>(n);
    };
    const std::size_t n = 1'000'000;
    const double a = ser(1, n), b = ser(2, n);
    const double sigma = std::sqrt(a * (1.0 - a) / n);
    CHECK(std::abs(a - b) < 3.0 * std::sqrt(2.0) * sigma);
    // Standard nearest-neighbour approximation for square 16-QAM.
    const double q = 0.5 * std::erfc(c.scale() / sd / std::sqrt(2.0));
    const double exact = 1.0 - std::pow(1.0 - 1.5 * q, 2.0);
    CHECK(a == doctest::Approx(exact).epsilon(0.02));
  }

  TEST_CASE("success probability does not depend on the payload") {
    const CodingScheme s(7, 4, 8);
    const CodedLink link(s, dbm_to_watts(12.0), 0.01, 1e-7);
    const std::size_t trials = 20000;
    std::vector<double> rates;
    Rng rng(55);
    for (std::uint32_t w = 0; w < 10; ++w) {
      const Bits info = word_bits(w + 3, 4);
      std::size_t ok = 0;
      for (std::size_t i = 0; i < trials; ++i) ok += link.deliver(info, rng) ? 1 : 0;
      rates.push_back(static_cast<double>(ok) / trials);
    }
    double pbar = 0.0;
    for (double r : rates) pbar += r / rates.size();
    REQUIRE(pbar > 0.05);
    REQUIRE(pbar < 0.95);
    double chi2 = 0.0;
    for (double r : rates) chi2 += std::pow(r - pbar, 2) * trials / (pbar * (1.0 - pbar));
    CHECK(chi2 < 16.92);  // chi-square, 9 dof, 95%
  }

  TEST_CASE("epoch accounting") {
    const NoisePowers n(1e-7, 0.1);
    for (const auto& s : standard_schemes()) {
      for (std::size_t horizon : {7u, 500u, 501u}) {
        Rng rng(1);
        const auto r = run_coded_control(kPlant, n, 0.01, s, horizon, rng);
        CHECK(r.epochs == horizon / static_cast<std::size_t>(s.symbols()));
      }
    }
    Rng rng(1);
    CHECK_THROWS_AS(run_coded_control(kPlant, n, 0.01, CodingScheme(15, 11, 4), 3, rng), std::invalid_argument);
  }

  TEST_CASE("error-free channel reaches the disturbance floor") {
    const NoisePowers n(1e-30, 0.1);
    for (const auto& s : {CodingScheme(7, 4, 8), CodingScheme(7, 4, 4), CodingScheme(15, 11, 4)}) {
      const int d = s.symbols();
      double sum = 0.0;
      std::size_t count = 0;
      for (std::uint64_t r = 0; r < 400; ++r) {
        Rng rng(9, {r});
        const auto res = run_coded_control(kPlant, n, 0.01, s, 200, rng);
        CHECK(res.successes == res.epochs);
        for (std::size_t k = 1; k < res.boundary_x2.size(); ++k) {
          sum += res.boundary_x2[k];
          ++count;
        }
      }
      const double expected = dropout_boundary_variance(kPlant, d, 1.0, 0.0, 2).back();
      double series = 0.0;
      for (int j = 0; j < d; ++j) series += std::pow(2.25, j);
      CHECK(expected == doctest::Approx(0.1 * series));
      CHECK(sum / count == doctest::Approx(expected).epsilon(0.05));
    }
  }

  TEST_CASE("jammed detector behaves as open loop") {
    const NoisePowers n(1e-7, 0.1);
    CodedControlOptions opt;
    opt.x0 = 1.0;
    opt.jam_detector = true;
    Rng rng(2);
    const auto r = run_coded_control(kPlant, n, 0.01, CodingScheme(7, 4, 8), 500, rng, opt);
    CHECK(r.successes == 0);
    CHECK((r.diverged || r.report.j_t > 1e20));
  }

  TEST_CASE("latency ordering at 20 dBm for the fully reliable schemes") {
    const NoisePowers n(1e-7, dbm_to_watts(20.0));
    const auto cost = [&](const CodingScheme& s) {
      double sum = 0.0;
      for (std::uint64_t r = 0; r < 200; ++r) {
        Rng rng(21, {r});
        sum += run_coded_control(kPlant, n, 0.01, s, 500, rng).report.j_t;
      }
      return sum / 200.0;
    };
    CHECK(cost(CodingScheme(7, 4, 8)) < cost(CodingScheme(15, 11, 4)));
  }

  TEST_CASE("dropout abstraction reproduces simulated boundary variance") {
    for (const auto& [s, dbm] : std::vector<std::pair<CodingScheme, double>>{{CodingScheme(7, 4, 8), 20.0},
                                                                              {CodingScheme(7, 4, 4), 14.0}}) {
      const NoisePowers n(1e-7, dbm_to_watts(dbm));
      Rng prng(31);
      const double p = estimate_success_probability(s, n, 0.01, 200000, prng);
      const int d = s.symbols();
      REQUIRE((1.0 - p) * std::pow(2.25, d) < 1.0);
      const std::size_t epochs = 500 / static_cast<std::size_t>(d);
      const auto model = dropout_boundary_variance(kPlant, d, p, 0.0, epochs);
      double sim = 0.0, ref = 0.0;
      const std::size_t replicas = 2000;
      const std::size_t from = epochs / 4;
      for (std::uint64_t r = 0; r < replicas; ++r) {
        Rng rng(32, {r});
        const auto res = run_coded_control(kPlant, n, 0.01, s, 500, rng);
        for (std::size_t k = from; k < res.boundary_x2.size(); ++k) sim += res.boundary_x2[k];
      }
      for (std::size_t k = from; k < epochs; ++k) ref += model[k];
      sim /= static_cast<double>(replicas);
      CHECK(sim == doctest::Approx(ref).epsilon(0.05));
    }
  }
}
