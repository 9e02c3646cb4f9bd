#include "increments/generator.hpp"
#include "increments/jump_law.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace increments;
using namespace increments::generator;

namespace {

AtomicJumpLaw random_law(oracle::Sampler& sampler, unsigned max_size) {
  std::vector<JumpAtom> atoms;
  const unsigned count = sampler.integer(1, max_size);
  for (unsigned size = 1; size <= max_size && atoms.size() < count; ++size) {
    atoms.push_back({size, sampler.uniform(0.05, 2.0)});
  }
  return AtomicJumpLaw(std::move(atoms));
}

} // namespace

TEST_CASE("AtomicJumpLaw") {
  const auto law = AtomicJumpLaw::parse("2:0.5, 1:1.0");
  REQUIRE(law.atoms().size() == 2);
  CHECK(law.atoms()[0] == JumpAtom{1, 1.0});
  CHECK(law.atoms()[1] == JumpAtom{2, 0.5});
  CHECK(law.total_rate() == 1.5);
  CHECK(law.max_size() == 2);
  CHECK(law.rate_of(2) == 0.5);
  CHECK(law.rate_of(3) == 0.0);
  CHECK(law.to_string() == "1:1,2:0.5");
  CHECK(AtomicJumpLaw::parse(law.to_string()) == law);
  CHECK(AtomicJumpLaw::parse("1:1.0") == AtomicJumpLaw::unit(1.0));

  for (const char* bad : {"", "1", "1:", ":1", "0:1.0", "1:-1", "1:0", "1:1,1:2", "a:1",
                          "1:1.0x", "1:1,,2:1", "-1:1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(AtomicJumpLaw::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("eta") {
  const auto unit = AtomicJumpLaw::unit(1.0);
  CHECK(eta(unit, 0.0) == 0.0);
  CHECK(eta(unit, std::numbers::ln2) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(eta(AtomicJumpLaw::parse("1:1.0,2:0.5"), 0.0) == 0.0);
  CHECK(eta(AtomicJumpLaw::unit(3.0), 1.0) == doctest::Approx(3.0 * (std::exp(-1.0) - 1.0)));
  CHECK_THROWS_AS(eta(unit, -0.1), std::invalid_argument);
}

TEST_CASE("g_of") {
  const auto unit = AtomicJumpLaw::unit(1.0);
  CHECK(g_of(unit, 0.0, 3.0) == 1.0);
  CHECK(g_of(AtomicJumpLaw::parse("1:2,3:0.1"), 0.0, 0.7) == 1.0);
  CHECK(g_of(unit, 1.0, std::numbers::ln2) == doctest::Approx(0.60653065971263342).epsilon(1e-15));
  // Σ_n pmf(n) 2^{-n} with the Poisson pmf.
  double series = 0.0;
  for (unsigned n = 0; n < 60; ++n) {
    series += oracle::poisson_pmf(n, 1.0) * std::pow(0.5, n);
  }
  CHECK(g_of(unit, 1.0, std::numbers::ln2) == doctest::Approx(series).epsilon(1e-14));
  CHECK(g_of(AtomicJumpLaw::parse("1:1,2:0.5"), 4.2, 0.0) == 1.0);
  CHECK_THROWS_AS(g_of(unit, -1.0, 0.0), std::invalid_argument);
}

TEST_CASE("semigroup_residual") {
  CHECK(semigroup_residual(AtomicJumpLaw::unit(1.0), 1.0, 2.0, 1.0) <= 1e-12);
  CHECK(semigroup_residual(AtomicJumpLaw::parse("1:2,3:0.1"), 0.7, 1.3, 0.25) <= 1e-12);
  CHECK(semigroup_residual(AtomicJumpLaw::parse("1:2,3:0.1"), 0.0, 4.0, 0.25) <= 1e-16);

  oracle::Sampler sampler(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto law = random_law(sampler, 5);
    const double t = sampler.uniform(0.0, 5.0);
    const double s = sampler.uniform(0.0, 5.0);
    const double p = sampler.uniform(0.0, 5.0);
    worst = std::max(worst, semigroup_residual(law, t, s, p));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("eta and g are monotone") {
  oracle::Sampler sampler(99);
  for (int i = 0; i < 200; ++i) {
    const auto law = random_law(sampler, 4);
    const double p = sampler.uniform(0.0, 4.0);
    const double dp = sampler.uniform(1e-3, 1.0);
    const double t = sampler.uniform(0.0, 3.0);
    const double dt = sampler.uniform(1e-3, 1.0);
    CHECK(eta(law, p + dp) <= eta(law, p));
    const double g = g_of(law, t, p);
    CHECK(g > 0.0);
    CHECK(g <= 1.0);
    CHECK(g_of(law, t, p + dp) <= g);
    if (p > 0.0) {
      CHECK(g_of(law, t + dt, p) <= g);
    }
  }
}

TEST_CASE("pmf_from_generator") {
  SUBCASE("unit atom is Poisson") {
    const auto pmf = pmf_from_generator(AtomicJumpLaw::unit(1.0), 1.0, 3);
    REQUIRE(pmf.size() == 4);
    CHECK(pmf[0] == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(pmf[1] == doctest::Approx(0.367879).epsilon(1e-6));
    CHECK(pmf[2] == doctest::Approx(0.183940).epsilon(1e-5));
    CHECK(pmf[3] == doctest::Approx(0.061313).epsilon(1e-5));
    const auto long_pmf = pmf_from_generator(AtomicJumpLaw::unit(2.5), 1.3, 30);
    for (unsigned n = 0; n <= 30; ++n) {
      CHECK(std::abs(long_pmf[n] - oracle::poisson_pmf(n, 2.5 * 1.3)) <= 1e-12);
    }
  }
  SUBCASE("t = 0 puts all mass at zero") {
    const auto pmf = pmf_from_generator(AtomicJumpLaw::parse("1:1,2:3"), 0.0, 5);
    CHECK(pmf == std::vector<double>{1, 0, 0, 0, 0, 0});
  }
  SUBCASE("size-2 jumps give mass on even counts only") {
    const auto pmf = pmf_from_generator(AtomicJumpLaw::parse("2:1.0"), 1.0, 4);
    const double e = std::exp(-1.0);
    CHECK(pmf[0] == doctest::Approx(e).epsilon(1e-15));
    CHECK(pmf[1] == 0.0);
    CHECK(pmf[2] == doctest::Approx(e).epsilon(1e-15));
    CHECK(pmf[3] == 0.0);
    CHECK(pmf[4] == doctest::Approx(e / 2).epsilon(1e-15));
  }
  SUBCASE("multi-atom law against brute-force enumeration of jump counts") {
    // N = K1 + 2 K2 with independent K1 ~ Poisson(t r1), K2 ~ Poisson(t r2).
    const double t = 1.7;
    const double r1 = 0.8;
    const double r2 = 0.45;
    const auto pmf = pmf_from_generator(AtomicJumpLaw({{1, r1}, {2, r2}}), t, 20);
    for (unsigned n = 0; n <= 20; ++n) {
      double brute = 0.0;
      for (unsigned k2 = 0; 2 * k2 <= n; ++k2) {
        brute += oracle::poisson_pmf(n - 2 * k2, t * r1) * oracle::poisson_pmf(k2, t * r2);
      }
      CHECK(pmf[n] == doctest::Approx(brute).epsilon(1e-12));
    }
  }
  SUBCASE("non-negative with deficit equal to the tail") {
    oracle::Sampler sampler(3);
    for (int i = 0; i < 50; ++i) {
      const auto law = random_law(sampler, 3);
      const double t = sampler.uniform(0.0, 2.0);
      const auto short_pmf = pmf_from_generator(law, t, 10);
      const auto long_pmf = pmf_from_generator(law, t, 200);
      double short_sum = 0.0;
      double tail = 0.0;
      for (unsigned n = 0; n <= 200; ++n) {
        CHECK(long_pmf[n] >= 0.0);
        (n <= 10 ? short_sum : tail) += long_pmf[n];
        if (n <= 10) {
          CHECK(short_pmf[n] == long_pmf[n]);
        }
      }
      CHECK(short_sum <= 1.0 + 1e-12);
      CHECK(1.0 - short_sum == doctest::Approx(tail).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("transform consistency of the extracted pmf") {
  // Sizes 1 and 2 keep P(N > 60) below 1e-13 when Λt <= 5.
  oracle::Sampler sampler(17);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto law = random_law(sampler, 2);
    const double t = sampler.uniform(0.0, 5.0 / law.total_rate());
    const auto pmf = pmf_from_generator(law, t, 60);
    for (double p = 0.0; p <= 5.0; p += 0.5) {
      double series = 0.0;
      for (unsigned n = 0; n <= 60; ++n) {
        series += pmf[n] * std::exp(-p * n);
      }
      worst = std::max(worst, std::abs(g_of(law, t, p) - series));
    }
  }
  CHECK(worst <= 1e-10);

  // Size 3 at a smaller horizon.
  const auto law = AtomicJumpLaw::parse("1:0.5,3:0.5");
  const auto pmf = pmf_from_generator(law, 1.0, 60);
  for (double p : {0.0, 0.3, 2.0}) {
    double series = 0.0;
    for (unsigned n = 0; n <= 60; ++n) {
      series += pmf[n] * std::exp(-p * n);
    }
    CHECK(std::abs(g_of(law, 1.0, p) - series) <= 1e-10);
  }
}
