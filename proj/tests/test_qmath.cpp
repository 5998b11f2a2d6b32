#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qmaxent/qmath.hpp"

using namespace qmaxent;

TEST_CASE("q_log basic values") {
  CHECK(q_log(1.0, 0.5) == 0.0);
  // (2^0.5 - 1)/0.5 = 2(sqrt(2) - 1)
  CHECK(q_log(2.0, 0.5) == doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-14));
  CHECK(q_log(std::exp(1.0), 0.999999) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK_THROWS_AS(q_log(-0.1, 0.5), std::domain_error);
}

TEST_CASE("q_exp basic values and clipping") {
  CHECK(q_exp(0.0, 0.3) == 1.0);
  // deformation index 2-q = 1.5: 1 + (1-1.5)(-3) = 2.5 -> 2.5^2
  CHECK(q_exp(-3.0, 1.5) == doctest::Approx(6.25).epsilon(1e-14));
  CHECK(q_exp(-2.0, 0.5) == 0.0);   // base hits zero exactly
  CHECK(q_exp(-5.0, 0.5) == 0.0);   // clipped
  CHECK(std::isinf(q_exp(5.0, 3.0)));  // clipped base, negative exponent
}

TEST_CASE("q_exp inverts q_log on the positive branch") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> zdist(0.05, 20.0);
  std::uniform_real_distribution<double> qdist(0.05, 0.95);
  for (int i = 0; i < 500; ++i) {
    const double z = zdist(rng);
    const double q = qdist(rng);
    const double lg = q_log(z, q);
    if (1.0 + (1.0 - q) * lg <= 0.0) continue;
    CHECK(q_exp(lg, q) == doctest::Approx(z).epsilon(1e-12));
  }
}

TEST_CASE("q_log and q_exp converge to log and exp as q -> 1") {
  const double q = 1.0 - 1e-6;
  double max_dev = 0.0;
  for (double z = 0.1; z <= 10.0; z += 0.1) {
    max_dev = std::max(max_dev, std::abs(q_log(z, q) - std::log(z)));
    max_dev = std::max(max_dev, std::abs(q_exp(std::log(z), q) - z) / z);
  }
  CHECK(max_dev < 1e-4);
}

TEST_CASE("signed_power") {
  CHECK(signed_power(-4.0, 0.5) == -2.0);
  CHECK(signed_power(0.0, 0.7) == 0.0);
  CHECK(signed_power(9.0, 0.5) == 3.0);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double z = dist(rng);
    CHECK(signed_power(-z, 0.37) == -signed_power(z, 0.37));  // exactly odd
  }
  CHECK(signed_power(3.7, 1.0) == doctest::Approx(3.7).epsilon(1e-15));
}

TEST_CASE("scale_factor") {
  SUBCASE("collapses to k at q = 1") {
    const EntropicParams params{1.0, 1.380649e-23, 1.0};
    CHECK(scale_factor(params, 42.0, 17.0) == 1.380649e-23);
  }
  SUBCASE("three-level example: k_s = 1/2^(1-q)") {
    for (double q : {0.2, 0.37, 0.8}) {
      const EntropicParams params{q, 1.0, 1.0};
      CHECK(scale_factor(params, 1.0, 3.0) ==
            doctest::Approx(std::pow(2.0, q - 1.0)).epsilon(1e-14));
    }
  }
  SUBCASE("oscillator truncation: k_s = k^q (hbar omega)^(1-q)") {
    const double q = 0.65, k = 2.5, hw = 0.7;
    const std::int64_t n = 1000;
    const EntropicParams params{q, k, 1.0};
    CHECK(scale_factor(params, (n - 1) * hw, static_cast<double>(n)) ==
          doctest::Approx(std::pow(k, q) * std::pow(hw, 1.0 - q)).epsilon(1e-12));
  }
  SUBCASE("continuous in q at 1") {
    const EntropicParams near{1.0 - 1e-8, 3.0, 1.0};
    const double ks = scale_factor(near, 10.0, 1000.0);
    CHECK(ks == doctest::Approx(3.0).epsilon(1e-6));
  }
}

TEST_CASE("entropy_value") {
  const EntropicParams q1{1.0, 1.0, 1.0};
  SUBCASE("certainty has zero entropy") {
    const std::vector<double> p{1.0, 0.0, 0.0, 0.0};
    CHECK(entropy_value(p, q1, 1.0) == 0.0);
    const EntropicParams qh{0.5, 1.0, 1.0};
    CHECK(entropy_value(p, qh, 0.9) == 0.0);
  }
  SUBCASE("uniform distribution gives k_s q_log(W)") {
    const int w = 7;
    const std::vector<double> p(w, 1.0 / w);
    for (double q : {0.3, 0.6, 0.9}) {
      const EntropicParams params{q, 1.0, 1.0};
      const double k_s = 1.7;
      CHECK(entropy_value(p, params, k_s) ==
            doctest::Approx(k_s * q_log(static_cast<double>(w), q)).epsilon(1e-13));
    }
  }
  SUBCASE("domain errors") {
    const std::vector<double> bad_sum{0.5, 0.4};
    CHECK_THROWS_AS(entropy_value(bad_sum, q1, 1.0), std::domain_error);
    const std::vector<double> negative{1.1, -0.1};
    CHECK_THROWS_AS(entropy_value(negative, q1, 1.0), std::domain_error);
  }
  SUBCASE("concave on the simplex") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const EntropicParams params{0.55, 1.0, 1.0};
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> a(5), b(5);
      double sa = 0.0, sb = 0.0;
      for (int i = 0; i < 5; ++i) {
        a[i] = unit(rng) + 1e-3;
        b[i] = unit(rng) + 1e-3;
        sa += a[i];
        sb += b[i];
      }
      std::vector<double> mix(5);
      const double lam = unit(rng);
      for (int i = 0; i < 5; ++i) {
        a[i] /= sa;
        b[i] /= sb;
        mix[i] = lam * a[i] + (1.0 - lam) * b[i];
      }
      const double s_mix = entropy_value(mix, params, 1.0);
      const double s_avg = lam * entropy_value(a, params, 1.0) +
                           (1.0 - lam) * entropy_value(b, params, 1.0);
      CHECK(s_mix >= s_avg - 1e-12);
    }
  }
}
