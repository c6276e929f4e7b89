#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "herbst/error.hpp"
#include "herbst/quad.hpp"
#include "herbst/specfun.hpp"

using namespace herbst;
using namespace herbst::specfun;

namespace {
constexpr double pi = std::numbers::pi;
const quad::Tolerance tight{1e-15, 1e-13, 8000};

// Oracles built on K_nu(x) = int_0^inf cosh(nu t) exp(-x cosh t) dt, with
// the z-integral done in closed form so no Bessel evaluation is involved.
double over_t(const std::function<double(double)>& f) {
  return quad::integrate_adaptive(f, 0.0, 50.0, tight).value;
}

double k_oracle(int order, double x) {
  return over_t([=](double t) { return std::cosh(order * t) * std::exp(-x * std::cosh(t)); });
}
}  // namespace

TEST_CASE("Bessel K reference values") {
  CHECK(bessel_k(0, 1.0) == doctest::Approx(0.42102443824070834).epsilon(1e-13));
  CHECK(bessel_k(0, 10.0) == doctest::Approx(1.778006231616918e-5).epsilon(1e-13));
  CHECK(bessel_k(1, 1.0) == doctest::Approx(0.60190723019723457).epsilon(1e-13));
  CHECK(1e-8 * bessel_k(1, 1e-8) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(bessel_k(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(1, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_k(2, 1.0), DomainError);
}

TEST_CASE("Bessel K against the integral representation on a 200-point grid") {
  double prev0 = INFINITY, prev1 = INFINITY;
  for (int i = 0; i < 200; ++i) {
    const double x = 0.05 * std::pow(400.0, i / 199.0);
    const double k0 = bessel_k0(x);
    const double k1 = bessel_k1(x);
    CHECK(k0 == doctest::Approx(k_oracle(0, x)).epsilon(1e-10));
    CHECK(k1 == doctest::Approx(k_oracle(1, x)).epsilon(1e-10));
    CHECK(k0 == doctest::Approx(std::cyl_bessel_k(0.0, x)).epsilon(1e-12));
    CHECK(k1 == doctest::Approx(std::cyl_bessel_k(1.0, x)).epsilon(1e-12));
    CHECK(k0 < prev0);
    CHECK(k1 < prev1);
    prev0 = k0;
    prev1 = k1;
  }
}

TEST_CASE("K1 minus 1/x is continuous across the series/fraction switch") {
  // leading small-x behaviour: (x/2)(log(x/2) + gamma - 1/2)
  const double x = 1e-6;
  CHECK(bessel_k1_minus_inverse(x) ==
        doctest::Approx(0.5 * x * (std::log(0.5 * x) + 0.5772156649015329 - 0.5)).epsilon(1e-11));
  for (double x : {0.01, 1.0, 1.999999, 2.000001, 3.0}) {
    CHECK(bessel_k1_minus_inverse(x) == doctest::Approx(std::cyl_bessel_k(1.0, x) - 1.0 / x).epsilon(1e-11));
  }
  CHECK(bessel_k0(2.0 - 1e-12) == doctest::Approx(bessel_k0(2.0 + 1e-12)).epsilon(1e-12));
}

TEST_CASE("full moments") {
  CHECK(k0_moment_full(0) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(k0_moment_full(1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(k0_moment_full(2) == doctest::Approx(pi / 2).epsilon(1e-15));
  // int z^beta K0 = beta! int_0^inf sech^{beta+1} t dt
  for (int beta = 0; beta <= 2; ++beta) {
    const double fact = beta == 2 ? 2.0 : 1.0;
    const double oracle = fact * over_t([=](double t) { return std::pow(1.0 / std::cosh(t), beta + 1); });
    CHECK(k0_moment_full(beta) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(k0_weighted_integral(K0Integral::incomplete_plain, 60.0, 0.0, beta) ==
          doctest::Approx(k0_moment_full(beta)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(k0_moment_full(3), DomainError);
}

TEST_CASE("incomplete and tail integrals against closed-form z-integrals") {
  for (double x : {0.05, 0.3, 1.0, 2.5, 7.0}) {
    const double plain0 = over_t([=](double t) {
      const double c = std::cosh(t);
      return -std::expm1(-c * x) / c;
    });
    const double plain1 = over_t([=](double t) {
      const double c = std::cosh(t);
      return (1.0 - std::exp(-c * x) * (1.0 + c * x)) / (c * c);
    });
    const double plain2 = over_t([=](double t) {
      const double c = std::cosh(t), y = c * x;
      return (2.0 - std::exp(-y) * (2.0 + 2.0 * y + y * y)) / (c * c * c);
    });
    CHECK(k0_weighted_integral(K0Integral::incomplete_plain, x, 0.0, 0) == doctest::Approx(plain0).epsilon(1e-10));
    CHECK(k0_weighted_integral(K0Integral::incomplete_plain, x, 0.0, 1) == doctest::Approx(plain1).epsilon(1e-10));
    CHECK(k0_weighted_integral(K0Integral::incomplete_plain, x, 0.0, 2) == doctest::Approx(plain2).epsilon(1e-9));

    for (double nu : {0.0, 0.3, 0.9}) {
      const double cosh_oracle = over_t([=](double t) {
        const double c = std::cosh(t);
        return 0.5 * (-std::expm1(-(c - nu) * x) / (c - nu) - std::expm1(-(c + nu) * x) / (c + nu));
      });
      const double exp_oracle = over_t([=](double t) {
        const double c = std::cosh(t) + nu;
        return std::exp(-c * x) / c;
      });
      CHECK(k0_weighted_integral(K0Integral::incomplete_cosh, x, nu) == doctest::Approx(cosh_oracle).epsilon(1e-10));
      CHECK(k0_weighted_integral(K0Integral::tail_exp, x, nu) == doctest::Approx(exp_oracle).epsilon(1e-10));
    }

    const double k1z = over_t([=](double t) {
      const double c = std::cosh(t);
      return c * -std::expint(-c * x);
    });
    CHECK(k0_weighted_integral(K0Integral::tail_k1_over_z, x) == doctest::Approx(k1z).epsilon(1e-10));
    const double zk0 = over_t([=](double t) {
      const double c = std::cosh(t);
      return std::exp(-c * x) * (1.0 + c * x) / (c * c);
    });
    CHECK(k0_weighted_integral(K0Integral::tail_zk0, x) == doctest::Approx(zk0).epsilon(1e-10));
  }
  CHECK(k0_weighted_integral(K0Integral::tail_exp, 0.5, 0.3) ==
        doctest::Approx(over_t([](double t) {
          const double c = std::cosh(t) + 0.3;
          return std::exp(-0.5 * c) / c;
        })).epsilon(1e-10));
}

TEST_CASE("additivity, limits and monotonicity") {
  double prev[5] = {-1, -1, INFINITY, INFINITY, INFINITY};
  for (int i = 0; i < 60; ++i) {
    const double x = 0.01 * std::pow(3000.0, i / 59.0);
    for (int beta = 0; beta <= 2; ++beta) {
      const double total = k0_weighted_integral(K0Integral::incomplete_plain, x, 0.0, beta) + k0_tail(beta, x);
      CHECK(total == doctest::Approx(k0_moment_full(beta)).epsilon(1e-10));
    }
    CHECK(k0_weighted_integral(K0Integral::incomplete_plain, x, 0.0, 1) +
              k0_weighted_integral(K0Integral::tail_zk0, x) ==
          doctest::Approx(1.0).epsilon(1e-10));
    const double vals[5] = {k0_weighted_integral(K0Integral::incomplete_plain, x, 0.0, 2),
                            k0_weighted_integral(K0Integral::incomplete_cosh, x, 0.5),
                            k0_weighted_integral(K0Integral::tail_exp, x, 0.5),
                            k0_weighted_integral(K0Integral::tail_k1_over_z, x),
                            k0_weighted_integral(K0Integral::tail_zk0, x)};
    CHECK(vals[0] >= prev[0]);
    CHECK(vals[1] >= prev[1]);
    CHECK(vals[2] <= prev[2]);
    CHECK(vals[3] <= prev[3]);
    CHECK(vals[4] <= prev[4]);
    std::copy(vals, vals + 5, prev);
  }
  CHECK(k0_weighted_integral(K0Integral::incomplete_cosh, INFINITY, 0.0) == doctest::Approx(pi / 2));
  CHECK(k0_weighted_integral(K0Integral::incomplete_cosh, 800.0, 0.0) == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(k0_weighted_integral(K0Integral::incomplete_cosh, 8000.0, 0.99) ==
        doctest::Approx(f1_moment(0.99)).epsilon(1e-10));
  CHECK(k0_weighted_integral(K0Integral::tail_k1_over_z, 1e-6) == doctest::Approx(1e6).epsilon(1e-5));
  CHECK_THROWS_AS(k0_weighted_integral(K0Integral::incomplete_cosh, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(k0_weighted_integral(K0Integral::tail_exp, 1.0, 1.2), DomainError);
  CHECK_THROWS_AS(k0_weighted_integral(K0Integral::tail_k1_over_z, 0.0), DomainError);
  CHECK_THROWS_AS(k0_weighted_integral(K0Integral::incomplete_plain, -1.0), DomainError);
}

TEST_CASE("F1 moment") {
  CHECK(f1_moment(0.0) == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(f1_moment(0.8) == doctest::Approx(2.617993877991494).epsilon(1e-14));
  double prev = 0.0;
  for (double mu : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.999}) {
    const double oracle = over_t([=](double t) {
      const double c = std::cosh(t);
      return c / (c * c - mu * mu);
    });
    CHECK(f1_moment(mu) == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(f1_moment(mu) > prev);
    prev = f1_moment(mu);
  }
  CHECK_THROWS_AS(f1_moment(1.0), DomainError);
  CHECK_THROWS_AS(f1_moment(-1.5), DomainError);
}

TEST_CASE("3F2 at negative argument") {
  CHECK(hyp3f2_neg(0.3, 1.7, 2.2, 0.5, 4.0, 0.0) == 1.0);
  for (double w : {0.1, 0.5, 0.85, 0.95, 1.5, 4.0, 20.0, 100.0}) {
    CHECK(hyp3f2_neg(1.5, 2.5, 2.5, 1.5, 2.5, w) == doctest::Approx(std::pow(1.0 + w * w, -2.5)).epsilon(1e-9));
    CHECK(hyp3f2_neg(1.0, 1.5, 1.5, 1.5, 2.0, w) ==
          doctest::Approx(2.0 * (1.0 - 1.0 / std::sqrt(1.0 + w * w)) / (w * w)).epsilon(1e-9));
  }
  // a reducible case outside the Hankel families: 3F2(a, b, c; b, c; z) = (1 - z)^{-a}
  CHECK(hyp3f2_neg(0.7, 1.3, 2.1, 1.3, 2.1, 0.6) == doctest::Approx(std::pow(1.36, -0.7)).epsilon(1e-13));
  CHECK_THROWS_AS(hyp3f2_neg(1.0, 1.5, 1.5, 1.5, 2.0, 2.0 * kHankelLimit), NumericalError);
  CHECK_THROWS_AS(hyp3f2_neg(1.0, 1.0, 1.0, 0.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(hyp3f2_neg(1.0, 1.0, 1.0, 1.5, -2.0, 0.5), DomainError);
  try {
    hyp3f2_neg(0.7, 1.3, 2.1, 1.3, 2.1, 2.0);
    FAIL("expected evaluation failure");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("evaluation failure") != std::string::npos);
  }
}

TEST_CASE("3F2 strategies agree in the overlap window") {
  for (int alpha = -1; alpha <= 1; ++alpha) {
    for (int beta = 0; beta <= 2; ++beta) {
      const double a1 = 0.5 * (3 - alpha);
      const double a2 = 0.5 * (beta + 4 - alpha);
      int al = 9, be = 9;
      REQUIRE(detail::hankel_family(a1, a2, a2, 1.5, 1.0 + a1, al, be));
      CHECK(al == alpha);
      CHECK(be == beta);
      for (double w : {0.3, 0.6, 0.75, 0.85, 0.89}) {
        const double series = detail::hyp3f2_neg_series(a1, a2, a2, 1.5, 1.0 + a1, w);
        const double integral = detail::hyp3f2_hankel_integral(alpha, beta, w);
        CHECK(series == doctest::Approx(integral).epsilon(1e-7));
      }
      // continuity across the switch point
      const double below = hyp3f2_neg(a1, a2, a2, 1.5, 1.0 + a1, kSeriesLimit * (1 - 1e-9));
      const double above = hyp3f2_neg(a1, a2, a2, 1.5, 1.0 + a1, kSeriesLimit * (1 + 1e-9));
      CHECK(below == doctest::Approx(above).epsilon(1e-7));
    }
  }
}
