#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "herbst/error.hpp"
#include "herbst/fourierb.hpp"
#include "herbst/kernel.hpp"
#include "herbst/quad.hpp"
#include "herbst/specfun.hpp"

using namespace herbst;
using namespace herbst::fourierb;

namespace {
constexpr double pi = std::numbers::pi;
const quad::Tolerance oracle_tol{1e-14, 1e-11, 4000};

double incomplete_profile(int beta, double x) {
  return specfun::k0_weighted_integral(specfun::K0Integral::incomplete_plain, x, 0.0, beta);
}

// Direct transform of r^{-alpha} int z^beta K0 over (0, mr) or (mr, inf).
double hankel_oracle(int alpha, int beta, bool tail, double k, double m) {
  quad::RadialFunction f{[=](double r) {
                           const double x = m * r;
                           const double part = tail ? specfun::k0_tail(beta, x) : incomplete_profile(beta, x);
                           return std::pow(r, -alpha) * part;
                         },
                         std::max(alpha, 0) * 1.0};
  return quad::radial_fourier3(f, k, oracle_tol);
}

// b_profile - r + 1/r, written from the tail integrals so it decays without cancellation.
double b_profile_decaying(double r) {
  return -((r * r - 2) * specfun::k0_tail(0, r) - 2 * r * specfun::k0_tail(1, r) + specfun::k0_tail(2, r)) / (pi * r);
}

// Transform of b_profile: FT[r] = -1/(2 pi^3 s^4), FT[-1/r] = -1/(pi s^2), plus the decaying rest.
double b_hat_oracle(double s) {
  quad::RadialFunction d{b_profile_decaying, 1.0};
  return -1.0 / (2 * pi * pi * pi * std::pow(s, 4)) - 1.0 / (pi * s * s) + quad::radial_fourier3(d, s, oracle_tol);
}
}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(HankelParams{1, 0, 3}.validate());
  CHECK_THROWS_AS(HankelParams({1, 0, 2}).validate(), DomainError);
  CHECK_THROWS_AS(HankelParams({2, 0, 3}).validate(), DomainError);
  CHECK_THROWS_AS(HankelParams({1, 3, 3}).validate(), DomainError);
  CHECK_THROWS_AS(hankel_tail({1, 0, 3}, 0.0), DomainError);
  CHECK_THROWS_AS(hankel_tail({1, 0, 3}, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(b_hat(0.0), DomainError);
}

TEST_CASE("closed forms against direct transforms") {
  for (int alpha = -1; alpha <= 1; ++alpha) {
    for (int beta = 0; beta <= 2; ++beta) {
      for (double w : {0.1, pi, 10.0}) {
        for (double m : {1.0, 2.5}) {
          const double k = w * m / (2 * pi);
          CAPTURE(alpha);
          CAPTURE(beta);
          CAPTURE(w);
          CAPTURE(m);
          const HankelParams hp{alpha, beta, 3};
          const double tail = hankel_tail(hp, k, m);
          const double inc = hankel_incomplete(hp, k, m);
          CHECK(tail == doctest::Approx(hankel_oracle(alpha, beta, true, k, m)).epsilon(1e-7));
          CHECK(inc == doctest::Approx(hankel_oracle(alpha, beta, false, k, m)).epsilon(1e-7));
        }
      }
    }
  }
}

TEST_CASE("full moment term") {
  // alpha = 1: moment times FT[1/r] = 1/(pi k^2).
  for (int beta = 0; beta <= 2; ++beta) {
    const double k = 0.7;
    CHECK(hankel_full({1, beta, 3}, k) == doctest::Approx(specfun::k0_moment_full(beta) / (pi * k * k)).epsilon(1e-13));
    CHECK(hankel_full({-1, beta, 3}, k) ==
          doctest::Approx(-specfun::k0_moment_full(beta) / (2 * pi * pi * pi * std::pow(k, 4))).epsilon(1e-13));
    CHECK(hankel_full({0, beta, 3}, k) == 0.0);
  }
}

TEST_CASE("reduced special cases") {
  for (double k : {0.01, 0.3, 1.0, 4.0, 50.0}) {
    for (double m : {0.5, 1.0, 3.0}) {
      if (w_of(k, m) > specfun::kHankelLimit) {
        CHECK_THROWS_AS(hankel_tail({0, 1, 3}, k, m), NumericalError);
        continue;
      }
      CHECK(incomplete_a1_b0(k, m) == doctest::Approx(hankel_incomplete({1, 0, 3}, k, m)).epsilon(1e-9));
      CHECK(tail_a0_b1(k, m) == doctest::Approx(hankel_tail({0, 1, 3}, k, m)).epsilon(1e-9));
      CHECK(tail_a0_b1_extra_factor(k, m) / tail_a0_b1(k, m) == doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-14));
    }
  }
  // The direct transform sides with the general formula.
  const double k = 0.5;
  const double oracle = hankel_oracle(0, 1, true, k, 1.0);
  CHECK(tail_a0_b1(k) == doctest::Approx(oracle).epsilon(1e-8));
  CHECK(std::abs(tail_a0_b1_extra_factor(k) / oracle - 1.0) > 1.0);
}

TEST_CASE("b_hat against the transform of b_profile") {
  for (double r : {0.01, 0.5, 2.0, 5.0}) {
    CHECK(b_profile_decaying(r) == doctest::Approx(kernel::b_profile(r) - r + 1 / r).epsilon(1e-10).scale(1.0));
  }
  for (double s : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0}) {
    CAPTURE(s);
    CHECK(b_hat(s) == doctest::Approx(b_hat_oracle(s)).epsilon(1e-9));
  }
}

TEST_CASE("b_hat sign structure") {
  for (int i = 0; i < 1000; ++i) {
    const double s = 1e-3 * std::pow(1e6, i / 999.0);
    CAPTURE(s);
    CHECK(b_hat(s) < 0.0);
    CHECK(b_hat_positive_part(s) > 0.0);
    CHECK(b_hat_positive_part(s) < std::abs(b_hat_negative_part(s)));
  }
}

TEST_CASE("small sigma asymptote and regular part") {
  const double c4 = b_hat_quartic_coefficient();
  CHECK(c4 == doctest::Approx(-1 / (2 * pi * pi * pi)).epsilon(1e-15));
  for (double s : {1e-2, 1e-3}) {
    CHECK(b_hat(s) * std::pow(s, 4) == doctest::Approx(c4).epsilon(10 * s * s));
  }
  for (double s : {1e-3, 0.01, 0.02, 0.0225, 0.023, 0.05, 0.3, 1.0, 10.0}) {
    CAPTURE(s);
    const double direct = b_hat(s) - c4 / std::pow(s, 4);
    CHECK(b_hat_regular(s) == doctest::Approx(direct).epsilon(1e-6).scale(1e-12 / std::pow(s, 4)));
  }
  // sigma^2 b_hat_regular tends to a finite constant.
  CHECK(std::pow(1e-4, 2) * b_hat_regular(1e-4) == doctest::Approx(std::pow(2e-4, 2) * b_hat_regular(2e-4)).epsilon(1e-3));
}
