#pragma once

#include "herbst/quad.hpp"

// Special functions in m = 1 units: modified Bessel functions K0 and K1,
// their weighted incomplete integrals, and 3F2 at negative argument for the
// parameter families produced by radial Hankel transforms in three dimensions.
namespace herbst::specfun {

// K_order(x) for order 0 or 1, x > 0.
double bessel_k(int order, double x);
double bessel_k0(double x);
double bessel_k1(double x);
// K1(x) - 1/x, free of cancellation for small x.
double bessel_k1_minus_inverse(double x);

// int_0^inf z^beta K0(z) dz = 2^{beta-1} Gamma((beta+1)/2)^2, beta in {0,1,2}.
double k0_moment_full(int beta);

enum class K0Integral {
  incomplete_plain,  // int_0^x z^beta K0(z) dz
  incomplete_cosh,   // int_0^x cosh(nu z) K0(z) dz
  tail_exp,          // int_x^inf exp(-nu z) K0(z) dz
  tail_k1_over_z,    // int_x^inf K1(z)/z dz
  tail_zk0,          // int_x^inf z K0(z) dz
};

// nu is only read by the cosh/exp kinds, beta only by incomplete_plain.
double k0_weighted_integral(K0Integral kind, double x, double nu = 0.0, int beta = 0,
                            const quad::Tolerance& tol = {1e-15, 1e-13, 4000});

// Generic tail int_x^inf z^beta K0(z) dz, beta in {0,1,2}.
double k0_tail(int beta, double x, const quad::Tolerance& tol = {1e-15, 1e-13, 4000});

// F1(mu) = int_0^inf cosh(mu z) K0(z) dz = pi / (2 sqrt(1 - mu^2)), |mu| < 1.
double f1_moment(double mu);

// 3F2(a1, a2, a3; b1, b2; -w^2).
//
// For w below kSeriesLimit the hypergeometric series is summed directly (any
// parameters). Beyond it only the Hankel families
//   a1 = (3 - alpha)/2, a2 = a3 = (beta + 4 - alpha)/2, b1 = 3/2, b2 = 1 + a1
// with alpha in {-1, 0, 1} and beta in {0, 1, 2} are supported; they are
// evaluated from the defining Bessel integral up to w = kHankelLimit, where
// oscillatory cancellation starts to eat the 1e-9 accuracy budget. Anything
// else throws NumericalError ("evaluation failure").
double hyp3f2_neg(double a1, double a2, double a3, double b1, double b2, double w);

inline constexpr double kSeriesLimit = 0.9;
inline constexpr double kHankelLimit = 100.0;

namespace detail {
// The two strategies, exposed for the overlap test.
double hyp3f2_neg_series(double a1, double a2, double a3, double b1, double b2, double w);
double hyp3f2_hankel_integral(int alpha, int beta, double w);
// Recognise (alpha, beta) from the parameters; false if not a Hankel family.
bool hankel_family(double a1, double a2, double a3, double b1, double b2, int& alpha, int& beta);
}  // namespace detail

}  // namespace herbst::specfun
