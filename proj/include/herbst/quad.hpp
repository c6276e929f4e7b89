#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace herbst::quad {

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;

  // Throws DomainError unless abs_tol > 0, rel_tol > 0, max_subdivisions > 0.
  void validate() const;
};

// A radial profile f(r) on (0, inf). singularity_order_at_zero is the s in
// f(r) ~ r^{-s}; r^2 f must stay integrable in 3-D, so s < 3.
struct RadialFunction {
  std::function<double(double)> eval;
  double singularity_order_at_zero = 0.0;
  // Beyond this radius the profile is identically zero.
  double support_radius = std::numeric_limits<double>::infinity();

  void validate() const;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

// Globally adaptive Gauss-Kronrod (G10/K21) quadrature on (a, b). b may be
// +infinity, in which case (a, inf) is mapped onto (0, 1). Throws
// NumericalError carrying the best estimate when max_subdivisions is exceeded.
Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                            const Tolerance& tol = {});
Estimate integrate_adaptive(const RadialFunction& f, double a, double b, const Tolerance& tol = {});

// Sum of a fixed partition of (a, b) at the given breakpoints, each piece
// integrated adaptively. Convenience for integrands with known kinks.
Estimate integrate_pieces(const std::function<double(double)>& f, std::span<const double> breakpoints,
                          const Tolerance& tol = {});

// 3-D Fourier transform of a radial function with the exp(-2 pi i k.x)
// convention:  F(k) = (2/k) int_0^inf r f(r) sin(2 pi k r) dr.
// The integral is split at the zeros of the sine and the partial sums are
// accelerated with Wynn's epsilon algorithm, so profiles whose r f(r) tends
// to a constant (tempered, Abel-summable) are also handled.
double radial_fourier3(const RadialFunction& f, double k, const Tolerance& tol = {});

// The same transform for a profile known only at quadrature nodes of a
// compact interval: F(k) = 4 pi sum_i w_i r_i^2 f_i j0(2 pi k r_i).
double radial_fourier3_sampled(std::span<const double> nodes, std::span<const double> weights,
                               std::span<const double> values, double k);
// F(k) - F(0), without the cancellation of forming both terms.
double radial_fourier3_sampled_delta(std::span<const double> nodes, std::span<const double> weights,
                                     std::span<const double> values, double k);

// j0(x) = sin(x)/x and j0(x) - 1, both stable for small x.
double sinc(double x);
double sinc_minus_one(double x);

struct Rule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // positive
};

// n-point Gauss-Legendre rule on (a, b).
Rule gauss_legendre(int n, double a, double b);

// Best estimate of the limit of a sequence of partial sums by Wynn's epsilon
// algorithm (highest even column using the latest entries).
double wynn_epsilon(std::span<const double> partial_sums);

}  // namespace herbst::quad
