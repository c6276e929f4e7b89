#include "herbst/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "herbst/error.hpp"

namespace herbst::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double euler_gamma = 0.57721566490153286061;

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw DomainError(std::string(what) + ": argument must be positive, got " + std::to_string(x));
}

// Power series about 0 (x <= 2). Returns K0, and K1 - 1/x.
void small_series(double x, double& k0, double& k1_rest) {
  const double q = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);
  double i0 = 0.0, i1 = 0.0, k0_sum = 0.0, k1_sum = 0.0;
  double t0 = 1.0;         // q^k / (k!)^2
  double t1 = 1.0;         // q^k / (k! (k+1)!)
  double harmonic = 0.0;   // H_k
  for (int k = 0; k < 60; ++k) {
    if (k > 0) {
      t0 *= q / (double(k) * k);
      t1 *= q / (double(k) * (k + 1));
      harmonic += 1.0 / k;
    }
    i0 += t0;
    i1 += t1;
    k0_sum += harmonic * t0;
    // psi(k+1) + psi(k+2) = -2 gamma + 2 H_k + 1/(k+1)
    k1_sum += (-2.0 * euler_gamma + 2.0 * harmonic + 1.0 / (k + 1)) * t1;
    if (t0 < 1e-18 * i0 && t1 < 1e-18 * i1) break;
  }
  k0 = -(log_half + euler_gamma) * i0 + k0_sum;
  k1_rest = log_half * (0.5 * x * i1) - 0.25 * x * k1_sum;
}

// Steed's continued fraction CF2 with Temme's normalisation, order 0 (x > 2).
void large_cf(double x, double& k0, double& k1, double* k0_scaled = nullptr) {
  constexpr double eps = 1e-17;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 10000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < eps) break;
  }
  h *= a1;
  const double scaled = std::sqrt(pi / (2.0 * x)) / s;
  if (k0_scaled) *k0_scaled = scaled;
  k0 = scaled * std::exp(-x);
  k1 = k0 * (x + 0.5 - h) / x;
}

// e^{x} K0(x) for x > 2.
double k0_scaled(double x) {
  double k0, k1, scaled;
  large_cf(x, k0, k1, &scaled);
  return scaled;
}

// int_lo^hi g(z) dz where g may carry the log singularity of K0 at z = 0.
// hi may be +infinity.
double integrate_k0_family(const std::function<double(double)>& g, double lo, double hi,
                           const quad::Tolerance& tol) {
  if (hi <= lo) return 0.0;
  double total = 0.0;
  if (lo < 1.0) {
    const double top = std::min(hi, 1.0);
    if (lo == 0.0) {
      // z = top t^3 flattens the log singularity.
      auto mapped = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double t2 = t * t;
        return 3.0 * top * t2 * g(top * t2 * t);
      };
      total += quad::integrate_adaptive(mapped, 0.0, 1.0, tol).value;
    } else {
      total += quad::integrate_adaptive(g, lo, top, tol).value;
    }
    lo = top;
  }
  if (hi > lo) total += quad::integrate_adaptive(g, lo, hi, tol).value;
  return total;
}

}  // namespace

double bessel_k0(double x) {
  require_positive(x, "bessel_k0");
  double k0, k1;
  if (x <= 2.0) {
    small_series(x, k0, k1);
  } else {
    large_cf(x, k0, k1);
  }
  return k0;
}

double bessel_k1(double x) {
  require_positive(x, "bessel_k1");
  double k0, k1;
  if (x <= 2.0) {
    small_series(x, k0, k1);
    return 1.0 / x + k1;
  }
  large_cf(x, k0, k1);
  return k1;
}

double bessel_k1_minus_inverse(double x) {
  require_positive(x, "bessel_k1_minus_inverse");
  double k0, k1;
  if (x <= 2.0) {
    small_series(x, k0, k1);
    return k1;
  }
  large_cf(x, k0, k1);
  return k1 - 1.0 / x;
}

double bessel_k(int order, double x) {
  if (order == 0) return bessel_k0(x);
  if (order == 1) return bessel_k1(x);
  throw DomainError("bessel_k: only orders 0 and 1 are provided, got " + std::to_string(order));
}

double k0_moment_full(int beta) {
  if (beta < 0 || beta > 2) throw DomainError("k0_moment_full: beta must be 0, 1 or 2");
  const double g = std::tgamma(0.5 * (beta + 1));
  return std::pow(2.0, beta - 1) * g * g;
}

double k0_tail(int beta, double x, const quad::Tolerance& tol) {
  if (beta < 0 || beta > 2) throw DomainError("k0_tail: beta must be 0, 1 or 2");
  if (!(x >= 0.0)) throw DomainError("k0_tail: x must be >= 0");
  auto g = [beta](double z) { return std::pow(z, beta) * bessel_k0(z); };
  return integrate_k0_family(g, x, INFINITY, tol);
}

double k0_weighted_integral(K0Integral kind, double x, double nu, int beta, const quad::Tolerance& tol) {
  if (!(x >= 0.0)) throw DomainError("k0_weighted_integral: x must be >= 0");
  switch (kind) {
    case K0Integral::incomplete_plain: {
      if (beta < 0 || beta > 2) throw DomainError("k0_weighted_integral: beta must be 0, 1 or 2");
      if (x == 0.0) return 0.0;
      auto g = [beta](double z) { return std::pow(z, beta) * bessel_k0(z); };
      if (std::isinf(x)) return k0_moment_full(beta);
      return integrate_k0_family(g, 0.0, x, tol);
    }
    case K0Integral::incomplete_cosh: {
      if (!(nu >= 0.0 && nu < 1.0)) throw DomainError("k0_weighted_integral: incomplete_cosh needs 0 <= nu < 1");
      if (x == 0.0) return 0.0;
      if (std::isinf(x)) return f1_moment(nu);
      // cosh(nu z) K0(z) written with the decaying exponent to avoid overflow
      auto g = [nu](double z) {
        if (z <= 2.0) return std::cosh(nu * z) * bessel_k0(z);
        // e^{z} K0(z) times decaying exponentials, so large z cannot overflow.
        return 0.5 * (std::exp(-(1.0 - nu) * z) + std::exp(-(1.0 + nu) * z)) * k0_scaled(z);
      };
      return integrate_k0_family(g, 0.0, x, tol);
    }
    case K0Integral::tail_exp: {
      if (!(nu >= 0.0 && nu < 1.0)) throw DomainError("k0_weighted_integral: tail_exp needs 0 <= nu < 1");
      if (std::isinf(x)) return 0.0;
      auto g = [nu](double z) { return std::exp(-nu * z) * bessel_k0(z); };
      return integrate_k0_family(g, x, INFINITY, tol);
    }
    case K0Integral::tail_k1_over_z: {
      if (!(x > 0.0)) throw DomainError("k0_weighted_integral: tail_k1_over_z diverges at x = 0");
      if (std::isinf(x)) return 0.0;
      double total = 0.0;
      double lo = x;
      if (x < 1.0) {
        // z = e^s turns K1(z)/z dz into K1(e^s) ds, which is tame near 0.
        auto g = [](double s) { return bessel_k1(std::exp(s)); };
        total += quad::integrate_adaptive(g, std::log(x), 0.0, tol).value;
        lo = 1.0;
      }
      auto h = [](double z) { return bessel_k1(z) / z; };
      total += quad::integrate_adaptive(h, lo, INFINITY, tol).value;
      return total;
    }
    case K0Integral::tail_zk0:
      if (std::isinf(x)) return 0.0;
      return k0_tail(1, x, tol);
  }
  throw DomainError("k0_weighted_integral: unknown kind");
}

double f1_moment(double mu) {
  if (!(std::abs(mu) < 1.0)) throw DomainError("f1_moment: |mu| must be < 1, got " + std::to_string(mu));
  return pi / (2.0 * std::sqrt(1.0 - mu * mu));
}

namespace detail {

double hyp3f2_neg_series(double a1, double a2, double a3, double b1, double b2, double w) {
  const double z = -w * w;
  if (!(std::abs(z) < 1.0)) throw NumericalError("evaluation failure: 3F2 series needs w < 1");
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 100000; ++n) {
    term *= (a1 + n) * (a2 + n) * (a3 + n) / ((b1 + n) * (b2 + n) * (n + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) < 1e-17 * std::abs(sum) && n > 5) return sum;
  }
  throw NumericalError("evaluation failure: 3F2 series did not converge", sum);
}

bool hankel_family(double a1, double a2, double a3, double b1, double b2, int& alpha, int& beta) {
  auto same = [](double x, double y) { return std::abs(x - y) < 1e-12; };
  if (!same(b1, 1.5) || !same(a2, a3)) return false;
  for (int al = -1; al <= 1; ++al) {
    if (!same(a1, 0.5 * (3 - al)) || !same(b2, 1.0 + 0.5 * (3 - al))) continue;
    for (int be = 0; be <= 2; ++be) {
      if (same(a2, 0.5 * (be + 4 - al))) {
        alpha = al;
        beta = be;
        return true;
      }
    }
  }
  return false;
}

namespace {

// sqrt(pi/2) J(x) = int_0^x u^{1-alpha} sin u du.
double sine_moment(int alpha, double x) {
  if (x < 0.5) {
    const double x2 = x * x;
    double power = std::pow(x, 3 - alpha);  // x^{2j+3-alpha}
    double factorial = 1.0;                 // (2j+1)!
    double sum = 0.0;
    for (int j = 0; j < 20; ++j) {
      if (j > 0) {
        power *= x2;
        factorial *= (2.0 * j) * (2.0 * j + 1.0);
      }
      const double t = power / ((2.0 * j + 3 - alpha) * factorial);
      sum += (j % 2 ? -t : t);
      if (t < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  switch (alpha) {
    case 1: {
      const double h = std::sin(0.5 * x);
      return 2.0 * h * h;
    }
    case 0:
      return s - x * c;
    default:
      return 2.0 * x * s - (x * x - 2.0) * c - 2.0;
  }
}

}  // namespace

double hyp3f2_hankel_integral(int alpha, int beta, double w) {
  if (alpha < -1 || alpha > 1 || beta < 0 || beta > 2) {
    throw DomainError("hyp3f2_hankel_integral: alpha in {-1,0,1}, beta in {0,1,2}");
  }
  if (!(w > 0.0)) throw DomainError("hyp3f2_hankel_integral: w must be positive");
  if (w > kHankelLimit) throw NumericalError("evaluation failure: w = " + std::to_string(w) + " beyond supported range");
  const double root = std::sqrt(2.0 / pi);
  auto g = [=](double z) {
    if (z <= 0.0) return 0.0;
    return std::pow(z, beta) * bessel_k0(z) * sine_moment(alpha, w * z);
  };
  // Piecewise over half periods of the oscillation until K0 has killed the
  // integrand; the first piece carries the log singularity at z = 0.
  quad::Tolerance tol{1e-300, 1e-14, 4000};
  const double step = std::min(pi / w, 1.0);
  double sum = 0.0;
  double largest = 0.0;
  int quiet = 0;
  for (int n = 0;; ++n) {
    const double lo = n * step;
    const double hi = lo + step;
    const double piece = (n == 0) ? integrate_k0_family(g, 0.0, hi, tol) : quad::integrate_adaptive(g, lo, hi, tol).value;
    sum += piece;
    largest = std::max(largest, std::abs(piece));
    tol.abs_tol = 1e-17 * largest;
    quiet = (hi > 5.0 && std::abs(piece) < 1e-18 * largest) ? quiet + 1 : 0;
    if (quiet >= 3) break;
    if (n > 2000000) throw NumericalError("evaluation failure: Hankel integral did not terminate", sum);
  }
  const double b = 0.5 * (beta + 4 - alpha);
  const double gb = std::tgamma(b);
  const double prefactor = std::pow(w, 3 - alpha) * std::pow(2.0, beta + 1.5 - alpha) * gb * gb /
                           ((3 - alpha) * std::tgamma(1.5));
  return root * sum / prefactor;
}

}  // namespace detail

double hyp3f2_neg(double a1, double a2, double a3, double b1, double b2, double w) {
  auto nonpositive_integer = [](double b) { return b <= 0.0 && b == std::floor(b); };
  if (nonpositive_integer(b1) || nonpositive_integer(b2)) {
    throw DomainError("hyp3f2_neg: lower parameters must not be non-positive integers");
  }
  if (!(w >= 0.0)) throw DomainError("hyp3f2_neg: w must be >= 0");
  if (w == 0.0) return 1.0;
  if (w < kSeriesLimit) return detail::hyp3f2_neg_series(a1, a2, a3, b1, b2, w);
  int alpha = 0, beta = 0;
  if (!detail::hankel_family(a1, a2, a3, b1, b2, alpha, beta)) {
    throw NumericalError("evaluation failure: 3F2 parameters outside the supported Hankel families at w = " +
                         std::to_string(w));
  }
  return detail::hyp3f2_hankel_integral(alpha, beta, w);
}

}  // namespace herbst::specfun
