#include "herbst/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "herbst/error.hpp"
#include "herbst/specfun.hpp"

namespace herbst::kernel {

namespace {

constexpr double pi = std::numbers::pi;
using specfun::K0Integral;

void require_radius(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(what) + ": radius must be positive and finite, got " + std::to_string(r));
  }
}

void require_mass(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("mass must be positive, got " + std::to_string(m));
}

// F with the sign of the sinh term as a parameter (+1 is the form that matches the transform).
// With drop_pole the 1/(mr) of K1 is left out.
double f_profile_signed(double r, const PhysParams& p, double sinh_sign, bool drop_pole = false) {
  require_radius(r, "f_profile");
  p.validate();
  const double x = p.m * r;
  const double nu = p.mu / p.m;
  double value = drop_pole ? specfun::bessel_k1_minus_inverse(x) : specfun::bessel_k1(x);
  if (p.mu == 0.0) {
    // sinh(0) = 0 removes the tail term exactly.
    return value + specfun::k0_weighted_integral(K0Integral::incomplete_plain, x, 0.0, 0);
  }
  const double inner = specfun::k0_weighted_integral(K0Integral::incomplete_cosh, x, nu);
  const double tail = specfun::k0_weighted_integral(K0Integral::tail_exp, x, nu);
  const double mur = p.mu * r;
  value += (1.0 - nu * nu) * (std::exp(-mur) * inner - sinh_sign * std::sinh(mur) * tail);
  return value;
}

double green_signed(double r, const PhysParams& p, double sinh_sign) {
  const double f = f_profile_signed(r, p, sinh_sign);
  const double nu = p.mu / p.m;
  return p.m / (4.0 * pi * r) * (std::sqrt(1.0 - nu * nu) * std::exp(-p.mu * r) + 2.0 / pi * f);
}

}  // namespace

PhysParams PhysParams::from_alpha(double alpha, double m) {
  require_mass(m);
  if (!(alpha >= 0.0)) throw DomainError("alpha must be >= 0, got " + std::to_string(alpha));
  if (!(alpha * alpha < m)) throw DomainError("alpha^2 must stay below m so that mu < m");
  PhysParams p;
  p.m = m;
  p.alpha = alpha;
  p.E = -alpha * alpha;
  p.mu = std::sqrt(alpha * alpha * (2.0 * m - alpha * alpha));
  return p;
}

PhysParams PhysParams::from_energy(double E, double m) {
  require_mass(m);
  if (!(E <= 0.0 && E > -m)) throw DomainError("energy must satisfy -m < E <= 0, got " + std::to_string(E));
  return from_alpha(std::sqrt(-E), m);
}

PhysParams PhysParams::from_mu(double mu, double m) {
  require_mass(m);
  if (!(mu >= 0.0 && mu < m)) throw DomainError("mu must satisfy 0 <= mu < m, got " + std::to_string(mu));
  // m + E = sqrt(m^2 - mu^2); E = -mu^2 / (m + sqrt(m^2 - mu^2)) avoids cancellation.
  const double E = -mu * mu / (m + std::sqrt(m * m - mu * mu));
  PhysParams p;
  p.m = m;
  p.E = E;
  p.alpha = std::sqrt(-E);
  p.mu = mu;
  return p;
}

void PhysParams::validate() const {
  require_mass(m);
  if (!(mu >= 0.0 && mu < m)) throw DomainError("mu must satisfy 0 <= mu < m, got " + std::to_string(mu));
  if (!(E <= 0.0 && E > -m)) throw DomainError("energy must satisfy -m < E <= 0, got " + std::to_string(E));
  const double mu2 = -2.0 * m * E - E * E;
  if (std::abs(mu * mu - mu2) > 1e-12 * std::max(1.0, m * m)) {
    throw DomainError("inconsistent parameters: mu^2 != -2 m E - E^2");
  }
  if (std::abs(alpha * alpha + E) > 1e-12 * std::max(1.0, m)) {
    throw DomainError("inconsistent parameters: E != -alpha^2");
  }
}

double f_profile(double r, const PhysParams& p) { return f_profile_signed(r, p, 1.0); }

double green_function(double r, const PhysParams& p) { return green_signed(r, p, 1.0); }

double green_function_flipped_sign(double r, const PhysParams& p) { return green_signed(r, p, -1.0); }

double green_regular(double r, const PhysParams& p) {
  const double f = f_profile_signed(r, p, 1.0, true);
  const double nu = p.mu / p.m;
  return p.m / (4.0 * pi) * (std::sqrt(1.0 - nu * nu) * std::exp(-p.mu * r) + 2.0 / pi * f);
}

double l0_profile(double r, double m) {
  require_radius(r, "l0_profile");
  require_mass(m);
  const double tail = specfun::k0_weighted_integral(K0Integral::tail_k1_over_z, m * r);
  return m / (4.0 * pi * r) * (2.0 + 2.0 / pi * tail);
}

double a_profile(double m) {
  require_mass(m);
  return -m / (2.0 * pi);
}

double b_profile(double r, double m) {
  require_radius(r, "b_profile");
  require_mass(m);
  const double x = m * r;
  const double i0 = specfun::k0_weighted_integral(K0Integral::incomplete_plain, x, 0.0, 0);
  const double t1 = specfun::k0_weighted_integral(K0Integral::tail_zk0, x);
  const double i2 = specfun::k0_weighted_integral(K0Integral::incomplete_plain, x, 0.0, 2);
  const double m2 = m * m;
  const double braces =
      0.5 * (r * r - 1.0 / m2) + (r * r - 2.0 / m2) * i0 / pi + 2.0 * r / (pi * m) * t1 + i2 / (pi * m2);
  return braces / r;
}

double b_normalisation(double m) {
  require_mass(m);
  return m / (4.0 * pi);
}

double series_remainder(double r, double alpha, double m) {
  const PhysParams p = PhysParams::from_alpha(alpha, m);
  const double expansion = l0_profile(r, m) + std::sqrt(2.0 * m) * alpha * a_profile(m) +
                           2.0 * m * alpha * alpha * b_normalisation(m) * b_profile(r, m);
  return std::abs(green_function(r, p) - expansion);
}

double envelope_bound(double r, const PhysParams& p, double c) {
  require_radius(r, "envelope_bound");
  p.validate();
  if (!(p.mu > 0.0)) throw DomainError("envelope_bound: the estimate needs mu > 0");
  if (!(c >= 0.7451315)) throw DomainError("envelope_bound: c must be >= 0.7451315");
  return p.m / (4.0 * pi * r * r) * (1.0 + 2.0 / p.mu + c / p.m);
}

bool within_envelope(double r, const PhysParams& p, double c) {
  return std::abs(green_function(r, p)) <= envelope_bound(r, p, c);
}

EnvelopePieces envelope_pieces(double r, const PhysParams& p) {
  require_radius(r, "envelope_pieces");
  p.validate();
  const double x = p.m * r;
  const double nu = p.mu / p.m;
  EnvelopePieces h{};
  h.h0 = r * std::exp(-p.mu * r);
  h.h1 = r * specfun::bessel_k1(x);
  h.h2 = r * std::exp(-p.mu * r) * specfun::k0_weighted_integral(K0Integral::incomplete_cosh, x, nu);
  h.h3 = r * std::sinh(p.mu * r) * specfun::k0_weighted_integral(K0Integral::tail_exp, x, nu);
  return h;
}

double h3_residual(double z) {
  return specfun::k0_tail(0, z) - z * specfun::bessel_k0(z);
}

double h3_root() {
  std::uintmax_t iterations = 200;
  auto tol = [](double a, double b) { return std::abs(a - b) <= 1e-15 * std::max(1.0, std::abs(a)); };
  const auto [lo, hi] = boost::math::tools::toms748_solve(h3_residual, 0.1, 3.0, tol, iterations);
  return 0.5 * (lo + hi);
}

}  // namespace herbst::kernel
