#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "herbst/error.hpp"
#include "herbst/specfun.hpp"
#include "herbst/threshold.hpp"

using namespace herbst;
using namespace herbst::threshold;

namespace {
constexpr double pi = std::numbers::pi;

struct Bench {
  spectral::RadialPotential V = spectral::bump();
  spectral::QuadGrid g = spectral::gauss_legendre_grid(200, 1.0);
  spectral::BsMatrix L0 = spectral::s_wave_reduce(V, kernel::PhysParams::from_alpha(0.0), g);
  spectral::SpectralResult res = spectral::leading_eigenpair(L0);
  spectral::SpectralResult trial = zero_overlap_trial(L0);
};

const Bench& bench() {
  static const Bench b;
  return b;
}

std::vector<double> alphas() {
  std::vector<double> a;
  for (int i = 0; i <= 10; ++i) a.push_back(0.005 * i);
  return a;
}

// Least-squares slope of log|E| against log(lambda - lambda0).
double energy_exponent(const ThresholdExpansion& e) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = 20;
  for (int i = 0; i < n; ++i) {
    const double d = e.lambda0 * 1e-5 * std::pow(10.0, 2.0 * i / (n - 1));
    const double x = std::log(d), y = std::log(-energy_of_lambda(e, e.lambda0 + d));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}
}  // namespace

TEST_CASE("coefficient a") {
  const auto& b = bench();
  const double a = coefficient_a(b.res, b.V, b.g);
  CHECK(a < 0.0);
  const double ov = overlap(b.res, b.V, b.g);
  CHECK(a == doctest::Approx(-ov * ov / (std::sqrt(2.0) * pi)));
  CHECK(coefficient_a(b.res, b.V, b.g, 2.0) == doctest::Approx(a * std::pow(2.0, 1.5)));
  CHECK(std::abs(coefficient_a(b.trial, b.V, b.g)) < 1e-25);

  const auto fit = fit_continuation(spectral::eigen_continuation(b.V, b.g, alphas()));
  CHECK(fit.mu0 == doctest::Approx(b.res.mu0).epsilon(1e-12));
  CHECK(fit.slope == doctest::Approx(a).epsilon(1e-3));
}

TEST_CASE("coefficient b on the bump") {
  const auto& b = bench();
  CHECK_THROWS_WITH_AS(coefficient_b(b.res, b.V, b.g), doctest::Contains("divergent momentum integral"), DomainError);
  const auto c = coefficient_b(b.res, b.V, b.g, 1.0, MomentumMode::finite_part);
  CHECK(c.momentum == doctest::Approx(c.direct).epsilon(1e-3));
  CHECK(c.mixing > 0.0);
  const auto fit = fit_continuation(spectral::eigen_continuation(b.V, b.g, alphas()));
  CHECK(fit.half_curv == doctest::Approx(c.total()).epsilon(1e-2));
  CHECK(std::isnan(coefficient_b(b.res, b.V, b.g, 1.0, MomentumMode::skip).momentum));
}

TEST_CASE("coefficient b on the zero-overlap trial") {
  const auto& b = bench();
  const auto c = coefficient_b(b.trial, b.V, b.g);
  CHECK(c.direct < 0.0);
  CHECK(c.momentum == doctest::Approx(c.direct).epsilon(1e-3));
  CHECK(std::abs(c.mixing) < 1e-20);
}

TEST_CASE("b under a mass change") {
  // Same quantity on both routes at m = 2; the 1/m^4 scaling of B-hat is exercised.
  const auto V = spectral::bump();
  const auto g = spectral::gauss_legendre_grid(160, 1.0);
  const auto L0 = spectral::s_wave_reduce(V, kernel::PhysParams::from_alpha(0.0, 2.0), g);
  const auto trial = zero_overlap_trial(L0);
  const auto c = coefficient_b(trial, V, g, 2.0);
  CHECK(c.momentum == doctest::Approx(c.direct).epsilon(1e-3));
}

TEST_CASE("expansion and branches") {
  const auto& b = bench();
  const auto e = expansion(b.res, b.V, b.g);
  CHECK(e.branch == Branch::a_nonzero);
  CHECK(e.lambda0 * e.mu0 == doctest::Approx(1.0));
  CHECK_NOTHROW(e.validate());
  const auto z = expansion(b.trial, b.V, b.g);
  CHECK(z.branch == Branch::a_zero);
  CHECK(z.b < 0.0);

  auto bad = e;
  bad.branch = Branch::a_zero;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  auto zero_mu = b.res;
  zero_mu.mu0 = 0.0;
  CHECK_THROWS_AS(expansion(zero_mu, b.V, b.g), DomainError);
  auto degenerate = b.res;
  degenerate.multiplicity = 2;
  CHECK_THROWS_AS(expansion(degenerate, b.V, b.g), DomainError);
}

TEST_CASE("lambda of alpha") {
  ThresholdExpansion e;
  e.mu0 = 1.0;
  e.lambda0 = 1.0;
  e.a = -1.0;
  e.b = -1.0;
  CHECK(lambda_of_alpha(e, 0.1) == doctest::Approx(1.0 / 0.89).epsilon(1e-15));
  CHECK(lambda_of_alpha(e, 0.0) == 1.0);
  const auto& bb = bench();
  const auto r = expansion(bb.res, bb.V, bb.g);
  const double h = 1e-6;
  CHECK((lambda_of_alpha(r, h) - r.lambda0) / h == doctest::Approx(-r.lambda0 * r.lambda0 * r.a).epsilon(1e-4));
  const double al = 1e-3;
  const double series = r.lambda0 * (1 - r.lambda0 * r.a * al + r.lambda0 * (r.lambda0 * r.a * r.a - r.b) * al * al);
  CHECK(lambda_of_alpha(r, al) == doctest::Approx(series).epsilon(1e-8));
  e.b = 50.0;
  e.a = 0.0;
  CHECK_THROWS_AS(lambda_of_alpha(e, -0.1), DomainError);
  e.b = -200.0;
  CHECK_THROWS_AS(lambda_of_alpha(e, 0.1), DomainError);
}

TEST_CASE("energy of lambda") {
  const auto& b = bench();
  auto e = expansion(b.res, b.V, b.g);
  CHECK(energy_of_lambda(e, e.lambda0) == 0.0);
  CHECK_THROWS_WITH_AS(energy_of_lambda(e, 0.99 * e.lambda0), doctest::Contains("below threshold"), DomainError);
  for (double f : {1.001, 1.01, 1.1, 1.2}) CHECK(energy_of_lambda(e, f * e.lambda0) < 0.0);
  const double d = 1e-6 * e.lambda0;
  const double lead = -1.0 / std::pow(e.lambda0 * e.lambda0 * e.a, 2);
  CHECK(energy_of_lambda(e, e.lambda0 + d) / (d * d) == doctest::Approx(lead).epsilon(1e-4));
  CHECK(energy_exponent(e) == doctest::Approx(2.0).epsilon(0.01));

  auto z = expansion(b.trial, b.V, b.g);
  CHECK(energy_of_lambda(z, z.lambda0) == 0.0);
  for (double f : {1.001, 1.01, 1.1, 1.2}) CHECK(energy_of_lambda(z, f * z.lambda0) < 0.0);
  CHECK(energy_of_lambda(z, z.lambda0 + d) / d == doctest::Approx(-1.0 / (z.lambda0 * z.lambda0 * -z.b)).epsilon(1e-5));
  CHECK(energy_exponent(z) == doctest::Approx(1.0).epsilon(0.01));

  // The (lambda - lambda0)^{3/2} correction only moves the next order.
  z.c = 0.3;
  CHECK(energy_of_lambda(z, z.lambda0 + d) / d == doctest::Approx(-1.0 / (z.lambda0 * z.lambda0 * -z.b)).epsilon(1e-2));
  CHECK(energy_exponent(z) == doctest::Approx(1.0).epsilon(0.05));

  z.b = 0.1;
  CHECK_THROWS_AS(energy_of_lambda(z, 1.1 * z.lambda0), DomainError);
}

TEST_CASE("cubic coefficient from continuation") {
  const auto& b = bench();
  auto z = expansion(b.res, b.V, b.g);
  const auto fit = fit_continuation(spectral::eigen_continuation(b.V, b.g, alphas()));
  attach_cubic(z, fit);
  CHECK(z.c == doctest::Approx(-z.lambda0 * fit.cubic));
  CHECK(fit.rms < 1e-12);
  CHECK_THROWS_AS(fit_continuation({{0.0, 1.0}, {0.1, 1.0}}), DomainError);
}

TEST_CASE("zero-energy condition and decay of u") {
  const auto& b = bench();
  const double tol = 1e-8;
  const auto rep = zero_energy_condition(b.res, b.V, b.g, tol);
  CHECK_FALSE(rep.holds);
  CHECK(rep.gamma == doctest::Approx(1.0).epsilon(0.1));
  const auto zt = zero_energy_condition(b.trial, b.V, b.g, tol);
  CHECK(zt.holds);
  CHECK(zt.gamma >= 1.9);
  // Same overlap, same verdict as the a classification.
  CHECK(rep.holds == (expansion(b.res, b.V, b.g).branch == Branch::a_zero));
  CHECK(zt.holds == (expansion(b.trial, b.V, b.g).branch == Branch::a_zero));

  std::vector<double> radii;
  for (int i = 0; i < 10; ++i) radii.push_back(5.0 * std::pow(10.0, i / 9.0));
  const auto u = u_reconstruct(b.res, b.V, b.g, radii);
  CHECK(u.gamma >= 0.9);
  CHECK(u.gamma <= 1.1);
  CHECK(u.prefactor_ratio == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(u_reconstruct(b.trial, b.V, b.g, radii).gamma >= 1.9);
  CHECK_THROWS_AS(u_reconstruct(b.res, b.V, b.g, {0.5, 10.0}), DomainError);
}

TEST_CASE("u against a direct evaluation") {
  // u(r) = int l0_profile(|x - y|) |V|^{1/2} phi(y) d^3y with the angular integral done by quadrature.
  const auto& b = bench();
  const double r = 3.0;
  double direct = 0.0;
  for (int j = 0; j < b.g.size(); ++j) {
    const double rho = b.g.nodes[j];
    const double f = std::sqrt(-b.V(rho)) * b.res.phi[j];
    if (f == 0.0) continue;
    auto ang = [&](double c) { return kernel::l0_profile(std::sqrt(r * r + rho * rho - 2 * r * rho * c)); };
    direct += b.g.weights[j] * rho * rho * f * 2 * pi * quad::integrate_adaptive(ang, -1.0, 1.0, {1e-15, 1e-13}).value;
  }
  const auto u = u_reconstruct(b.res, b.V, b.g, {r, 2 * r});
  CHECK(u.u[0] == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("small-x constants") {
  const auto& b = bench();
  const auto c = small_x_constants(b.res, b.V, b.g);
  CHECK(c.A1_finite);
  CHECK(c.A2_finite);
  CHECK(c.A1 > 0.0);
  CHECK(c.A2 > c.A1 * 0.0);
  // Refinement leaves them put.
  const auto g2 = spectral::gauss_legendre_grid(300, 1.0);
  const auto r2 = spectral::leading_eigenpair(spectral::s_wave_reduce(b.V, kernel::PhysParams::from_alpha(0.0), g2));
  const auto c2 = small_x_constants(r2, b.V, g2);
  CHECK(c2.A1 == doctest::Approx(c.A1).epsilon(1e-5));
  CHECK(c2.A2 == doctest::Approx(c.A2).epsilon(1e-5));

  const auto ring = spectral::annular_bump(2.0, 0.6, 0.3);
  const auto rr = spectral::leading_eigenpair(spectral::s_wave_reduce(ring, kernel::PhysParams::from_alpha(0.0), b.g));
  const auto cr = small_x_constants(rr, ring, b.g);
  CHECK(cr.A1_finite);
  CHECK(cr.A2_finite);

  const auto flat = spectral::bump(0.0);
  const auto r0 = spectral::leading_eigenpair(spectral::s_wave_reduce(flat, kernel::PhysParams::from_alpha(0.0), b.g));
  const auto c0 = small_x_constants(r0, flat, b.g);
  CHECK(c0.A1 == 0.0);
  CHECK(c0.A2 == 0.0);
}
