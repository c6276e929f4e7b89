#include "herbst/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "herbst/error.hpp"
#include "herbst/fourierb.hpp"
#include "herbst/quad.hpp"
#include "herbst/specfun.hpp"

namespace herbst::threshold {

namespace {

constexpr double pi = std::numbers::pi;
const quad::Tolerance kMomentumTol{1e-14, 1e-11, 4000};

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::vector<double> weighted_samples(const std::vector<double>& phi, const spectral::RadialPotential& potential,
                                     const spectral::QuadGrid& grid) {
  require(static_cast<int>(phi.size()) == grid.size(), "eigenfunction samples do not match the grid");
  std::vector<double> f(phi.size());
  for (int i = 0; i < grid.size(); ++i) f[i] = std::sqrt(-potential(grid.nodes[i])) * phi[i];
  return f;
}

double a_prefactor(double m) { return -std::pow(m, 1.5) / (std::sqrt(2.0) * pi); }

// int_{r - rho}^{r + rho} s L0(s) ds with the constant 2 of the bracket removed,
// i.e. (m / 2 pi^2) int T(m s) ds, T(x) = int_x^inf K1(z)/z dz.
double l0_tail_band(double r, double rho, double m) {
  static const quad::Rule rule = quad::gauss_legendre(24, -1.0, 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = r + rho * rule.nodes[i];
    s += rule.weights[i] * specfun::k0_weighted_integral(specfun::K0Integral::tail_k1_over_z, m * x);
  }
  return m / (2.0 * pi * pi) * rho * s;
}

}  // namespace

void ThresholdExpansion::validate() const {
  require(mu0 > 0.0, "threshold: mu0 must be positive");
  require(std::abs(lambda0 * mu0 - 1.0) <= 1e-12, "threshold: lambda0 mu0 must be 1");
  require(a <= 0.0, "threshold: a must be <= 0");
  require(a_zero_tol > 0.0, "threshold: a_zero_tol must be positive");
  require(m > 0.0, "threshold: mass must be positive");
  const bool zero = std::abs(a) < a_zero_tol * mu0;
  require(zero == (branch == Branch::a_zero), "threshold: branch does not match |a| against a_zero_tol");
}

double overlap(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
               const spectral::QuadGrid& grid) {
  return spectral::grid_overlap(potential, grid, res.phi);
}

double coefficient_a(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                     const spectral::QuadGrid& grid, double m) {
  require(m > 0.0, "coefficient_a: mass must be positive");
  const double ov = overlap(res, potential, grid);
  return a_prefactor(m) * ov * ov;
}

double b_momentum(const std::vector<double>& f, const spectral::QuadGrid& grid, double m) {
  require(static_cast<int>(f.size()) == grid.size(), "b_momentum: samples do not match the grid");
  const auto& x = grid.nodes;
  const auto& w = grid.weights;
  const double f0 = quad::radial_fourier3_sampled(x, w, f, 0.0);
  const double psi0 = f0 * f0;
  const double c4 = fourierb::b_hat_quartic_coefficient();
  auto psi = [&](double s) {
    const double v = quad::radial_fourier3_sampled(x, w, f, m * s);
    return v * v;
  };
  auto inner = [&](double s) {
    const double d = quad::radial_fourier3_sampled_delta(x, w, f, m * s);
    const double dpsi = d * (d + 2.0 * f0);
    return c4 * dpsi / (s * s) + fourierb::b_hat_regular(s) * s * s * psi(s);
  };
  auto outer = [&](double s) { return fourierb::b_hat(s) * s * s * psi(s); };
  // Beyond this the grid no longer resolves f-hat; it has decayed long before for smooth f.
  const double s_max = grid.size() / (4.0 * m * grid.radius);
  const double low = quad::integrate_adaptive(inner, 0.0, 1.0, kMomentumTol).value;
  const std::vector<double> breaks = [&] {
    std::vector<double> b{1.0};
    while (b.back() < s_max) b.push_back(std::min(s_max, b.back() + 1.0 / grid.radius));
    return b;
  }();
  const double high = quad::integrate_pieces(outer, breaks, kMomentumTol).value;
  // Finite part of int_0^1 sigma^{-2} d sigma is -1.
  return m / (2.0 * pi) * 4.0 * pi * (low + high - c4 * psi0);
}

BCoefficient coefficient_b(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                           const spectral::QuadGrid& grid, double m, MomentumMode mode, double a_zero_tol) {
  require(m > 0.0, "coefficient_b: mass must be positive");
  require(res.all_eigenvectors.rows() == grid.size(), "coefficient_b: spectrum missing or grid mismatch");
  require(res.multiplicity == 1, "coefficient_b: eigenvalue is degenerate (multiplicity " +
                                     std::to_string(res.multiplicity) + ")");
  const int n = grid.size();
  BCoefficient out;

  const auto mb = spectral::s_wave_reduce(potential, spectral::second_order_kernel(m), grid);
  out.direct = res.vector.dot(mb.entries * res.vector);

  // The alpha kernel is rank one: K1 = 4 pi c1 t t^T with t_i = sqrt(w_i) r_i |V_i|^{1/2}.
  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) t(i) = std::sqrt(grid.weights[i]) * grid.nodes[i] * std::sqrt(-potential(grid.nodes[i]));
  const double c1 = std::sqrt(2.0 * m) * kernel::a_profile(m);
  const double tk = t.dot(res.vector);
  for (int j = 0; j < n; ++j) {
    if (j == res.index) continue;
    const double coupling = 4.0 * pi * c1 * t.dot(res.all_eigenvectors.col(j)) * tk;
    out.mixing += coupling * coupling / (res.mu0 - res.all_eigenvalues(j));
  }

  out.momentum = std::numeric_limits<double>::quiet_NaN();
  if (mode == MomentumMode::skip) return out;
  const double a = coefficient_a(res, potential, grid, m);
  const bool a_zero = std::abs(a) < a_zero_tol * std::abs(res.mu0);
  if (!a_zero && mode == MomentumMode::strict) {
    throw DomainError("divergent momentum integral: |a| = " + std::to_string(std::abs(a)) +
                      " is not below a_zero_tol mu0");
  }
  out.momentum = b_momentum(weighted_samples(res.phi, potential, grid), grid, m);
  return out;
}

ThresholdExpansion expansion(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                             const spectral::QuadGrid& grid, double m, double a_zero_tol) {
  require(res.mu0 > 0.0, "threshold undefined: mu0 <= 0 (no bound state for any coupling)");
  require(res.multiplicity == 1, "threshold: eigenvalue mu0 is degenerate (multiplicity " +
                                     std::to_string(res.multiplicity) + ")");
  ThresholdExpansion e;
  e.m = m;
  e.mu0 = res.mu0;
  e.lambda0 = 1.0 / res.mu0;
  e.a = coefficient_a(res, potential, grid, m);
  e.a_zero_tol = a_zero_tol;
  e.branch = std::abs(e.a) < a_zero_tol * e.mu0 ? Branch::a_zero : Branch::a_nonzero;
  const auto b = coefficient_b(res, potential, grid, m, MomentumMode::skip, a_zero_tol);
  e.b = b.total();
  return e;
}

ContinuationFit fit_continuation(const std::vector<spectral::ContinuationPoint>& pts, int degree) {
  require(degree >= 3, "fit_continuation: degree must be >= 3");
  require(static_cast<int>(pts.size()) > degree, "fit_continuation: need more points than the degree");
  double scale = 0.0;
  for (const auto& p : pts) {
    require(p.alpha >= 0.0, "fit_continuation: alpha must be >= 0");
    scale = std::max(scale, p.alpha);
  }
  require(scale > 0.0, "fit_continuation: need some alpha > 0");
  const int n = static_cast<int>(pts.size());
  Eigen::MatrixXd A(n, degree + 1);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    const double t = pts[i].alpha / scale;
    double p = 1.0;
    for (int k = 0; k <= degree; ++k, p *= t) A(i, k) = p;
    y(i) = pts[i].mu;
  }
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
  ContinuationFit fit;
  fit.mu0 = c(0);
  fit.slope = c(1) / scale;
  fit.half_curv = c(2) / (scale * scale);
  fit.cubic = c(3) / (scale * scale * scale);
  fit.rms = std::sqrt((A * c - y).squaredNorm() / n);
  return fit;
}

void attach_cubic(ThresholdExpansion& exp, const ContinuationFit& fit) { exp.c = -exp.lambda0 * fit.cubic; }

double lambda_of_alpha(const ThresholdExpansion& exp, double alpha) {
  require(alpha >= 0.0, "lambda_of_alpha: alpha must be >= 0");
  const double inv = exp.mu0 + exp.a * alpha + exp.b * alpha * alpha;
  require(inv > 0.0, "lambda_of_alpha: mu0 + a alpha + b alpha^2 must stay positive");
  return 1.0 / inv;
}

double alpha_of_lambda(const ThresholdExpansion& exp, double lambda) {
  exp.validate();
  if (lambda < exp.lambda0) throw DomainError("below threshold: lambda < lambda0");
  const double l0 = exp.lambda0;
  const double d = lambda - l0;
  if (exp.branch == Branch::a_nonzero) {
    const double a = exp.a;
    const double alpha = -d / (l0 * l0 * a) + (l0 * a * a - exp.b) / (l0 * l0 * l0 * l0 * a * a * a) * d * d;
    if (alpha < 0.0) throw DomainError("alpha(lambda) left the range of the second-order inversion");
    return alpha;
  }
  if (!(exp.b < 0.0)) throw DomainError("a = 0 branch needs b < 0, got b = " + std::to_string(exp.b));
  const double nb = -exp.b;
  double alpha2 = d / (l0 * l0 * nb);
  if (std::isfinite(exp.c)) alpha2 -= exp.c * std::pow(d, 1.5) / (std::pow(l0, 4) * std::pow(nb, 2.5));
  if (alpha2 < 0.0) throw DomainError("alpha(lambda)^2 left the range of the inversion");
  return std::sqrt(alpha2);
}

double energy_of_lambda(const ThresholdExpansion& exp, double lambda) {
  const double alpha = alpha_of_lambda(exp, lambda);
  return alpha == 0.0 ? 0.0 : -alpha * alpha;
}

DecayReport u_reconstruct(const std::vector<double>& phi, double mu0, const spectral::RadialPotential& potential,
                          const spectral::QuadGrid& grid, const std::vector<double>& r_far, double m) {
  require(m > 0.0, "u_reconstruct: mass must be positive");
  require(r_far.size() >= 2, "u_reconstruct: need at least two radii");
  const double R = potential.support_radius;
  for (double r : r_far) {
    if (!(r > R)) throw DomainError("u_reconstruct: radius " + std::to_string(r) + " is inside the support");
  }
  const auto f = weighted_samples(phi, potential, grid);
  DecayReport rep;
  rep.radii = r_far;
  double ov = 0.0;
  for (int j = 0; j < grid.size(); ++j) ov += grid.weights[j] * grid.nodes[j] * grid.nodes[j] * f[j];
  ov *= 4.0 * pi;
  rep.monopole = m / (2.0 * pi) * ov;
  for (double r : r_far) {
    // The constant 2 in the bracket of L0 gives the exact monopole m ov / (2 pi r).
    double tail = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
      const double rho = grid.nodes[j];
      tail += grid.weights[j] * rho * f[j] * l0_tail_band(r, rho, m);
    }
    rep.u.push_back(rep.monopole / r + 2.0 * pi / r * tail);
  }
  // Least-squares slope of log|u| against log r.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < r_far.size(); ++i) {
    if (rep.u[i] == 0.0) continue;
    const double x = std::log(r_far[i]), y = std::log(std::abs(rep.u[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  rep.gamma = n >= 2 ? -(n * sxy - sx * sy) / (n * sxx - sx * sx) : std::numeric_limits<double>::infinity();
  // Fitted amplitude C of |u| ~ C r^{-gamma}, against int |V| u = mu0 int |V|^{1/2} phi.
  const double amplitude = n >= 2 ? std::exp((sy + rep.gamma * sx) / n) : 0.0;
  const double predicted = m / (2.0 * pi * mu0) * (mu0 * ov);
  rep.prefactor_ratio = amplitude / std::abs(predicted);
  return rep;
}

DecayReport u_reconstruct(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                          const spectral::QuadGrid& grid, const std::vector<double>& r_far, double m) {
  return u_reconstruct(res.phi, res.mu0, potential, grid, r_far, m);
}

ZeroEnergyReport zero_energy_condition(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                                       const spectral::QuadGrid& grid, double tol, double m) {
  ZeroEnergyReport rep;
  rep.overlap = overlap(res, potential, grid);
  rep.holds = std::abs(rep.overlap) < tol;
  const double R = potential.support_radius;
  std::vector<double> radii;
  for (int i = 0; i < 12; ++i) radii.push_back(5.0 * R * std::pow(10.0, i / 11.0));
  rep.gamma = u_reconstruct(res, potential, grid, radii, m).gamma;
  return rep;
}

SmallXConstants small_x_constants(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                                  const spectral::QuadGrid& grid, double m) {
  const auto f = weighted_samples(res.phi, potential, grid);
  SmallXConstants c;
  for (int i = 0; i < grid.size(); ++i) {
    const double y = grid.nodes[i];
    if (f[i] == 0.0) continue;
    // |V| u = mu0 |V|^{1/2} phi.
    const double term = 4.0 * pi * grid.weights[i] * y * res.mu0 * f[i];
    c.A1 += term;
    c.A2 += term * specfun::k0_weighted_integral(specfun::K0Integral::tail_k1_over_z, m * y);
  }
  c.A1_finite = std::isfinite(c.A1);
  c.A2_finite = std::isfinite(c.A2);
  return c;
}

spectral::SpectralResult zero_overlap_trial(const spectral::BsMatrix& l0, int k) {
  spectral::SpectralResult res = spectral::eigenpair(l0, k);
  const auto& g = l0.grid;
  const int n = g.size();
  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) t(i) = std::sqrt(g.weights[i]) * g.nodes[i] * std::sqrt(-l0.potential(g.nodes[i]));
  require(t.norm() > 0.0, "zero_overlap_trial: potential vanishes on the grid");
  Eigen::VectorXd y = res.vector - (t.dot(res.vector) / t.squaredNorm()) * t;
  y -= (t.dot(y) / t.squaredNorm()) * t;
  y.normalize();
  res.vector = y;
  res.mu0 = y.dot(l0.entries * y);
  res.lambda0 = res.mu0 > 0.0 ? 1.0 / res.mu0 : std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) res.phi[i] = y(i) / (std::sqrt(4.0 * pi * g.weights[i]) * g.nodes[i]);
  res.residual = (l0.entries * y - res.mu0 * y).norm();
  return res;
}

}  // namespace herbst::threshold
