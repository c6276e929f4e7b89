#include "herbst/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

// pchip.hpp in Boost 1.74 calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "herbst/error.hpp"
#include "herbst/quad.hpp"

namespace herbst::spectral {

namespace {

constexpr double pi = std::numbers::pi;
constexpr int kPieces = 40;
constexpr int kDegree = 20;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

// exp(1 - 1/(1 - t^2)) on |t| < 1.
double bump_shape(double t) {
  const double u = 1.0 - t * t;
  return u > 0.0 ? std::exp(1.0 - 1.0 / u) : 0.0;
}

// Smooth step: 1 for t <= 0, 0 for t >= 1.
double smooth_step(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - t));
  const double b = std::exp(-1.0 / t);
  return a / (a + b);
}

}  // namespace

double RadialPotential::operator()(double r) const {
  if (r >= support_radius) return 0.0;
  return profile(r);
}

void RadialPotential::validate() const {
  require(static_cast<bool>(profile), "potential: profile is not set");
  require(support_radius > 0.0 && std::isfinite(support_radius), "potential: support radius must be positive");
}

RadialPotential bump(double depth, double radius) {
  require(depth >= 0.0, "bump: depth must be >= 0");
  require(radius > 0.0, "bump: radius must be positive");
  return {[=](double r) { return -depth * bump_shape(r / radius); }, radius, PotentialFamily::bump};
}

RadialPotential truncated_gaussian(double depth, double radius, double width) {
  require(depth >= 0.0, "truncated_gaussian: depth must be >= 0");
  require(radius > 0.0 && width > 0.0, "truncated_gaussian: radius and width must be positive");
  return {[=](double r) {
            return -depth * std::exp(-(r / width) * (r / width)) * smooth_step(2.0 * r / radius - 1.0);
          },
          radius, PotentialFamily::truncated_gaussian};
}

RadialPotential square_well_smoothed(double depth, double radius, double edge) {
  require(depth >= 0.0, "square_well_smoothed: depth must be >= 0");
  require(radius > 0.0, "square_well_smoothed: radius must be positive");
  require(edge > 0.0 && edge <= 1.0, "square_well_smoothed: edge must be in (0, 1]");
  const double inner = (1.0 - edge) * radius;
  return {[=](double r) { return -depth * smooth_step((r - inner) / (edge * radius)); }, radius,
          PotentialFamily::square_well_smoothed};
}

RadialPotential annular_bump(double depth, double center, double half_width) {
  require(depth >= 0.0, "annular_bump: depth must be >= 0");
  require(half_width > 0.0 && half_width <= center, "annular_bump: need 0 < half_width <= center");
  return {[=](double r) { return -depth * bump_shape((r - center) / half_width); }, center + half_width,
          PotentialFamily::annular};
}

RadialPotential tabulated(std::vector<double> radii, std::vector<double> values) {
  require(radii.size() == values.size(), "tabulated: column lengths differ");
  require(radii.size() >= 4, "tabulated: need at least 4 samples");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(std::isfinite(radii[i]) && std::isfinite(values[i]), "tabulated: non-finite entry at row " + std::to_string(i + 1));
    require(values[i] <= 0.0, "tabulated: V must be <= 0, row " + std::to_string(i + 1));
    require(radii[i] >= 0.0, "tabulated: radii must be >= 0, row " + std::to_string(i + 1));
    if (i > 0) require(radii[i] > radii[i - 1], "tabulated: radii must be ascending, row " + std::to_string(i + 1));
  }
  require(values.back() == 0.0, "tabulated: V must vanish at the last radius");
  const double radius = radii.back();
  const double r0 = radii.front();
  const double v0 = values.front();
  auto spline = std::make_shared<boost::math::interpolators::pchip<std::vector<double>>>(std::move(radii),
                                                                                           std::move(values));
  return {[spline, r0, v0](double r) { return r <= r0 ? v0 : std::min(0.0, (*spline)(r)); }, radius,
          PotentialFamily::tabulated};
}

RadialPotential tabulated_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("tabulated: cannot open " + path);
  std::vector<double> r, v;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double a, b;
    if (!(ss >> a)) continue;
    if (!(ss >> b)) throw DomainError(path + ":" + std::to_string(lineno) + ": expected two columns");
    std::string extra;
    if (ss >> extra) throw DomainError(path + ":" + std::to_string(lineno) + ": unexpected third column");
    r.push_back(a);
    v.push_back(b);
  }
  return tabulated(std::move(r), std::move(v));
}

RadialPotential sum(const RadialPotential& a, const RadialPotential& b) {
  a.validate();
  b.validate();
  return {[a, b](double r) { return a(r) + b(r); }, std::max(a.support_radius, b.support_radius),
          PotentialFamily::composite};
}

RadialPotential scaled(const RadialPotential& v, double c) {
  require(c >= 0.0, "scaled: factor must be >= 0");
  v.validate();
  return {[v, c](double r) { return c * v(r); }, v.support_radius, v.family};
}

void QuadGrid::validate() const {
  require(!nodes.empty() && nodes.size() == weights.size(), "grid: nodes and weights must be non-empty and match");
  require(radius > 0.0, "grid: radius must be positive");
  double moment = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    require(nodes[i] > 0.0 && nodes[i] < radius, "grid: nodes must lie in (0, R)");
    require(weights[i] > 0.0, "grid: weights must be positive");
    if (i > 0) require(nodes[i] > nodes[i - 1], "grid: nodes must be increasing");
    moment += weights[i] * nodes[i] * nodes[i];
  }
  const double exact = radius * radius * radius / 3.0;
  require(std::abs(moment - exact) <= 1e-10 * exact, "grid: sum w r^2 differs from R^3/3");
}

QuadGrid gauss_legendre_grid(int n, double radius) {
  require(n >= 2, "grid: need at least 2 nodes");
  require(radius > 0.0, "grid: radius must be positive");
  auto rule = quad::gauss_legendre(n, 0.0, radius);
  QuadGrid g{std::move(rule.nodes), std::move(rule.weights), radius};
  g.validate();
  return g;
}

RadialKernel green_kernel(const kernel::PhysParams& p) {
  p.validate();
  return {[p](double s) { return kernel::green_regular(s, p); }, 1.0 / (2.0 * pi * pi), (p.m + p.E) / (4.0 * pi)};
}

RadialKernel second_order_kernel(double m) {
  const double scale = 2.0 * m * kernel::b_normalisation(m);
  return {[m, scale](double s) { return scale * s * kernel::b_profile(s, m); }, 0.0, -scale / (2.0 * m * m)};
}

RadialKernel first_order_kernel(double m) {
  return constant_kernel(std::sqrt(2.0 * m) * kernel::a_profile(m));
}

RadialKernel constant_kernel(double g0) {
  return {[g0](double s) { return g0 * s; }, 0.0, 0.0};
}

KernelTable::KernelTable(const RadialKernel& k, double d_max) : kernel_(k), d_max_(d_max) {
  require(static_cast<bool>(k.regular), "kernel table: kernel is not set");
  require(d_max > 0.0 && std::isfinite(d_max), "kernel table: d_max must be positive");
  const int n = kDegree + 1;
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = std::cos(pi * (j + 0.5) / n);
  coeffs_.resize(kPieces);
  left_value_.resize(kPieces);
  // Below the smallest piece s k(s) - c_log/s is c_abs to leading order.
  double carried = k.c_abs * std::ldexp(d_max, -kPieces);
  std::vector<double> g(n);
  for (int piece = kPieces - 1; piece >= 0; --piece) {
    const double lo = std::ldexp(d_max, -piece - 1);
    const double hi = std::ldexp(d_max, -piece);
    const double half = 0.5 * (hi - lo);
    for (int j = 0; j < n; ++j) {
      g[j] = k.regular(lo + half * (x[j] + 1.0));
      if (!std::isfinite(g[j])) throw NumericalError("kernel table: non-finite kernel value", g[j], 0.0);
    }
    std::vector<double> a(n + 2, 0.0);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += g[j] * std::cos(pi * i * (j + 0.5) / n);
      a[i] = 2.0 * s / n;
    }
    a[0] *= 0.5;
    // Antiderivative coefficients in the local variable, scaled by half.
    std::vector<double> c(n + 1, 0.0);
    c[1] = (a[0] - 0.5 * a[2]) * half;
    for (int i = 2; i <= n; ++i) c[i] = (a[i - 1] - a[i + 1]) / (2.0 * i) * half;
    double at_left = 0.0;
    for (int i = 1; i <= n; ++i) at_left += (i % 2 ? -c[i] : c[i]);
    c[0] = carried - at_left;
    double at_right = 0.0;
    for (double ci : c) at_right += ci;
    left_value_[piece] = carried;
    coeffs_[piece] = std::move(c);
    carried = at_right;
  }
}

double KernelTable::regular_antiderivative(double d) const {
  require(d >= 0.0 && d <= d_max_ * (1.0 + 1e-12), "kernel table: distance out of range");
  if (d == 0.0) return 0.0;
  int e;
  std::frexp(d / d_max_, &e);  // d / d_max in [2^{e-1}, 2^e)
  int piece = -e;
  if (piece < 0) piece = 0;
  if (piece >= kPieces) return kernel_.c_abs * d;
  const double lo = std::ldexp(d_max_, -piece - 1);
  const double hi = std::ldexp(d_max_, -piece);
  const double t = std::clamp((2.0 * d - lo - hi) / (hi - lo), -1.0, 1.0);
  const auto& c = coeffs_[piece];
  // Clenshaw.
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t i = c.size() - 1; i >= 1; --i) {
    const double b0 = 2.0 * t * b1 - b2 + c[i];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

double KernelTable::antiderivative(double d) const {
  const double reg = regular_antiderivative(d);
  return kernel_.c_log == 0.0 ? reg : kernel_.c_log * std::log(d) + reg;
}

BsMatrix s_wave_reduce(const RadialPotential& potential, const kernel::PhysParams& p, const QuadGrid& grid) {
  return s_wave_reduce(potential, green_kernel(p), grid, p);
}

BsMatrix s_wave_reduce(const RadialPotential& potential, const RadialKernel& k, const QuadGrid& grid,
                       const kernel::PhysParams& p) {
  return s_wave_reduce(potential, KernelTable(k, 2.0 * grid.radius), grid, p);
}

BsMatrix s_wave_reduce(const RadialPotential& potential, const KernelTable& table, const QuadGrid& grid,
                       const kernel::PhysParams& p) {
  potential.validate();
  grid.validate();
  require(grid.radius >= potential.support_radius * (1.0 - 1e-12), "s_wave_reduce: grid must cover the support");
  require(table.d_max() >= 2.0 * grid.radius * (1.0 - 1e-12), "s_wave_reduce: kernel table too short");
  const int n = grid.size();
  const auto& r = grid.nodes;
  const auto& w = grid.weights;
  const double R = grid.radius;
  const RadialKernel& k = table.kernel();
  std::vector<double> v(n), sw(n);
  for (int i = 0; i < n; ++i) {
    const double V = potential(r[i]);
    if (!(V <= 0.0) || !std::isfinite(V)) {
      throw DomainError("s_wave_reduce: potential must be finite and <= 0, V(" + std::to_string(r[i]) +
                        ") = " + std::to_string(V));
    }
    v[i] = std::sqrt(-V);
    sw[i] = std::sqrt(w[i]);
  }
  BsMatrix out{Eigen::MatrixXd::Zero(n, n), p, potential, grid};
  auto& M = out.entries;
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0.0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (v[j] == 0.0) continue;
      const double phi = table.antiderivative(r[i] + r[j]) - table.antiderivative(r[j] - r[i]);
      const double value = sw[i] * sw[j] * 2.0 * pi * v[i] * v[j] * phi;
      if (!std::isfinite(value)) {
        throw NumericalError("s_wave_reduce: non-finite entry (" + std::to_string(i) + ", " + std::to_string(j) + ")",
                             value, 0.0);
      }
      M(i, j) = value;
      M(j, i) = value;
    }
  }
  // Diagonal: the log and |r - r'| parts of the kernel are integrated exactly
  // against the value frozen at r_i; the Gauss sum over j != i is subtracted.
  for (int i = 0; i < n; ++i) {
    if (v[i] == 0.0) continue;
    double sum_log = 0.0, sum_abs = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = std::abs(r[i] - r[j]);
      sum_log += w[j] * std::log(d);
      sum_abs += w[j] * d;
    }
    const double a = r[i], b = R - r[i];
    const double exact_log = a * std::log(a) + b * std::log(b) - R;
    const double exact_abs = 0.5 * (a * a + b * b);
    const double singular = k.c_log * (exact_log - sum_log) + k.c_abs * (exact_abs - sum_abs);
    M(i, i) = 2.0 * pi * v[i] * v[i] * (w[i] * table.antiderivative(2.0 * r[i]) - singular);
    if (!std::isfinite(M(i, i))) {
      throw NumericalError("s_wave_reduce: non-finite entry (" + std::to_string(i) + ", " + std::to_string(i) + ")",
                           M(i, i), 0.0);
    }
  }
  return out;
}

double grid_overlap(const RadialPotential& potential, const QuadGrid& grid, const std::vector<double>& f) {
  require(static_cast<int>(f.size()) == grid.size(), "grid_overlap: sample count differs from grid size");
  double s = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double r = grid.nodes[i];
    s += grid.weights[i] * r * r * std::sqrt(-potential(r)) * f[i];
  }
  return 4.0 * pi * s;
}

SpectralResult eigenpair(const BsMatrix& mat, int k) {
  const int n = static_cast<int>(mat.entries.rows());
  require(n > 0 && mat.entries.cols() == n, "eigenpair: matrix must be square and non-empty");
  require(k >= 0 && k < n, "eigenpair: index out of range");
  const double scale = std::max(1.0, mat.entries.cwiseAbs().maxCoeff());
  require((mat.entries - mat.entries.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * scale,
          "eigenpair: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat.entries);
  if (solver.info() != Eigen::Success) throw NumericalError("eigenpair: eigensolver did not converge", 0.0, 0.0);
  SpectralResult res;
  res.index = k;
  res.all_eigenvalues = solver.eigenvalues().reverse();
  res.all_eigenvectors = solver.eigenvectors().rowwise().reverse();
  res.mu0 = res.all_eigenvalues(k);
  res.lambda0 = res.mu0 > 0.0 ? 1.0 / res.mu0 : std::numeric_limits<double>::infinity();
  Eigen::VectorXd y = res.all_eigenvectors.col(k);

  const auto& g = mat.grid;
  std::vector<double> phi(n);
  for (int i = 0; i < n; ++i) phi[i] = y(i) / (std::sqrt(4.0 * pi * g.weights[i]) * g.nodes[i]);
  double overlap = grid_overlap(mat.potential, g, phi);
  double norm_v = 0.0;
  for (int i = 0; i < n; ++i) norm_v += g.weights[i] * g.nodes[i] * g.nodes[i] * -mat.potential(g.nodes[i]);
  const bool zero_overlap = std::abs(overlap) <= 1e-12 * std::sqrt(4.0 * pi * norm_v);
  int big = 0;
  y.cwiseAbs().maxCoeff(&big);
  if ((!zero_overlap && overlap < 0.0) || (zero_overlap && y(big) < 0.0)) {
    y = -y;
    for (double& x : phi) x = -x;
  }
  res.vector = y;
  res.phi = std::move(phi);
  res.residual = (mat.entries * y - res.mu0 * y).norm();

  const double tol = 1e-10 * std::max(res.all_eigenvalues.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  res.multiplicity = 0;
  res.gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(res.all_eigenvalues(i) - res.mu0);
    if (d <= tol) {
      ++res.multiplicity;
    } else {
      res.gap = std::min(res.gap, d);
    }
  }
  return res;
}

SpectralResult leading_eigenpair(const BsMatrix& mat) { return eigenpair(mat, 0); }

std::vector<ContinuationPoint> eigen_continuation(const RadialPotential& potential, const QuadGrid& grid,
                                                  const std::vector<double>& alphas, double m, int k) {
  std::vector<ContinuationPoint> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    const auto p = kernel::PhysParams::from_alpha(alpha, m);
    out.push_back({alpha, eigenpair(s_wave_reduce(potential, p, grid), k).mu0});
  }
  return out;
}

}  // namespace herbst::spectral
