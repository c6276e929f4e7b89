#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "herbst/kernel.hpp"

// Nystrom discretisation of K = |V|^{1/2} (H0 - E)^{-1} |V|^{1/2} for radial,
// non-positive, compactly supported potentials, restricted to the s-wave.
namespace herbst::spectral {

enum class PotentialFamily { bump, truncated_gaussian, square_well_smoothed, tabulated, annular, composite };

struct RadialPotential {
  std::function<double(double)> profile;  // V(r), <= 0
  double support_radius = 1.0;
  PotentialFamily family = PotentialFamily::bump;

  // V(r), zero at and beyond the support radius.
  double operator()(double r) const;
  void validate() const;
};

// -d exp(1 - 1/(1 - (r/R)^2)) for r < R.
RadialPotential bump(double depth = 1.0, double radius = 1.0);
// -d exp(-(r/width)^2) times a smooth step that falls from 1 at R/2 to 0 at R.
RadialPotential truncated_gaussian(double depth = 1.0, double radius = 1.0, double width = 0.4);
// -d inside (1 - edge) R, smoothly stepped down to zero at R.
RadialPotential square_well_smoothed(double depth = 1.0, double radius = 1.0, double edge = 0.2);
// -d exp(1 - 1/(1 - ((r - c)/h)^2)) for |r - c| < h, with h <= c.
RadialPotential annular_bump(double depth, double center, double half_width);
// Monotone cubic interpolation of (r, V) samples, radii ascending, V <= 0. The
// last radius is the support radius; V must vanish there.
RadialPotential tabulated(std::vector<double> radii, std::vector<double> values);
// Two whitespace-separated columns r V(r); '#' starts a comment.
RadialPotential tabulated_from_file(const std::string& path);
RadialPotential sum(const RadialPotential& a, const RadialPotential& b);
RadialPotential scaled(const RadialPotential& v, double c);

struct QuadGrid {
  std::vector<double> nodes;    // strictly increasing, inside (0, R)
  std::vector<double> weights;  // positive
  double radius = 1.0;

  int size() const { return static_cast<int>(nodes.size()); }
  // Ordering, positivity and sum w r^2 = R^3/3 within 1e-10 relative.
  void validate() const;
};

QuadGrid gauss_legendre_grid(int n, double radius);

// A radial kernel k(s) enters the s-wave reduction only through s k(s), written as
//   s k(s) = c_log / s + c_abs + o(1)   as s -> 0.
// `regular` returns s k(s) - c_log / s.
struct RadialKernel {
  std::function<double(double)> regular;
  double c_log = 0.0;
  double c_abs = 0.0;
};

// The resolvent kernel at the energy carried by p.
RadialKernel green_kernel(const kernel::PhysParams& p);
// The alpha^2 kernel 2 m (m / 4 pi) b_profile(s).
RadialKernel second_order_kernel(double m = 1.0);
// The alpha kernel sqrt(2m) A, a constant.
RadialKernel first_order_kernel(double m = 1.0);
RadialKernel constant_kernel(double g0);

// Phi(d) = int_0^d [s k(s) - c_log/s] ds on (0, d_max], tabulated by piecewise
// Chebyshev series on dyadic pieces.
class KernelTable {
 public:
  KernelTable(const RadialKernel& k, double d_max);

  double regular_antiderivative(double d) const;
  // c_log log d + regular_antiderivative(d).
  double antiderivative(double d) const;
  const RadialKernel& kernel() const { return kernel_; }
  double d_max() const { return d_max_; }

 private:
  RadialKernel kernel_;
  double d_max_;
  std::vector<std::vector<double>> coeffs_;  // per piece, piece k covers [d_max 2^{-k-1}, d_max 2^{-k}]
  std::vector<double> left_value_;
};

struct BsMatrix {
  Eigen::MatrixXd entries;  // symmetric
  kernel::PhysParams params;
  RadialPotential potential;
  QuadGrid grid;
};

// M_ij = sqrt(w_i w_j) r_i r_j |V_i|^{1/2} |V_j|^{1/2} 2 pi int_{-1}^{1} G(|x - y|) du.
// The angular integral is done exactly through Phi; the logarithmic and |r - r'|
// parts of the kernel are integrated analytically on the diagonal.
BsMatrix s_wave_reduce(const RadialPotential& potential, const kernel::PhysParams& p, const QuadGrid& grid);
// The same reduction for any radial kernel. p is only recorded.
BsMatrix s_wave_reduce(const RadialPotential& potential, const RadialKernel& k, const QuadGrid& grid,
                       const kernel::PhysParams& p = {});
BsMatrix s_wave_reduce(const RadialPotential& potential, const KernelTable& table, const QuadGrid& grid,
                       const kernel::PhysParams& p = {});

struct SpectralResult {
  int index = 0;          // 0 for the largest eigenvalue
  double mu0 = 0.0;
  double lambda0 = 0.0;   // 1/mu0, +inf when mu0 <= 0
  std::vector<double> phi;  // phi(r_i), 4 pi sum w_i r_i^2 phi_i^2 = 1
  Eigen::VectorXd vector;   // unit eigenvector of the matrix, sqrt(w_i) r_i sqrt(4 pi) phi_i
  double residual = 0.0;  // |M v - mu v|
  double gap = 0.0;       // distance to the nearest other eigenvalue
  int multiplicity = 1;   // eigenvalues within 1e-10 max|mu| of mu0
  Eigen::VectorXd all_eigenvalues;       // descending
  Eigen::MatrixXd all_eigenvectors;      // columns match all_eigenvalues
};

// The k-th largest eigenpair. The eigenvector is signed so that its overlap with
// |V|^{1/2} is nonnegative, or its largest component positive when that overlap is zero.
SpectralResult eigenpair(const BsMatrix& mat, int k = 0);
SpectralResult leading_eigenpair(const BsMatrix& mat);

struct ContinuationPoint {
  double alpha;
  double mu;
};

// mu_k(alpha) of the full kernel at E = -alpha^2 for each alpha.
std::vector<ContinuationPoint> eigen_continuation(const RadialPotential& potential, const QuadGrid& grid,
                                                  const std::vector<double>& alphas, double m = 1.0, int k = 0);

// 4 pi sum w_i r_i^2 |V_i|^{1/2} f_i.
double grid_overlap(const RadialPotential& potential, const QuadGrid& grid, const std::vector<double>& f);

}  // namespace herbst::spectral
