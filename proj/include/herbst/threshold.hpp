#pragma once

#include <limits>
#include <vector>

#include "herbst/spectral.hpp"

// Coefficients of lambda^{-1}(alpha) = mu0 + a alpha + b alpha^2 + c3 alpha^3 + ...,
// the inversion to E(lambda) = -alpha(lambda)^2, and the zero-energy diagnostics.
namespace herbst::threshold {

enum class Branch { a_nonzero, a_zero };

struct ThresholdExpansion {
  double mu0 = 0.0;
  double lambda0 = 0.0;
  double a = 0.0;
  double b = 0.0;
  // Cubic term in lambda0^{-1} lambda(alpha) = 1 - lambda0 b alpha^2 + c alpha^3 when a = 0,
  // i.e. c = -lambda0 c3. Only ever fitted; NaN until then.
  double c = std::numeric_limits<double>::quiet_NaN();
  Branch branch = Branch::a_nonzero;
  double a_zero_tol = 1e-8;  // relative to mu0
  double m = 1.0;

  void validate() const;
};

// 4 pi sum w_i r_i^2 |V_i|^{1/2} phi_i.
double overlap(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
               const spectral::QuadGrid& grid);

// a = -(m^{3/2} / (sqrt(2) pi)) (int |V|^{1/2} phi)^2.
double coefficient_a(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                     const spectral::QuadGrid& grid, double m = 1.0);

enum class MomentumMode {
  strict,       // the momentum integral is only formed when a = 0
  finite_part,  // Hadamard finite part of the sigma^{-4} term otherwise
  skip,         // direct route and mixing only
};

struct BCoefficient {
  double direct = 0.0;    // 2 m (m/4pi) (f, B f), f = |V|^{1/2} phi, from b_profile on the grid
  double momentum = 0.0;  // the same from b_hat and f-hat; NaN when not formed
  double mixing = 0.0;    // sum_{n != k} (phi_n, K1 phi)^2 / (mu_k - mu_n), K1 the alpha kernel
  double total() const { return direct + mixing; }
};

// b with both routes. res must come from eigenpair() so the full spectrum is
// available for the mixing term. In strict mode the momentum route throws
// "divergent momentum integral" when |a| >= a_zero_tol mu0.
BCoefficient coefficient_b(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                           const spectral::QuadGrid& grid, double m = 1.0,
                           MomentumMode mode = MomentumMode::strict, double a_zero_tol = 1e-8);

// The momentum route alone: (m/2pi) int b_hat(sigma) |f-hat(m sigma)|^2 d^3 sigma.
double b_momentum(const std::vector<double>& f, const spectral::QuadGrid& grid, double m = 1.0);

// mu0, a, b (direct + mixing), branch. Throws if the eigenvalue is degenerate or mu0 <= 0.
ThresholdExpansion expansion(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                             const spectral::QuadGrid& grid, double m = 1.0, double a_zero_tol = 1e-8);

// Forward polynomial fit of continuation data on alpha >= 0.
struct ContinuationFit {
  double mu0;
  double slope;       // d mu / d alpha at 0
  double half_curv;   // (1/2) d^2 mu / d alpha^2 at 0
  double cubic;       // (1/6) d^3 mu / d alpha^3 at 0
  double rms;         // fit residual
};
ContinuationFit fit_continuation(const std::vector<spectral::ContinuationPoint>& pts, int degree = 5);

// Sets exp.c from the cubic coefficient of the fit.
void attach_cubic(ThresholdExpansion& exp, const ContinuationFit& fit);

// 1 / (mu0 + a alpha + b alpha^2).
double lambda_of_alpha(const ThresholdExpansion& exp, double alpha);

// alpha(lambda) >= 0 on the branch of exp, and E = -alpha^2.
double alpha_of_lambda(const ThresholdExpansion& exp, double lambda);
double energy_of_lambda(const ThresholdExpansion& exp, double lambda);

struct DecayReport {
  std::vector<double> radii;
  std::vector<double> u;
  double gamma = 0.0;            // fitted u ~ r^{-gamma}
  double monopole = 0.0;         // (m / 2 pi) int |V|^{1/2} phi, the coefficient of 1/r
  double prefactor_ratio = 0.0;  // fitted C in |u| ~ C r^{-gamma} over |m / 2 pi mu0 int |V| u|
};

// u = L0 |V|^{1/2} phi outside the support, so that |V| u = mu0 |V|^{1/2} phi.
DecayReport u_reconstruct(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                          const spectral::QuadGrid& grid, const std::vector<double>& r_far, double m = 1.0);
// Same, for arbitrary samples f = |V|^{1/2} phi-like data with eigenvalue mu0.
DecayReport u_reconstruct(const std::vector<double>& phi, double mu0, const spectral::RadialPotential& potential,
                          const spectral::QuadGrid& grid, const std::vector<double>& r_far, double m = 1.0);

struct ZeroEnergyReport {
  bool holds = false;
  double overlap = 0.0;
  double gamma = 0.0;
};

// |int |V|^{1/2} phi| < tol, with the decay exponent of u over r in [5R, 50R].
ZeroEnergyReport zero_energy_condition(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                                       const spectral::QuadGrid& grid, double tol, double m = 1.0);

struct SmallXConstants {
  double A1 = 0.0;
  double A2 = 0.0;
  bool A1_finite = true;
  bool A2_finite = true;
};

// A1 = int |y|^{-1} |V| u, A2 = int |y|^{-1} |V| u int_{m|y|}^inf K1(z)/z dz.
SmallXConstants small_x_constants(const spectral::SpectralResult& res, const spectral::RadialPotential& potential,
                                  const spectral::QuadGrid& grid, double m = 1.0);

// A sign-balanced trial state: eigenvector k of the L0 matrix with its component
// along |V|^{1/2} projected out and renormalised, mu0 replaced by the Rayleigh
// quotient. The overlap vanishes to rounding, so a = 0; it is not an eigenpair of K.
spectral::SpectralResult zero_overlap_trial(const spectral::BsMatrix& l0, int k = 0);

}  // namespace herbst::threshold
