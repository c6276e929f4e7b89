#pragma once

namespace herbst::kernel {

// Mass m, energy E <= 0, expansion parameter alpha with E = -alpha^2, and the
// Yukawa mass mu with mu^2 = m^2 - (m + E)^2 = 2 m alpha^2 - alpha^4.
struct PhysParams {
  double m = 1.0;
  double E = 0.0;
  double alpha = 0.0;
  double mu = 0.0;

  static PhysParams from_alpha(double alpha, double m = 1.0);
  static PhysParams from_energy(double E, double m = 1.0);
  static PhysParams from_mu(double mu, double m = 1.0);

  // m > 0, -m < E <= 0, 0 <= mu < m, and the algebraic relations hold.
  void validate() const;
};

// F(mr; mu) = K1(mr) + (1 - mu^2/m^2) [ e^{-mu r} int_0^{mr} cosh(mu y/m) K0(y) dy
//                                     - sinh(mu r) int_{mr}^inf e^{-mu y/m} K0(y) dy ]
double f_profile(double r, const PhysParams& p);

// Coordinate-space kernel of (sqrt(-Delta + m^2) - m - E)^{-1}:
// G(r) = (m / 4 pi r) [ sqrt(1 - mu^2/m^2) e^{-mu r} + (2/pi) F(mr; mu) ].
double green_function(double r, const PhysParams& p);

// r G(r) - 1/(2 pi^2), free of the cancellation at small r.
// Tends to (m + E)/(4 pi) as r -> 0.
double green_regular(double r, const PhysParams& p);

// The same kernel with the opposite sign on the sinh term, kept only so the
// transform oracle can tell the two candidate signs apart.
double green_function_flipped_sign(double r, const PhysParams& p);

// Zeroth-order kernel (m / 4 pi r) [ 2 + (2/pi) int_{mr}^inf K1(z)/z dz ].
double l0_profile(double r, double m = 1.0);

// First-order kernel: the constant -m / 2 pi.
double a_profile(double m = 1.0);

// Second-order profile (1/r) { (r^2 - 1/m^2)/2 + (1/pi)(r^2 - 2/m^2) int_0^{mr} K0
//   + (2r/(pi m)) int_{mr}^inf z K0 + (1/(pi m^2)) int_0^{mr} z^2 K0 }.
// The alpha^2 coefficient of G is 2 m (m / 4 pi) b_profile(r).
double b_profile(double r, double m = 1.0);

// Normalisation carried by the second-order kernel: m / 4 pi.
double b_normalisation(double m = 1.0);

// |G_{E=-alpha^2}(r) - [l0 + sqrt(2m) alpha A + 2 m alpha^2 (m/4pi) b_profile]|.
double series_remainder(double r, double alpha, double m = 1.0);

// Pointwise envelope (m / 4 pi r^2) [1 + 2/mu + c/m], mu > 0, c >= h3_root().
double envelope_bound(double r, const PhysParams& p, double c = 0.7451315);
bool within_envelope(double r, const PhysParams& p, double c = 0.7451315);

// The four bounded pieces of r^2 G used to build the envelope.
struct EnvelopePieces {
  double h0;  // r e^{-mu r}
  double h1;  // r K1(mr)
  double h2;  // r e^{-mu r} int_0^{mr} cosh(mu y/m) K0(y) dy
  double h3;  // r sinh(mu r) int_{mr}^inf e^{-mu y/m} K0(y) dy
};
EnvelopePieces envelope_pieces(double r, const PhysParams& p);

// Root of int_z^inf K0(y) dy = z K0(z), bracketed in (0.1, 3).
double h3_root();
// int_z^inf K0(y) dy - z K0(z).
double h3_residual(double z);

}  // namespace herbst::kernel
