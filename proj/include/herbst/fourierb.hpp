#pragma once

// Closed-form 3-D Fourier transforms (exp(-2 pi i k.x) convention) of
//   |x|^{-alpha} int_0^{m|x|} z^beta K0(z) dz   and   |x|^{-alpha} int_{m|x|}^inf z^beta K0(z) dz,
// and the assembled transform of the second-order profile.
namespace herbst::fourierb {

struct HankelParams {
  int alpha_exp = 1;  // power in |x|^{-alpha}, one of -1, 0, 1
  int beta_exp = 0;   // weight z^beta, one of 0, 1, 2
  int n_dim = 3;

  void validate() const;
};

// w = 2 pi k / m.
double w_of(double k, double m = 1.0);

// (2 pi)^{alpha - 3/2} k^{alpha - 3} [ 2^{beta + 1/2 - alpha} Gamma((beta+1)/2)^2 Gamma((3-alpha)/2) / Gamma(alpha/2)
//   - w^{3-alpha} 2^{beta + 3/2 - alpha} Gamma((beta+4-alpha)/2)^2 / ((3-alpha) Gamma(3/2)) 3F2(...; -w^2) ]
double hankel_incomplete(const HankelParams& hp, double k, double m = 1.0);
// The second term alone (with a plus sign): transform of the tail profile.
double hankel_tail(const HankelParams& hp, double k, double m = 1.0);
// The first term: full moment times the transform of |x|^{-alpha}.
double hankel_full(const HankelParams& hp, double k, double m = 1.0);

// Reduced special cases.
// alpha = 1, beta = 0 incomplete: 1/(2 k^2) (1 + w^2)^{-1/2}.
double incomplete_a1_b0(double k, double m = 1.0);
// alpha = 0, beta = 1 tail, as it follows from the general tail formula:
// (3 / 4 pi) k^{-3} w^3 (1 + w^2)^{-5/2}.
double tail_a0_b1(double k, double m = 1.0);
// The same case with an extra factor 2^{3/2}, the target form of the acceptance check.
double tail_a0_b1_extra_factor(double k, double m = 1.0);

// m^4 B(m sigma) for m = 1, the transform of kernel::b_profile:
//   -1/(2 pi s^2) - 1/(4 pi^3 s^4) - (1/pi)[ (6w^4+5w^2+2)/(8 pi^2 s^4 (1+w^2)^{5/2}) + 1/(s^2 (1+w^2)^{1/2}) ]
//   + 3 w^3 / (2 pi^2 s^3 (1+w^2)^{5/2}) - (2w^2 - 1) / (2 pi s^2 (1+w^2)^{5/2}),   w = 2 pi s.
double b_hat(double sigma);

// Coefficient of the sigma^{-4} singularity at the origin: -1/(2 pi^3).
double b_hat_quartic_coefficient();
// b_hat(sigma) - b_hat_quartic_coefficient() / sigma^4, evaluated without cancellation.
double b_hat_regular(double sigma);

// The single positive term and the sum of the negative ones.
double b_hat_positive_part(double sigma);
double b_hat_negative_part(double sigma);

}  // namespace herbst::fourierb
