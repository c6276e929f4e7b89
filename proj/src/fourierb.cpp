#include "herbst/fourierb.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "herbst/error.hpp"
#include "herbst/specfun.hpp"

namespace herbst::fourierb {

namespace {

constexpr double pi = std::numbers::pi;

void require_k(double k, double m) {
  if (!(k > 0.0)) throw DomainError("wavenumber must be positive, got " + std::to_string(k));
  if (!(m > 0.0)) throw DomainError("mass must be positive, got " + std::to_string(m));
}

bool nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

double prefactor(const HankelParams& hp, double k) {
  return std::pow(2.0 * pi, hp.alpha_exp - 1.5) * std::pow(k, hp.alpha_exp - 3.0);
}

// Q(w) - 2 with Q = (6w^4 + 5w^2 + 2)/(1 + w^2)^{5/2}; the first two orders cancel.
double q_minus_two(double w) {
  const double x = w * w;
  if (x < 0.02) {
    static constexpr double c[] = {9.0 / 4,        -25.0 / 4,       735.0 / 64,        -567.0 / 32,
                                   12705.0 / 512,  -16731.0 / 512,  675675.0 / 16384,  -206635.0 / 4096,
                                   7898319.0 / 131072, -9258795.0 / 131072};
    double sum = 0.0;
    for (int i = 9; i >= 0; --i) sum = sum * x + c[i];
    return sum * x * x;
  }
  return (6.0 * x * x + 5.0 * x + 2.0) * std::pow(1.0 + x, -2.5) - 2.0;
}

// Terms of b_hat other than the sigma^{-4} pair.
double b_hat_lower_orders(double s) {
  const double w = 2.0 * pi * s;
  const double x = w * w;
  const double s2 = s * s;
  const double root = std::sqrt(1.0 + x);
  const double r5 = std::pow(1.0 + x, -2.5);
  return -1.0 / (2.0 * pi * s2) - 1.0 / (pi * s2 * root) + 3.0 * w * x * r5 / (2.0 * pi * pi * s2 * s) -
         (2.0 * x - 1.0) * r5 / (2.0 * pi * s2);
}

}  // namespace

void HankelParams::validate() const {
  if (n_dim != 3) throw DomainError("HankelParams: only n_dim = 3 is supported");
  if (alpha_exp < -1 || alpha_exp > 1) throw DomainError("HankelParams: alpha must be -1, 0 or 1");
  if (beta_exp < 0 || beta_exp > 2) throw DomainError("HankelParams: beta must be 0, 1 or 2");
  const double n = n_dim, a = alpha_exp, b = beta_exp;
  if (nonpositive_integer((n - a) / 2) || nonpositive_integer((b + n - a + 1) / 2)) {
    throw DomainError("HankelParams: pole case of the Gamma function");
  }
}

double w_of(double k, double m) { return 2.0 * pi * k / m; }

double hankel_full(const HankelParams& hp, double k, double m) {
  hp.validate();
  require_k(k, m);
  const int a = hp.alpha_exp;
  if (a == 0) return 0.0;  // 1/Gamma(0) = 0: a constant has no transform away from k = 0
  const double g = std::tgamma(0.5 * (hp.beta_exp + 1));
  return prefactor(hp, k) * std::pow(2.0, hp.beta_exp + 0.5 - a) * g * g * std::tgamma(0.5 * (3 - a)) /
         std::tgamma(0.5 * a);
}

double hankel_tail(const HankelParams& hp, double k, double m) {
  hp.validate();
  require_k(k, m);
  const int a = hp.alpha_exp;
  const double w = w_of(k, m);
  const double a1 = 0.5 * (3 - a);
  const double b = 0.5 * (hp.beta_exp + 4 - a);
  const double gb = std::tgamma(b);
  const double coeff = std::pow(w, 3 - a) * std::pow(2.0, hp.beta_exp + 1.5 - a) * gb * gb / ((3 - a) * std::tgamma(1.5));
  return prefactor(hp, k) * coeff * specfun::hyp3f2_neg(a1, b, b, 1.5, 1.0 + a1, w);
}

double hankel_incomplete(const HankelParams& hp, double k, double m) {
  return hankel_full(hp, k, m) - hankel_tail(hp, k, m);
}

double incomplete_a1_b0(double k, double m) {
  require_k(k, m);
  const double w = w_of(k, m);
  return 1.0 / (2.0 * k * k * std::sqrt(1.0 + w * w));
}

double tail_a0_b1(double k, double m) {
  require_k(k, m);
  const double w = w_of(k, m);
  return 3.0 / (4.0 * pi * k * k * k) * w * w * w * std::pow(1.0 + w * w, -2.5);
}

double tail_a0_b1_extra_factor(double k, double m) { return std::pow(2.0, 1.5) * tail_a0_b1(k, m); }

double b_hat(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("b_hat: sigma must be positive, got " + std::to_string(sigma));
  const double w = 2.0 * pi * sigma;
  const double x = w * w;
  const double s4 = sigma * sigma * sigma * sigma;
  const double q = (6.0 * x * x + 5.0 * x + 2.0) * std::pow(1.0 + x, -2.5);
  return -1.0 / (4.0 * pi * pi * pi * s4) - q / (8.0 * pi * pi * pi * s4) + b_hat_lower_orders(sigma);
}

double b_hat_quartic_coefficient() { return -1.0 / (2.0 * pi * pi * pi); }

double b_hat_regular(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("b_hat_regular: sigma must be positive, got " + std::to_string(sigma));
  const double w = 2.0 * pi * sigma;
  const double s4 = sigma * sigma * sigma * sigma;
  return -q_minus_two(w) / (8.0 * pi * pi * pi * s4) + b_hat_lower_orders(sigma);
}

double b_hat_positive_part(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("b_hat: sigma must be positive");
  const double w = 2.0 * pi * sigma;
  return 3.0 * w * w * w * std::pow(1.0 + w * w, -2.5) / (2.0 * pi * pi * sigma * sigma * sigma);
}

double b_hat_negative_part(double sigma) { return b_hat(sigma) - b_hat_positive_part(sigma); }

}  // namespace herbst::fourierb
