#include "herbst/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "herbst/error.hpp"

namespace herbst::quad {

namespace {

using Kronrod21 = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss10 = boost::math::quadrature::gauss<double, 10>;

struct Piece {
  double a;
  double b;
  double value;
  double error;
  double floor;  // roundoff level of the rule on this piece
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece apply_rule(const std::function<double(double)>& f, double a, double b) {
  const auto& x = Kronrod21::abscissa();
  const auto& wk = Kronrod21::weights();
  const auto& wg = Gauss10::weights();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double f0 = f(c);
  double kronrod = f0 * wk[0];
  double absolute = std::abs(f0) * wk[0];
  double gauss = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = f(c + h * x[i]);
    const double fm = f(c - h * x[i]);
    kronrod += (fp + fm) * wk[i];
    absolute += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 1) gauss += (fp + fm) * wg[i / 2];
  }
  const double value = kronrod * h;
  if (!std::isfinite(value)) {
    throw NumericalError("non-finite integrand on (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  }
  const double floor = 50.0 * std::numeric_limits<double>::epsilon() * absolute * std::abs(h);
  const double err = std::max(std::abs((kronrod - gauss) * h), floor);
  return {a, b, value, err, floor};
}

// Relative requests below the rule's roundoff floor are clamped to it.
double target(const Tolerance& tol, double value) {
  const double rel = std::max(tol.rel_tol, 100.0 * std::numeric_limits<double>::epsilon());
  return std::max(tol.abs_tol, rel * std::abs(value));
}

}  // namespace

void Tolerance::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_subdivisions <= 0) {
    throw DomainError("tolerance requires abs_tol > 0, rel_tol > 0, max_subdivisions > 0");
  }
}

void RadialFunction::validate() const {
  if (!eval) throw DomainError("radial function has no evaluator");
  if (!(singularity_order_at_zero < 3.0)) {
    throw DomainError("radial function singularity order must be < 3 for r^2 f to be integrable");
  }
  if (!(support_radius > 0.0)) throw DomainError("support radius must be positive");
}

Estimate integrate_adaptive(const std::function<double(double)>& f, double a, double b, const Tolerance& tol) {
  tol.validate();
  if (std::isinf(b)) {
    if (b < 0.0) throw DomainError("integration to -infinity is not supported");
    auto mapped = [&f, a](double t) {
      const double s = 1.0 - t;
      const double x = a + t / s;
      const double v = f(x);
      return v == 0.0 ? 0.0 : v / (s * s);
    };
    return integrate_adaptive(mapped, 0.0, 1.0, tol);
  }
  if (a == b) return {};
  if (b < a) {
    Estimate e = integrate_adaptive(f, b, a, tol);
    e.value = -e.value;
    return e;
  }

  std::priority_queue<Piece> queue;
  Piece first = apply_rule(f, a, b);
  double total = first.value;
  double total_err = first.error;
  queue.push(first);
  int subdivisions = 0;

  while (total_err > target(tol, total)) {
    if (subdivisions >= tol.max_subdivisions) {
      throw NumericalError("adaptive quadrature did not converge after " + std::to_string(subdivisions) +
                               " subdivisions",
                           total, total_err);
    }
    Piece worst = queue.top();
    // Every piece is at its roundoff level: bisection cannot improve further.
    if (worst.error <= worst.floor) break;
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericalError("adaptive quadrature hit the resolution limit near x = " + std::to_string(mid), total,
                           total_err);
    }
    queue.pop();
    Piece left = apply_rule(f, worst.a, mid);
    Piece right = apply_rule(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++subdivisions;
  }

  // Re-sum to shed the drift of the running updates.
  double value = 0.0;
  double err = 0.0;
  while (!queue.empty()) {
    value += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  return {value, err, subdivisions};
}

Estimate integrate_adaptive(const RadialFunction& f, double a, double b, const Tolerance& tol) {
  f.validate();
  return integrate_adaptive(f.eval, a, std::min(b, f.support_radius), tol);
}

Estimate integrate_pieces(const std::function<double(double)>& f, std::span<const double> breakpoints,
                          const Tolerance& tol) {
  if (breakpoints.size() < 2) throw DomainError("integrate_pieces needs at least two breakpoints");
  Estimate total;
  const double share = 1.0 / static_cast<double>(breakpoints.size() - 1);
  Tolerance piece_tol = tol;
  piece_tol.abs_tol = tol.abs_tol * share;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    Estimate e = integrate_adaptive(f, breakpoints[i], breakpoints[i + 1], piece_tol);
    total.value += e.value;
    total.error += e.error;
    total.subdivisions += e.subdivisions;
  }
  return total;
}

double wynn_epsilon(std::span<const double> s) {
  if (s.empty()) throw DomainError("wynn_epsilon needs at least one partial sum");
  if (s.size() < 3) return s.back();
  std::vector<double> prev(s.size() + 1, 0.0);
  std::vector<double> cur(s.begin(), s.end());
  double best = s.back();
  for (int column = 1; cur.size() > 1; ++column) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0) {
        // Exact stagnation: an even column has converged.
        return (column % 2 == 1) ? cur[i + 1] : best;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (column % 2 == 0) {
      if (!std::isfinite(next.back())) return best;
      best = next.back();
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return best;
}

double radial_fourier3(const RadialFunction& f, double k, const Tolerance& tol) {
  f.validate();
  tol.validate();
  if (!(k > 0.0)) throw DomainError("radial_fourier3 requires k > 0");

  const double two_pi_k = 2.0 * std::numbers::pi * k;
  const double half_period = 1.0 / (2.0 * k);
  auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    return r * f.eval(r) * std::sin(two_pi_k * r);
  };
  const double scale = 2.0 / k;
  const double support = f.support_radius;

  Tolerance piece_tol = tol;
  piece_tol.rel_tol = std::max(tol.rel_tol * 1e-2, 1e-14);
  const double abs_floor = tol.abs_tol * 1e-3 / scale;
  piece_tol.abs_tol = abs_floor;
  double largest_term = 0.0;

  constexpr int kMaxTerms = 200000;
  constexpr std::size_t kWindow = 40;
  std::vector<double> partial;
  double sum = 0.0;
  int small_terms = 0;
  double last_estimate = 0.0;
  double last_delta = std::numeric_limits<double>::infinity();
  double previous_term = std::numeric_limits<double>::infinity();
  int decreasing = 0;
  int agreements = 0;

  for (int n = 0; n < kMaxTerms; ++n) {
    const double lo = n * half_period;
    if (lo >= support) return scale * sum;
    const double hi = std::min((n + 1) * half_period, support);
    const double term = integrate_adaptive(integrand, lo, hi, piece_tol).value;
    sum += term;
    // Later pieces only need accuracy relative to the size of the whole sum.
    largest_term = std::max(largest_term, std::abs(term));
    piece_tol.abs_tol = std::max(abs_floor, std::max(tol.rel_tol * 1e-3, 1e-14) * largest_term);
    if (hi >= support) return scale * sum;

    const double goal = std::max(tol.abs_tol, tol.rel_tol * std::abs(scale * sum)) / scale;
    // Compactly supported profiles are summed directly up to the support.
    if (std::isfinite(support)) continue;

    // Extrapolate only once the terms settle into a pattern (shrinking, or
    // alternating for tempered profiles); before that the partial sums say
    // nothing about the limit.
    const bool settled = std::abs(term) <= std::abs(previous_term) || term * previous_term < 0.0;
    decreasing = settled ? decreasing + 1 : 0;
    previous_term = term;
    small_terms = (decreasing >= 1 && largest_term > 0.0 && std::abs(term) < 1e-3 * goal) ? small_terms + 1 : 0;
    if (small_terms >= 4) return scale * sum;
    partial.push_back(sum);
    if (partial.size() > kWindow) partial.erase(partial.begin());
    if (decreasing >= 3 && partial.size() >= 6) {
      const double estimate = wynn_epsilon(partial);
      const double delta = std::abs(estimate - last_estimate);
      agreements = (delta <= goal) ? agreements + 1 : 0;
      if (agreements >= 3) return scale * estimate;
      last_delta = delta;
      last_estimate = estimate;
    } else {
      agreements = 0;
      last_estimate = sum;
    }
  }
  throw NumericalError("radial_fourier3: oscillatory sum did not converge at k = " + std::to_string(k),
                       scale * last_estimate, std::abs(scale * last_delta));
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double sinc_minus_one(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 0.5) {
    // -x^2/3! + x^4/5! - ...
    double term = -x2 / 6.0;
    double total = term;
    for (int j = 2; j < 12; ++j) {
      term *= -x2 / ((2.0 * j) * (2.0 * j + 1.0));
      total += term;
    }
    return total;
  }
  return std::sin(x) / x - 1.0;
}

double radial_fourier3_sampled(std::span<const double> nodes, std::span<const double> weights,
                               std::span<const double> values, double k) {
  if (nodes.size() != weights.size() || nodes.size() != values.size()) {
    throw DomainError("radial_fourier3_sampled: size mismatch");
  }
  const double two_pi_k = 2.0 * std::numbers::pi * k;
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    total += weights[i] * nodes[i] * nodes[i] * values[i] * sinc(two_pi_k * nodes[i]);
  }
  return 4.0 * std::numbers::pi * total;
}

double radial_fourier3_sampled_delta(std::span<const double> nodes, std::span<const double> weights,
                                     std::span<const double> values, double k) {
  if (nodes.size() != weights.size() || nodes.size() != values.size()) {
    throw DomainError("radial_fourier3_sampled_delta: size mismatch");
  }
  const double two_pi_k = 2.0 * std::numbers::pi * k;
  double total = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    total += weights[i] * nodes[i] * nodes[i] * values[i] * sinc_minus_one(two_pi_k * nodes[i]);
  }
  return 4.0 * std::numbers::pi * total;
}

Rule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre requires n >= 1");
  if (!(b > a)) throw DomainError("gauss_legendre requires b > a");
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    // z runs from near +1 downwards; store ascending.
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

}  // namespace herbst::quad
