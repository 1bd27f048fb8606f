#pragma once

// Adaptive Gauss-Legendre quadrature and the radial integration rule on
// SO(3): for f(x) = g(omega(x)),
//
//   int_SO(3) f dmu = (2 / pi) int_0^pi g(t) sin^2(t / 2) dt.

#include <array>
#include <cmath>
#include <concepts>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "so3/constants.hpp"

namespace so3 {

class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_depth = 40;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long intervals = 0;
};

namespace detail {

inline constexpr int kGaussPoints = 20;

struct GaussRule {
  std::array<double, kGaussPoints> nodes{};
  std::array<double, kGaussPoints> weights{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_n.
inline GaussRule make_gauss_rule() {
  GaussRule rule;
  constexpr int n = kGaussPoints;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

inline const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

struct Panel {
  double value;
  double magnitude;  // integral of |f|, sets the round-off floor
};

template <class F>
Panel gauss_panel(F& f, double a, double b) {
  const auto& rule = gauss_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0, mag = 0.0;
  for (int i = 0; i < kGaussPoints; ++i) {
    const double fx = f(mid + half * rule.nodes[i]);
    sum += rule.weights[i] * fx;
    mag += rule.weights[i] * std::abs(fx);
  }
  return {sum * half, mag * std::abs(half)};
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

template <class F>
void adapt(F& f, double a, double b, Panel whole, double tol, int depth,
           const QuadratureOptions& opt, CompensatedSum& acc,
           QuadratureResult& out) {
  const double m = 0.5 * (a + b);
  const Panel left = gauss_panel(f, a, m);
  const Panel right = gauss_panel(f, m, b);
  const double refined = left.value + right.value;
  const double diff = std::abs(refined - whole.value);
  // Agreement below ~100 ulps of the panel magnitude cannot be improved by
  // further bisection.
  const double floor = 128.0 * std::numeric_limits<double>::epsilon() *
                       (left.magnitude + right.magnitude);
  if (!std::isfinite(refined)) {
    throw convergence_error("quadrature: non-finite integrand value");
  }
  if (diff <= tol || diff <= floor) {
    acc.add(refined);
    out.error_estimate += diff;
    out.intervals += 2;
    return;
  }
  if (depth >= opt.max_depth) {
    throw convergence_error("quadrature: depth limit " +
                            std::to_string(opt.max_depth) + " exceeded near " +
                            std::to_string(m));
  }
  adapt(f, a, m, left, 0.5 * tol, depth + 1, opt, acc, out);
  adapt(f, m, b, right, 0.5 * tol, depth + 1, opt, acc, out);
}

}  // namespace detail

/// Integral of f over [a, b] by adaptive bisection with a 20-point
/// Gauss-Legendre rule. Throws convergence_error past `max_depth` levels.
template <class F>
  requires std::invocable<F&, double>
QuadratureResult integrate(F f, double a, double b,
                           const QuadratureOptions& opt = {}) {
  QuadratureResult out;
  if (a == b) return out;
  const detail::Panel whole = detail::gauss_panel(f, a, b);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(whole.value));
  detail::CompensatedSum acc;
  detail::adapt(f, a, b, whole, tol, 0, opt, acc, out);
  out.value = acc.value();
  return out;
}

/// A scalar function of the rotation angle t in [0, pi]. A profile that is
/// not declared singular must be finite at t = 0.
struct RadialFunction {
  std::function<double(double)> profile;
  bool singular_at_zero = false;
};

/// (2 / pi) int_0^pi g(t) sin^2(t / 2) dt for a radial profile g.
template <class F>
  requires std::invocable<F&, double>
double radial_integral(F profile, const QuadratureOptions& opt = {}) {
  auto integrand = [&profile](double t) {
    const double s = std::sin(0.5 * t);
    return profile(t) * s * s;
  };
  return 2.0 / pi * integrate(integrand, 0.0, pi, opt).value;
}

inline double radial_integral(const RadialFunction& f,
                              const QuadratureOptions& opt = {}) {
  if (!f.profile) throw std::invalid_argument("radial profile is empty");
  if (!f.singular_at_zero && !std::isfinite(f.profile(0.0))) {
    throw std::domain_error(
        "radial profile is not finite at 0 but was not declared singular");
  }
  return radial_integral([&f](double t) { return f.profile(t); }, opt);
}

}  // namespace so3
