#pragma once

// Identity suite behind the `verify` command: every check compares two
// independent evaluations and reports the largest observed discrepancy.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "so3/kernel.hpp"
#include "so3/quadrature.hpp"
#include "so3/special.hpp"

namespace so3 {

struct CheckResult {
  std::string group;
  std::string name;
  double tolerance;
  double error;
  bool pass;
};

struct Check {
  std::string group;
  std::string name;
  double tolerance;
  std::function<double()> observed_error;
};

namespace detail {

inline double max_abs(double a, double b) { return std::max(a, std::abs(b)); }

// psi(n + 1/2) + gamma = int_0^1 2 (v - v^{2n}) / (1 - v^2) dv.
inline double digamma_half_by_quadrature(unsigned n) {
  return integrate(
             [n](double v) { return 2.0 * (v - std::pow(v, 2.0 * n)) / (1.0 - v * v); }, 0.0,
             1.0, {1e-13, 0.0, 40})
             .value -
         euler_gamma;
}

}  // namespace detail

inline std::vector<Check> identity_checks() {
  std::vector<Check> c;

  c.push_back({"chebyshev", "T_n(1) = 1, n <= 50", 0.0, [] {
                 double e = 0.0;
                 for (unsigned n = 0; n <= 50; ++n) e = detail::max_abs(e, chebyshev_t(n, 1.0) - 1.0);
                 return e;
               }});
  c.push_back({"chebyshev", "2 T_{2l+1} = U_{2l+1} - U_{2l-1}, l <= 25", 1e-11, [] {
                 double e = 0.0;
                 for (unsigned l = 1; l <= 25; ++l) {
                   for (int i = 0; i < 100; ++i) {
                     const double x = -1.0 + 2.0 * i / 99.0;
                     e = detail::max_abs(e, 2.0 * chebyshev_t(2 * l + 1, x) -
                                                (chebyshev_u(2 * l + 1, x) - chebyshev_u(2 * l - 1, x)));
                   }
                 }
                 return e;
               }});
  c.push_back({"chebyshev", "U_n(cos t) sin t = sin((n+1) t)", 1e-11, [] {
                 double e = 0.0;
                 for (unsigned n = 0; n <= 40; ++n) {
                   for (int i = 1; i < 50; ++i) {
                     const double t = pi * i / 50.0;
                     e = detail::max_abs(e, chebyshev_u(n, std::cos(t)) * std::sin(t) - std::sin((n + 1.0) * t));
                   }
                 }
                 return e;
               }});
  c.push_back({"chebyshev", "U'_{2L+1} = 2 C_{2L}^(2), central difference h = 1e-5, L <= 10", 1e-4, [] {
                 const double h = 1e-5;
                 double e = 0.0;
                 for (unsigned L = 0; L <= 10; ++L) {
                   for (int i = 0; i <= 20; ++i) {
                     const double x = -0.95 + 1.9 * i / 20.0;
                     const double d = (chebyshev_u(2 * L + 1, x + h) - chebyshev_u(2 * L + 1, x - h)) / (2 * h);
                     e = detail::max_abs(e, (d - 2.0 * gegenbauer2(2 * L, x)) /
                                                std::max(1.0, std::abs(2.0 * gegenbauer2(2 * L, x))));
                   }
                 }
                 return e;
               }});

  c.push_back({"digamma", "psi(n + 1/2) sum vs integral representation, n <= 40", 1e-10, [] {
                 double e = 0.0;
                 for (unsigned n = 0; n <= 40; ++n) {
                   e = detail::max_abs(e, digamma_half(n) - detail::digamma_half_by_quadrature(n));
                 }
                 return e;
               }});
  c.push_back({"digamma", "int_0^1 U_n^2 = sum 1/(2k+1), n <= 40", 1e-10, [] {
                 double e = 0.0;
                 for (unsigned n = 0; n <= 40; ++n) {
                   const double q = integrate([n](double x) {
                                      const double u = chebyshev_u(n, x);
                                      return u * u;
                                    }, 0.0, 1.0, identity_quadrature()).value;
                   e = detail::max_abs(e, q - u_sq_integral(n));
                 }
                 return e;
               }});

  c.push_back({"gegenbauer", "C_{2L}^(2)(1) = binom(2L+3, 3), L <= 20", 0.0, [] {
                 double e = 0.0;
                 for (unsigned L = 0; L <= 20; ++L) {
                   e = detail::max_abs(e, gegenbauer2(2 * L, 1.0) -
                                              static_cast<double>(binomial(2 * L + 3, 3)));
                 }
                 return e;
               }});
  c.push_back({"gegenbauer", "int_0^1 (x^2-1) C_{n-2}^2 closed form, n = 2..40", 1e-8, [] {
                 double e = 0.0;
                 for (unsigned n = 2; n <= 40; ++n) {
                   const auto s = gegenbauer_identity_check(n);
                   e = detail::max_abs(e, s.lhs - s.rhs);
                 }
                 return e;
               }});
  c.push_back({"gegenbauer", "int_0^1 C_{n-2}^2 closed form, n = 2..40", 1e-8, [] {
                 double e = 0.0;
                 for (unsigned n = 2; n <= 40; ++n) {
                   e = detail::max_abs(e, gegenbauer_l2(n) - gegenbauer_l2_quadrature(n));
                 }
                 return e;
               }});
  c.push_back({"gegenbauer", "weighted norm = (pi/2) binom(2L+3, 2L), relative, L <= 10", 1e-7, [] {
                 double e = 0.0;
                 for (unsigned L = 0; L <= 10; ++L) {
                   const double ref = gegenbauer_weighted_norm_closed(L);
                   e = detail::max_abs(e, (gegenbauer_weighted_norm(L) - ref) / ref);
                 }
                 return e;
               }});
  c.push_back({"gegenbauer", "cosine-square expansion, t = 0.7, n = 6, lambda = 2", 1e-9, [] {
                 const CosineSquareExpansion ex(6, 2);
                 const double g = gegenbauer2(6, std::cos(0.7));
                 return std::abs(g * g - ex.evaluate_square(0.7));
               }});
  c.push_back({"gegenbauer", "cosine-square expansion, n <= 20, lambda = 1..3, relative", 1e-9, [] {
                 double e = 0.0;
                 for (unsigned lam = 1; lam <= 3; ++lam) {
                   for (unsigned n = 0; n <= 20; ++n) {
                     const CosineSquareExpansion ex(n, lam);
                     for (double t : {0.1, 0.7, 1.3, 2.9}) {
                       const double g = gegenbauer(n, lam, std::cos(t));
                       e = detail::max_abs(e, (g * g - ex.evaluate_square(t)) / ex.evaluate_square(0.0));
                     }
                   }
                 }
                 return e;
               }});
  c.push_back({"gegenbauer", "coefficient symmetries, n <= 20, lambda = 1..3", 0.0, [] {
                 double e = 0.0;
                 for (unsigned lam = 1; lam <= 3; ++lam) {
                   for (unsigned n = 0; n <= 20; ++n) {
                     const CosineSquareExpansion ex(n, lam);
                     for (unsigned j = 0; j <= n; ++j) {
                       for (unsigned k = 0; k <= n; ++k) {
                         e = detail::max_abs(e, ex(j, k) - ex(k, j));
                         if (j >= k) e = detail::max_abs(e, ex(j, k) - ex(n - j, k));
                         if (j + k <= n) {
                           const unsigned r = n - j - k;
                           if (j + r <= n && k + r <= n) e = detail::max_abs(e, ex(j, k) - ex(j + r, k + r));
                         }
                       }
                     }
                   }
                 }
                 return e;
               }});

  c.push_back({"kernel", "closed form vs spectral sum, L <= 20, 1000-point grid", 1e-10, [] {
                 double e = 0.0;
                 for (unsigned L = 0; L <= 20; ++L) {
                   const auto spec = KernelSpec::from_degree(L);
                   for (int i = 0; i < 1000; ++i) {
                     const double w = pi * i / 999.0;
                     e = detail::max_abs(e, kernel(spec, w) - kernel_spectral(spec, w));
                   }
                 }
                 return e;
               }});
  c.push_back({"kernel", "Haar integral of K_L^2 = N, L <= 10", 1e-8, [] {
                 double e = 0.0;
                 for (unsigned L = 0; L <= 10; ++L) {
                   const auto spec = KernelSpec::from_degree(L);
                   const double v = radial_integral([&](double t) {
                     const double k = kernel(spec, t);
                     return k * k;
                   }, {1e-12, 0.0, 40});
                   e = detail::max_abs(e, v - static_cast<double>(spec.N));
                 }
                 return e;
               }});
  c.push_back({"kernel", "Haar integral of K_L = 1, L <= 10", 1e-8, [] {
                 double e = 0.0;
                 for (unsigned L = 0; L <= 10; ++L) {
                   const auto spec = KernelSpec::from_degree(L);
                   e = detail::max_abs(e, radial_integral([&](double t) { return kernel(spec, t); }) - 1.0);
                 }
                 return e;
               }});

  c.push_back({"green", "green closed vs series, omega in [0.5, pi], 10^4 terms", 2e-3, [] {
                 double e = 0.0;
                 for (int i = 0; i <= 100; ++i) {
                   const double w = 0.5 + (pi - 0.5) * i / 100.0;
                   e = detail::max_abs(e, green_closed(w) - green_series(w, 10000));
                 }
                 return e;
               }});
  c.push_back({"green", "green closed vs series, omega = 2.0, 10^4 terms", 2e-3, [] {
                 return std::abs(green_closed(2.0) - green_series(2.0, 10000));
               }});
  c.push_back({"green", "Haar mean of the Green function = 0", 1e-8, [] {
                 return std::abs(radial_integral(RadialFunction{green_closed, true}));
               }});
  c.push_back({"green", "omega G(omega) - (2 pi - 3 omega), omega = 1e-2..1e-6", 1e-3, [] {
                 double e = 0.0;
                 for (int k = 2; k <= 6; ++k) {
                   const double w = std::pow(10.0, -k);
                   e = detail::max_abs(e, w * green_closed(w) - (2.0 * pi - 3.0 * w));
                 }
                 return e;
               }});
  c.push_back({"green", "heat diagonal / 2 sqrt(pi/t) - 1 at t = 1e-4", 1e-2, [] {
                 const double t = 1e-4;
                 return std::abs(green_heat_diag(t) / (2.0 * std::sqrt(pi / t)) - 1.0);
               }});
  c.push_back({"green", "G >= G_t - t on omega grid, t in {1e-3, 1e-2, 1e-1}", 1e-12, [] {
                 double violation = 0.0;
                 for (double t : {1e-3, 1e-2, 1e-1}) {
                   for (int i = 1; i <= 60; ++i) {
                     const double w = pi * i / 60.0;
                     violation = std::max(violation, green_heat(w, t) - t - green_closed(w));
                   }
                 }
                 return std::max(0.0, violation);
               }});
  return c;
}

/// A check is selected when `only` is empty, equals its group, or occurs
/// in its name.
inline bool check_selected(const Check& c, const std::string& only) {
  return only.empty() || c.group == only || c.name.find(only) != std::string::npos;
}

inline std::vector<CheckResult> run_checks(const std::string& only = {}) {
  std::vector<CheckResult> out;
  for (const auto& c : identity_checks()) {
    if (!check_selected(c, only)) continue;
    double err = 0.0;
    try {
      err = c.observed_error();
    } catch (const std::exception&) {
      err = std::numeric_limits<double>::infinity();
    }
    out.push_back({c.group, c.name, c.tolerance, err, std::isfinite(err) && err <= c.tolerance});
  }
  return out;
}

inline void print_check_table(std::ostream& os, const std::vector<CheckResult>& rs) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%-4s  %-10s  %-72s  %-9s  %s\n", "", "group", "check",
                "tolerance", "observed");
  os << buf;
  for (const auto& r : rs) {
    std::snprintf(buf, sizeof buf, "%-4s  %-10s  %-72s  %-9.1e  %.3e\n", r.pass ? "PASS" : "FAIL",
                  r.group.c_str(), r.name.c_str(), r.tolerance, r.error);
    os << buf;
  }
}

}  // namespace so3
