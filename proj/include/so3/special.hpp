#pragma once

// Chebyshev and Gegenbauer polynomials, digamma at half-integers, and the
// L^2-norm identities for index-2 Gegenbauer polynomials.
//
// Every polynomial is evaluated by its three-term recurrence; expanded
// monomial coefficients of C_n^(2) cancel catastrophically past degree ~30.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "so3/constants.hpp"
#include "so3/quadrature.hpp"

namespace so3 {

/// Chebyshev polynomial of the second kind, U_n(x).
inline double chebyshev_u(unsigned n, double x) {
  double prev = 0.0;  // U_{-1}
  double cur = 1.0;   // U_0
  for (unsigned k = 0; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Chebyshev polynomial of the first kind, T_n(x).
inline double chebyshev_t(unsigned n, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;  // T_0
  double cur = x;     // T_1
  for (unsigned k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Gegenbauer polynomial C_n^(lambda)(x) for integer lambda >= 1, from
///   k C_k = 2 (k + lambda - 1) x C_{k-1} - (k + 2 lambda - 2) C_{k-2}.
/// The recurrence runs in extended precision; near x = 1 the values reach
/// binom(n + 3, 3) and double accumulation loses about 100 ulps by n = 40.
inline double gegenbauer(unsigned n, unsigned lambda, double x) {
  if (lambda == 0) throw std::domain_error("gegenbauer: lambda must be >= 1");
  const long double lam = lambda;
  const long double xl = x;
  if (n == 0) return 1.0;
  long double prev = 1.0L;
  long double cur = 2.0L * lam * xl;
  for (unsigned k = 2; k <= n; ++k) {
    const long double next =
        (2.0L * (k + lam - 1.0L) * xl * cur - (k + 2.0L * lam - 2.0L) * prev) / k;
    prev = cur;
    cur = next;
  }
  return static_cast<double>(cur);
}

inline double gegenbauer2(unsigned n, double x) { return gegenbauer(n, 2, x); }

/// Integer binomial coefficient; exact while the result fits in 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r / i * (n - k + i) + r % i * (n - k + i) / i;
  }
  return r;
}

inline double harmonic(unsigned n) {
  double s = 0.0;
  for (unsigned k = n; k >= 1; --k) s += 1.0 / k;
  return s;
}

/// sum_{k=1}^{n} 2/(2k-1), which equals psi(n + 1/2) + gamma + log 4.
/// Identities that need psi(n + 1/2) + gamma + log 4 should call this
/// rather than add the constants back to digamma_half.
inline double digamma_half_shifted(unsigned n) {
  double s = 0.0;
  for (unsigned k = n; k >= 1; --k) s += 2.0 / (2.0 * k - 1.0);
  return s;
}

/// psi(n + 1/2) = sum_{k=1}^{n} 2/(2k-1) - gamma - log 4.
inline double digamma_half(unsigned n) {
  return digamma_half_shifted(n) - euler_gamma - std::log(4.0);
}

/// int_0^1 U_n(x)^2 dx = sum_{k=0}^{n} 1/(2k+1).
inline double u_sq_integral(unsigned n) {
  double s = 0.0;
  for (unsigned k = n + 1; k-- > 0;) s += 1.0 / (2.0 * k + 1.0);
  return s;
}

inline double beta_fn(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) {
    throw std::domain_error("beta_fn: arguments must be positive");
  }
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

/// Coefficients c_{j,k}^lambda(n) of the cosine expansion
///
///   [C_n^(lambda)(cos t)]^2 = 2 sum'_{r=0}^{n} cos(2 r t) sum_{u=0}^{n-r} c_{r+u,u},
///
/// where the primed sum halves the r = 0 term. The table factors as
/// c_{j,k} = b_j b_k with b_j = a_j a_{n-j} and a_j = binom(lambda + j - 1, j).
class CosineSquareExpansion {
 public:
  CosineSquareExpansion(unsigned n, unsigned lambda) : n_(n), lambda_(lambda) {
    if (lambda == 0) {
      throw std::domain_error("cosine expansion: lambda must be >= 1");
    }
    std::vector<double> b(n + 1);
    if (lambda == 2) {
      for (unsigned j = 0; j <= n; ++j) b[j] = (j + 1.0) * (n - j + 1.0);
    } else if (n > 60) {
      // log-space guards against overflow of the gamma ratios
      const double lg = std::lgamma(static_cast<double>(lambda));
      auto log_a = [&](unsigned j) {
        return std::lgamma(lambda + static_cast<double>(j)) - lg -
               std::lgamma(j + 1.0);
      };
      for (unsigned j = 0; j <= n; ++j) {
        b[j] = std::exp(log_a(j) + log_a(n - j));
      }
    } else {
      std::vector<double> a(n + 1, 1.0);
      for (unsigned j = 1; j <= n; ++j) {
        a[j] = a[j - 1] * (lambda + j - 1.0) / j;
      }
      for (unsigned j = 0; j <= n; ++j) b[j] = a[j] * a[n - j];
    }
    table_.resize((n + 1) * (n + 1));
    for (unsigned j = 0; j <= n; ++j) {
      for (unsigned k = 0; k <= n; ++k) table_[j * (n + 1) + k] = b[j] * b[k];
    }
  }

  unsigned degree() const { return n_; }
  unsigned lambda() const { return lambda_; }

  double operator()(unsigned j, unsigned k) const {
    return table_.at(j * (n_ + 1) + k);
  }

  /// sum_{u=0}^{n-r} c_{r+u,u}
  double diagonal_sum(unsigned r) const {
    double s = 0.0;
    for (unsigned u = 0; u + r <= n_; ++u) s += (*this)(r + u, u);
    return s;
  }

  /// Right-hand side of the expansion at angle t.
  double evaluate_square(double t) const {
    double s = 0.5 * diagonal_sum(0);
    for (unsigned r = 1; r <= n_; ++r) s += std::cos(2.0 * r * t) * diagonal_sum(r);
    return 2.0 * s;
  }

 private:
  unsigned n_;
  unsigned lambda_;
  std::vector<double> table_;
};

inline CosineSquareExpansion cosine_square_coeffs(unsigned n, unsigned lambda) {
  return CosineSquareExpansion(n, lambda);
}

struct IdentitySides {
  double lhs;
  double rhs;
};

inline QuadratureOptions identity_quadrature() {
  return QuadratureOptions{1e-12, 0.0, 40};
}

/// int_0^1 (x^2 - 1) [C_{n-2}^(2)(x)]^2 dx by quadrature (lhs) against
///   -(2n^2 - 1)/16 (psi(n + 1/2) + gamma + log 4) + n^2 / 8    (rhs).
inline IdentitySides gegenbauer_identity_check(unsigned n) {
  if (n < 2) throw std::domain_error("gegenbauer_identity_check: n >= 2");
  const auto lhs = integrate(
      [n](double x) {
        const double c = gegenbauer2(n - 2, x);
        return (x * x - 1.0) * c * c;
      },
      0.0, 1.0, identity_quadrature());
  const double nn = static_cast<double>(n) * n;
  const double rhs = -(2.0 * nn - 1.0) / 16.0 * digamma_half_shifted(n) + nn / 8.0;
  return {lhs.value, rhs};
}

/// Closed form of int_0^1 [C_{n-2}^(2)(x)]^2 dx:
///   n^4/16 + (4n^2 - 1)/64 (psi(n + 1/2) + gamma + log 4) - 5 n^2 / 32.
inline double gegenbauer_l2(unsigned n) {
  if (n < 2) throw std::domain_error("gegenbauer_l2: n >= 2");
  const double nn = static_cast<double>(n) * n;
  return nn * nn / 16.0 + (4.0 * nn - 1.0) / 64.0 * digamma_half_shifted(n) -
         5.0 * nn / 32.0;
}

inline double gegenbauer_l2_quadrature(unsigned n) {
  if (n < 2) throw std::domain_error("gegenbauer_l2_quadrature: n >= 2");
  return integrate(
             [n](double x) {
               const double c = gegenbauer2(n - 2, x);
               return c * c;
             },
             0.0, 1.0, identity_quadrature())
      .value;
}

/// int_{-1}^{1} [C_{2L}^(2)(t)]^2 sqrt(1 - t) (1 + t)^{3/2} dt by quadrature.
/// With t = cos(theta) the weight becomes 8 sin^2(theta/2) cos^4(theta/2)
/// and the endpoint singularities disappear.
inline double gegenbauer_weighted_norm(unsigned L) {
  return integrate(
             [L](double theta) {
               const double c = gegenbauer2(2 * L, std::cos(theta));
               const double s = std::sin(0.5 * theta);
               const double h = std::cos(0.5 * theta);
               const double h2 = h * h;
               return 8.0 * s * s * h2 * h2 * c * c;
             },
             0.0, pi, identity_quadrature())
      .value;
}

/// (pi / 2) binom(2L + 3, 2L), the closed form of gegenbauer_weighted_norm.
inline double gegenbauer_weighted_norm_closed(unsigned L) {
  return 0.5 * pi * static_cast<double>(binomial(2 * L + 3, 2 * L));
}

}  // namespace so3
