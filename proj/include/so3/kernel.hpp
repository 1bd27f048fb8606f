#pragma once

// The projection kernel K_L and the Green function of the Laplace-Beltrami
// operator on SO(3), both as functions of the rotation angle.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "so3/constants.hpp"
#include "so3/quadrature.hpp"
#include "so3/special.hpp"

namespace so3 {

/// Spectral cutoff L and the dimension N = binom(2L + 3, 3) of the span of
/// eigenspaces with eigenvalue up to L(L + 1).
struct KernelSpec {
  unsigned L = 0;
  std::uint64_t N = 1;

  static KernelSpec from_degree(unsigned L) {
    if (L > 100000) throw std::domain_error("kernel degree too large");
    return KernelSpec{L, binomial(2ULL * L + 3, 3)};
  }
};

/// K_L(omega) = C_{2L}^(2)(cos(omega / 2)).
inline double kernel(const KernelSpec& spec, double omega) {
  if (omega == 0.0) return static_cast<double>(spec.N);
  return gegenbauer2(2 * spec.L, std::cos(0.5 * omega));
}

/// sum_{l=0}^{L} (2l + 1) U_{2l}(cos(omega / 2)), accumulated in extended
/// precision.
inline double kernel_spectral(const KernelSpec& spec, double omega) {
  const long double x = std::cos(0.5 * omega);
  long double um1 = 0.0L;  // U_{2l-1}
  long double u = 1.0L;    // U_{2l}
  long double sum = 1.0L;
  for (unsigned l = 1; l <= spec.L; ++l) {
    const long double odd = 2.0L * x * u - um1;
    const long double even = 2.0L * x * odd - u;
    um1 = odd;
    u = even;
    sum += (2.0L * l + 1.0L) * u;
  }
  return static_cast<double>(sum);
}

/// G(omega) = (pi - omega) cot(omega / 2) - 1 for omega in (0, pi].
inline double green_closed(double omega) {
  if (!(omega > 0.0)) {
    throw std::domain_error("green_closed: omega must be positive (coincident points)");
  }
  if (omega > pi) throw std::domain_error("green_closed: omega exceeds pi");
  return (pi - omega) / std::tan(0.5 * omega) - 1.0;
}

namespace detail {

// Calls sink(l, U_{2l}(x)) for l = 1..terms.
template <class Sink>
void for_even_chebyshev(double x, std::uint64_t terms, Sink&& sink) {
  double um1 = 0.0, u = 1.0;
  for (std::uint64_t l = 1; l <= terms; ++l) {
    const double odd = 2.0 * x * u - um1;
    const double even = 2.0 * x * odd - u;
    um1 = odd;
    u = even;
    if (!sink(l, u)) return;
  }
}

}  // namespace detail

/// Partial sum of sum_{l>=1} (2l + 1) / (l (l + 1)) U_{2l}(cos(omega / 2)).
/// Converges conditionally with error O(1 / terms).
inline double green_series(double omega, std::uint64_t terms) {
  if (!(omega > 0.0)) throw std::domain_error("green_series: omega must be positive");
  detail::CompensatedSum acc;
  detail::for_even_chebyshev(std::cos(0.5 * omega), terms, [&](std::uint64_t l, double u) {
    const double ld = static_cast<double>(l);
    acc.add((2.0 * ld + 1.0) / (ld * (ld + 1.0)) * u);
    return true;
  });
  return acc.value();
}

/// Mean of the partial sums S_{terms - window + 1}, ..., S_{terms}. The
/// partial sums oscillate around the limit, and averaging over a window
/// cancels most of the oscillation.
inline double green_series_averaged(double omega, std::uint64_t terms,
                                    std::uint64_t window) {
  if (!(omega > 0.0)) {
    throw std::domain_error("green_series_averaged: omega must be positive");
  }
  if (window == 0 || window > terms) {
    throw std::invalid_argument("green_series_averaged: need 0 < window <= terms");
  }
  detail::CompensatedSum partial, mean;
  detail::for_even_chebyshev(std::cos(0.5 * omega), terms, [&](std::uint64_t l, double u) {
    const double ld = static_cast<double>(l);
    partial.add((2.0 * ld + 1.0) / (ld * (ld + 1.0)) * u);
    if (l + window > terms) mean.add(partial.value());
    return true;
  });
  return mean.value() / static_cast<double>(window);
}

/// Heat-regularized Green function
///   G_t(omega) = sum_{l>=1} e^{-l(l+1)t} (2l + 1) / (l (l + 1)) U_{2l}(cos(omega / 2)),
/// summed until the term bound drops below 1e-17 of the running magnitude.
inline double green_heat(double omega, double t) {
  if (!(t > 0.0)) throw std::domain_error("green_heat: t must be positive");
  if (!(omega >= 0.0 && omega <= pi)) throw std::domain_error("green_heat: omega outside [0, pi]");
  detail::CompensatedSum acc;
  double magnitude = 0.0;
  detail::for_even_chebyshev(std::cos(0.5 * omega), 100000000, [&](std::uint64_t l, double u) {
    const double ld = static_cast<double>(l);
    const double damp = std::exp(-ld * (ld + 1.0) * t) / (ld * (ld + 1.0));
    acc.add(damp * (2.0 * ld + 1.0) * u);
    const double bound = damp * (2.0 * ld + 1.0) * (2.0 * ld + 1.0);
    magnitude += bound;
    return bound > 1e-17 * magnitude;
  });
  return acc.value();
}

/// G_t at coincident points: sum_{l>=1} e^{-l(l+1)t} (2l + 1)^2 / (l (l + 1)),
/// which behaves like 2 sqrt(pi / t) + O(1) as t -> 0.
inline double green_heat_diag(double t) {
  if (!(t > 0.0)) throw std::domain_error("green_heat_diag: t must be positive");
  detail::CompensatedSum acc;
  for (std::uint64_t l = 1;; ++l) {
    const double ld = static_cast<double>(l);
    const double term =
        std::exp(-ld * (ld + 1.0) * t) * (2.0 * ld + 1.0) * (2.0 * ld + 1.0) / (ld * (ld + 1.0));
    acc.add(term);
    if (term < 1e-16 * acc.value() || term == 0.0) break;
  }
  return acc.value();
}

/// Expected Green energy of the projection process with kernel K_L,
///
///   I = -(2 / pi) int_0^pi ((pi - t) cot(t / 2) - 1) [C_{2L}^(2)(cos(t / 2))]^2 sin^2(t / 2) dt.
///
/// With theta = t / 2 the cotangent pole cancels against sin^2 and the
/// integrand becomes the polynomial-trigonometric
///   (4 / pi) [(pi - 2 theta) sin theta cos theta - sin^2 theta] C(cos theta)^2
/// on [0, pi / 2].
inline double expected_green_energy_integral(const KernelSpec& spec,
                                             const QuadratureOptions& opt = {1e-11, 1e-14, 40}) {
  const unsigned n = 2 * spec.L;
  const auto r = integrate(
      [n](double th) {
        const double s = std::sin(th), c = std::cos(th);
        const double k = gegenbauer2(n, c);
        return ((pi - 2.0 * th) * s * c - s * s) * k * k;
      },
      0.0, 0.5 * pi, opt);
  return -4.0 / pi * r.value;
}

}  // namespace so3
