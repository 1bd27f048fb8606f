#pragma once

// Discrete Riesz and Green energies, the leading-order energy curves for
// the projection DPP, and ball-count variance experiments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "so3/constants.hpp"
#include "so3/kernel.hpp"
#include "so3/parallel.hpp"
#include "so3/point_set.hpp"
#include "so3/quadrature.hpp"
#include "so3/random.hpp"
#include "so3/rotation.hpp"
#include "so3/sampling.hpp"
#include "so3/special.hpp"
#include "so3/stats.hpp"

namespace so3 {

struct EnergyResult {
  double value = 0.0;  // +inf when two points coincide
  std::optional<std::pair<std::size_t, std::size_t>> coincident;

  bool finite() const { return !coincident; }
};

namespace detail {

// Points in lexicographic order of their entries. Summing pairs in this
// order makes energies invariant, bit for bit, under permutation.
inline std::vector<std::size_t> canonical_order(const PointSet& ps) {
  std::vector<std::size_t> idx(ps.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return ps[a].entries() < ps[b].entries();
  });
  return idx;
}

// 2 sum_{i<j} f(p_i, p_j) over the canonical order. `f` returns nullopt
// for a coincident pair.
template <class PairFn>
EnergyResult pair_energy(const PointSet& ps, unsigned threads, PairFn f) {
  const auto order = canonical_order(ps);
  const std::size_t n = order.size();
  const auto blocks = fixed_blocks(n, 16);
  struct Partial {
    CompensatedSum sum;
    std::optional<std::pair<std::size_t, std::size_t>> hit;
  };
  std::vector<Partial> parts(blocks.size());
  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    auto& part = parts[b];
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const Rotation& a = ps[order[i]];
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto v = f(a, ps[order[j]]);
        if (!v) {
          if (!part.hit) part.hit = std::minmax(order[i], order[j]);
          continue;
        }
        part.sum.add(*v);
      }
    }
  });
  EnergyResult out;
  CompensatedSum total;
  for (const auto& part : parts) {
    if (part.hit && !out.coincident) out.coincident = part.hit;
    total.add(part.sum.value());
  }
  out.value = out.coincident ? std::numeric_limits<double>::infinity() : 2.0 * total.value();
  return out;
}

inline double squared_distance(const Rotation& a, const Rotation& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) {
    const double d = x[k] - y[k];
    s += d * d;
  }
  return s;
}

}  // namespace detail

/// sum_{j != k} |a_j - a_k|_F^{-s} for 0 < s <= 3.
inline EnergyResult riesz_energy(const PointSet& ps, double s, unsigned threads = 1) {
  if (!(s > 0.0 && s <= 3.0)) throw std::domain_error("riesz_energy: s must lie in (0, 3]");
  const double half = -0.5 * s;
  return detail::pair_energy(ps, threads, [half](const Rotation& a, const Rotation& b) {
    const double d2 = detail::squared_distance(a, b);
    return d2 > 0.0 ? std::optional<double>(std::pow(d2, half)) : std::nullopt;
  });
}

/// sum_{i != j} G(omega(a_i^{-1} a_j)).
inline EnergyResult green_energy(const PointSet& ps, unsigned threads = 1) {
  return detail::pair_energy(ps, threads, [](const Rotation& a, const Rotation& b) {
    const double w = rotation_angle(a, b);
    return w > 0.0 ? std::optional<double>(green_closed(w)) : std::nullopt;
  });
}

/// Two leading terms of the expected Riesz 3-energy of the projection DPP,
///   [N^2 log N + (3 gamma + log 384 - 21/4) N^2] / (12 sqrt 2 pi).
/// The O(N^{5/3} log N) remainder is not included.
inline double riesz3_dpp_expectation(double n) {
  if (!(n >= 2.0)) throw std::domain_error("riesz3_dpp_expectation: n must be >= 2");
  const double c = 3.0 * euler_gamma + std::log(384.0) - 21.0 / 4.0;
  return (n * n * std::log(n) + c * n * n) / (12.0 * std::sqrt(2.0) * pi);
}

struct GreenBounds {
  double lower;
  double upper;
};

inline double green_lower_coefficient() { return -3.0 * std::cbrt(pi); }
inline double green_upper_coefficient() { return -4.0 * std::pow(0.75, 4.0 / 3.0); }

/// Leading terms -3 pi^{1/3} N^{4/3} and -4 (3/4)^{4/3} N^{4/3} of the
/// optimal Green energy; both bounds hold up to O(N) with unknown constants.
inline GreenBounds green_energy_bounds(double n) {
  if (!(n >= 1.0)) throw std::domain_error("green_energy_bounds: n must be >= 1");
  const double p = std::pow(n, 4.0 / 3.0);
  return {green_lower_coefficient() * p, green_upper_coefficient() * p};
}

/// Continuous Riesz s-energy of Haar measure for the Frobenius distance,
///   2 / (8^{s/2} pi) B((3 - s) / 2, 1 / 2).
inline double continuous_riesz(double s) {
  if (!(s > 0.0 && s < 3.0)) throw std::domain_error("continuous_riesz: s must lie in (0, 3)");
  return 2.0 / (std::pow(8.0, 0.5 * s) * pi) * beta_fn(0.5 * (3.0 - s), 0.5);
}

/// Subleading term of the expected Riesz s-energy of the DPP:
///   s = 1: -(sqrt 2 / pi) (3/4)^{4/3} N^{4/3},
///   s = 2: -(4/15) (3/4)^{5/3} N^{5/3}.
inline double riesz_subleading(int s, double n) {
  if (!(n >= 1.0)) throw std::domain_error("riesz_subleading: n must be >= 1");
  if (s == 1) return -(std::sqrt(2.0) / pi) * std::pow(0.75, 4.0 / 3.0) * std::pow(n, 4.0 / 3.0);
  if (s == 2) return -(4.0 / 15.0) * std::pow(0.75, 5.0 / 3.0) * std::pow(n, 5.0 / 3.0);
  throw std::domain_error("riesz_subleading: only s = 1 and s = 2 are available");
}

/// Exact expected Riesz s-energy of the projection DPP, from the pair
/// intensity N^2 - K^2:
///   (4 / pi) 8^{-s/2} int_0^{pi/2} (N^2 - C_{2L}^(2)(cos theta)^2) sin^{2-s} theta dtheta.
inline double expected_riesz_energy(const KernelSpec& spec, double s,
                                    const QuadratureOptions& opt = {1e-11, 1e-14, 40}) {
  if (!(s > 0.0 && s <= 3.0)) throw std::domain_error("expected_riesz_energy: s in (0, 3]");
  const double n2 = static_cast<double>(spec.N) * static_cast<double>(spec.N);
  const unsigned deg = 2 * spec.L;
  const auto r = integrate(
      [=](double th) {
        const double k = gegenbauer2(deg, std::cos(th));
        return (n2 - k * k) * std::pow(std::sin(th), 2.0 - s);
      },
      0.0, 0.5 * pi, opt);
  return 4.0 / pi * std::pow(8.0, -0.5 * s) * r.value;
}

/// Number of points with omega(center^{-1} p) < eps.
inline std::size_t ball_count(const PointSet& ps, const Rotation& center, double eps) {
  if (!(eps > 0.0 && eps <= pi)) throw std::domain_error("ball_count: eps must lie in (0, pi]");
  std::size_t c = 0;
  for (const auto& p : ps.points) c += rotation_angle(center, p) < eps ? 1 : 0;
  return c;
}

namespace detail {

// Rotation by angle t about the unit axis k.
inline Rotation axis_angle(const std::array<double, 3>& k, double t) {
  const double c = std::cos(t), s = std::sin(t), v = 1.0 - c;
  return Rotation::from_entries({c + k[0] * k[0] * v, k[0] * k[1] * v - k[2] * s,
                                 k[0] * k[2] * v + k[1] * s, k[1] * k[0] * v + k[2] * s,
                                 c + k[1] * k[1] * v, k[1] * k[2] * v - k[0] * s,
                                 k[2] * k[0] * v - k[1] * s, k[2] * k[1] * v + k[0] * s,
                                 c + k[2] * k[2] * v});
}

// Angle quantile of Haar measure restricted to B(1, eps): solves
// t - sin t = u (eps - sin eps) by safeguarded Newton.
inline double ball_angle_quantile(double u, double eps) {
  const double target = u * pi * ball_volume(eps);
  if (target <= 0.0) return 0.0;
  auto g = [](double t) { return t > 0.0 ? pi * ball_volume(t) : 0.0; };
  double lo = 0.0, hi = eps;
  double t = std::min(std::cbrt(6.0 * target), eps);
  for (int it = 0; it < 60; ++it) {
    const double f = g(t) - target;
    if (f > 0.0) hi = t; else lo = t;
    const double h = std::sin(0.5 * t);
    const double dg = 2.0 * h * h;
    double next = dg > 0.0 ? t - f / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * std::max(t, 1e-300)) return next;
    t = next;
  }
  return t;
}

// Haar-uniform rotation inside B(1, eps) from three uniforms.
inline Rotation uniform_in_ball(double u1, double u2, double u3, double eps) {
  const double z = 2.0 * u2 - 1.0;
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = 2.0 * pi * u3;
  return axis_angle({r * std::cos(phi), r * std::sin(phi), z}, ball_angle_quantile(u1, eps));
}

}  // namespace detail

struct McEstimate {
  double value;
  double standard_error;
};

/// Monte Carlo estimate of the double integral of K_L^2 over B(1, eps) x B(1, eps).
inline McEstimate ball_kernel_square_integral(const KernelSpec& spec, double eps,
                                              std::uint64_t pairs, std::uint64_t seed,
                                              unsigned threads = 1) {
  if (pairs < 2) throw std::invalid_argument("need at least two Monte Carlo pairs");
  const auto blocks = fixed_blocks(pairs, 1 << 16);
  std::vector<std::pair<double, double>> parts(blocks.size());
  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      RngStream rng(seed, StreamTag::monte_carlo, i);
      const double a1 = rng.next_uniform(), a2 = rng.next_uniform(), a3 = rng.next_uniform();
      const double b1 = rng.next_uniform(), b2 = rng.next_uniform(), b3 = rng.next_uniform();
      const Rotation x = detail::uniform_in_ball(a1, a2, a3, eps);
      const Rotation y = detail::uniform_in_ball(b1, b2, b3, eps);
      const double k = kernel_between(spec, x, y);
      s += k * k;
      s2 += k * k * k * k;
    }
    parts[b] = {s, s2};
  });
  double s = 0.0, s2 = 0.0;
  for (const auto& [a, b] : parts) {
    s += a;
    s2 += b;
  }
  const double m = static_cast<double>(pairs);
  const double mean_k2 = s / m;
  const double var_k2 = std::max(0.0, (s2 / m - mean_k2 * mean_k2) * m / (m - 1.0));
  const double mu = ball_volume(eps);
  return {mu * mu * mean_k2, mu * mu * std::sqrt(var_k2 / m)};
}

struct BallCountExperiment {
  unsigned L = 0;
  std::uint64_t N = 1;
  double eps = 0.0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;
  std::vector<double> counts;
  double mean = 0.0;
  double mean_standard_error = 0.0;
  double variance = 0.0;
  double variance_bootstrap_sd = 0.0;
  double ball_measure = 0.0;
  double expected_mean = 0.0;         // N mu
  double iid_variance = 0.0;          // N mu (1 - mu)
  double exact_variance = 0.0;        // N mu - double integral of K^2 over A x A
  double exact_variance_standard_error = 0.0;
  std::optional<double> scaled_variance;  // Var / (N^{2/3} log N), N > 1
};

struct VarianceOptions {
  std::uint64_t mc_pairs = 10000000;
  std::size_t bootstrap_resamples = 1000;
  unsigned threads = 1;
};

/// Samples the DPP `runs` times and compares the spread of the number of
/// points in B(1, eps) with the exact and iid variances.
inline BallCountExperiment variance_experiment(unsigned L, double eps, std::size_t runs,
                                               std::uint64_t seed,
                                               const VarianceOptions& opt = {}) {
  if (L > 3) throw std::domain_error("variance_experiment: L must be 0, 1, 2 or 3");
  if (!(eps > 0.0 && eps < 0.5 * pi)) {
    throw std::domain_error("variance_experiment: eps must lie in (0, pi/2)");
  }
  if (runs < 100) throw std::invalid_argument("variance_experiment: runs must be >= 100");
  const auto spec = KernelSpec::from_degree(L);
  BallCountExperiment ex;
  ex.L = L;
  ex.N = spec.N;
  ex.eps = eps;
  ex.runs = runs;
  ex.seed = seed;
  ex.counts.resize(runs);
  const Rotation center = Rotation::identity();
  parallel_for(runs, opt.threads, [&](std::size_t r) {
    const auto ps = dpp_sample(spec, seed, r);
    ex.counts[r] = static_cast<double>(ball_count(ps, center, eps));
  });
  const double n = static_cast<double>(spec.N);
  ex.mean = so3::mean(ex.counts);
  ex.mean_standard_error = standard_error(ex.counts);
  ex.variance = so3::variance(ex.counts);
  ex.variance_bootstrap_sd = bootstrap_variance_sd(ex.counts, opt.bootstrap_resamples, seed);
  ex.ball_measure = ball_volume(eps);
  ex.expected_mean = n * ex.ball_measure;
  ex.iid_variance = n * ex.ball_measure * (1.0 - ex.ball_measure);
  const auto k2 = ball_kernel_square_integral(spec, eps, opt.mc_pairs, seed, opt.threads);
  ex.exact_variance = n * ex.ball_measure - k2.value;
  ex.exact_variance_standard_error = k2.standard_error;
  if (spec.N > 1) ex.scaled_variance = ex.variance / (std::pow(n, 2.0 / 3.0) * std::log(n));
  return ex;
}

}  // namespace so3
