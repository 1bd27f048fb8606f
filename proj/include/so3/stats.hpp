#pragma once

// Summary statistics, the one-sample Kolmogorov-Smirnov test and a
// bootstrap error for the sample variance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "so3/random.hpp"

namespace so3 {

inline double mean(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("mean of empty sample");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

/// Unbiased sample variance.
inline double variance(const std::vector<double>& x) {
  if (x.size() < 2) throw std::invalid_argument("variance needs two samples");
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

inline double standard_error(const std::vector<double>& x) {
  return std::sqrt(variance(x) / static_cast<double>(x.size()));
}

/// P(K > lambda) for the Kolmogorov distribution,
///   2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_survival(double lambda) {
  if (lambda < 0.2) return 1.0;
  double s = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * s, 0.0, 1.0);
}

struct KsResult {
  double statistic;
  double p_value;
};

/// One-sample KS test of `x` against a continuous CDF, with Stephens'
/// finite-sample correction of the asymptotic p-value.
inline KsResult ks_test(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw std::invalid_argument("ks_test on empty sample");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (i + 1.0) / n - f, f - i / n});
  }
  const double root = std::sqrt(n);
  return {d, kolmogorov_survival((root + 0.12 + 0.11 / root) * d)};
}

/// Standard deviation of the sample variance over `resamples` bootstrap
/// replicates drawn from substream (seed, bootstrap).
inline double bootstrap_variance_sd(const std::vector<double>& x, std::size_t resamples,
                                    std::uint64_t seed) {
  if (x.size() < 2) throw std::invalid_argument("bootstrap needs two samples");
  std::vector<double> reps;
  reps.reserve(resamples);
  std::vector<double> draw(x.size());
  for (std::size_t r = 0; r < resamples; ++r) {
    RngStream rng(seed, StreamTag::bootstrap, r);
    for (auto& v : draw) v = x[rng.next_below(x.size())];
    reps.push_back(variance(draw));
  }
  return std::sqrt(variance(reps));
}

}  // namespace so3
