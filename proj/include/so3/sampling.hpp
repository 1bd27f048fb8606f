#pragma once

// Point samplers on SO(3): Haar-uniform (Arvo construction), HArDiSh
// (Halton-driven Arvo construction) and the projection determinantal point
// process with kernel K_L.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "so3/kernel.hpp"
#include "so3/parallel.hpp"
#include "so3/point_set.hpp"
#include "so3/random.hpp"
#include "so3/rotation.hpp"

namespace so3 {

/// Radical inverse of j in base p. Digits are accumulated as an exact
/// integer fraction, so the result is the correctly rounded value.
inline double van_der_corput(unsigned p, std::uint64_t j) {
  if (p < 2) throw std::domain_error("van_der_corput: base must be >= 2");
  if (j < 1) throw std::domain_error("van_der_corput: index must be >= 1");
  std::uint64_t num = 0, den = 1;
  while (j > 0) {
    num = num * p + j % p;
    den *= p;
    j /= p;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

struct HaltonColumn {
  double x1;
  double x2;
  double x3;
};

/// Column k >= 1 of the matrix (vdC(3, k), vdC(2, k), k).
inline HaltonColumn halton_column(std::uint64_t k) {
  return {van_der_corput(3, k), van_der_corput(2, k), static_cast<double>(k)};
}

inline Rotation hardish_rotation(double x1, double x2, double x3, std::uint64_t n_total) {
  return householder_rotation(x1, x2, x3, static_cast<double>(n_total));
}

/// The n matrices M_1, ..., M_n, column k of the Halton matrix feeding M_k.
inline PointSet hardish_sample(std::size_t n, unsigned threads = 1) {
  if (n < 1) throw std::invalid_argument("hardish_sample: n must be >= 1");
  std::vector<Rotation> pts(n);
  const auto blocks = fixed_blocks(n, 1024);
  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const auto c = halton_column(i + 1);
      pts[i] = hardish_rotation(c.x1, c.x2, c.x3, n);
    }
  });
  return PointSet{std::move(pts), "hardish", std::nullopt, std::nullopt};
}

namespace detail {

template <class Make>
PointSet random_points(std::size_t n, unsigned threads, Make make) {
  if (n < 1) throw std::invalid_argument("sampler: n must be >= 1");
  std::vector<Rotation> pts(n);
  const auto blocks = fixed_blocks(n, 1024);
  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) pts[i] = make(i);
  });
  return PointSet{std::move(pts), "", std::nullopt, std::nullopt};
}

}  // namespace detail

/// A Haar-uniform rotation from three uniform variates on [0, 1).
inline Rotation haar_rotation(double u1, double u2, double u3) {
  return householder_rotation(u1, u2, 1.0 - u3, 1.0);
}

/// n iid Haar rotations; point i depends only on (seed, i).
inline PointSet uniform_sample(std::size_t n, std::uint64_t seed, unsigned threads = 1) {
  auto ps = detail::random_points(n, threads, [seed](std::size_t i) {
    RngStream rng(seed, StreamTag::uniform, i);
    const double u1 = rng.next_uniform(), u2 = rng.next_uniform(), u3 = rng.next_uniform();
    return haar_rotation(u1, u2, u3);
  });
  ps.sampler = "uniform";
  ps.seed = seed;
  return ps;
}

/// n iid Haar rotations by the Arvo construction with x3 uniform on (0, n].
inline PointSet arvo_sample(std::size_t n, std::uint64_t seed, unsigned threads = 1) {
  const double total = static_cast<double>(n);
  auto ps = detail::random_points(n, threads, [seed, total](std::size_t i) {
    RngStream rng(seed, StreamTag::arvo, i);
    const double x1 = rng.next_uniform(), x2 = rng.next_uniform();
    const double x3 = total * (1.0 - rng.next_uniform());
    return householder_rotation(x1, x2, std::min(std::max(x3, 0x1.0p-60), total), total);
  });
  ps.sampler = "arvo";
  ps.seed = seed;
  return ps;
}

class dpp_breakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class dpp_stall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// K_L between two rotations, using cos(omega / 2) = sqrt((Trace(a^-1 b) + 1) / 4).
inline double kernel_between(const KernelSpec& spec, const Rotation& a, const Rotation& b) {
  const double c = std::sqrt(std::clamp((relative_trace(a, b) + 1.0) / 4.0, 0.0, 1.0));
  return gegenbauer2(2 * spec.L, c);
}

/// State of the sequential projection-DPP sampler after k selections.
///
/// The conditioned kernel is K_k(x, y) = K(x, y) - sum_{i<k} e_i(x) e_i(y)
/// with the Gram-Schmidt functions
///   e_i(x) = (K(x, x_i) - sum_{j<i} e_j(x) e_j(x_i)) / sqrt(d_i),
///   d_i = K_{i}(x_i, x_i).
/// Only e_j(x_i) for the selected points are stored.
class DppState {
 public:
  static constexpr double kBreakdown = -1e-6;

  explicit DppState(KernelSpec spec) : spec_(spec) {}

  const KernelSpec& spec() const { return spec_; }
  std::size_t size() const { return selected_.size(); }
  const std::vector<Rotation>& selected() const { return selected_; }

  /// e_0(x), ..., e_{k-1}(x).
  std::vector<double> basis_values(const Rotation& x) const {
    const std::size_t k = selected_.size();
    std::vector<double> e(k);
    for (std::size_t i = 0; i < k; ++i) {
      double v = kernel_between(spec_, x, selected_[i]);
      const double* row = &coef_[i * (i + 1) / 2];  // e_j(x_i), j < i
      for (std::size_t j = 0; j < i; ++j) v -= e[j] * row[j];
      e[i] = v / root_d_[i];
    }
    return e;
  }

  double diagonal(const Rotation& x) const { return diagonal_from(basis_values(x)); }

  double conditioned(const Rotation& x, const Rotation& y) const {
    const auto ex = basis_values(x), ey = basis_values(y);
    double v = kernel_between(spec_, x, y);
    for (std::size_t i = 0; i < ex.size(); ++i) v -= ex[i] * ey[i];
    return v;
  }

  /// Appends x; throws dpp_breakdown if its conditioned diagonal is not
  /// safely positive.
  void select(const Rotation& x) { select_with(x, basis_values(x)); }

  void select_with(const Rotation& x, const std::vector<double>& e) {
    const double d = diagonal_from(e);
    if (!(d > 0.0)) {
      throw dpp_breakdown("dpp: conditioned diagonal " + std::to_string(d) +
                          " at selection " + std::to_string(size()));
    }
    coef_.insert(coef_.end(), e.begin(), e.end());
    coef_.push_back(std::sqrt(d));  // e_k(x_k)
    root_d_.push_back(std::sqrt(d));
    selected_.push_back(x);
  }

  double diagonal_from(const std::vector<double>& e) const {
    double s = 0.0;
    for (double v : e) s += v * v;
    const double d = static_cast<double>(spec_.N) - s;
    if (d < kBreakdown) {
      throw dpp_breakdown("dpp: conditioned diagonal " + std::to_string(d) +
                          " below tolerance after " + std::to_string(size()) + " points");
    }
    return d;
  }

 private:
  KernelSpec spec_;
  std::vector<Rotation> selected_;
  std::vector<double> coef_;    // packed lower triangle, row i holds e_0..e_i at x_i
  std::vector<double> root_d_;
};

inline constexpr std::uint64_t kDppMaxProposals = 1000000;

/// Exactly N points of the projection DPP with kernel K_L.
///
/// Each point is drawn by rejection from Haar measure: a proposal x is kept
/// with probability K_k(x, x) / N, valid because K_k(x, x) <= K(x, x) = N.
/// `run` selects an independent random substream for the same seed.
inline PointSet dpp_sample(const KernelSpec& spec, std::uint64_t seed, std::uint64_t run = 0) {
  RngStream rng(seed, StreamTag::dpp, run);
  DppState state(spec);
  const double n = static_cast<double>(spec.N);
  while (state.size() < spec.N) {
    bool accepted = false;
    for (std::uint64_t trial = 0; trial < kDppMaxProposals; ++trial) {
      const double u1 = rng.next_uniform(), u2 = rng.next_uniform(), u3 = rng.next_uniform();
      const Rotation x = haar_rotation(u1, u2, u3);
      const auto e = state.basis_values(x);
      const double d = state.diagonal_from(e);
      if (rng.next_uniform() * n < d) {
        state.select_with(x, e);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw dpp_stall("dpp: no acceptance within " + std::to_string(kDppMaxProposals) +
                      " proposals at point " + std::to_string(state.size()));
    }
  }
  PointSet ps{state.selected(), "dpp", seed, spec.L};
  return ps;
}

}  // namespace so3
