#pragma once

// Rotation matrices, the rotation-angle metric and Haar ball volumes.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include "so3/constants.hpp"

namespace so3 {

class invalid_rotation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A 3x3 real orthogonal matrix with determinant one, stored row-major.
///
/// Instances are only created through checked factories, so every Rotation
/// in circulation satisfies |R^T R - I| <= 1e-12 entrywise and
/// |det R - 1| <= 1e-12. Use `Rotation::nearest` to re-orthonormalize a
/// matrix that has drifted; nothing is projected silently.
class Rotation {
 public:
  using Entries = std::array<double, 9>;
  static constexpr double kTolerance = 1e-12;

  Rotation() : m_{1, 0, 0, 0, 1, 0, 0, 0, 1} {}

  static Rotation identity() { return Rotation(); }

  /// Largest of the entrywise |R^T R - I| and |det R - 1|.
  static double orthogonality_error(const Entries& e) {
    double err = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += e[3 * k + i] * e[3 * k + j];
        err = std::max(err, std::abs(s - (i == j ? 1.0 : 0.0)));
      }
    }
    return std::max(err, std::abs(determinant(e) - 1.0));
  }

  static double determinant(const Entries& e) {
    return e[0] * (e[4] * e[8] - e[5] * e[7]) -
           e[1] * (e[3] * e[8] - e[5] * e[6]) +
           e[2] * (e[3] * e[7] - e[4] * e[6]);
  }

  static std::optional<Rotation> try_from_entries(const Entries& e,
                                                  double tol = kTolerance) {
    for (double v : e) {
      if (!std::isfinite(v)) return std::nullopt;
    }
    if (orthogonality_error(e) > tol) return std::nullopt;
    return Rotation(e);
  }

  static Rotation from_entries(const Entries& e, double tol = kTolerance) {
    if (auto r = try_from_entries(e, tol)) return *r;
    throw invalid_rotation("matrix is not in SO(3): orthogonality error " +
                           std::to_string(orthogonality_error(e)));
  }

  /// Orthogonal polar factor of `e` (the closest rotation in Frobenius
  /// norm), computed by the Newton iteration X <- (X + X^-T) / 2.
  static Rotation nearest(const Entries& e) {
    if (!(determinant(e) > 0.0)) {
      throw invalid_rotation("polar projection needs a positive determinant");
    }
    Entries x = e;
    for (int iter = 0; iter < 100; ++iter) {
      const double d = determinant(x);
      // Inverse transpose equals the cofactor matrix divided by det.
      Entries cof{x[4] * x[8] - x[5] * x[7], x[5] * x[6] - x[3] * x[8],
                  x[3] * x[7] - x[4] * x[6], x[2] * x[7] - x[1] * x[8],
                  x[0] * x[8] - x[2] * x[6], x[1] * x[6] - x[0] * x[7],
                  x[1] * x[5] - x[2] * x[4], x[2] * x[3] - x[0] * x[5],
                  x[0] * x[4] - x[1] * x[3]};
      double change = 0.0;
      for (std::size_t i = 0; i < 9; ++i) {
        const double next = 0.5 * (x[i] + cof[i] / d);
        change = std::max(change, std::abs(next - x[i]));
        x[i] = next;
      }
      if (change < 1e-15) break;
    }
    return from_entries(x);
  }

  double operator()(int row, int col) const { return m_[3 * row + col]; }
  const Entries& entries() const { return m_; }

  double trace() const { return m_[0] + m_[4] + m_[8]; }

  Rotation inverse() const {
    return Rotation(Entries{m_[0], m_[3], m_[6], m_[1], m_[4], m_[7], m_[2],
                            m_[5], m_[8]});
  }

  friend Rotation operator*(const Rotation& a, const Rotation& b) {
    Entries c{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
        c[3 * i + j] = s;
      }
    }
    return Rotation(c);
  }

  friend bool operator==(const Rotation&, const Rotation&) = default;

 private:
  explicit Rotation(const Entries& e) : m_(e) {}
  Entries m_;
};

/// Euler angles for R = s_z(phi1) s_x(theta) s_z(phi2).
class EulerAngles {
 public:
  EulerAngles(double phi1, double theta, double phi2)
      : phi1_(phi1), theta_(theta), phi2_(phi2) {
    const bool ok = phi1 >= 0.0 && phi1 < 2.0 * pi && theta >= 0.0 &&
                    theta <= pi && phi2 >= 0.0 && phi2 < 2.0 * pi;
    if (!ok) throw std::invalid_argument("Euler angles out of range");
  }

  double phi1() const { return phi1_; }
  double theta() const { return theta_; }
  double phi2() const { return phi2_; }

 private:
  double phi1_;
  double theta_;
  double phi2_;
};

inline Rotation rotation_z(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return Rotation::from_entries({c, -s, 0, s, c, 0, 0, 0, 1});
}

inline Rotation rotation_x(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return Rotation::from_entries({1, 0, 0, 0, c, -s, 0, s, c});
}

inline Rotation from_euler(const EulerAngles& a) {
  return rotation_z(a.phi1()) * rotation_x(a.theta()) * rotation_z(a.phi2());
}

/// Trace of a^{-1} b, summed in a fixed order so that it is bitwise
/// symmetric in (a, b).
inline double relative_trace(const Rotation& a, const Rotation& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  double s = 0.0;
  for (std::size_t i = 0; i < 9; ++i) s += x[i] * y[i];
  return s;
}

inline double frobenius_distance(const Rotation& a, const Rotation& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  double s = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

/// Rotation angle omega(a^{-1} b) = arccos((Trace(a^{-1} b) - 1) / 2), in
/// [0, pi].
///
/// The arccos argument is clamped to [-1, 1]. Close to the identity arccos
/// loses half the digits, so there the equivalent form
/// 2 asin(|a - b|_F / sqrt 8) is used instead.
inline double rotation_angle(const Rotation& a, const Rotation& b) {
  const double c = std::clamp((relative_trace(a, b) - 1.0) / 2.0, -1.0, 1.0);
  if (c < 0.9) return std::acos(c);
  const double half_sine = frobenius_distance(a, b) / std::sqrt(8.0);
  return 2.0 * std::asin(std::min(half_sine, 1.0));
}

inline double rotation_angle(const Rotation& r) {
  return rotation_angle(Rotation::identity(), r);
}

/// Haar measure of the ball B(1, eps) = {R : omega(R) < eps}, which is
/// (eps - sin eps) / pi. Uses the Taylor series for small eps, where the
/// direct difference cancels.
inline double ball_volume(double eps) {
  if (!(eps > 0.0 && eps <= pi)) {
    throw std::domain_error("ball radius must lie in (0, pi]");
  }
  if (eps < 0.05) {
    // eps - sin eps = eps^3/3! - eps^5/5! + eps^7/7! - ...
    const double e2 = eps * eps;
    double term = eps * e2 / 6.0;
    double sum = 0.0;
    for (int k = 1; k < 8; ++k) {
      sum += term;
      term *= -e2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return sum / pi;
  }
  return (eps - std::sin(eps)) / pi;
}

/// The householder construction M = -H R with H = I - 2 v v^T, where
///
///   v = (cos(2 pi x2) sqrt(x3), sin(2 pi x2) sqrt(x3), sqrt(n - x3)) / sqrt(n)
///   R = [[cos 2 pi x1, sin 2 pi x1, 0], [-sin 2 pi x1, cos 2 pi x1, 0], [0, 0, 1]].
///
/// With x1, x2 uniform on [0, 1) and x3 / n uniform on (0, 1] the result is
/// Haar distributed.
inline Rotation householder_rotation(double x1, double x2, double x3,
                                     double n_total) {
  if (!(x1 >= 0.0 && x1 < 1.0 && x2 >= 0.0 && x2 < 1.0 && n_total > 0.0 &&
        x3 > 0.0 && x3 <= n_total)) {
    throw std::domain_error("householder_rotation: inputs out of range");
  }
  const double root_n = std::sqrt(n_total);
  const double a2 = 2.0 * pi * x2;
  const double v[3] = {std::cos(a2) * std::sqrt(x3) / root_n,
                       std::sin(a2) * std::sqrt(x3) / root_n,
                       std::sqrt(n_total - x3) / root_n};
  const double a1 = 2.0 * pi * x1;
  const double c = std::cos(a1), s = std::sin(a1);
  const double r[9] = {c, s, 0, -s, c, 0, 0, 0, 1};

  Rotation::Entries m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double h = (i == k ? 1.0 : 0.0) - 2.0 * v[i] * v[k];
        acc += h * r[3 * k + j];
      }
      m[3 * i + j] = -acc;
    }
  }
  return Rotation::from_entries(m);
}

}  // namespace so3
