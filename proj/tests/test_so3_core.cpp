#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "so3/point_set.hpp"
#include "so3/quadrature.hpp"
#include "so3/random.hpp"
#include "so3/rotation.hpp"
#include "so3/sampling.hpp"
#include "so3/stats.hpp"

using namespace so3;

namespace {

Rotation random_rotation(RngStream& rng) {
  const double a = rng.next_uniform(), b = rng.next_uniform(), c = rng.next_uniform();
  return haar_rotation(a, b, c);
}

}  // namespace

TEST(FromEuler, ZeroAnglesGiveIdentity) {
  EXPECT_EQ(from_euler({0, 0, 0}), Rotation::identity());
}

TEST(FromEuler, QuarterTurnAboutZ) {
  const auto r = from_euler({pi / 2, 0, 0});
  const double expected[3][3] = {{0, -1, 0}, {1, 0, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(r(i, j), expected[i][j], 1e-15);
  }
}

TEST(FromEuler, BottomRightEntryIsCosTheta) {
  const auto r = from_euler({pi / 3, pi / 4, pi / 6});
  EXPECT_NEAR(r(2, 2), std::cos(pi / 4), 1e-15);
  EXPECT_NEAR(r(2, 2), 0.70710678, 1e-8);
}

TEST(FromEuler, RejectsOutOfRangeAngles) {
  EXPECT_THROW(EulerAngles(2 * pi, 0, 0), std::invalid_argument);
  EXPECT_THROW(EulerAngles(0, -0.1, 0), std::invalid_argument);
  EXPECT_THROW(EulerAngles(0, 0, -1e-9), std::invalid_argument);
}

TEST(RotationType, RejectsNonOrthogonalMatrices) {
  EXPECT_THROW(Rotation::from_entries({1, 0, 0, 0, 1, 0, 0, 0, -1}), invalid_rotation);
  EXPECT_THROW(Rotation::from_entries({1 + 1e-9, 0, 0, 0, 1, 0, 0, 0, 1}), invalid_rotation);
  EXPECT_FALSE(Rotation::try_from_entries({NAN, 0, 0, 0, 1, 0, 0, 0, 1}));
}

TEST(RotationType, NearestRestoresDriftedMatrix) {
  auto e = rotation_z(0.4).entries();
  for (auto& v : e) v *= 1.0 + 1e-7;
  e[1] += 3e-8;
  ASSERT_FALSE(Rotation::try_from_entries(e));
  const auto r = Rotation::nearest(e);
  EXPECT_LE(Rotation::orthogonality_error(r.entries()), 1e-14);
  EXPECT_LT(rotation_angle(r, rotation_z(0.4)), 1e-6);
}

TEST(RotationAngle, Examples) {
  EXPECT_EQ(rotation_angle(Rotation::identity(), Rotation::identity()), 0.0);
  EXPECT_NEAR(rotation_angle(Rotation::identity(), rotation_z(pi)), pi, 1e-12);
  EXPECT_NEAR(rotation_angle(Rotation::identity(), rotation_z(pi / 2)), pi / 2, 1e-15);
}

TEST(RotationAngle, AccurateNearIdentity) {
  for (double w : {1e-3, 1e-6, 1e-9}) {
    EXPECT_NEAR(rotation_angle(rotation_x(w)), w, 1e-14 * w);
  }
}

TEST(RotationAngle, MetricAxiomsOnRandomTriples) {
  RngStream rng(11, StreamTag::monte_carlo);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_rotation(rng), b = random_rotation(rng), c = random_rotation(rng);
    const auto g = random_rotation(rng);
    EXPECT_EQ(rotation_angle(a, b), rotation_angle(b, a));
    EXPECT_LE(rotation_angle(a, c), rotation_angle(a, b) + rotation_angle(b, c) + 1e-12);
    EXPECT_NEAR(rotation_angle(g * a, g * b), rotation_angle(a, b), 1e-12);
    EXPECT_NEAR(rotation_angle(a * g, b * g), rotation_angle(a, b), 1e-12);
    EXPECT_GT(rotation_angle(a, b), 0.0);
  }
}

TEST(FrobeniusDistance, Examples) {
  EXPECT_EQ(frobenius_distance(Rotation::identity(), Rotation::identity()), 0.0);
  EXPECT_NEAR(frobenius_distance(Rotation::identity(), rotation_z(pi)), 2 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(frobenius_distance(Rotation::identity(), rotation_z(pi / 2)), 2.0, 1e-15);
  EXPECT_NEAR(std::sqrt(8.0) * std::sin(pi / 4), 2.0, 1e-15);
}

TEST(FrobeniusDistance, MatchesHalfAngleSineOnRandomPairs) {
  RngStream rng(12, StreamTag::monte_carlo);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_rotation(rng), b = random_rotation(rng);
    worst = std::max(worst, std::abs(frobenius_distance(a, b) -
                                     std::sqrt(8.0) * std::sin(rotation_angle(a, b) / 2)));
  }
  EXPECT_LE(worst, 1e-10);
}

TEST(UniformSample, MeanTraceIsZero) {
  const auto ps = uniform_sample(1000, 5);
  double s = 0.0;
  for (const auto& r : ps.points) s += r.trace();
  EXPECT_LT(std::abs(s / 1000), 4.0 / std::sqrt(1000.0));
}

TEST(UniformSample, DeterministicForFixedSeed) {
  EXPECT_EQ(uniform_sample(1, 42).points[0], uniform_sample(1, 42).points[0]);
  EXPECT_NE(uniform_sample(1, 42).points[0], uniform_sample(1, 43).points[0]);
}

TEST(UniformSample, BallFractionAtQuarterTurn) {
  const auto ps = uniform_sample(10000, 9);
  std::size_t inside = 0;
  for (const auto& r : ps.points) inside += rotation_angle(r) < pi / 2;
  EXPECT_NEAR(inside / 10000.0, (pi / 2 - 1) / pi, 0.02);
}

TEST(UniformSample, AngleDistributionPassesKs) {
  const auto ps = uniform_sample(100000, 3);
  std::vector<double> w;
  for (const auto& r : ps.points) w.push_back(rotation_angle(r));
  const auto ks = ks_test(w, [](double t) { return t <= 0 ? 0.0 : t >= pi ? 1.0 : ball_volume(t); });
  EXPECT_GT(ks.p_value, 1e-3) << "D = " << ks.statistic;
}

TEST(UniformSample, PointsAreValidRotations) {
  for (const auto& r : uniform_sample(5000, 1).points) {
    EXPECT_LE(Rotation::orthogonality_error(r.entries()), 1e-12);
  }
}

TEST(RadialIntegral, Examples) {
  EXPECT_NEAR(radial_integral([](double) { return 1.0; }), 1.0, 1e-14);
  EXPECT_NEAR(radial_integral([](double t) { return std::cos(t); }), -0.5, 1e-14);
  EXPECT_NEAR(radial_integral(RadialFunction{[](double t) { return (pi - t) / std::tan(t / 2) - 1; }, true}),
              0.0, 1e-10);
  // Haar mean of Trace = 1 + 2 cos t.
  EXPECT_NEAR(radial_integral([](double t) { return 1 + 2 * std::cos(t); }), 0.0, 1e-14);
}

TEST(RadialIntegral, UndeclaredSingularityIsRejected) {
  EXPECT_THROW(radial_integral(RadialFunction{[](double t) { return 1 / t; }, false}), std::domain_error);
}

TEST(Quadrature, ReportsNonConvergence) {
  EXPECT_THROW(integrate([](double x) { return x > 0.5 ? 1.0 / (x - 0.5) : 0.0; }, 0.0, 1.0,
                         {1e-12, 0.0, 8}),
               convergence_error);
}

TEST(Quadrature, SmoothIntegralsToTolerance) {
  EXPECT_NEAR(integrate([](double x) { return std::exp(x); }, 0, 1).value, std::exp(1.0) - 1, 1e-14);
  EXPECT_NEAR(integrate([](double x) { return std::sqrt(x); }, 0, 1).value, 2.0 / 3.0, 1e-10);
}

TEST(BallVolume, Examples) {
  EXPECT_NEAR(ball_volume(pi), 1.0, 1e-15);
  EXPECT_NEAR(ball_volume(pi / 2), 0.1816901, 1e-7);
  EXPECT_NEAR(ball_volume(pi / 2), (pi / 2 - 1) / pi, 1e-16);
  for (double e : {1e-1, 1e-2, 1e-3, 1e-5}) {
    EXPECT_NEAR(ball_volume(e) / (e * e * e), 1 / (6 * pi), 0.01 * e * e + 1e-15);
  }
}

TEST(BallVolume, MatchesRadialIntegralOfIndicator) {
  for (double e : {0.01, 0.3, 1.0, 2.5}) {
    const double q = 2 / pi * integrate([](double t) { return std::sin(t / 2) * std::sin(t / 2); }, 0, e).value;
    EXPECT_NEAR(ball_volume(e), q, 1e-14);
  }
  EXPECT_THROW(ball_volume(0.0), std::domain_error);
}

TEST(PointSetFile, CsvRoundTripIsExact) {
  auto ps = uniform_sample(50, 8);
  std::stringstream ss;
  write_csv(ss, ps);
  const auto back = read_csv(ss);
  ASSERT_EQ(back.size(), ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) EXPECT_EQ(back[i], ps[i]);
}

TEST(PointSetFile, RejectsInvalidRowsUnlessAskedToProject) {
  const std::string text = std::string(kCsvHeader) + "\n0,1.000001,0,0,0,1,0,0,0,1\n";
  std::istringstream a(text);
  EXPECT_THROW(read_csv(a), invalid_rotation);
  std::istringstream b(text);
  const auto ps = read_csv(b, true);
  EXPECT_EQ(ps[0], Rotation::identity());
}

TEST(PointSetFile, RejectsMalformedInput) {
  std::istringstream bad_header("a,b\n");
  EXPECT_THROW(read_csv(bad_header), std::runtime_error);
  std::istringstream short_row(std::string(kCsvHeader) + "\n0,1,0\n");
  EXPECT_THROW(read_csv(short_row), std::runtime_error);
}
