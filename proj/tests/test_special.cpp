#include <gtest/gtest.h>

#include <boost/math/special_functions/digamma.hpp>
#include <cmath>

#include "so3/quadrature.hpp"
#include "so3/special.hpp"

using namespace so3;

TEST(ChebyshevU, Examples) {
  for (double x : {-1.0, -0.3, 0.0, 0.8, 1.0}) EXPECT_EQ(chebyshev_u(0, x), 1.0);
  EXPECT_DOUBLE_EQ(chebyshev_u(2, 0.5), 0.0);
  EXPECT_NEAR(chebyshev_u(2, std::cos(pi / 6)), 2.0, 1e-15);
}

TEST(ChebyshevU, LowDegreeClosedForms) {
  for (double x : {-0.9, -0.2, 0.4, 0.75}) {
    EXPECT_EQ(chebyshev_u(1, x), 2 * x);
    EXPECT_NEAR(chebyshev_u(2, x), 4 * x * x - 1, 1e-15);
    EXPECT_NEAR(chebyshev_u(3, x), 8 * x * x * x - 4 * x, 1e-15);
  }
}

TEST(ChebyshevT, Examples) {
  for (unsigned n = 0; n <= 50; ++n) EXPECT_EQ(chebyshev_t(n, 1.0), 1.0) << n;
  EXPECT_EQ(chebyshev_t(1, 0.3), 0.3);
  EXPECT_NEAR(2 * chebyshev_t(3, 0.7), chebyshev_u(3, 0.7) - chebyshev_u(1, 0.7), 1e-15);
  for (double x : {-0.9, 0.1, 0.6}) {
    EXPECT_NEAR(chebyshev_t(2, x), 2 * x * x - 1, 1e-15);
    EXPECT_NEAR(chebyshev_t(3, x), 4 * x * x * x - 3 * x, 1e-15);
  }
}

TEST(ChebyshevT, OddRecurrenceIdentity) {
  double worst = 0.0;
  for (unsigned l = 1; l <= 25; ++l) {
    for (int i = 0; i < 100; ++i) {
      const double x = -1.0 + 2.0 * i / 99.0;
      worst = std::max(worst, std::abs(2 * chebyshev_t(2 * l + 1, x) -
                                       (chebyshev_u(2 * l + 1, x) - chebyshev_u(2 * l - 1, x))));
    }
  }
  EXPECT_LE(worst, 1e-11);
}

TEST(Gegenbauer2, Examples) {
  EXPECT_EQ(gegenbauer2(2, 1.0), 10.0);
  EXPECT_EQ(binomial(5, 3), 10u);
  for (double x : {-1.0, 0.0, 0.5}) EXPECT_EQ(gegenbauer2(0, x), 1.0);
  EXPECT_NEAR(gegenbauer2(2, 0.0), -2.0, 1e-15);
  for (double x : {-0.8, 0.3, 0.9}) {
    EXPECT_NEAR(gegenbauer2(1, x), 4 * x, 1e-15);
    EXPECT_NEAR(gegenbauer2(2, x), 12 * x * x - 2, 1e-14);
    EXPECT_NEAR(gegenbauer2(3, x), 32 * x * x * x - 12 * x, 1e-14);
  }
}

TEST(Gegenbauer2, ValueAtOneIsBinomialExactly) {
  for (unsigned L = 0; L <= 20; ++L) {
    EXPECT_EQ(gegenbauer2(2 * L, 1.0), static_cast<double>(binomial(2 * L + 3, 3))) << L;
  }
  for (unsigned n = 0; n <= 40; ++n) {
    EXPECT_EQ(gegenbauer(n, 3, 1.0), static_cast<double>(binomial(n + 5, n))) << n;
  }
}

TEST(Gegenbauer2, DerivativeOfChebyshevU) {
  const double h = 1e-5;
  for (unsigned L = 0; L <= 10; ++L) {
    for (int i = 0; i <= 40; ++i) {
      const double x = -0.975 + 1.95 * i / 40.0;
      const double d = (chebyshev_u(2 * L + 1, x + h) - chebyshev_u(2 * L + 1, x - h)) / (2 * h);
      EXPECT_NEAR(d, 2 * gegenbauer2(2 * L, x), 1e-4 * std::max(1.0, std::abs(d))) << L << " " << x;
    }
  }
}

TEST(Gegenbauer, IndexOneIsChebyshevU) {
  for (unsigned n = 0; n <= 30; ++n) {
    for (double x : {-0.7, 0.2, 0.95}) EXPECT_NEAR(gegenbauer(n, 1, x), chebyshev_u(n, x), 1e-11);
  }
  EXPECT_THROW(gegenbauer(3, 0, 0.5), std::domain_error);
}

TEST(DigammaHalf, Examples) {
  EXPECT_NEAR(digamma_half(0), -1.9635100, 1e-7);
  EXPECT_NEAR(digamma_half(0), -euler_gamma - std::log(4.0), 1e-15);
  EXPECT_NEAR(digamma_half(1), 2 - euler_gamma - std::log(4.0), 1e-15);
  EXPECT_NEAR(digamma_half(2), 2 + 2.0 / 3 - euler_gamma - std::log(4.0), 1e-15);
}

TEST(DigammaHalf, MatchesBoostDigamma) {
  for (unsigned n = 0; n <= 200; ++n) {
    EXPECT_NEAR(digamma_half(n), boost::math::digamma(n + 0.5), 1e-13) << n;
  }
}

TEST(EulerGamma, MatchesBoostConstant) {
  EXPECT_DOUBLE_EQ(euler_gamma, -boost::math::digamma(1.0));
}

TEST(HarmonicNumbers, DigammaRelation) {
  for (unsigned n = 1; n <= 100; ++n) {
    EXPECT_NEAR(harmonic(n), boost::math::digamma(n + 1.0) + euler_gamma, 1e-13);
  }
}

TEST(UsqIntegral, Examples) {
  EXPECT_EQ(u_sq_integral(0), 1.0);
  EXPECT_NEAR(u_sq_integral(1), 4.0 / 3, 1e-15);
  EXPECT_NEAR(u_sq_integral(2), 23.0 / 15, 1e-15);
  const double q = integrate([](double x) { return std::pow(chebyshev_u(2, x), 2); }, 0, 1).value;
  EXPECT_NEAR(q, 23.0 / 15, 1e-12);
}

TEST(UsqIntegral, DigammaForm) {
  for (unsigned n = 0; n <= 60; ++n) {
    EXPECT_NEAR(u_sq_integral(n), 0.5 * (boost::math::digamma(n + 1.5) + euler_gamma + std::log(4.0)), 1e-13);
  }
}

TEST(CosineSquare, Examples) {
  const CosineSquareExpansion ex(2, 2);
  EXPECT_EQ(ex(0, 0), 9.0);
  const CosineSquareExpansion six(6, 2);
  const double g = gegenbauer2(6, std::cos(0.7));
  EXPECT_NEAR(g * g, six.evaluate_square(0.7), 1e-9);
}

TEST(CosineSquare, DegreeZeroIsOne) {
  for (unsigned lam = 1; lam <= 3; ++lam) {
    const CosineSquareExpansion ex(0, lam);
    EXPECT_EQ(ex(0, 0), 1.0);
    EXPECT_EQ(ex.evaluate_square(1.1), 1.0);
  }
}

TEST(CosineSquare, LambdaTwoClosedFormMatchesGeneralCoefficients) {
  // Reference: a_j = binom(lambda + j - 1, j), c = a_j a_{n-j} a_k a_{n-k}.
  for (unsigned n = 0; n <= 20; ++n) {
    const CosineSquareExpansion ex(n, 2);
    for (unsigned j = 0; j <= n; ++j) {
      for (unsigned k = 0; k <= n; ++k) {
        const double ref = double(binomial(j + 1, j)) * double(binomial(n - j + 1, n - j)) *
                           double(binomial(k + 1, k)) * double(binomial(n - k + 1, n - k));
        EXPECT_EQ(ex(j, k), ref);
      }
    }
  }
}

TEST(CosineSquare, PermutationSymmetries) {
  for (unsigned lam = 1; lam <= 3; ++lam) {
    for (unsigned n = 0; n <= 20; ++n) {
      const CosineSquareExpansion ex(n, lam);
      for (unsigned j = 0; j <= n; ++j) {
        for (unsigned k = 0; k <= n; ++k) {
          EXPECT_EQ(ex(j, k), ex(k, j));
          if (j >= k) {
            EXPECT_EQ(ex(j, k), ex(n - j, k));
          }
          if (j + k <= n) {
            const unsigned r = n - j - k;
            EXPECT_EQ(ex(j, k), ex(j + r, k + r)) << lam << " " << n << " " << j << " " << k;
          }
        }
      }
    }
  }
}

TEST(CosineSquare, ExpansionIdentityAcrossDegreesAndIndices) {
  for (unsigned lam = 1; lam <= 3; ++lam) {
    for (unsigned n = 0; n <= 20; ++n) {
      const CosineSquareExpansion ex(n, lam);
      const double scale = ex.evaluate_square(0.0);
      for (double t : {0.05, 0.7, 1.6, 3.0}) {
        const double g = gegenbauer(n, lam, std::cos(t));
        EXPECT_NEAR(g * g, ex.evaluate_square(t), 1e-12 * scale);
      }
    }
  }
}

TEST(CosineSquare, LogSpacePathAgreesWithDirectProducts) {
  const unsigned n = 70;
  const CosineSquareExpansion ex(n, 3);
  for (unsigned j : {0u, 10u, 35u, 70u}) {
    for (unsigned k : {0u, 20u, 69u}) {
      const double ref = double(binomial(j + 2, j)) * double(binomial(n - j + 2, n - j)) *
                         double(binomial(k + 2, k)) * double(binomial(n - k + 2, n - k));
      EXPECT_NEAR(ex(j, k) / ref, 1.0, 1e-12);
    }
  }
}

TEST(GegenbauerIdentity, Examples) {
  const auto two = gegenbauer_identity_check(2);
  EXPECT_NEAR(two.lhs, -2.0 / 3, 1e-14);
  EXPECT_NEAR(two.rhs, -2.0 / 3, 1e-14);
  const auto three = gegenbauer_identity_check(3);
  EXPECT_NEAR(three.lhs, -32.0 / 15, 1e-13);
  EXPECT_NEAR(three.lhs, three.rhs, 1e-10);
  const auto forty = gegenbauer_identity_check(40);
  EXPECT_LT(std::abs(forty.lhs - forty.rhs), 1e-8);
}

TEST(GegenbauerIdentity, AllDegreesUpToForty) {
  for (unsigned n = 2; n <= 40; ++n) {
    const auto s = gegenbauer_identity_check(n);
    EXPECT_NEAR(s.lhs, s.rhs, 1e-8) << n;
  }
  EXPECT_THROW(gegenbauer_identity_check(1), std::domain_error);
}

TEST(GegenbauerL2, Examples) {
  EXPECT_NEAR(gegenbauer_l2(2), 1.0, 1e-14);
  EXPECT_NEAR(gegenbauer_l2(3), 16.0 / 3, 1e-13);
  const double n = 42;
  const double ratio = gegenbauer_l2(42) / (n * n * n * n / 16);
  EXPECT_GT(ratio, 1.0);
  EXPECT_LT(ratio, 1.1);
}

TEST(GegenbauerL2, MatchesQuadratureUpToForty) {
  for (unsigned n = 2; n <= 40; ++n) {
    EXPECT_NEAR(gegenbauer_l2(n), gegenbauer_l2_quadrature(n), 1e-8) << n;
  }
}

TEST(GegenbauerWeightedNorm, ClosedFormRelative) {
  for (unsigned L = 0; L <= 10; ++L) {
    const double ref = gegenbauer_weighted_norm_closed(L);
    EXPECT_NEAR(gegenbauer_weighted_norm(L) / ref, 1.0, 1e-7) << L;
  }
}

TEST(GegenbauerWeightedNorm, DirectIntegralInAlgebraicVariable) {
  // Same integral in t. The sqrt endpoint behaviour needs deep bisection.
  for (unsigned L : {0u, 1u, 3u}) {
    const double direct = integrate([L](double t) {
                            const double c = gegenbauer2(2 * L, t);
                            return c * c * std::sqrt(1 - t) * std::pow(1 + t, 1.5);
                          }, -1.0, 1.0, {1e-9, 0.0, 100}).value;
    EXPECT_NEAR(direct / gegenbauer_weighted_norm_closed(L), 1.0, 1e-7) << L;
  }
}

TEST(DigammaAsymptotic, WeightedSumOrder) {
  // sum_{k=1}^{n} k^m psi(k + 1/2) against n^{m+1}/(m+1) psi(n) - n^{m+1}/(m+1)^2.
  for (unsigned m : {0u, 1u, 2u}) {
    double prev_rel = 1e300;
    for (unsigned n : {100u, 1000u, 10000u}) {
      double exact = 0.0;
      for (unsigned k = 1; k <= n; ++k) exact += std::pow(double(k), m) * digamma_half(k);
      const double p = std::pow(double(n), m + 1.0);
      const double approx = p / (m + 1) * boost::math::digamma(double(n)) - p / ((m + 1.0) * (m + 1.0));
      const double rel = std::abs(exact - approx) / std::abs(exact);
      EXPECT_LT(rel, 3.0 * std::log(double(n)) / n) << m << " " << n;
      EXPECT_LT(rel, prev_rel);
      prev_rel = rel;
    }
  }
}

TEST(BetaFunction, Examples) {
  EXPECT_NEAR(beta_fn(0.5, 0.5), pi, 1e-14);
  EXPECT_NEAR(beta_fn(1, 0.5), 2.0, 1e-14);
  EXPECT_NEAR(beta_fn(1, 1), 1.0, 1e-15);
  EXPECT_THROW(beta_fn(0, 1), std::domain_error);
}

TEST(BetaFunction, MatchesIntegral) {
  for (auto [a, b] : {std::pair{2.0, 3.0}, {1.5, 2.5}, {3.0, 0.5 + 1.0}}) {
    const double q = integrate([a = a, b = b](double t) { return std::pow(t, a - 1) * std::pow(1 - t, b - 1); }, 0, 1).value;
    EXPECT_NEAR(beta_fn(a, b), q, 1e-10);
  }
}
