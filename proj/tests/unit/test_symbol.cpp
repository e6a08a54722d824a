#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <string>

#include "mqcardinal/errors.hpp"
#include "mqcardinal/symbol.hpp"
#include "oracles.hpp"

namespace {

using mqc::MultiquadricParams;
using oracle::kPi;

MultiquadricParams mq(double alpha, double c, int d = 1) { return MultiquadricParams::make(alpha, c, d); }

TEST(Params, NaturalExponentsRejected) {
  for (double a : {0.0, 1.0, 2.0, 7.0}) {
    try {
      (void)mq(a, 1.0);
      FAIL() << "alpha=" << a << " accepted";
    } catch (const mqc::ValidationError& e) {
      EXPECT_NE(std::string(e.what()).find("alpha in N0 excluded"), std::string::npos);
    }
  }
}

TEST(Params, InvalidShapeAndDimension) {
  EXPECT_THROW(mq(0.5, 0.0), mqc::ValidationError);
  EXPECT_THROW(mq(0.5, -1.0), mqc::ValidationError);
  EXPECT_THROW(mq(0.5, 1.0, 0), mqc::ValidationError);
  EXPECT_THROW(mq(std::nan(""), 1.0), mqc::ValidationError);
}

TEST(Params, Classification) {
  EXPECT_TRUE(mq(0.5, 1).operator_valid());
  EXPECT_TRUE(mq(2.5, 1).operator_valid());
  EXPECT_TRUE(mq(-1.0, 1).operator_valid());
  EXPECT_TRUE(mq(-2.5, 1).operator_valid());
  EXPECT_FALSE(mq(-0.5, 1).operator_valid());
  EXPECT_FALSE(mq(0.25, 1).operator_valid());
  EXPECT_FALSE(mq(-1.25, 1).operator_valid());
  EXPECT_FALSE(mq(-1.5, 1).operator_valid());
  EXPECT_TRUE(mq(-1.0, 1).poisson());
  EXPECT_FALSE(mq(-1.0, 1, 2).poisson());
  EXPECT_TRUE(mq(0.3, 1).within_decay_theorems());
  EXPECT_FALSE(mq(-0.5, 1).within_decay_theorems());
}

TEST(Periodization, DefaultsAndAutoRaise) {
  EXPECT_EQ(mqc::PeriodizationSpec::default_J(1.0), std::max(4, static_cast<int>(std::ceil(1 + 28 / (2 * kPi)))));
  const auto s = mqc::PeriodizationSpec{}.resolved(0.1);
  EXPECT_LE(std::exp(-2 * kPi * 0.1 * (s.J - 1)), 1e-12);
  mqc::PeriodizationSpec tight{2, 1e-12};
  EXPECT_LE(std::exp(-2 * kPi * 1.0 * (tight.resolved(1.0).J - 1)), 1e-12);
  EXPECT_THROW((mqc::PeriodizationSpec{-1, 1e-12}.validate()), mqc::ValidationError);
  EXPECT_THROW((mqc::PeriodizationSpec{4, 0.0}.validate()), mqc::ValidationError);
}

TEST(Phi, Examples) {
  EXPECT_DOUBLE_EQ(mqc::phi(mq(0.5, 1.0), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(mqc::phi(mq(-1.0, 2.0), 0.0), 0.25);
  const std::array<double, 2> x{3.0, 4.0};
  EXPECT_NEAR(mqc::phi(mq(0.5, 3.0, 2), x), std::sqrt(34.0), 1e-14);
}

TEST(PhiHat, PoissonIsExponential) {
  const auto p = mq(-1.0, 1.0);
  EXPECT_NEAR(mqc::log_phi_hat(p, 2.0).log_abs - mqc::log_phi_hat(p, 1.0).log_abs, -1.0, 1e-13);
}

TEST(PhiHat, LaplaceRouteAgrees) {
  for (double alpha : {0.5, 2.5, -2.5, -1.0, 0.3, -0.3}) {
    for (double c : {1.0, 5.0}) {
      const auto p = mq(alpha, c);
      for (double r : {0.3, 1.0, 2.7}) {
        const double bessel = mqc::log_phi_hat(p, r).value();
        EXPECT_NEAR(mqc::laplace_route_phi_hat(p, r) / bessel, 1.0, 1e-8) << alpha << " " << c << " " << r;
      }
    }
  }
}

TEST(PhiHat, ExponentialDecayBetweenRadii) {
  const auto p = mq(0.5, 1.0);
  EXPECT_LE(mqc::log_phi_hat(p, 3.0).log_abs, mqc::log_phi_hat(p, 1.0).log_abs - 2.0);
}

TEST(PhiHat, SignIsConstant) {
  for (double alpha : {0.5, 1.5, -0.5, -2.5}) {
    const auto p = mq(alpha, 1.0);
    const int s = mqc::log_phi_hat(p, 0.01).sign;
    for (double r = 0.05; r < 40; r *= 1.3) EXPECT_EQ(mqc::log_phi_hat(p, r).sign, s);
  }
}

TEST(PhiHat, DomainErrors) {
  EXPECT_THROW(mqc::log_phi_hat(mq(0.5, 1.0), 0.0), mqc::DomainError);
  EXPECT_THROW(mqc::log_phi_hat(mq(0.5, 1.0), -1.0), mqc::DomainError);
  EXPECT_THROW(mqc::log_phi_hat_origin(mq(0.5, 1.0)), mqc::DomainError);
  EXPECT_NO_THROW(mqc::log_phi_hat_origin(mq(-1.0, 1.0)));
}

TEST(PeriodizedSymbol, Periodic) {
  const auto p = mq(0.5, 1.0);
  for (double xi : {0.1, 1.3, -2.9}) {
    const double a = mqc::periodized_symbol_log(p, xi).log_abs;
    const double b = mqc::periodized_symbol_log(p, xi + 2 * kPi).log_abs;
    EXPECT_NEAR(a, b, 1e-12);
  }
}

TEST(PeriodizedSymbol, PoissonGeometricSeries) {
  const auto p = mq(-1.0, 1.0);
  const double origin = mqc::log_phi_hat_origin(p).value();
  double geometric = 0.0;
  for (int j = 1; j <= 10; ++j) geometric += std::exp(-2 * kPi * j);
  const double expected = origin * (1.0 + 2.0 * geometric);
  const double got = mqc::periodized_symbol_log(p, 0.0, {10, 1e-12}).value();
  EXPECT_NEAR(got / expected, 1.0, 1e-13);
}

TEST(PeriodizedSymbol, TruncationStable) {
  const auto p = mq(0.5, 1.0);
  for (double xi : {0.2, 1.5, 3.0}) {
    const double a = mqc::periodized_symbol_log(p, xi, {4, 1e-12}).log_abs;
    const double b = mqc::periodized_symbol_log(p, xi, {12, 1e-12}).log_abs;
    EXPECT_LT(std::abs(a - b), std::exp(-2 * kPi * 3.0));
  }
}

TEST(Lhat, LatticeValues) {
  for (double alpha : {0.5, 2.5, -0.3}) {
    const auto p = mq(alpha, 1.0);
    EXPECT_DOUBLE_EQ(mqc::lhat(p, 0.0), 1.0);
    for (int k : {-2, 1, 3}) EXPECT_NEAR(mqc::lhat(p, 2 * kPi * k), 0.0, 1e-12);
  }
}

TEST(Lhat, PoissonAtOrigin) { EXPECT_NEAR(mqc::lhat(mq(-1.0, 1.0), 0.0), 0.9962721, 1e-6); }

TEST(Lhat, ApproachesOneInsideAsShapeGrows) {
  const double at1 = mqc::lhat(mq(0.5, 1.0), 1.0);
  const double at10 = mqc::lhat(mq(0.5, 10.0), 1.0);
  const double at20 = mqc::lhat(mq(0.5, 20.0), 1.0);
  EXPECT_GT(at10, at1);
  EXPECT_GT(at20, 1.0 - 1e-3);
}

TEST(Lhat, PoissonClosedFormAgrees) {
  const auto p = mq(-1.0, 1.0);
  for (double xi : {0.0, 0.5, 2.0, kPi, 2 * kPi, 7.5, -4.0}) {
    EXPECT_NEAR(mqc::lhat(p, xi), mqc::lhat_poisson_closed(1.0, xi), 1e-10) << xi;
    EXPECT_NEAR(mqc::lhat_poisson_closed(1.0, xi), oracle::poisson_lhat(1.0, xi), 1e-14) << xi;
    EXPECT_DOUBLE_EQ(mqc::lhat_poisson_closed(1.0, xi), mqc::lhat_poisson_closed(1.0, -xi));
  }
}

TEST(Lhat, RangeOnDenseGrid) {
  for (double alpha : {0.5, -1.0, -2.5, -0.5}) {
    const auto p = mq(alpha, 2.0);
    for (int i = 0; i < 10000; ++i) {
      const double xi = -4 * kPi + 8 * kPi * i / 9999.0;
      const double v = mqc::lhat(p, xi);
      ASSERT_GE(v, 0.0) << alpha << " " << xi;
      ASSERT_LE(v, 1.0) << alpha << " " << xi;
    }
  }
}

TEST(Lhat, PartitionIdentity) {
  for (double alpha : {0.5, -1.0, -2.5}) {
    const auto p = mq(alpha, 1.0);
    const auto s = mqc::PeriodizationSpec{}.resolved(1.0);
    for (double xi = -kPi + 0.01; xi < kPi; xi += 0.137) {
      double sum = 0.0;
      for (int k = -s.J; k <= s.J; ++k) sum += mqc::lhat(p, xi + 2 * kPi * k, s);
      EXPECT_NEAR(sum, 1.0, 2 * s.tail_tol + 1e-14) << alpha << " " << xi;
    }
  }
}

TEST(Lhat, SquareSumAtMostOne) {
  for (double alpha : {0.5, 2.5, -1.0, -2.5}) {
    const auto p = mq(alpha, 1.0);
    for (double xi = -kPi; xi <= kPi; xi += 0.01) EXPECT_LE(mqc::lhat_square_sum(p, xi), 1.0 + 1e-8);
  }
}

TEST(Lhat, ExponentialDominanceOutsideBand) {
  for (double alpha : {0.5, 2.5}) {
    for (double c : {1.0, 3.0}) {
      const auto p = mq(alpha, c);
      for (double xi = kPi + 0.05; xi < 3 * kPi; xi += 0.1) {
        const double shifted = std::abs(xi - 2 * kPi * std::round(xi / (2 * kPi)));
        EXPECT_LE(mqc::lhat(p, xi), std::exp(-c * (xi - shifted)) * (1 + 1e-12)) << alpha << " " << xi;
      }
    }
  }
}

TEST(Lhat, EvenAndPermutationInvariant) {
  const auto p1 = mq(0.5, 1.0);
  for (double xi : {0.3, 2.0, 5.5}) EXPECT_NEAR(mqc::lhat(p1, xi), mqc::lhat(p1, -xi), 1e-15);
  const auto p2 = mq(-1.5, 1.0, 2);
  const std::array<double, 2> a{0.7, -1.9};
  const std::array<double, 2> b{-1.9, 0.7};
  const std::array<double, 2> c{-0.7, 1.9};
  EXPECT_NEAR(mqc::lhat(p2, a), mqc::lhat(p2, b), 1e-15);
  EXPECT_NEAR(mqc::lhat(p2, a), mqc::lhat(p2, c), 1e-15);
}

TEST(LhatDerivative, OddDerivativeVanishesAtOrigin) {
  const auto p = mq(0.5, 1.0);
  const auto d = mqc::lhat_derivative(mq(2.5, 1.0), 1, 0.0, mqc::default_derivative_step(p));
  EXPECT_NEAR(d.value, 0.0, 1e-8);
}

TEST(LhatDerivative, PoissonMatchesAnalyticDerivative) {
  const auto p = mq(-1.0, 1.0);
  const auto d = mqc::lhat_derivative(p, 1, 1.0, mqc::default_derivative_step(p));
  EXPECT_NEAR(d.value, oracle::poisson_lhat_derivative(1.0, 1.0), 1e-6);
}

TEST(LhatDerivative, DecaysInShapeAtInteriorPoint) {
  const auto p1 = mq(0.5, 1.0);
  const auto p10 = mq(0.5, 10.0);
  const double v1 = mqc::lhat_derivative(p1, 1, kPi / 2, mqc::default_derivative_step(p1)).value;
  const double v10 = mqc::lhat_derivative(p10, 1, kPi / 2, mqc::default_derivative_step(p10)).value;
  EXPECT_LT(std::abs(v10), std::abs(v1));
}

TEST(LhatDerivative, Errors) {
  const auto p = mq(0.5, 1.0);
  EXPECT_THROW(mqc::lhat_derivative(p, 5, 1.0, 0.1), mqc::ValidationError);
  EXPECT_THROW(mqc::lhat_derivative(p, 0, 1.0, 0.1), mqc::ValidationError);
  EXPECT_THROW(mqc::lhat_derivative(p, 2, 2 * kPi + 0.01, 0.1), mqc::ValidationError);
}

}  // namespace
