#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "mqcardinal/errors.hpp"
#include "mqcardinal/fundamental.hpp"
#include "oracles.hpp"

namespace {

using mqc::GridSpec;
using mqc::MultiquadricParams;
using oracle::kPi;

MultiquadricParams mq(double alpha, double c, int d = 1) { return MultiquadricParams::make(alpha, c, d); }

const mqc::GridFunction& half_grid() {
  static const auto g = mqc::synthesize(mq(0.5, 1.0), GridSpec{32, 8, 1});
  return g;
}

TEST(GridSpec, Layout) {
  const GridSpec g{32, 8, 1};
  EXPECT_NO_THROW(g.validate());
  EXPECT_EQ(g.period(), 256);
  EXPECT_GE(g.samples_per_unit(), 2 * g.M + 1);
  EXPECT_EQ(g.points_per_axis() % 2, 0);
  EXPECT_NEAR(g.frequency_extent(), kPi * g.samples_per_unit(), 1e-12);
  EXPECT_THROW((GridSpec{0, 8, 1}.validate()), mqc::ValidationError);
  EXPECT_THROW((GridSpec{32, 0, 1}.validate()), mqc::ValidationError);
  EXPECT_THROW((GridSpec{32, 8, 0}.validate()), mqc::ValidationError);
}

TEST(GridSpec, ContainsRequiredIntegers) {
  const auto& L = half_grid();
  const long half = L.grid().period() / 2;
  EXPECT_LE(static_cast<double>(half), L.extent());
  EXPECT_NO_THROW((void)L.at_integer(half - 1));
  EXPECT_NO_THROW((void)L.at_integer(-half));
}

TEST(Synthesize, Cardinality) {
  const auto& L = half_grid();
  double defect = 0.0;
  for (long k = -20; k <= 20; ++k) defect = std::max(defect, std::abs(L.at_integer(k) - (k == 0 ? 1.0 : 0.0)));
  EXPECT_LT(defect, 1e-6);
}

TEST(Synthesize, MaximumIsAtOrigin) {
  const auto& L = half_grid();
  double top = 0.0;
  for (double v : L.values()) top = std::max(top, std::abs(v));
  EXPECT_NEAR(top, 1.0, 1e-6);
  EXPECT_NEAR(L.value_at(0.0), 1.0, 1e-6);
}

TEST(Synthesize, RealAndEven) {
  const auto& L = half_grid();
  EXPECT_LT(L.imag_residue(), 1e-10);
  const int n = L.points_per_axis();
  for (int m = 1; m < n / 2; m += 7) {
    const std::array<int, 1> a{n / 2 + m};
    const std::array<int, 1> b{n / 2 - m};
    EXPECT_NEAR(L.at_index(a), L.at_index(b), 1e-10);
  }
}

TEST(Synthesize, PoissonMatchesClosedFormSymbol) {
  const auto p = mq(-1.0, 1.0);
  const GridSpec g = GridSpec::automatic(p);
  const auto L = mqc::synthesize(p, g);
  const auto R = mqc::synthesize_from_symbol(
      p, g, [](std::span<const double> xi) { return oracle::poisson_lhat(1.0, xi[0]); });
  double diff = 0.0;
  for (std::size_t i = 0; i < L.values().size(); ++i) diff = std::max(diff, std::abs(L.values()[i] - R.values()[i]));
  EXPECT_LT(diff, 1e-8);
}

TEST(Synthesize, OversampleRefinementWithinBound) {
  const auto p = mq(0.5, 1.0);
  const auto& a = half_grid();
  const auto b = mqc::synthesize(p, GridSpec{32, 16, 1});
  const double tol = std::max(a.error_floor(), b.error_floor());
  for (long k = -20; k <= 20; ++k) EXPECT_LE(std::abs(a.at_integer(k) - b.at_integer(k)), tol) << k;
}

TEST(Synthesize, FrequencyExtentRefinementWithinBound) {
  const auto p = mq(0.5, 1.0);
  const auto& a = half_grid();
  const auto b = mqc::synthesize(p, GridSpec{64, 4, 1});
  const double tol = std::max(a.error_floor(), b.error_floor());
  for (long k = -20; k <= 20; ++k) EXPECT_LE(std::abs(a.at_integer(k) - b.at_integer(k)), tol) << k;
}

TEST(Synthesize, PartitionOfUnity) {
  const auto& L = half_grid();
  const int radius = static_cast<int>(L.interpolation_radius()) - 2;
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = i / 100.0;
    double s = 0.0;
    for (int j = -radius; j <= radius; ++j) s += L.value_at(x - j);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(Synthesize, TwoDimensionalCardinality) {
  const auto p = mq(-1.5, 1.0, 2);
  const auto L = mqc::synthesize(p, GridSpec{8, 8, 2});
  double defect = 0.0;
  for (int i = -5; i <= 5; ++i) {
    for (int j = -5; j <= 5; ++j) {
      const std::array<double, 2> x{static_cast<double>(i), static_cast<double>(j)};
      defect = std::max(defect, std::abs(L.value_at(x) - (i == 0 && j == 0 ? 1.0 : 0.0)));
    }
  }
  EXPECT_LT(defect, 1e-4);
  const std::array<double, 2> a{0.4, 1.3};
  const std::array<double, 2> b{1.3, -0.4};
  EXPECT_NEAR(L.value_at(a), L.value_at(b), 1e-10);
}

TEST(Synthesize, BudgetExceeded) {
  mqc::SynthesisOptions o;
  o.memory_budget = 1024;
  EXPECT_THROW(mqc::synthesize(mq(0.5, 1.0), GridSpec{32, 8, 1}, {}, o), mqc::BudgetError);
}

TEST(GridFunction, OutsideInterpolationRangeThrows) {
  const auto& L = half_grid();
  EXPECT_THROW((void)L.value_at(L.extent() + 1.0), mqc::DomainError);
}

TEST(EvaluateDirect, OriginIsOne) { EXPECT_NEAR(mqc::evaluate_direct(mq(0.5, 1.0), 0.0).value, 1.0, 1e-8); }

TEST(EvaluateDirect, VanishesAtOne) { EXPECT_NEAR(mqc::evaluate_direct(mq(0.5, 1.0), 1.0).value, 0.0, 1e-7); }

TEST(EvaluateDirect, AgreesWithGrid) {
  const auto& L = half_grid();
  for (double x : {0.5, 1.7, -3.25, 9.9}) {
    EXPECT_NEAR(mqc::evaluate_direct(L.params(), x).value, L.value_at(x), 1e-6) << x;
  }
}

TEST(EvaluateDirect, AgreesWithGridInTwoDimensions) {
  const auto p = mq(-1.5, 1.0, 2);
  const auto L = mqc::synthesize(p, GridSpec{8, 8, 2});
  const std::array<double, 2> x{0.5, 0.25};
  EXPECT_NEAR(mqc::evaluate_direct(p, x, {}, {1e-10, 1e-8, 4000}).value, L.value_at(x), 1e-5);
}

TEST(Coefficients, Even) {
  const auto c = mqc::coefficients(mq(0.5, 1.0), {}, 40);
  for (long j = 1; j <= 40; ++j) EXPECT_NEAR(c.at(j), c.at(-j), 1e-10) << j;
}

TEST(Coefficients, ReconstructReciprocalSymbol) {
  const auto p = mq(0.5, 1.0);
  const int half = 256;
  const auto c = mqc::coefficients(p, {}, half, half);
  const int n = 2 * half + 1;
  for (int m = 1; m < n; m += 17) {
    const double xi = 2 * kPi * m / n;
    const double ref = mqc::reciprocal_symbol(p, xi);
    EXPECT_NEAR(c.series(xi) / ref, 1.0, 1e-8) << xi;
  }
}

TEST(Coefficients, PoissonMatchesQuadratureOfClosedForm) {
  // The periodized Poisson transform is phi_hat(0) times a pair of geometric
  // series, so c_j is a one-dimensional cosine integral.
  const auto p = mq(-1.0, 1.0);
  const double scale = std::sqrt(2 * kPi) * mqc::log_phi_hat_origin(p).value();
  const auto c = mqc::coefficients(p, {}, 5);
  for (long j = 0; j <= 5; ++j) {
    auto f = [&](double xi) { return std::cos(j * xi) / (scale * oracle::poisson_period_sum(1.0, xi)); };
    const double ref = 2.0 * oracle::simpson(f, 0.0, kPi, 20000) / (2 * kPi);
    EXPECT_NEAR(c.at(j), ref, 1e-9) << j;
  }
}

TEST(Coefficients, PartialSumsApproachCardinality) {
  for (double alpha : {0.5, -1.0}) {
    const auto p = mq(alpha, 1.0);
    const auto c = mqc::coefficients(p, {}, 200);
    auto defect = [&](int n, long k) {
      double s = 0.0;
      for (long j = -n; j <= n; ++j) s += c.at(j) * mqc::phi(p, static_cast<double>(k - j));
      return std::abs(s - (k == 0 ? 1.0 : 0.0));
    };
    for (long k : {0L, 1L}) EXPECT_LT(defect(200, k), defect(50, k)) << alpha << " " << k;
  }
}

TEST(Coefficients, InvalidRequest) {
  EXPECT_THROW(mqc::coefficients(mq(0.5, 1.0), {}, 0), mqc::ValidationError);
  EXPECT_THROW(mqc::coefficients(mq(0.5, 1.0, 2), {}, 4), mqc::ValidationError);
}

}  // namespace
