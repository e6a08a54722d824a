#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "mqcardinal/errors.hpp"
#include "mqcardinal/interpolate.hpp"
#include "oracles.hpp"

namespace {

using mqc::GridSpec;
using mqc::MultiquadricParams;
using mqc::SampleSequence;
using oracle::kPi;

MultiquadricParams mq(double alpha, double c, int d = 1) { return MultiquadricParams::make(alpha, c, d); }

const mqc::GridFunction& half_grid() {
  static const auto g = mqc::synthesize(mq(0.5, 1.0), GridSpec{32, 8, 1});
  return g;
}

SampleSequence ones(long n) {
  SampleSequence y;
  y.first_index = -n;
  y.values.assign(static_cast<std::size_t>(2 * n + 1), 1.0);
  return y;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(a + (b - a) * i / (n - 1));
  return xs;
}

TEST(Sequence, Validation) {
  SampleSequence y;
  EXPECT_THROW(y.validate(), mqc::ValidationError);
  y.values = {1.0, std::nan("")};
  EXPECT_THROW(y.validate(), mqc::ValidationError);
  auto d = SampleSequence::delta(3, 1);
  EXPECT_EQ(d.first_index, -3);
  EXPECT_DOUBLE_EQ(d.at(1), 1.0);
  EXPECT_DOUBLE_EQ(d.at(0), 0.0);
}

TEST(Admissibility, TheoremSlopesAndLimits) {
  EXPECT_DOUBLE_EQ(mqc::growth_limit(mq(0.5, 1)), 1.0);
  EXPECT_DOUBLE_EQ(mqc::growth_limit(mq(2.5, 1)), 5.0);
  EXPECT_DOUBLE_EQ(mqc::growth_limit(mq(-2.5, 1)), 2.0);
  EXPECT_TRUE(std::isinf(mqc::growth_limit(mq(-1.0, 1))));
  EXPECT_THROW(mqc::growth_limit(mq(-0.5, 1)), mqc::ValidationError);
  EXPECT_GE(mqc::theorem_decay_slope(mq(0.5, 1)), 2.0);
  EXPECT_DOUBLE_EQ(mqc::theorem_decay_slope(mq(-2.5, 1)), 3.0);
}

TEST(Admissibility, GrowthTooFastIsRejected) {
  auto y = ones(50);
  y.growth_class = 1.0;
  try {
    mqc::check_admissible(mq(0.5, 1.0), y);
    FAIL() << "accepted";
  } catch (const mqc::ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("growth"), std::string::npos);
  }
  y.growth_class = 0.5;
  EXPECT_NO_THROW(mqc::check_admissible(mq(0.5, 1.0), y));
  y.growth_class = 40.0;
  EXPECT_NO_THROW(mqc::check_admissible(mq(-1.0, 1.0), y));
}

TEST(Admissibility, DeclaredGrowthIsChecked) {
  SampleSequence y;
  y.first_index = 0;
  for (int j = 0; j < 100; ++j) y.values.push_back(static_cast<double>(j) * j);
  y.growth_class = 0.5;
  y.growth_constant = 1.0;
  EXPECT_THROW(mqc::check_admissible(mq(2.5, 1.0), y), mqc::ValidationError);
}

TEST(Interpolate, DeltaGivesFundamentalFunction) {
  const auto& L = half_grid();
  auto y = SampleSequence::delta(60);
  y.finite_support = true;
  const auto xs = linspace(-4.0, 4.0, 33);
  const auto r = mqc::interpolate(L, y, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(r.values[i], L.value_at(xs[i]), 1e-15);
}

TEST(Interpolate, ConstantIsReproduced) {
  const auto& L = half_grid();
  const auto xs = linspace(-3.0, 3.0, 61);
  const auto r = mqc::interpolate(L, ones(200), xs);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(r.values[i], 1.0, 1e-5) << xs[i];
}

TEST(Interpolate, BandLimitedRecoveryImprovesWithShape) {
  // g_hat(xi) = xi^2 on [-pi, pi]: g(x) = (2 pi)^-1 int xi^2 cos(x xi) dxi.
  auto g = [](double x) {
    if (std::abs(x) < 1e-8) return kPi * kPi / 3.0;
    const double s = std::sin(kPi * x);
    const double c = std::cos(kPi * x);
    return (kPi * kPi * s / x + 2 * kPi * c / (x * x) - 2 * s / (x * x * x)) / kPi;
  };
  EXPECT_NEAR(g(0.0), kPi * kPi / 3.0, 1e-12);
  SampleSequence y;
  y.first_index = -400;
  for (long j = -400; j <= 400; ++j) y.values.push_back(g(static_cast<double>(j)));
  y.finite_support = true;
  const auto xs = linspace(-4.0, 4.0, 161);
  auto err = [&](double c) {
    const auto p = mq(-0.5, c);
    const auto L = mqc::synthesize(p, GridSpec::automatic(p));
    const auto r = mqc::interpolate(L, y, xs);
    double e = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) e = std::max(e, std::abs(r.values[i] - g(xs[i])));
    return e;
  };
  EXPECT_LT(err(10.0), err(1.0));
}

TEST(Interpolate, ExactAtIntegers) {
  const auto& L = half_grid();
  SampleSequence y;
  y.first_index = -100;
  for (long j = -100; j <= 100; ++j) y.values.push_back(std::sin(0.3 * j) + 0.1 * std::cos(1.7 * j));
  const std::vector<double> xs{-7.0, -1.0, 0.0, 3.0, 12.0};
  const auto r = mqc::interpolate(L, y, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_NEAR(r.values[i], y.at(static_cast<long>(xs[i])), 2e-8) << xs[i];
  }
}

TEST(Interpolate, Linear) {
  const auto& L = half_grid();
  SampleSequence a;
  SampleSequence b;
  SampleSequence ab;
  a.first_index = b.first_index = ab.first_index = -80;
  for (long j = -80; j <= 80; ++j) {
    a.values.push_back(std::cos(0.4 * j));
    b.values.push_back(std::sin(0.9 * j));
    ab.values.push_back(2.0 * a.values.back() - 3.0 * b.values.back());
  }
  const auto xs = linspace(-5.0, 5.0, 21);
  mqc::TruncationPolicy t;
  t.radius = 40;
  const auto ra = mqc::interpolate(L, a, xs, t);
  const auto rb = mqc::interpolate(L, b, xs, t);
  const auto rab = mqc::interpolate(L, ab, xs, t);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(rab.values[i], 2 * ra.values[i] - 3 * rb.values[i], 1e-13);
}

TEST(Interpolate, ShiftEquivariant) {
  const auto& L = half_grid();
  SampleSequence y;
  y.first_index = -80;
  for (long j = -80; j <= 80; ++j) y.values.push_back(std::cos(0.4 * j) / (1 + 0.01 * j * j));
  SampleSequence shifted = y;
  shifted.first_index += 1;
  mqc::TruncationPolicy t;
  t.radius = 40;
  for (double x : {-2.3, 0.4, 5.9}) {
    const std::vector<double> a{x};
    const std::vector<double> b{x - 1.0};
    EXPECT_NEAR(mqc::interpolate(L, shifted, a, t).values[0], mqc::interpolate(L, y, b, t).values[0], 1e-12);
  }
}

TEST(Interpolate, AutomaticRadiusMeetsTarget) {
  const auto xs = linspace(-2.0, 2.0, 9);
  const auto r = mqc::interpolate(half_grid(), ones(100), xs);
  for (double b : r.tail_bounds) EXPECT_LE(b, 1e-6);
  auto y = SampleSequence::delta(100);
  y.finite_support = true;
  mqc::TruncationPolicy t;
  t.target = 1e-9;
  const auto tight = mqc::interpolate(half_grid(), y, xs, t);
  EXPECT_GT(tight.radius, r.radius);
}

TEST(Interpolate, MissingDataThrows) {
  const auto& L = half_grid();
  auto y = ones(5);
  const std::vector<double> xs{0.5};
  EXPECT_THROW(mqc::interpolate(L, y, xs), mqc::ValidationError);
}

TEST(Interpolate, ApproachesWhittakerAsShapeGrows) {
  for (double alpha : {0.5, -1.0}) {
    auto y = SampleSequence::delta(40);
    y.finite_support = true;
    const auto xs = linspace(-5.0, 5.0, 201);
    double prev = 1e300;
    for (double c : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      const auto p = mq(alpha, c);
      const auto r = mqc::interpolate(mqc::synthesize(p, GridSpec::automatic(p)), y, xs);
      double e = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) e = std::max(e, std::abs(r.values[i] - oracle::sinc(xs[i])));
      EXPECT_LT(e, prev) << alpha << " " << c;
      prev = e;
    }
  }
}

TEST(Interpolate, DirectModeAgreesWithGrid) {
  const auto p = mq(0.5, 1.0);
  auto y = SampleSequence::delta(3);
  y.values = {0.5, -1.0, 2.0, 1.0, 0.0, 0.25, 1.5};
  y.finite_support = true;
  const std::vector<double> xs{0.3, 1.6};
  mqc::TruncationPolicy t;
  t.radius = 10;
  const auto a = mqc::interpolate_direct(p, y, xs, t);
  const auto b = mqc::interpolate(half_grid(), y, xs, t);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-6);
}

TEST(Whittaker, DeltaAndIntegers) {
  auto y = SampleSequence::delta(10);
  y.finite_support = true;
  const std::vector<double> xs{-2.5, 0.0, 0.3, 1.0, 4.75};
  const auto r = mqc::whittaker(y, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(r.values[i], oracle::sinc(xs[i]), 1e-15);
  SampleSequence z;
  z.first_index = -3;
  z.values = {4.0, -1.0, 2.0, 7.0, 0.5, 3.0, -2.0};
  for (long k = -3; k <= 3; ++k) {
    const std::vector<double> at{static_cast<double>(k)};
    EXPECT_NEAR(mqc::whittaker(z, at).values[0], z.at(k), 1e-15);
  }
}

TEST(Whittaker, ReproducesBandLimitedFunction) {
  auto f = [](double x) { return x == 0.0 ? 1.0 : std::sin(kPi * x / 2) / (kPi * x / 2); };
  SampleSequence y;
  y.first_index = -4000;
  for (long j = -4000; j <= 4000; ++j) y.values.push_back(f(static_cast<double>(j)));
  const std::vector<double> xs{0.25};
  const auto r = mqc::whittaker(y, xs);
  EXPECT_LE(std::abs(r.values[0] - f(0.25)), r.tail_bounds[0]);
  EXPECT_LT(std::abs(r.values[0] - f(0.25)), 1e-4);
}

TEST(Lambda, OneAtIntegers) { EXPECT_NEAR(mqc::lambda_function(half_grid(), 0.0).value, 1.0, 1e-5); }

TEST(Lambda, Periodic) {
  const auto& L = half_grid();
  for (double x : {0.3, 0.7}) {
    const auto a = mqc::lambda_function(L, x);
    const auto b = mqc::lambda_function(L, x + 1.0);
    EXPECT_NEAR(a.value, b.value, a.tail_bound + b.tail_bound + 1e-8);
  }
}

TEST(Lambda, LogarithmicGrowthInShape) {
  const double lam10 = mqc::lambda_function(mq(0.5, 10.0), 0.5).value;
  const double lam100 = mqc::lambda_function(mq(0.5, 100.0), 0.5).value;
  EXPECT_LE(lam100, 3.0 * (lam10 / std::log(10.0)) * std::log(100.0));
  EXPECT_GT(lam100, lam10);
}

TEST(Lambda, ExcludedBandThrows) {
  EXPECT_THROW(mqc::lambda_function(mq(-0.5, 1.0), 0.5), mqc::ValidationError);
  EXPECT_THROW(mqc::lambda_function(mq(0.25, 1.0), 0.5), mqc::ValidationError);
}

TEST(L2Norm, OneAtOrigin) {
  const auto r = mqc::l2_operator_norm(mq(0.5, 1.0));
  EXPECT_NEAR(r.norm, 1.0, 1e-6);
  EXPECT_NEAR(r.argmax, 0.0, 1e-6);
  for (double v : r.square_sum) EXPECT_LE(v, 1.0 + 1e-8);
}

TEST(L2Norm, TiesResolveToOrigin) {
  const auto r = mqc::l2_operator_norm(mq(0.5, 10.0));
  EXPECT_NEAR(r.norm, 1.0, 1e-6);
  EXPECT_NEAR(r.argmax, 0.0, 1e-6);
}

TEST(L2Norm, StrictlyBelowOneInside) { EXPECT_LT(mqc::lhat_square_sum(mq(0.5, 1.0), kPi / 2), 1.0); }

TEST(L2Norm, PoissonProfileMatchesClosedForm) {
  const auto p = mq(-1.0, 1.0);
  const auto s = mqc::PeriodizationSpec{}.resolved(1.0);
  const auto r = mqc::l2_operator_norm(p, s, 257);
  for (std::size_t i = 0; i < r.xi.size(); ++i) {
    double ref = 0.0;
    for (int k = -s.J; k <= s.J; ++k) ref += std::pow(oracle::poisson_lhat(1.0, r.xi[i] + 2 * kPi * k), 2);
    EXPECT_NEAR(r.square_sum[i], ref, 1e-10) << r.xi[i];
  }
}

TEST(NormBounds, AtLeastOne) {
  const auto b = mqc::linf_l1_norm_bounds(half_grid());
  EXPECT_GE(b.linf, 1.0 - 1e-9);
  EXPECT_GE(b.l1, 1.0 - 1e-9);
  EXPECT_GE(b.linf, b.l1 - b.l1_error);
}

TEST(NormBounds, LogarithmicInShape) {
  const auto b10 = mqc::linf_l1_norm_bounds(mq(0.5, 10.0));
  const auto b1000 = mqc::linf_l1_norm_bounds(mq(0.5, 1000.0));
  EXPECT_LE(b1000.linf, 3.0 * b10.linf / std::log(10.0) * std::log(1000.0));
  EXPECT_LE(b1000.l1, 3.0 * b10.l1 / std::log(10.0) * std::log(1000.0));
}

TEST(NormBounds, PoissonGrowsLikeSincLebesgueFunction) {
  // As c grows L tends to sinc, whose Lebesgue function at 1/2 grows by
  // (2 / pi) ln 10 per decade of truncation length.
  const auto b10 = mqc::linf_l1_norm_bounds(mq(-1.0, 10.0));
  const auto b100 = mqc::linf_l1_norm_bounds(mq(-1.0, 100.0));
  EXPECT_NEAR(b100.linf - b10.linf, 2.0 / kPi * std::log(10.0), 0.05);
  EXPECT_LE(b100.linf, 3.0 * b10.linf / std::log(10.0) * std::log(100.0));
  EXPECT_LT(b100.l1 / b10.l1, 1.5);
}

}  // namespace
