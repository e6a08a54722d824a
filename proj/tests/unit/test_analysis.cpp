#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "mqcardinal/analysis.hpp"
#include "mqcardinal/errors.hpp"
#include "oracles.hpp"

namespace {

using mqc::MultiquadricParams;
using mqc::StudyKind;
using oracle::kPi;

MultiquadricParams mq(double alpha, double c, int d = 1) { return MultiquadricParams::make(alpha, c, d); }

void expect_self_consistent(const mqc::StudyReport& r) {
  for (const auto& v : r.verdicts) {
    EXPECT_NO_THROW((void)r.metric(v.metric)) << v.name;
    EXPECT_EQ(mqc::evaluate_verdict(r, v), v.passed) << v.name;
  }
}

TEST(StudyKind, Spellings) {
  EXPECT_EQ(mqc::study_kind_from_string("sinc-convergence"), StudyKind::sinc_convergence);
  EXPECT_EQ(mqc::study_kind_from_string("pw_recovery"), StudyKind::pw_recovery);
  EXPECT_EQ(mqc::study_kind_from_string(mqc::to_string(StudyKind::lhat_derivative_l1)),
            StudyKind::lhat_derivative_l1);
  EXPECT_THROW(mqc::study_kind_from_string("nope"), mqc::ValidationError);
}

TEST(Verdicts, RulesRecomputeFromMetrics) {
  mqc::StudyReport r;
  r.metrics = {{"m", {3.0, 2.0, 2.0}}};
  r.add_verdict("dec", "m", mqc::VerdictRule::strictly_decreasing, 0.0);
  r.add_verdict("below", "m", mqc::VerdictRule::all_below, 3.0);
  r.add_verdict("at_most", "m", mqc::VerdictRule::all_at_most, 3.0);
  r.add_verdict("last", "m", mqc::VerdictRule::last_below, 2.5);
  r.add_verdict("ratio", "m", mqc::VerdictRule::ratio_below, 1.6);
  r.add_verdict("above", "m", mqc::VerdictRule::all_above, 1.0);
  EXPECT_FALSE(r.verdict("dec").passed);
  EXPECT_FALSE(r.verdict("below").passed);
  EXPECT_TRUE(r.verdict("at_most").passed);
  EXPECT_TRUE(r.verdict("last").passed);
  EXPECT_TRUE(r.verdict("ratio").passed);
  EXPECT_TRUE(r.verdict("above").passed);
  EXPECT_FALSE(r.all_passed());
  expect_self_consistent(r);
  EXPECT_THROW(r.add_verdict("x", "missing", mqc::VerdictRule::all_below, 1.0), mqc::ValidationError);
}

TEST(DecayFit, RecoversSyntheticPowerLaw) {
  for (double power : {2.0, 3.5, 6.0}) {
    std::vector<double> x;
    std::vector<double> y;
    for (int i = 0; i <= 4000; ++i) {
      const double t = 5.0 + i * 0.01;
      x.push_back(t);
      y.push_back(std::pow(t, -power) * std::cos(kPi * t));
    }
    const auto fit = mqc::fit_envelope(x, y, 6.0, 40.0, 1e-30);
    EXPECT_NEAR(fit.slope, -power, 0.05) << power;
  }
}

TEST(DecayFit, TooFewPointsAboveFloor) {
  std::vector<double> x;
  std::vector<double> y;
  for (int i = 0; i <= 400; ++i) {
    x.push_back(1.0 + i * 0.1);
    y.push_back(std::pow(x.back(), -8.0));
  }
  EXPECT_THROW(mqc::fit_envelope(x, y, 2.0, 40.0, 1e-6), mqc::BudgetError);
}

TEST(DecayFit, HalfExponentBeatsThreshold) {
  const auto p = mq(0.5, 1.0);
  const auto L = mqc::synthesize(p, mqc::GridSpec::automatic(p));
  EXPECT_LE(mqc::decay_slope(L, 8.0, 30.0).slope, -3.0);
}

TEST(DecayFit, NegativeExponentBeatsThreshold) {
  const auto r = mqc::decay_study(-2.5, {1.0}, 8.0, 30.0, -2.5);
  EXPECT_TRUE(r.verdict("slope_at_most").passed) << r.metric("slope")[0];
  expect_self_consistent(r);
}

TEST(SincConvergence, DecreasingForBothExponents) {
  for (double alpha : {0.5, -1.0}) {
    const auto r = mqc::sinc_convergence(alpha, {1, 2, 4, 8, 16}, -5.0, 5.0);
    EXPECT_TRUE(r.verdict("decreasing").passed) << alpha;
    EXPECT_TRUE(r.verdict("final_below").passed) << alpha;
    const auto& e = r.metric("sup_error");
    EXPECT_GT(e.front(), e.back());
    expect_self_consistent(r);
  }
}

TEST(SincConvergence, OutsideTheoremsIsNoted) {
  const auto r = mqc::sinc_convergence(-0.5, {1, 2}, -2.0, 2.0);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes.front().find("outside"), std::string::npos);
}

TEST(PWFunction, XiSquaredAtOrigin) {
  mqc::PWFunctionSpec f;
  EXPECT_NEAR(mqc::pw_function_value(f, 0.0), kPi * kPi / 3.0, 1e-9);
  EXPECT_NEAR(mqc::pw_function_value(f, 1e-4), mqc::pw_function_value(f, -1e-4), 1e-15);
  // Continuity across the small-argument branch.
  EXPECT_NEAR(mqc::pw_function_value(f, 0.5 - 1e-10), mqc::pw_function_value(f, 0.5 + 1e-10), 1e-8);
}

TEST(PWFunction, SincAndTableKinds) {
  mqc::PWFunctionSpec f;
  f.kind = mqc::PWFunctionSpec::Kind::sinc_a;
  f.a = kPi / 2;
  EXPECT_NEAR(mqc::pw_function_value(f, 1.0), std::sin(kPi / 2) / (kPi / 2), 1e-14);
  mqc::PWFunctionSpec t;
  t.kind = mqc::PWFunctionSpec::Kind::custom_hat_table;
  t.table_xi = {0.0, kPi};
  t.table_hat = {1.0, 1.0};
  EXPECT_NEAR(mqc::pw_function_value(t, 0.5), oracle::sinc(0.5), 1e-9);
  t.table_xi = {0.0, 4.0};
  EXPECT_THROW(t.validate(), mqc::ValidationError);
  mqc::PWFunctionSpec wide;
  wide.kind = mqc::PWFunctionSpec::Kind::sinc_a;
  wide.a = 4.0;
  EXPECT_THROW(wide.validate(), mqc::ValidationError);
}

TEST(PWRecovery, XiSquaredImprovesWithShape) {
  const auto r = mqc::pw_recovery({}, -0.5, {1.0, 10.0}, -4.0, 4.0);
  EXPECT_TRUE(r.verdict("decreasing").passed);
  EXPECT_TRUE(r.verdict("integers_exact").passed);
  expect_self_consistent(r);
}

TEST(PWRecovery, SincDecreasing) {
  mqc::PWFunctionSpec f;
  f.kind = mqc::PWFunctionSpec::Kind::sinc_a;
  f.a = kPi / 2;
  const auto r = mqc::pw_recovery(f, 0.5, {1.0, 4.0, 16.0}, -4.0, 4.0);
  EXPECT_TRUE(r.verdict("decreasing").passed);
  EXPECT_TRUE(r.verdict("integers_exact").passed);
  const auto l2 = mqc::pw_recovery(f, 0.5, {1.0, 4.0}, -4.0, 4.0, mqc::ErrorMetric::l2);
  EXPECT_TRUE(l2.verdict("decreasing").passed);
}

TEST(PolynomialReproduction, ConstantBelowTolerance) {
  for (double alpha : {0.5, 2.5}) {
    const auto r = mqc::polynomial_reproduction(alpha, {1.0}, 0, -3.0, 3.0);
    EXPECT_TRUE(r.verdict("below_tolerance").passed) << alpha << " " << r.metric("sup_error")[0];
  }
}

TEST(PolynomialReproduction, PoissonConstantDefectMatchesClosedForm) {
  // sum_j L(x - j) = sum_k L_hat(2 pi k) e^{2 pi i k x}; for alpha = -1 the
  // transform does not vanish on 2 pi Z \ {0}, so at x = 1/2 the defect is
  // 4 sum_{k odd > 0} L_hat(2 pi k). The series is cut at the grid radius
  // (about 300) and L decays like 2.3e-3 / x^2, so the tail is near 1.5e-5.
  double defect = 0.0;
  for (int k = 1; k < 40; k += 2) defect += 4.0 * oracle::poisson_lhat(1.0, 2 * kPi * k);
  const auto r = mqc::polynomial_reproduction(-1.0, {1.0}, 0, -0.5, 0.5);
  EXPECT_NEAR(r.metric("sup_error")[0], defect, 3e-5);
  EXPECT_FALSE(r.verdict("below_tolerance").passed);
}

TEST(PolynomialReproduction, LinearIsReproduced) {
  // Linear data is reproduced to roundoff at every c, so the error carries no
  // trend in c; only the absolute tolerance is meaningful.
  const auto r = mqc::polynomial_reproduction(2.5, {2.0, 8.0}, 1, -2.0, 2.0);
  EXPECT_TRUE(r.verdict("below_tolerance").passed);
  for (double e : r.metric("sup_error")) EXPECT_LT(e, 1e-6);
  expect_self_consistent(r);
}

TEST(PolynomialReproduction, DegreeOutOfRange) {
  EXPECT_EQ(mqc::max_reproduction_degree(mq(0.5, 1.0)), 0);
  EXPECT_EQ(mqc::max_reproduction_degree(mq(2.5, 1.0)), 4);
  EXPECT_THROW(mqc::polynomial_reproduction(0.5, {1.0}, 3, -2.0, 2.0), mqc::ValidationError);
}

TEST(DerivativeL1, Budget) {
  EXPECT_EQ(mqc::derivative_budget(mq(0.5, 1.0)), 2);
  EXPECT_EQ(mqc::derivative_budget(mq(-1.0, 1.0)), 4);
  EXPECT_EQ(mqc::derivative_budget(mq(-2.5, 1.0)), 3);
  EXPECT_THROW(mqc::lhat_derivative_l1(mq(0.5, 1.0), 4), mqc::ValidationError);
}

TEST(DerivativeL1, UniformInShape) {
  const auto r = mqc::lhat_derivative_study(0.5, {1.0, 10.0, 100.0}, 1);
  EXPECT_TRUE(r.verdict("uniform_in_c").passed);
  expect_self_consistent(r);
}

TEST(DerivativeL1, PoissonMatchesClosedForm) {
  const auto got = mqc::lhat_derivative_l1(mq(-1.0, 1.0), 1);
  const double extent = got.freq_extent;
  double ref = 0.0;
  for (double a = 0.0; a < extent - 1e-12; a += kPi) {
    ref += oracle::simpson([](double xi) { return std::abs(oracle::poisson_lhat_derivative(1.0, xi)); }, a,
                           std::min(a + kPi, extent), 20000);
  }
  EXPECT_NEAR(got.value, 2.0 * ref, 1e-6);
}

}  // namespace
