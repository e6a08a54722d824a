#pragma once

// Numerical studies of the fundamental function: envelope decay fits,
// convergence as c grows (to sinc, to band-limited functions, polynomial
// reproduction) and L1 norms of derivatives of L_hat.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mqcardinal/fundamental.hpp"
#include "mqcardinal/interpolate.hpp"
#include "mqcardinal/symbol.hpp"

namespace mqc {

enum class StudyKind { decay_slope, sinc_convergence, pw_recovery, polynomial_reproduction, lhat_derivative_l1 };

std::string_view to_string(StudyKind k);
/// Accepts the enum spelling with '_' or '-'. ValidationError otherwise.
StudyKind study_kind_from_string(std::string_view s);

/// How a verdict is recomputed from its metric.
enum class VerdictRule {
  strictly_decreasing,  // m[i+1] < m[i] for every i
  all_below,            // max m < tolerance
  all_at_most,          // max m <= tolerance
  last_below,           // m.back() < tolerance
  ratio_below,          // max m / min m < tolerance
  all_above,            // min m > tolerance
};

std::string_view to_string(VerdictRule r);

struct Verdict {
  std::string name;
  std::string metric;
  VerdictRule rule = VerdictRule::all_below;
  double tolerance = 0.0;
  bool passed = false;
};

using NamedSeries = std::pair<std::string, std::vector<double>>;

struct StudyReport {
  StudyKind kind = StudyKind::decay_slope;
  std::vector<NamedSeries> params_swept;
  std::vector<NamedSeries> metrics;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;

  /// Metric by name; ValidationError if absent.
  [[nodiscard]] const std::vector<double>& metric(std::string_view name) const;
  [[nodiscard]] const Verdict& verdict(std::string_view name) const;
  [[nodiscard]] bool all_passed() const;
  /// Adds a verdict evaluated against an existing metric.
  void add_verdict(std::string name, std::string metric_name, VerdictRule rule, double tolerance);
};

/// Re-evaluates a verdict from the report's stored metric.
bool evaluate_verdict(const StudyReport& report, const Verdict& v);

// ---------------------------------------------------------------------------
// Decay

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;  // log |L| = intercept + slope log x
  std::vector<double> x;   // envelope abscissae used in the fit
  std::vector<double> envelope;
};

/// Least-squares fit of log max|L| against log x, one envelope point per unit
/// interval of [x_lo, x_hi] (d = 1, 0 < x_lo < x_hi). Points below ten times
/// the grid's error floor are dropped; BudgetError if fewer than 5 remain.
DecayFit decay_slope(const GridFunction& L, double x_lo, double x_hi);

/// The same fit on arbitrary samples (x_i, y_i): used to self-test the
/// envelope fit on synthetic power laws.
DecayFit fit_envelope(const std::vector<double>& x, const std::vector<double>& y, double x_lo,
                      double x_hi, double floor);

// ---------------------------------------------------------------------------
// Convergence studies

/// sup over grid nodes in [x_lo, x_hi] of |L_{alpha,c} - sinc| for each c.
/// Verdicts: `decreasing` (strict) and `final_below` (0.05).
StudyReport sinc_convergence(double alpha, const std::vector<double>& cs, double x_lo, double x_hi,
                             const PeriodizationSpec& spec = {});

/// A band-limited test function.
struct PWFunctionSpec {
  enum class Kind { xi_squared_hat, sinc_a, poly_times_sinc_a, custom_hat_table };
  Kind kind = Kind::xi_squared_hat;
  double a = 3.141592653589793;  // band, in (0, pi]
  int k = 0;                     // polynomial degree for poly_times_sinc_a
  /// custom_hat_table: even transform sampled at increasing xi >= 0 (first
  /// entry 0), linear in between, zero beyond the last entry.
  std::vector<double> table_xi;
  std::vector<double> table_hat;

  void validate() const;
};

std::string_view to_string(PWFunctionSpec::Kind k);

/// f(x) = (2 pi)^{-1} int f_hat(xi) e^{i x xi} dxi.
double pw_function_value(const PWFunctionSpec& f, double x);

enum class ErrorMetric { sup, l2 };

/// Interpolates f from its integer samples and reports the error on
/// [x_lo, x_hi] for each c. Metrics: `error` (sup or L2) and
/// `integer_error`. Verdicts: `decreasing`, `integers_exact` (1e-8).
StudyReport pw_recovery(const PWFunctionSpec& f, double alpha, const std::vector<double>& cs,
                        double x_lo, double x_hi, ErrorMetric metric = ErrorMetric::sup,
                        const PeriodizationSpec& spec = {});

/// Largest polynomial degree whose reproduction is covered for this alpha;
/// -1 if none.
int max_reproduction_degree(const MultiquadricParams& p);

/// sup_{[x_lo, x_hi]} |I(x^k) - x^k| for each c. ValidationError if k is out
/// of range for alpha. Verdicts: `below_tolerance` (1e-5), plus
/// `decreasing` for k >= 1.
StudyReport polynomial_reproduction(double alpha, const std::vector<double>& cs, int k, double x_lo,
                                    double x_hi, const PeriodizationSpec& spec = {});

// ---------------------------------------------------------------------------
// Derivatives of L_hat

struct DerivativeL1 {
  double value = 0.0;
  double quad_error = 0.0;
  double tail_bound = 0.0;
  double freq_extent = 0.0;
};

/// Highest derivative order covered for this alpha (d = 1): floor(2 alpha + 1)
/// for alpha > 0, the largest k < 2|alpha| - 1 for alpha < -1, and 4 (the
/// differentiation limit) for alpha = -1. 0 when nothing is covered.
int derivative_budget(const MultiquadricParams& p);

/// 2 int_0^Xi |L_hat^(k)| with Xi = freq_extent (0 selects an odd multiple of
/// pi past which L_hat is below 1e-14), integrated cell by cell between
/// multiples of pi. The tail bound sums 2 L_hat at the remaining odd multiples
/// of pi, times max(1, c)^(k - 1). ValidationError if k exceeds the budget.
DerivativeL1 lhat_derivative_l1(const MultiquadricParams& p, int k, double freq_extent = 0.0,
                                const PeriodizationSpec& spec = {}, const QuadSpec& q = {1e-9, 1e-7, 2000});

/// Report wrapper over c: metric `l1` per c and verdict `uniform_in_c`
/// (max/min < 5).
StudyReport lhat_derivative_study(double alpha, const std::vector<double>& cs, int k,
                                  const PeriodizationSpec& spec = {});

/// Report wrapper for decay_slope over c with the verdict `slope_at_most`
/// (slope <= threshold).
StudyReport decay_study(double alpha, const std::vector<double>& cs, double x_lo, double x_hi,
                        double threshold, const PeriodizationSpec& spec = {});

}  // namespace mqc
