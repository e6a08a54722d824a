#pragma once

// The cardinal interpolation operator y -> sum_j y_j L(x - j) in one
// dimension, the Whittaker (sinc) series, the Lebesgue-type function
// Lambda(x) = sum_j |L(x + j)| and estimators of operator norms.

#include <optional>
#include <span>
#include <vector>

#include "mqcardinal/fundamental.hpp"
#include "mqcardinal/symbol.hpp"

namespace mqc {

/// Data y_j for j = first_index .. first_index + values.size() - 1.
struct SampleSequence {
  long first_index = 0;
  std::vector<double> values;
  /// Declared growth exponent g: |y_j| <= A (1 + |j|^g).
  double growth_class = 0.0;
  /// A, when known. Used to verify the declaration on the stored entries.
  std::optional<double> growth_constant;
  /// Entries outside the stored range are zero.
  bool finite_support = false;

  [[nodiscard]] long last_index() const { return first_index + static_cast<long>(values.size()) - 1; }
  [[nodiscard]] bool contains(long j) const { return j >= first_index && j <= last_index(); }
  /// Stored value, or 0 outside the range of a finitely supported sequence.
  [[nodiscard]] double at(long j) const;
  /// Checks growth_class >= 0 and, if growth_constant is set, the bound on
  /// every stored entry. Throws ValidationError.
  void validate() const;

  static SampleSequence delta(long n, long at = 0);
};

/// Decay exponent of L used to size truncations: the exceptional rate
/// 4k + 1 for alpha = (2k - 1)/2, floor(2 alpha + 1) for other alpha > 0,
/// ceil(2|alpha| - 2) for alpha < -1, 8 for alpha = -1 (faster than any
/// power is claimed there) and 1 otherwise.
double theorem_decay_slope(const MultiquadricParams& p);

/// Largest admissible growth exponent (before subtracting epsilon):
/// floor(2 alpha + 1) - 1 for alpha >= 1/2, ceil(2|alpha| - 2) - 1 for
/// alpha < -3/2, +inf for alpha = -1. ValidationError for other alpha.
double growth_limit(const MultiquadricParams& p);

/// ValidationError unless y is finitely supported or
/// y.growth_class <= growth_limit(p) - epsilon.
void check_admissible(const MultiquadricParams& p, const SampleSequence& y, double epsilon = 0.01);

enum class TailMode { theorem_slope, measured_slope };

struct TruncationPolicy {
  /// Terms with |j - round(x)| <= radius are summed; 0 starts from the
  /// smallest R with (R - 1)^{-(slope - g)} < target and, on a grid, widens it
  /// until the estimated tail is below target (clamped to the grid and data).
  int radius = 0;
  TailMode tail_mode = TailMode::theorem_slope;
  double target = 1e-6;
};

struct SeriesResult {
  std::vector<double> values;
  /// A-posteriori bound on the neglected stored terms at each point.
  std::vector<double> tail_bounds;
  int radius = 0;
  double slope = 0.0;
};

/// sum_{|j - round(x)| <= R} y_j L(x - j) with L read from a synthesized grid
/// (cubic interpolation off the nodes). At x = j the result is y_j up to the
/// grid's cardinality defect.
SeriesResult interpolate(const GridFunction& L, const SampleSequence& y, std::span<const double> xs,
                         const TruncationPolicy& t = {});

/// As above on GridSpec::automatic(p).
SeriesResult interpolate(const MultiquadricParams& p, const SampleSequence& y,
                         std::span<const double> xs, const TruncationPolicy& t = {},
                         const PeriodizationSpec& spec = {});

/// Validation mode: every L value from evaluate_direct. Slow.
SeriesResult interpolate_direct(const MultiquadricParams& p, const SampleSequence& y,
                                std::span<const double> xs, const TruncationPolicy& t,
                                const PeriodizationSpec& spec = {}, const QuadSpec& q = {});

/// sin(pi x) / (pi x), 1 at 0 and exactly 0 at nonzero integers.
double sinc(double x);

/// sum_j y_j sinc(x - j) over every stored entry. The tail bound is
/// max|y| * 2 / (pi * distance to the first missing index), or 0 for
/// finitely supported data.
SeriesResult whittaker(const SampleSequence& y, std::span<const double> xs);

struct LambdaValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Lambda(x) = sum_{|j| <= R} |L(x + j)| plus a bound on the rest.
/// ValidationError when alpha lies in (-3/2, 1/2) and alpha != -1.
LambdaValue lambda_function(const GridFunction& L, double x, const TruncationPolicy& t = {});
LambdaValue lambda_function(const MultiquadricParams& p, double x, const TruncationPolicy& t = {},
                            const PeriodizationSpec& spec = {});

struct L2NormResult {
  double norm = 0.0;
  double argmax = 0.0;
  std::vector<double> xi;
  std::vector<double> square_sum;
};

/// max over xi in [-pi, pi] of sum_k L_hat(xi + 2 pi k)^2 on an n_xi-point
/// grid, refined by golden-section search around the best node.
L2NormResult l2_operator_norm(const MultiquadricParams& p, const PeriodizationSpec& spec = {},
                              int n_xi = 4097);

struct NormBounds {
  double linf = 0.0;        // sup_{x in [0,1]} Lambda(x)
  double linf_error = 0.0;
  double l1 = 0.0;          // int_0^1 Lambda(x) dx
  double l1_error = 0.0;
};

/// Both bounding quantities from Lambda sampled at 129 points of [0, 1]:
/// the maximum (error: change against the 65-point subset) and Simpson's
/// rule (error: Richardson difference against the 65-point rule).
NormBounds linf_l1_norm_bounds(const GridFunction& L, const TruncationPolicy& t = {});
NormBounds linf_l1_norm_bounds(const MultiquadricParams& p, const TruncationPolicy& t = {},
                               const PeriodizationSpec& spec = {});

}  // namespace mqc
