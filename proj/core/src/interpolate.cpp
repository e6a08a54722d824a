#include "mqcardinal/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "mqcardinal/errors.hpp"
#include "parallel.hpp"

namespace mqc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_half_integer(double a) { return a > 0.0 && std::floor(a) + 0.5 == a; }

// max |L(t)| |t|^slope over grid nodes with |t| in [lo, hi].
double tail_constant(const GridFunction& L, double slope, double lo, double hi) {
  const int n = L.points_per_axis();
  double a = 0.0;
  for (int m = 0; m < n; ++m) {
    const double t = std::abs(L.node(m));
    if (t >= lo && t <= hi) a = std::max(a, std::abs(L.values()[static_cast<std::size_t>(m)]) * std::pow(t, slope));
  }
  return a;
}

double envelope_max(const GridFunction& L, double lo, double hi) {
  const int n = L.points_per_axis();
  double a = 0.0;
  for (int m = 0; m < n; ++m) {
    const double t = std::abs(L.node(m));
    if (t >= lo && t <= hi) a = std::max(a, std::abs(L.values()[static_cast<std::size_t>(m)]));
  }
  return a;
}

// Two-window estimate of the decay exponent of |L| beyond r / 4.
double measured_slope(const GridFunction& L, double r) {
  const double inner = envelope_max(L, r / 4.0, r / 2.0);
  const double outer = envelope_max(L, r / 2.0, r);
  if (!(inner > 0.0) || !(outer > 0.0)) return 1.0;
  return std::max(0.0, std::log(inner / outer) / std::log(2.0));
}

int auto_radius(double slope, double growth, double target) {
  const double excess = slope - growth;
  if (excess <= 0.5) return std::numeric_limits<int>::max();
  const double r = 1.0 + std::ceil(std::pow(target, -1.0 / excess));
  return r > 1e9 ? std::numeric_limits<int>::max() : static_cast<int>(r);
}

void require_1d_grid(const GridFunction& L) {
  if (L.dim() != 1) throw_validation("cardinal interpolation is implemented for d = 1");
}

void require_operator_valid(const MultiquadricParams& p) {
  if (!p.operator_valid()) {
    std::ostringstream msg;
    msg << "alpha = " << p.alpha()
        << " lies in the excluded band (-3/2, 1/2) \\ {-1}; the operator bounds do not apply";
    throw_validation(msg.str());
  }
}

// Shared truncated-series driver; `kernel(t)` returns L(t).
SeriesResult series(const MultiquadricParams& p, const SampleSequence& y, std::span<const double> xs,
                    const TruncationPolicy& t, int radius_cap, const std::function<double(double)>& kernel,
                    const GridFunction* grid) {
  y.validate();
  check_admissible(p, y);
  if (t.radius < 0) throw_validation("TruncationPolicy: radius must be >= 0");
  if (!(t.target > 0.0)) throw_validation("TruncationPolicy: target must be positive");
  SeriesResult out;
  out.slope = theorem_decay_slope(p);
  int radius = t.radius > 0 ? t.radius : auto_radius(out.slope, y.finite_support ? 0.0 : y.growth_class, t.target);
  radius = std::min(radius, radius_cap);
  out.radius = radius;

  double a = 0.0;
  if (grid != nullptr) {
    if (t.tail_mode == TailMode::measured_slope) out.slope = measured_slope(*grid, radius);
    a = tail_constant(*grid, out.slope, 0.5 * radius, radius);
    // Automatic radius: widen until the estimated tail meets the target,
    // within the grid and, for data without finite support, the stored range.
    if (t.radius == 0 && out.slope > 1.0) {
      long cap = radius_cap;
      if (!y.finite_support) {
        for (double x : xs) {
          if (!std::isfinite(x)) continue;
          const long j0 = std::lround(x);
          cap = std::min(cap, std::min(j0 - y.first_index, y.last_index() - j0));
        }
      }
      double ymax = 0.0;
      for (double v : y.values) ymax = std::max(ymax, std::abs(v));
      auto estimate = [&](int r, double c) { return 2.0 * c * ymax * std::pow(r, 1.0 - out.slope) / (out.slope - 1.0); };
      while (estimate(radius, a) > t.target && radius < cap) {
        radius = static_cast<int>(std::min<long>(cap, radius + radius / 2 + 1));
        if (t.tail_mode == TailMode::measured_slope) out.slope = std::max(measured_slope(*grid, radius), 1.0 + 1e-9);
        a = tail_constant(*grid, out.slope, 0.5 * radius, radius);
      }
      out.radius = radius;
    }
  }

  out.values.assign(xs.size(), 0.0);
  out.tail_bounds.assign(xs.size(), 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (!std::isfinite(x)) throw_domain("interpolate: non-finite evaluation point");
    const long j0 = std::lround(x);
    double acc = 0.0;
    for (long j = j0 - radius; j <= j0 + radius; ++j) {
      if (!y.contains(j)) {
        if (y.finite_support) continue;
        std::ostringstream msg;
        msg << "interpolate: data index " << j << " needed at x = " << x << " is not stored";
        throw_validation(msg.str());
      }
      const double v = y.at(j);
      if (v != 0.0) acc += v * kernel(x - static_cast<double>(j));
    }
    out.values[i] = acc;
    if (a > 0.0) {
      double tail = 0.0;
      for (std::size_t k = 0; k < y.values.size(); ++k) {
        const long j = y.first_index + static_cast<long>(k);
        if (std::labs(j - j0) <= radius) continue;
        tail += std::abs(y.values[k]) * std::pow(std::abs(x - static_cast<double>(j)), -out.slope);
      }
      out.tail_bounds[i] = a * tail;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// SampleSequence and admissibility

double SampleSequence::at(long j) const {
  if (contains(j)) return values[static_cast<std::size_t>(j - first_index)];
  if (finite_support) return 0.0;
  throw_domain("SampleSequence: index outside the stored range");
}

void SampleSequence::validate() const {
  if (values.empty()) throw_validation("SampleSequence: no samples");
  if (!(growth_class >= 0.0) || !std::isfinite(growth_class)) {
    throw_validation("SampleSequence: growth_class must be finite and >= 0");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw_validation("SampleSequence: non-finite sample");
  }
  if (growth_constant) {
    const double a = *growth_constant;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double j = static_cast<double>(first_index + static_cast<long>(k));
      const double bound = a * (1.0 + std::pow(std::abs(j), growth_class));
      if (std::abs(values[k]) > bound * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "growth admissibility: |y_" << j << "| = " << std::abs(values[k])
            << " exceeds the declared bound " << bound;
        throw_validation(msg.str());
      }
    }
  }
}

SampleSequence SampleSequence::delta(long n, long at) {
  SampleSequence y;
  y.first_index = -n;
  y.values.assign(static_cast<std::size_t>(2 * n + 1), 0.0);
  if (at >= -n && at <= n) y.values[static_cast<std::size_t>(at + n)] = 1.0;
  y.finite_support = true;
  return y;
}

double theorem_decay_slope(const MultiquadricParams& p) {
  const double a = p.alpha();
  if (a == -1.0) return 8.0;
  if (is_half_integer(a)) return 4.0 * (a + 0.5) + 1.0;
  if (a > 0.0) return std::floor(2.0 * a + 1.0);
  if (a < -1.0) return std::ceil(2.0 * std::abs(a) - 2.0);
  return 1.0;
}

double growth_limit(const MultiquadricParams& p) {
  const double a = p.alpha();
  if (a == -1.0) return kInf;
  if (a >= 0.5) return std::floor(2.0 * a + 1.0) - 1.0;
  if (a < -1.5) return std::ceil(2.0 * std::abs(a) - 2.0) - 1.0;
  std::ostringstream msg;
  msg << "growth admissibility: no growth class is admissible for alpha = " << a
      << " (outside (-inf, -3/2) u [1/2, inf) and not -1)";
  throw_validation(msg.str());
}

void check_admissible(const MultiquadricParams& p, const SampleSequence& y, double epsilon) {
  y.validate();
  if (y.finite_support) return;
  const double limit = growth_limit(p);
  if (y.growth_class > limit - epsilon) {
    std::ostringstream msg;
    msg << "growth admissibility violated: growth class " << y.growth_class << " > "
        << limit << " - " << epsilon << " for alpha = " << p.alpha();
    throw_validation(msg.str());
  }
}

// ---------------------------------------------------------------------------
// Interpolation series

SeriesResult interpolate(const GridFunction& L, const SampleSequence& y, std::span<const double> xs,
                         const TruncationPolicy& t) {
  require_1d_grid(L);
  double max_offset = 0.0;
  for (double x : xs) max_offset = std::max(max_offset, std::abs(x - std::round(x)));
  const int cap = static_cast<int>(std::floor(L.interpolation_radius() - max_offset));
  if (cap < 1) throw_validation("interpolate: grid too small for any truncation radius");
  return series(L.params(), y, xs, t, cap, [&](double s) { return L.value_at(s); }, &L);
}

SeriesResult interpolate(const MultiquadricParams& p, const SampleSequence& y, std::span<const double> xs,
                         const TruncationPolicy& t, const PeriodizationSpec& spec) {
  const GridFunction L = synthesize(p, GridSpec::automatic(p), spec);
  return interpolate(L, y, xs, t);
}

SeriesResult interpolate_direct(const MultiquadricParams& p, const SampleSequence& y,
                                std::span<const double> xs, const TruncationPolicy& t,
                                const PeriodizationSpec& spec, const QuadSpec& q) {
  if (p.dim() != 1) throw_validation("cardinal interpolation is implemented for d = 1");
  return series(p, y, xs, t, 1 << 20, [&](double s) { return evaluate_direct(p, s, spec, q).value; },
                nullptr);
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  if (x == std::round(x)) return 0.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

SeriesResult whittaker(const SampleSequence& y, std::span<const double> xs) {
  y.validate();
  SeriesResult out;
  out.slope = 1.0;
  out.radius = static_cast<int>(y.values.size());
  out.values.assign(xs.size(), 0.0);
  out.tail_bounds.assign(xs.size(), 0.0);
  double ymax = 0.0;
  for (double v : y.values) ymax = std::max(ymax, std::abs(v));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    double acc = 0.0;
    for (std::size_t k = 0; k < y.values.size(); ++k) {
      const long j = y.first_index + static_cast<long>(k);
      acc += y.values[k] * sinc(x - static_cast<double>(j));
    }
    out.values[i] = acc;
    if (!y.finite_support) {
      const double dist = std::min(x - static_cast<double>(y.first_index - 1),
                                   static_cast<double>(y.last_index() + 1) - x);
      out.tail_bounds[i] = dist > 0.0 ? ymax * 2.0 / (kPi * dist) : kInf;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lambda and operator norms

LambdaValue lambda_function(const GridFunction& L, double x, const TruncationPolicy& t) {
  require_1d_grid(L);
  require_operator_valid(L.params());
  if (!std::isfinite(x)) throw_domain("lambda_function: non-finite point");
  const int cap = static_cast<int>(std::floor(L.interpolation_radius() - 1.0));
  const int radius = t.radius > 0 ? std::min(t.radius, cap) : cap;
  // Terms with |x + j| <= radius + 1/2, centred on the nearest integer.
  const long j0 = std::lround(x);
  LambdaValue out;
  for (long j = -j0 - radius; j <= -j0 + radius; ++j) {
    out.value += std::abs(L.value_at(x + static_cast<double>(j)));
  }
  double slope = theorem_decay_slope(L.params());
  if (t.tail_mode == TailMode::measured_slope) slope = measured_slope(L, radius);
  const double a = tail_constant(L, slope, 0.5 * radius, radius);
  out.tail_bound = slope > 1.0 ? 2.0 * a * std::pow(radius, 1.0 - slope) / (slope - 1.0) : kInf;
  return out;
}

LambdaValue lambda_function(const MultiquadricParams& p, double x, const TruncationPolicy& t,
                            const PeriodizationSpec& spec) {
  require_operator_valid(p);
  const GridFunction L = synthesize(p, GridSpec::automatic(p), spec);
  return lambda_function(L, x, t);
}

L2NormResult l2_operator_norm(const MultiquadricParams& p, const PeriodizationSpec& spec, int n_xi) {
  require_operator_valid(p);
  if (p.dim() != 1) throw_validation("l2_operator_norm: one dimension only");
  if (n_xi < 3) throw_validation("l2_operator_norm: n_xi must be >= 3");
  const auto s = spec.resolved(p.c());
  L2NormResult out;
  out.xi.resize(static_cast<std::size_t>(n_xi));
  out.square_sum.resize(static_cast<std::size_t>(n_xi));
  detail::parallel_for(static_cast<std::size_t>(n_xi), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double xi = -kPi + 2.0 * kPi * static_cast<double>(i) / (n_xi - 1);
      out.xi[i] = xi;
      out.square_sum[i] = lhat_square_sum(p, xi, s);
    }
  });
  // Near-ties (the sum is flat at 1 for large c) go to the smallest |xi|.
  const double top = *std::max_element(out.square_sum.begin(), out.square_sum.end());
  std::size_t best = out.xi.size();
  for (std::size_t i = 0; i < out.xi.size(); ++i) {
    if (out.square_sum[i] < top - 1e-14) continue;
    if (best == out.xi.size() || std::abs(out.xi[i]) < std::abs(out.xi[best])) best = i;
  }
  out.norm = out.square_sum[best];
  out.argmax = out.xi[best];

  // Golden-section search for a larger value between the neighbours.
  double a = out.xi[best > 0 ? best - 1 : 0];
  double b = out.xi[std::min(best + 1, out.xi.size() - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double xi) { return lhat_square_sum(p, xi, s); };
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  for (auto [x, v] : {std::pair{x1, f1}, std::pair{x2, f2}}) {
    if (v > out.norm + 1e-14) {
      out.norm = v;
      out.argmax = x;
    }
  }
  return out;
}

NormBounds linf_l1_norm_bounds(const GridFunction& L, const TruncationPolicy& t) {
  require_1d_grid(L);
  require_operator_valid(L.params());
  constexpr int kPoints = 129;
  std::vector<double> lam(kPoints);
  double tail = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double x = static_cast<double>(i) / (kPoints - 1);
    const LambdaValue v = lambda_function(L, x, t);
    lam[static_cast<std::size_t>(i)] = v.value;
    tail = std::max(tail, v.tail_bound);
  }
  auto simpson = [&](int stride) {
    const double h = static_cast<double>(stride) / (kPoints - 1);
    double acc = lam.front() + lam.back();
    for (int i = stride, k = 1; i < kPoints - 1; i += stride, ++k) {
      acc += (k % 2 == 1 ? 4.0 : 2.0) * lam[static_cast<std::size_t>(i)];
    }
    return acc * h / 3.0;
  };
  NormBounds out;
  double coarse_max = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    out.linf = std::max(out.linf, lam[static_cast<std::size_t>(i)]);
    if (i % 2 == 0) coarse_max = std::max(coarse_max, lam[static_cast<std::size_t>(i)]);
  }
  out.linf_error = out.linf - coarse_max + tail;
  const double fine = simpson(1);
  const double coarse = simpson(2);
  out.l1 = fine;
  out.l1_error = std::abs(fine - coarse) / 15.0 + tail;
  return out;
}

NormBounds linf_l1_norm_bounds(const MultiquadricParams& p, const TruncationPolicy& t,
                               const PeriodizationSpec& spec) {
  require_operator_valid(p);
  const GridFunction L = synthesize(p, GridSpec::automatic(p), spec);
  return linf_l1_norm_bounds(L, t);
}

}  // namespace mqc
