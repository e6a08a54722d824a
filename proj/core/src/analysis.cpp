#include "mqcardinal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mqcardinal/errors.hpp"
#include "mqcardinal/quadrature.hpp"

namespace mqc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void note_theorem_coverage(StudyReport& r, const MultiquadricParams& p) {
  if (!p.within_decay_theorems()) {
    std::ostringstream msg;
    msg << "alpha = " << p.alpha() << " is outside the stated theorems";
    r.notes.push_back(msg.str());
  }
}

void require_sweep(const std::vector<double>& cs) {
  if (cs.empty()) throw_validation("study: the c sweep is empty");
  for (double c : cs) {
    if (!(c > 0.0) || !std::isfinite(c)) throw_validation("study: every c must be positive");
  }
}

void require_window(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw_validation("study: window must satisfy lo < hi");
}

// Least-squares slope and intercept of v against u.
std::pair<double, double> least_squares(const std::vector<double>& u, const std::vector<double>& v) {
  const double n = static_cast<double>(u.size());
  double su = 0.0;
  double sv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    su += u[i];
    sv += v[i];
  }
  const double mu = su / n;
  const double mv = sv / n;
  double suu = 0.0;
  double suv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - mu) * (u[i] - mu);
    suv += (u[i] - mu) * (v[i] - mv);
  }
  const double slope = suu > 0.0 ? suv / suu : 0.0;
  return {slope, mv - slope * mu};
}

// Radius that keeps every term of the series on the grid.
int full_radius(const GridFunction& L) {
  return std::max(1, static_cast<int>(std::floor(L.interpolation_radius() - 0.5)));
}

std::vector<double> window_points(double lo, double hi, double step) {
  std::vector<double> xs;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) xs.push_back(lo + static_cast<double>(i) * step);
  return xs;
}

}  // namespace

// ---------------------------------------------------------------------------
// Reports

std::string_view to_string(StudyKind k) {
  switch (k) {
    case StudyKind::decay_slope: return "decay_slope";
    case StudyKind::sinc_convergence: return "sinc_convergence";
    case StudyKind::pw_recovery: return "pw_recovery";
    case StudyKind::polynomial_reproduction: return "polynomial_reproduction";
    case StudyKind::lhat_derivative_l1: return "lhat_derivative_l1";
  }
  return "unknown";
}

StudyKind study_kind_from_string(std::string_view s) {
  std::string norm(s);
  std::replace(norm.begin(), norm.end(), '-', '_');
  for (auto k : {StudyKind::decay_slope, StudyKind::sinc_convergence, StudyKind::pw_recovery,
                 StudyKind::polynomial_reproduction, StudyKind::lhat_derivative_l1}) {
    if (norm == to_string(k)) return k;
  }
  throw_validation("unknown study kind '" + std::string(s) + "'");
}

std::string_view to_string(VerdictRule r) {
  switch (r) {
    case VerdictRule::strictly_decreasing: return "strictly_decreasing";
    case VerdictRule::all_below: return "all_below";
    case VerdictRule::all_at_most: return "all_at_most";
    case VerdictRule::last_below: return "last_below";
    case VerdictRule::ratio_below: return "ratio_below";
    case VerdictRule::all_above: return "all_above";
  }
  return "unknown";
}

const std::vector<double>& StudyReport::metric(std::string_view name) const {
  for (const auto& [n, v] : metrics) {
    if (n == name) return v;
  }
  throw_validation("study report has no metric '" + std::string(name) + "'");
}

const Verdict& StudyReport::verdict(std::string_view name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return v;
  }
  throw_validation("study report has no verdict '" + std::string(name) + "'");
}

bool StudyReport::all_passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

void StudyReport::add_verdict(std::string name, std::string metric_name, VerdictRule rule, double tolerance) {
  Verdict v{std::move(name), std::move(metric_name), rule, tolerance, false};
  v.passed = evaluate_verdict(*this, v);
  verdicts.push_back(std::move(v));
}

bool evaluate_verdict(const StudyReport& report, const Verdict& v) {
  const auto& m = report.metric(v.metric);
  if (m.empty()) return false;
  for (double x : m) {
    if (std::isnan(x)) return false;
  }
  const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
  switch (v.rule) {
    case VerdictRule::strictly_decreasing:
      for (std::size_t i = 1; i < m.size(); ++i) {
        if (!(m[i] < m[i - 1])) return false;
      }
      return true;
    case VerdictRule::all_below: return *hi < v.tolerance;
    case VerdictRule::all_at_most: return *hi <= v.tolerance;
    case VerdictRule::last_below: return m.back() < v.tolerance;
    case VerdictRule::ratio_below: return *lo > 0.0 && *hi / *lo < v.tolerance;
    case VerdictRule::all_above: return *lo > v.tolerance;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Decay

DecayFit fit_envelope(const std::vector<double>& x, const std::vector<double>& y, double x_lo,
                      double x_hi, double floor) {
  if (!(x_lo > 0.0) || !(x_lo < x_hi)) throw_validation("decay_slope: window must satisfy 0 < lo < hi");
  if (x.size() != y.size()) throw_validation("decay_slope: sample arrays differ in length");
  const auto first = static_cast<long>(std::floor(x_lo));
  const auto last = static_cast<long>(std::ceil(x_hi));
  DecayFit fit;
  for (long k = first; k < last; ++k) {
    double best = -1.0;
    double at = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double t = x[i];
      if (t < std::max(x_lo, static_cast<double>(k)) || t >= std::min(x_hi, static_cast<double>(k + 1))) continue;
      if (std::abs(y[i]) > best) {
        best = std::abs(y[i]);
        at = t;
      }
    }
    if (best > 10.0 * floor) {
      fit.x.push_back(at);
      fit.envelope.push_back(best);
    }
  }
  if (fit.x.size() < 5) {
    std::ostringstream msg;
    msg << "decay_slope: insufficient signal, only " << fit.x.size()
        << " envelope points above ten times the error floor " << floor;
    throw_budget(msg.str());
  }
  std::vector<double> lx(fit.x.size());
  std::vector<double> ly(fit.x.size());
  for (std::size_t i = 0; i < fit.x.size(); ++i) {
    lx[i] = std::log(fit.x[i]);
    ly[i] = std::log(fit.envelope[i]);
  }
  std::tie(fit.slope, fit.intercept) = least_squares(lx, ly);
  return fit;
}

DecayFit decay_slope(const GridFunction& L, double x_lo, double x_hi) {
  if (L.dim() != 1) throw_validation("decay_slope: one dimension only");
  if (x_hi > L.extent()) throw_domain("decay_slope: window extends beyond the grid");
  std::vector<double> x;
  std::vector<double> y;
  for (int m = 0; m < L.points_per_axis(); ++m) {
    const double t = L.node(m);
    if (t >= x_lo && t <= x_hi) {
      x.push_back(t);
      y.push_back(L.values()[static_cast<std::size_t>(m)]);
    }
  }
  return fit_envelope(x, y, x_lo, x_hi, L.error_floor());
}

StudyReport decay_study(double alpha, const std::vector<double>& cs, double x_lo, double x_hi,
                        double threshold, const PeriodizationSpec& spec) {
  require_sweep(cs);
  require_window(x_lo, x_hi);
  StudyReport r;
  r.kind = StudyKind::decay_slope;
  r.params_swept = {{"alpha", {alpha}}, {"c", cs}, {"window", {x_lo, x_hi}}};
  std::vector<double> slopes;
  std::vector<double> counts;
  std::vector<double> floors;
  for (double c : cs) {
    const auto p = MultiquadricParams::make(alpha, c);
    if (c == cs.front()) note_theorem_coverage(r, p);
    const GridFunction L = synthesize(p, GridSpec::automatic(p), spec);
    const DecayFit fit = decay_slope(L, x_lo, x_hi);
    slopes.push_back(fit.slope);
    counts.push_back(static_cast<double>(fit.x.size()));
    floors.push_back(L.error_floor());
  }
  r.metrics = {{"slope", slopes}, {"envelope_points", counts}, {"error_floor", floors}};
  r.add_verdict("slope_at_most", "slope", VerdictRule::all_at_most, threshold);
  return r;
}

// ---------------------------------------------------------------------------
// Convergence to sinc

StudyReport sinc_convergence(double alpha, const std::vector<double>& cs, double x_lo, double x_hi,
                             const PeriodizationSpec& spec) {
  require_sweep(cs);
  require_window(x_lo, x_hi);
  StudyReport r;
  r.kind = StudyKind::sinc_convergence;
  r.params_swept = {{"alpha", {alpha}}, {"c", cs}, {"window", {x_lo, x_hi}}};
  std::vector<double> sup;
  for (double c : cs) {
    const auto p = MultiquadricParams::make(alpha, c);
    if (c == cs.front()) note_theorem_coverage(r, p);
    const GridFunction L = synthesize(p, GridSpec::automatic(p), spec);
    if (std::max(std::abs(x_lo), std::abs(x_hi)) > L.extent()) throw_domain("sinc_convergence: window beyond grid");
    double e = 0.0;
    for (int m = 0; m < L.points_per_axis(); ++m) {
      const double x = L.node(m);
      if (x < x_lo || x > x_hi) continue;
      e = std::max(e, std::abs(L.values()[static_cast<std::size_t>(m)] - sinc(x)));
    }
    sup.push_back(e);
  }
  r.metrics = {{"sup_error", sup}};
  r.add_verdict("decreasing", "sup_error", VerdictRule::strictly_decreasing, 0.0);
  r.add_verdict("final_below", "sup_error", VerdictRule::last_below, 0.05);
  return r;
}

// ---------------------------------------------------------------------------
// Band-limited functions

std::string_view to_string(PWFunctionSpec::Kind k) {
  switch (k) {
    case PWFunctionSpec::Kind::xi_squared_hat: return "xi_squared_hat";
    case PWFunctionSpec::Kind::sinc_a: return "sinc_a";
    case PWFunctionSpec::Kind::poly_times_sinc_a: return "poly_times_sinc_a";
    case PWFunctionSpec::Kind::custom_hat_table: return "custom_hat_table";
  }
  return "unknown";
}

void PWFunctionSpec::validate() const {
  if (k < 0) throw_validation("PWFunctionSpec: k must be >= 0");
  switch (kind) {
    case Kind::xi_squared_hat: return;
    case Kind::sinc_a:
    case Kind::poly_times_sinc_a:
      if (!(a > 0.0) || a > kPi) throw_validation("PWFunctionSpec: band a must lie in (0, pi]");
      return;
    case Kind::custom_hat_table:
      if (table_xi.size() < 2 || table_xi.size() != table_hat.size()) {
        throw_validation("PWFunctionSpec: table needs matching xi and value arrays of length >= 2");
      }
      if (table_xi.front() != 0.0) throw_validation("PWFunctionSpec: table must start at xi = 0");
      for (std::size_t i = 1; i < table_xi.size(); ++i) {
        if (!(table_xi[i] > table_xi[i - 1])) throw_validation("PWFunctionSpec: table xi must increase");
      }
      if (table_xi.back() > kPi) throw_validation("PWFunctionSpec: table support exceeds [-pi, pi]");
      return;
  }
}

double pw_function_value(const PWFunctionSpec& f, double x) {
  f.validate();
  switch (f.kind) {
    case PWFunctionSpec::Kind::xi_squared_hat: {
      if (std::abs(x) < 0.5) {
        // (1/pi) sum_n (-1)^n x^{2n} pi^{2n+3} / ((2n)! (2n+3))
        double term = kPi * kPi * kPi;  // pi^{2n+3} x^{2n} / (2n)! at n = 0
        double acc = 0.0;
        for (int n = 0; n < 30; ++n) {
          acc += (n % 2 == 0 ? 1.0 : -1.0) * term / (2.0 * n + 3.0);
          term *= (kPi * x) * (kPi * x) / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
        }
        return acc / kPi;
      }
      const double s = std::sin(kPi * x);
      const double c = std::cos(kPi * x);
      return (kPi * kPi * s / x + 2.0 * kPi * c / (x * x) - 2.0 * s / (x * x * x)) / kPi;
    }
    case PWFunctionSpec::Kind::sinc_a:
      return x == 0.0 ? 1.0 : std::sin(f.a * x) / (f.a * x);
    case PWFunctionSpec::Kind::poly_times_sinc_a: {
      const double base = x == 0.0 ? 1.0 : std::sin(f.a * x) / (f.a * x);
      return std::pow(x, f.k) * base;
    }
    case PWFunctionSpec::Kind::custom_hat_table: {
      double acc = 0.0;
      for (std::size_t i = 1; i < f.table_xi.size(); ++i) {
        const double a = f.table_xi[i - 1];
        const double b = f.table_xi[i];
        const double va = f.table_hat[i - 1];
        const double vb = f.table_hat[i];
        auto g = [&](double xi) { return (va + (vb - va) * (xi - a) / (b - a)) * std::cos(x * xi); };
        acc += integrate(g, a, b).value;
      }
      return acc / kPi;
    }
  }
  return 0.0;
}

StudyReport pw_recovery(const PWFunctionSpec& f, double alpha, const std::vector<double>& cs,
                        double x_lo, double x_hi, ErrorMetric metric, const PeriodizationSpec& spec) {
  f.validate();
  require_sweep(cs);
  require_window(x_lo, x_hi);
  StudyReport r;
  r.kind = StudyKind::pw_recovery;
  r.params_swept = {{"alpha", {alpha}}, {"c", cs}, {"window", {x_lo, x_hi}}, {"a", {f.a}},
                    {"k", {static_cast<double>(f.k)}}};
  r.notes.push_back("function: " + std::string(to_string(f.kind)));
  r.notes.push_back(metric == ErrorMetric::sup ? "metric: sup" : "metric: l2");

  const std::vector<double> xs = window_points(x_lo, x_hi, 0.01);
  std::vector<double> errors;
  std::vector<double> integer_errors;
  std::vector<double> tails;
  for (double c : cs) {
    const auto p = MultiquadricParams::make(alpha, c);
    if (c == cs.front()) note_theorem_coverage(r, p);
    const GridFunction L = synthesize(p, GridSpec::automatic(p), spec);
    const int radius = full_radius(L);
    SampleSequence y;
    y.finite_support = true;
    y.first_index = static_cast<long>(std::floor(x_lo)) - radius - 1;
    const long last = static_cast<long>(std::ceil(x_hi)) + radius + 1;
    for (long j = y.first_index; j <= last; ++j) y.values.push_back(pw_function_value(f, static_cast<double>(j)));
    TruncationPolicy t;
    t.radius = radius;
    const SeriesResult s = interpolate(L, y, xs, t);

    double sup = 0.0;
    double l2 = 0.0;
    double int_err = 0.0;
    double tail = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = std::abs(s.values[i] - pw_function_value(f, xs[i]));
      sup = std::max(sup, e);
      const double w = (i == 0 || i + 1 == xs.size()) ? 0.5 : 1.0;
      l2 += w * e * e * 0.01;
      if (xs[i] == std::round(xs[i])) int_err = std::max(int_err, e);
      tail = std::max(tail, s.tail_bounds[i]);
    }
    errors.push_back(metric == ErrorMetric::sup ? sup : std::sqrt(l2));
    integer_errors.push_back(int_err);
    tails.push_back(tail);
  }
  r.metrics = {{"error", errors}, {"integer_error", integer_errors}, {"tail_bound", tails}};
  r.add_verdict("decreasing", "error", VerdictRule::strictly_decreasing, 0.0);
  r.add_verdict("integers_exact", "integer_error", VerdictRule::all_below, 1e-8);
  return r;
}

// ---------------------------------------------------------------------------
// Polynomial reproduction

int max_reproduction_degree(const MultiquadricParams& p) {
  const double a = p.alpha();
  if (a == -1.0) return std::numeric_limits<int>::max();
  if (a >= 0.5) return static_cast<int>(std::floor(2.0 * a + 1.0)) - 2;
  if (a < -1.5) return static_cast<int>(std::ceil(2.0 * std::abs(a) - 2.0)) - 2;
  return -1;
}

StudyReport polynomial_reproduction(double alpha, const std::vector<double>& cs, int k, double x_lo,
                                    double x_hi, const PeriodizationSpec& spec) {
  require_sweep(cs);
  require_window(x_lo, x_hi);
  if (k < 0) throw_validation("polynomial_reproduction: k must be >= 0");
  {
    const auto p = MultiquadricParams::make(alpha, cs.front());
    const int kmax = max_reproduction_degree(p);
    if (k > kmax) {
      std::ostringstream msg;
      msg << "growth admissibility: degree " << k << " exceeds the admissible maximum " << kmax
          << " for alpha = " << alpha;
      throw_validation(msg.str());
    }
  }
  StudyReport r;
  r.kind = StudyKind::polynomial_reproduction;
  r.params_swept = {{"alpha", {alpha}}, {"c", cs}, {"k", {static_cast<double>(k)}}, {"window", {x_lo, x_hi}}};
  const std::vector<double> xs = window_points(x_lo, x_hi, 0.01);
  std::vector<double> errors;
  for (double c : cs) {
    const auto p = MultiquadricParams::make(alpha, c);
    if (c == cs.front()) note_theorem_coverage(r, p);
    const GridFunction L = synthesize(p, GridSpec::automatic(p), spec);
    const int radius = full_radius(L);
    SampleSequence y;
    y.growth_class = k;
    y.growth_constant = 1.0;
    y.first_index = static_cast<long>(std::floor(x_lo)) - radius - 1;
    const long last = static_cast<long>(std::ceil(x_hi)) + radius + 1;
    for (long j = y.first_index; j <= last; ++j) y.values.push_back(std::pow(static_cast<double>(j), k));
    TruncationPolicy t;
    t.radius = radius;
    const SeriesResult s = interpolate(L, y, xs, t);
    double e = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) e = std::max(e, std::abs(s.values[i] - std::pow(xs[i], k)));
    errors.push_back(e);
  }
  r.metrics = {{"sup_error", errors}};
  r.add_verdict("below_tolerance", "sup_error", VerdictRule::all_below, 1e-5);
  if (k >= 1) r.add_verdict("decreasing", "sup_error", VerdictRule::strictly_decreasing, 0.0);
  return r;
}

// ---------------------------------------------------------------------------
// Derivative norms

int derivative_budget(const MultiquadricParams& p) {
  const double a = p.alpha();
  if (p.dim() != 1) return 0;
  if (a == -1.0) return 4;
  if (a > 0.0) return std::min(4, static_cast<int>(std::floor(2.0 * a + 1.0)));
  if (a < -1.0) return std::min(4, static_cast<int>(std::ceil(2.0 * std::abs(a) - 1.0)) - 1);
  return 0;
}

DerivativeL1 lhat_derivative_l1(const MultiquadricParams& p, int k, double freq_extent,
                                const PeriodizationSpec& spec, const QuadSpec& q) {
  if (p.dim() != 1) throw_validation("lhat_derivative_l1: one dimension only");
  const int budget = derivative_budget(p);
  if (k < 1 || k > budget) {
    std::ostringstream msg;
    msg << "smoothness budget: derivative order " << k << " is not covered for alpha = " << p.alpha()
        << " (allowed 1.." << budget << ")";
    throw_validation(msg.str());
  }
  const auto s = spec.resolved(p.c());
  const double c = p.c();
  int cells = 0;
  if (freq_extent > 0.0) {
    cells = static_cast<int>(std::ceil(freq_extent / kPi - 1e-12));
  } else {
    // L_hat <= exp(-c (|xi| - pi)) < 1e-14 once |xi| > pi + 32.3 / c.
    cells = static_cast<int>(std::ceil(1.0 + 32.3 / (c * kPi)));
    if (cells % 2 == 0) ++cells;
  }
  DerivativeL1 out;
  out.freq_extent = cells * kPi;
  const double h0 = default_derivative_step(p);
  auto integrand = [&](double xi) {
    const double dist = std::abs(xi - kTwoPi * std::round(xi / kTwoPi));
    const double h = dist > 0.0 ? std::min(h0, dist / (k + 1.0)) : h0;
    return std::abs(lhat_derivative(p, k, xi, h, s).value);
  };
  for (int m = 0; m < cells; ++m) {
    const double lo = m * kPi;
    const double hi = std::min(out.freq_extent, (m + 1) * kPi);
    const auto r = integrate(integrand, lo, hi, q);
    out.value += 2.0 * r.value;
    out.quad_error += 2.0 * r.abs_error;
  }
  const double scale = std::pow(std::max(1.0, c), k - 1);
  for (int n = cells + (cells % 2 == 0 ? 1 : 2);; n += 2) {
    const double v = lhat(p, n * kPi, s);
    out.tail_bound += 2.0 * 2.0 * v * scale;
    if (v < 1e-300 || v * scale < 1e-18 * std::max(out.tail_bound, 1e-300) || n > cells + 400) break;
  }
  return out;
}

StudyReport lhat_derivative_study(double alpha, const std::vector<double>& cs, int k,
                                  const PeriodizationSpec& spec) {
  require_sweep(cs);
  StudyReport r;
  r.kind = StudyKind::lhat_derivative_l1;
  r.params_swept = {{"alpha", {alpha}}, {"c", cs}, {"k", {static_cast<double>(k)}}};
  std::vector<double> l1;
  std::vector<double> err;
  std::vector<double> tail;
  for (double c : cs) {
    const auto p = MultiquadricParams::make(alpha, c);
    if (c == cs.front()) note_theorem_coverage(r, p);
    const DerivativeL1 d = lhat_derivative_l1(p, k, 0.0, spec);
    l1.push_back(d.value);
    err.push_back(d.quad_error);
    tail.push_back(d.tail_bound);
  }
  r.metrics = {{"l1", l1}, {"quad_error", err}, {"tail_bound", tail}};
  if (cs.size() >= 2) {
    std::vector<double> lc;
    std::vector<double> lv;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      lc.push_back(std::log(cs[i]));
      lv.push_back(std::log(l1[i]));
    }
    r.metrics.push_back({"growth_exponent_in_c", {least_squares(lc, lv).first}});
  }
  r.add_verdict("uniform_in_c", "l1", VerdictRule::ratio_below, 5.0);
  return r;
}

}  // namespace mqc
