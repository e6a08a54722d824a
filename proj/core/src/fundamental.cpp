#include "mqcardinal/fundamental.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "mqcardinal/errors.hpp"
#include "parallel.hpp"
#include "symbol_detail.hpp"

namespace mqc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxDim = 3;

bool is_seven_smooth(long n) {
  for (long f : {2L, 3L, 5L, 7L}) {
    while (n % f == 0) n /= f;
  }
  return n == 1;
}

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Unravels a flat row-major index into per-axis indices (last axis fastest).
void unravel(std::size_t flat, int n, int d, std::array<int, kMaxDim>& idx) {
  for (int i = d - 1; i >= 0; --i) {
    idx[static_cast<std::size_t>(i)] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
}

void check_grid(const MultiquadricParams& p, const GridSpec& grid, const SynthesisOptions& options) {
  grid.validate();
  if (grid.d != p.dim()) throw_validation("grid dimension does not match the parameter dimension");
  if (grid.working_bytes() > options.memory_budget) {
    std::ostringstream msg;
    msg << "synthesis grid needs " << grid.working_bytes() << " bytes, budget is "
        << options.memory_budget;
    throw_budget(msg.str());
  }
}

// Inverse trapezoid sum of the sampled transform followed by the phase
// corrections for the half-step frequency offset and the centred layouts.
GridFunction finish_synthesis(const MultiquadricParams& p, const GridSpec& grid,
                              std::vector<std::complex<double>>& data) {
  const int n = grid.points_per_axis();
  const int d = grid.d;
  detail::fft_inplace(data, n, d, detail::FftDirection::backward);

  std::vector<std::complex<double>> phase(static_cast<std::size_t>(n));
  const double half_sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
  for (int m = 0; m < n; ++m) {
    const double sgn = (m % 2 == 0 ? 1.0 : -1.0) * half_sign;
    phase[static_cast<std::size_t>(m)] = sgn * std::polar(1.0, kPi * (m - n / 2) / n);
  }
  const double scale = std::pow(grid.frequency_step() / kTwoPi, d);

  std::vector<double> values(data.size());
  double max_re = 0.0;
  double max_im = 0.0;
  std::array<int, kMaxDim> idx{};
  for (std::size_t f = 0; f < data.size(); ++f) {
    unravel(f, n, d, idx);
    std::complex<double> ph = scale;
    for (int i = 0; i < d; ++i) ph *= phase[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    const std::complex<double> v = data[f] * ph;
    values[f] = v.real();
    max_re = std::max(max_re, std::abs(v.real()));
    max_im = std::max(max_im, std::abs(v.imag()));
  }
  const double residue = max_re > 0.0 ? max_im / max_re : max_im;
  if (residue > 1e-10) {
    std::ostringstream msg;
    msg << "synthesis left an imaginary residue of " << residue << " (relative)";
    throw_budget(msg.str());
  }

  // Nodes beyond 0.45 P carry the aliased tail; their size bounds the error.
  const double s = grid.samples_per_unit();
  const double far = 0.45 * grid.period();
  double disc = 0.0;
  for (std::size_t f = 0; f < values.size(); ++f) {
    unravel(f, n, d, idx);
    double xinf = 0.0;
    for (int i = 0; i < d; ++i) xinf = std::max(xinf, std::abs((idx[static_cast<std::size_t>(i)] - n / 2) / s));
    if (xinf >= far) disc = std::max(disc, std::abs(values[f]));
  }
  // L_hat(xi) <= exp(-c (|xi| - |eta|)) with |eta| <= pi sqrt(d).
  const double xi_max = grid.frequency_extent();
  const double trunc = d * std::pow(xi_max / kPi, d - 1) *
                       std::exp(-p.c() * (xi_max - kPi * std::sqrt(static_cast<double>(d)))) /
                       (kPi * p.c());
  return GridFunction(p, grid, std::move(values), disc, trunc, residue);
}

}  // namespace

// ---------------------------------------------------------------------------
// GridSpec

GridSpec GridSpec::automatic(const MultiquadricParams& p) {
  GridSpec g;
  g.d = p.dim();
  const int m_tail = static_cast<int>(std::ceil(6.22 / p.c()));
  int period = 0;
  if (g.d == 1) {
    g.M = std::max(32, m_tail);
    const bool slow = p.alpha() < 0.0;
    period = slow ? 1024 : std::max(256, static_cast<int>(std::ceil(32.0 * p.c())));
  } else {
    g.M = std::max(8, m_tail);
    period = 64;
  }
  g.oversample = std::max(2, (period + g.M - 1) / g.M);
  return g;
}

void GridSpec::validate() const {
  if (M < 1) throw_validation("GridSpec: M must be >= 1");
  if (oversample < 2) throw_validation("GridSpec: oversample must be >= 2");
  if (d < 1 || d > kMaxDim) throw_validation("GridSpec: dimension must be 1, 2 or 3");
}

int GridSpec::samples_per_unit() const {
  validate();
  const long p = period();
  long s = 2L * M + 1;
  while ((s * p) % 2 != 0 || !is_seven_smooth(s * p)) ++s;
  return static_cast<int>(s);
}

double GridSpec::frequency_step() const { return kTwoPi / period(); }

double GridSpec::frequency_extent() const { return kPi * samples_per_unit(); }

std::size_t GridSpec::working_bytes() const {
  const auto n = static_cast<std::size_t>(points_per_axis());
  const auto per = static_cast<std::size_t>(period());
  return ipow(n, d) * (sizeof(std::complex<double>) + sizeof(double)) + ipow(per, d) * sizeof(double);
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(MultiquadricParams params, GridSpec grid, std::vector<double> values,
                           double discretization_bound, double truncation_bound, double imag_residue)
    : params_(params),
      grid_(grid),
      n_(grid.points_per_axis()),
      s_(grid.samples_per_unit()),
      values_(std::move(values)),
      discretization_bound_(discretization_bound),
      truncation_bound_(truncation_bound),
      imag_residue_(imag_residue) {
  if (values_.size() != ipow(static_cast<std::size_t>(n_), grid_.d)) {
    throw_validation("GridFunction: value count does not match the grid");
  }
}

double GridFunction::error_floor() const {
  return std::max({discretization_bound_, truncation_bound_, 1e-14});
}

double GridFunction::at_index(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != grid_.d) throw_domain("GridFunction: index dimension mismatch");
  std::size_t flat = 0;
  for (int i : idx) {
    if (i < 0 || i >= n_) throw_domain("GridFunction: index outside the grid");
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return values_[flat];
}

double GridFunction::at_integer(long k) const {
  if (grid_.d != 1) throw_validation("GridFunction::at_integer: one dimension only");
  const long i = n_ / 2 + k * s_;
  if (i < 0 || i >= n_) throw_domain("GridFunction::at_integer: integer outside the grid");
  return values_[static_cast<std::size_t>(i)];
}

double GridFunction::value_at(std::span<const double> x) const {
  const int d = grid_.d;
  if (static_cast<int>(x.size()) != d) throw_domain("GridFunction::value_at: dimension mismatch");
  std::array<int, kMaxDim> base{};
  std::array<std::array<double, 4>, kMaxDim> w{};
  std::array<int, kMaxDim> lo{};
  std::array<int, kMaxDim> hi{};
  const double radius = interpolation_radius();
  for (int a = 0; a < d; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    if (!(std::abs(x[ua]) <= radius)) {
      std::ostringstream msg;
      msg << "GridFunction::value_at: |x| = " << std::abs(x[ua]) << " beyond the grid radius " << radius;
      throw_domain(msg.str());
    }
    const double u = x[ua] * s_ + n_ / 2;
    const double fl = std::floor(u);
    const double t = u - fl;
    base[ua] = static_cast<int>(fl);
    if (t == 0.0) {
      w[ua] = {0.0, 1.0, 0.0, 0.0};
      lo[ua] = 1;
      hi[ua] = 1;
    } else {
      w[ua] = {-t * (t - 1.0) * (t - 2.0) / 6.0, (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0,
               -(t + 1.0) * t * (t - 2.0) / 2.0, (t + 1.0) * t * (t - 1.0) / 6.0};
      lo[ua] = 0;
      hi[ua] = 3;
    }
  }
  // Tensor-product sum over the active stencil offsets.
  std::array<int, kMaxDim> off{};
  for (int a = 0; a < d; ++a) off[static_cast<std::size_t>(a)] = lo[static_cast<std::size_t>(a)];
  double acc = 0.0;
  while (true) {
    double weight = 1.0;
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      weight *= w[ua][static_cast<std::size_t>(off[ua])];
      flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(base[ua] + off[ua] - 1);
    }
    acc += weight * values_[flat];
    int a = d - 1;
    for (; a >= 0; --a) {
      const auto ua = static_cast<std::size_t>(a);
      if (++off[ua] <= hi[ua]) break;
      off[ua] = lo[ua];
    }
    if (a < 0) break;
  }
  return acc;
}

double GridFunction::value_at(double x) const { return value_at(std::span<const double>(&x, 1)); }

// ---------------------------------------------------------------------------
// Synthesis

GridFunction synthesize(const MultiquadricParams& p, const GridSpec& grid,
                        const PeriodizationSpec& spec, const SynthesisOptions& options) {
  check_grid(p, grid, options);
  const auto s = spec.resolved(p.c());
  const auto k = detail::symbol_constants(p);
  const int d = grid.d;
  const int n = grid.points_per_axis();
  const int period = grid.period();
  const double dk = grid.frequency_step();

  // The periodized symbol only depends on the residue of the frequency index
  // modulo P; tabulate its logarithm once per residue class.
  const std::size_t classes = ipow(static_cast<std::size_t>(period), d);
  std::vector<double> log_den(classes);
  std::vector<double> eta_axis(static_cast<std::size_t>(period));
  for (int r = 0; r < period; ++r) {
    double e = (r + 0.5) * dk;
    if (e >= kPi) e -= kTwoPi;
    eta_axis[static_cast<std::size_t>(r)] = e;
  }
  detail::parallel_for(classes, [&](std::size_t begin, std::size_t end) {
    std::array<int, kMaxDim> idx{};
    std::array<double, kMaxDim> eta{};
    for (std::size_t f = begin; f < end; ++f) {
      unravel(f, period, d, idx);
      for (int i = 0; i < d; ++i) {
        eta[static_cast<std::size_t>(i)] = eta_axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      }
      const auto terms = detail::periodized_terms(p, k, std::span<const double>(eta.data(), static_cast<std::size_t>(d)), s.J);
      log_den[f] = detail::log_sum_exp(terms.logs, terms.max_log, 1.0);
    }
  });

  const std::size_t total = ipow(static_cast<std::size_t>(n), d);
  std::vector<std::complex<double>> data(total);
  detail::parallel_for(total, [&](std::size_t begin, std::size_t end) {
    std::array<int, kMaxDim> idx{};
    for (std::size_t f = begin; f < end; ++f) {
      unravel(f, n, d, idx);
      double r2 = 0.0;
      double eta2 = 0.0;
      std::size_t cls = 0;
      int parity = 0;
      for (int i = 0; i < d; ++i) {
        const int j = idx[static_cast<std::size_t>(i)];
        const int shifted = j - n / 2;
        const double xi = (shifted + 0.5) * dk;
        const int res = ((shifted % period) + period) % period;
        const double e = eta_axis[static_cast<std::size_t>(res)];
        r2 += xi * xi;
        eta2 += e * e;
        cls = cls * static_cast<std::size_t>(period) + static_cast<std::size_t>(res);
        parity += j;
      }
      const double r = std::sqrt(r2);
      double v = 0.0;
      // L_hat <= exp(-c (|xi| - |eta|)); skip values that underflow anyway.
      if (p.c() * (r - std::sqrt(eta2)) <= 745.0) {
        v = std::exp(detail::log_abs_phi_hat(k, p.c(), r) - log_den[cls]);
      }
      data[f] = (parity % 2 == 0) ? v : -v;
    }
  });
  return finish_synthesis(p, grid, data);
}

GridFunction synthesize_from_symbol(const MultiquadricParams& p, const GridSpec& grid,
                                    const SymbolFunction& symbol, const SynthesisOptions& options) {
  check_grid(p, grid, options);
  const int d = grid.d;
  const int n = grid.points_per_axis();
  const double dk = grid.frequency_step();
  const std::size_t total = ipow(static_cast<std::size_t>(n), d);
  std::vector<std::complex<double>> data(total);
  detail::parallel_for(total, [&](std::size_t begin, std::size_t end) {
    std::array<int, kMaxDim> idx{};
    std::array<double, kMaxDim> xi{};
    for (std::size_t f = begin; f < end; ++f) {
      unravel(f, n, d, idx);
      int parity = 0;
      for (int i = 0; i < d; ++i) {
        const int j = idx[static_cast<std::size_t>(i)];
        xi[static_cast<std::size_t>(i)] = (j - n / 2 + 0.5) * dk;
        parity += j;
      }
      const double v = symbol(std::span<const double>(xi.data(), static_cast<std::size_t>(d)));
      data[f] = (parity % 2 == 0) ? v : -v;
    }
  });
  return finish_synthesis(p, grid, data);
}

// ---------------------------------------------------------------------------
// Direct quadrature

QuadResult evaluate_direct(const MultiquadricParams& p, std::span<const double> x,
                           const PeriodizationSpec& spec, const QuadSpec& q) {
  q.validate();
  const int d = p.dim();
  if (static_cast<int>(x.size()) != d) throw_domain("evaluate_direct: dimension mismatch");
  if (d > 2) throw_validation("evaluate_direct: dimension above 2 is not supported");
  const auto s = spec.resolved(p.c());
  const double c = p.c();
  // Cells whose exponential envelope falls below this contribute nothing.
  const double cutoff = std::max(q.abs_tol * 1e-3, 1e-300);

  QuadResult out;
  if (d == 1) {
    const double x0 = x[0];
    auto f = [&](double xi) { return lhat(p, xi, s) * std::cos(x0 * xi); };
    for (int m = 0;; ++m) {
      const double envelope = m == 0 ? 1.0 : std::exp(-c * (m - 1) * kPi);
      if (envelope * kPi < cutoff) {
        out.abs_error += envelope / (c * kPi);
        break;
      }
      const auto r = integrate(f, m * kPi, (m + 1) * kPi, q);
      out.value += r.value / kPi;
      out.abs_error += r.abs_error / kPi;
      out.subdivisions += r.subdivisions;
    }
    return out;
  }

  const double x1 = x[0];
  const double x2 = x[1];
  const double root2pi = std::numbers::sqrt2 * kPi;
  for (int ring = 0;; ++ring) {
    bool any = false;
    // Cells on the shell max(a, b) == ring.
    for (int a = 0; a <= ring; ++a) {
      for (int b = 0; b <= ring; ++b) {
        if (std::max(a, b) != ring) continue;
        const double rmin = kPi * std::hypot(a, b);
        const double envelope = ring == 0 ? 1.0 : std::exp(-c * std::max(0.0, rmin - root2pi));
        if (envelope * kPi * kPi < cutoff) continue;
        any = true;
        auto outer = [&](double xi1) {
          auto g = [&](double xi2) {
            const std::array<double, 2> xi{xi1, xi2};
            return lhat(p, xi, s) * std::cos(x2 * xi2);
          };
          return integrate(g, b * kPi, (b + 1) * kPi, q).value * std::cos(x1 * xi1);
        };
        const auto r = integrate(outer, a * kPi, (a + 1) * kPi, q);
        out.value += r.value / (kPi * kPi);
        out.abs_error += r.abs_error / (kPi * kPi);
        out.subdivisions += r.subdivisions;
      }
    }
    if (!any) {
      out.abs_error += cutoff;
      break;
    }
  }
  return out;
}

QuadResult evaluate_direct(const MultiquadricParams& p, double x, const PeriodizationSpec& spec,
                           const QuadSpec& q) {
  return evaluate_direct(p, std::span<const double>(&x, 1), spec, q);
}

// ---------------------------------------------------------------------------
// Coefficients

double reciprocal_symbol(const MultiquadricParams& p, double xi, const PeriodizationSpec& spec) {
  if (p.dim() != 1) throw_validation("reciprocal_symbol: one dimension only");
  const double eta = xi - kTwoPi * std::round(xi / kTwoPi);
  if (eta == 0.0 && p.singular_at_origin()) return 0.0;
  const LogSigned den = periodized_symbol_log(p, xi, spec);
  // phi_hat in the unnormalised convention is sqrt(2 pi) times the symbol above.
  return den.sign / std::exp(den.log_abs + 0.5 * std::log(kTwoPi));
}

double CoefficientSet::at(long j) const {
  const long i = j - first_index;
  if (i < 0 || i >= static_cast<long>(values.size())) throw_domain("CoefficientSet: index outside range");
  return values[static_cast<std::size_t>(i)];
}

double CoefficientSet::series(double xi) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += values[i] * std::cos((first_index + static_cast<long>(i)) * xi);
  }
  return acc;
}

CoefficientSet coefficients(const MultiquadricParams& p, const PeriodizationSpec& spec, int n,
                            int grid_half) {
  if (p.dim() != 1) throw_validation("coefficients: one dimension only");
  if (n < 1) throw_validation("coefficients: n_coeffs must be >= 1");
  if (grid_half == 0) grid_half = std::max(8 * n, 16384);
  if (grid_half < n) throw_validation("coefficients: grid_half must be >= n");
  const auto s = spec.resolved(p.c());
  const int g = 2 * grid_half + 1;

  std::vector<std::complex<double>> data(static_cast<std::size_t>(g));
  detail::parallel_for(static_cast<std::size_t>(g), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      // Slot i holds m = i (i <= K) or m = i - g, i.e. m mod g.
      const long m = static_cast<long>(i) <= grid_half ? static_cast<long>(i) : static_cast<long>(i) - g;
      data[i] = reciprocal_symbol(p, kTwoPi * static_cast<double>(m) / g, s);
    }
  });
  detail::fft_inplace(data, g, 1, detail::FftDirection::forward);

  CoefficientSet out;
  out.first_index = -n;
  out.grid_size = g;
  out.values.resize(static_cast<std::size_t>(2 * n + 1));
  for (long j = -n; j <= n; ++j) {
    const long slot = ((j % g) + g) % g;
    out.values[static_cast<std::size_t>(j + n)] = data[static_cast<std::size_t>(slot)].real() / g;
  }
  return out;
}

}  // namespace mqc
