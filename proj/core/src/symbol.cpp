#include "mqcardinal/symbol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "mqcardinal/errors.hpp"
#include "symbol_detail.hpp"

namespace mqc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_nonneg_integer(double a) { return a >= 0.0 && a == std::floor(a); }

}  // namespace

// ---------------------------------------------------------------------------
// Parameters

MultiquadricParams MultiquadricParams::make(double alpha, double c, int d) {
  if (!std::isfinite(alpha) || !std::isfinite(c)) {
    throw_validation("multiquadric parameters must be finite");
  }
  if (is_nonneg_integer(alpha)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha
        << ": alpha in N0 excluded (the transform is not a function)";
    throw_validation(msg.str());
  }
  if (!(c > 0.0)) throw_validation("shape parameter c must be positive");
  if (d < 1) throw_validation("dimension d must be at least 1");
  return MultiquadricParams(alpha, c, d);
}

bool MultiquadricParams::operator_valid() const {
  if (alpha_ == -1.0) return true;
  return alpha_ < -1.5 || alpha_ >= 0.5;  // N already excluded by make()
}

bool MultiquadricParams::within_decay_theorems() const {
  return d_ == 1 && (alpha_ > 0.0 || alpha_ <= -1.0);
}

int PeriodizationSpec::default_J(double c) {
  return std::max(4, static_cast<int>(std::ceil(1.0 + 28.0 / (kTwoPi * c))));
}

PeriodizationSpec PeriodizationSpec::resolved(double c) const {
  validate();
  PeriodizationSpec out = *this;
  if (out.J == 0) out.J = default_J(c);
  const double needed = 1.0 + std::log(1.0 / tail_tol) / (kTwoPi * c);
  if (std::exp(-kTwoPi * c * (out.J - 1)) > tail_tol) {
    out.J = static_cast<int>(std::ceil(needed));
  }
  return out;
}

void PeriodizationSpec::validate() const {
  if (J < 0) throw_validation("PeriodizationSpec: J must be >= 1 (or 0 for automatic)");
  if (!(tail_tol > 0.0)) throw_validation("PeriodizationSpec: tail_tol must be positive");
}

// ---------------------------------------------------------------------------
// phi and phi_hat

double phi(const MultiquadricParams& p, std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return std::pow(r2 + p.c() * p.c(), p.alpha());
}

double phi(const MultiquadricParams& p, double x) {
  return std::pow(x * x + p.c() * p.c(), p.alpha());
}

namespace detail {

SymbolConstants symbol_constants(const MultiquadricParams& p) {
  SymbolConstants k{};
  const LogSigned g = log_gamma_signed(-p.alpha());
  k.log_const = (1.0 + p.alpha()) * std::log(2.0) - g.log_abs;
  k.sign = g.sign;
  k.nu = p.signed_order();
  k.order = std::abs(k.nu);
  k.log_c = std::log(p.c());
  if (k.nu < 0.0) {
    const double mu = k.order;
    k.log_origin = k.log_const + log_gamma_signed(mu).log_abs + (mu - 1.0) * std::log(2.0) -
                   2.0 * mu * k.log_c;
  } else {
    k.log_origin = kInf;
  }
  return k;
}

double log_abs_phi_hat(const SymbolConstants& k, double c, double r) {
  if (r == 0.0) return k.log_origin;
  const double z = c * r;
  return k.log_const + k.nu * (k.log_c - std::log(r)) + log_bessel_k_scaled(k.order, z) - z;
}

std::array<int, 8> nearest_lattice(std::span<const double> xi, std::span<double> eta) {
  std::array<int, 8> k0{};
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const double m = std::round(xi[i] / kTwoPi);
    k0[i] = static_cast<int>(m);
    eta[i] = xi[i] - kTwoPi * m;
  }
  return k0;
}

PeriodizedTerms periodized_terms(const MultiquadricParams& p, const SymbolConstants& k,
                                 std::span<const double> eta, int J) {
  const int d = p.dim();
  PeriodizedTerms out;
  std::array<int, 8> j{};
  for (int i = 0; i < d; ++i) j[static_cast<std::size_t>(i)] = -J;
  double max_log = -kInf;
  const std::size_t side = static_cast<std::size_t>(2 * J + 1);
  std::size_t count = 1;
  for (int i = 0; i < d; ++i) count *= side;
  out.logs.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) {
      const double v = eta[static_cast<std::size_t>(i)] + kTwoPi * j[static_cast<std::size_t>(i)];
      r2 += v * v;
    }
    const double r = std::sqrt(r2);
    if (r == 0.0 && k.nu >= 0.0) {
      out.has_singular = true;
    } else {
      const double l = log_abs_phi_hat(k, p.c(), r);
      out.logs.push_back(l);
      max_log = std::max(max_log, l);
    }
    for (int i = 0; i < d; ++i) {
      auto& ji = j[static_cast<std::size_t>(i)];
      if (++ji <= J) break;
      ji = -J;
    }
  }
  out.max_log = max_log;
  return out;
}

double log_sum_exp(std::span<const double> logs, double max_log, double scale) {
  if (logs.empty()) return -kInf;
  const double m = scale * max_log;
  double s = 0.0;
  for (double l : logs) s += std::exp(scale * l - m);
  return m + std::log(s);
}

}  // namespace detail

LogSigned log_phi_hat(const MultiquadricParams& p, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw_domain("log_phi_hat: r must be positive and finite");
  const auto k = detail::symbol_constants(p);
  return {detail::log_abs_phi_hat(k, p.c(), r), k.sign};
}

LogSigned log_phi_hat_origin(const MultiquadricParams& p) {
  const auto k = detail::symbol_constants(p);
  if (k.nu >= 0.0) throw_domain("log_phi_hat_origin: transform is singular at the origin");
  return {k.log_origin, k.sign};
}

double laplace_route_phi_hat(const MultiquadricParams& p, double r, const QuadSpec& q) {
  if (p.dim() != 1) throw_validation("laplace_route_phi_hat: one dimension only");
  if (!(r > 0.0)) throw_domain("laplace_route_phi_hat: r must be positive");
  const double a = p.alpha();
  const double c = p.c();
  const LogSigned g_neg = log_gamma_signed(-a);
  if (a >= -0.5) {
    const LogSigned g_pos = log_gamma_signed(a + 1.0);
    const double log_a = 0.5 * std::log(2.0 * kPi) - g_neg.log_abs - g_pos.log_abs;
    const int sign = g_neg.sign * g_pos.sign;
    const double log_pref = log_a + (2.0 * a + 1.0) * (std::log(c) - std::log(r));
    return sign * std::exp(log_pref) * f_alpha(a, c, r, q);
  }
  const double log_b = (2.0 * a + 1.5) * std::log(2.0) + 0.5 * std::log(kPi) - 2.0 * g_neg.log_abs;
  return std::exp(log_b) * f_alpha(-a - 1.0, c, r, q);
}

// ---------------------------------------------------------------------------
// Periodization and L_hat

LogSigned periodized_symbol_log(const MultiquadricParams& p, std::span<const double> xi,
                                const PeriodizationSpec& spec) {
  if (static_cast<int>(xi.size()) != p.dim()) throw_domain("periodized_symbol_log: dimension mismatch");
  if (p.dim() > 8) throw_validation("dimension above 8 is not supported");
  const auto s = spec.resolved(p.c());
  const auto k = detail::symbol_constants(p);
  std::array<double, 8> eta{};
  detail::nearest_lattice(xi, std::span<double>(eta.data(), xi.size()));
  const auto terms = detail::periodized_terms(p, k, std::span<const double>(eta.data(), xi.size()), s.J);
  if (terms.logs.empty()) return LogSigned::zero();
  return {detail::log_sum_exp(terms.logs, terms.max_log, 1.0), k.sign};
}

LogSigned periodized_symbol_log(const MultiquadricParams& p, double xi,
                                const PeriodizationSpec& spec) {
  return periodized_symbol_log(p, std::span<const double>(&xi, 1), spec);
}

double lhat(const MultiquadricParams& p, std::span<const double> xi, const PeriodizationSpec& spec) {
  const std::size_t d = xi.size();
  if (static_cast<int>(d) != p.dim()) throw_domain("lhat: dimension mismatch");
  if (d > 8) throw_validation("dimension above 8 is not supported");
  for (double v : xi) {
    if (!std::isfinite(v)) throw_domain("lhat: non-finite frequency");
  }
  const auto s = spec.resolved(p.c());
  const auto k = detail::symbol_constants(p);
  std::array<double, 8> eta{};
  const auto k0 = detail::nearest_lattice(xi, std::span<double>(eta.data(), d));
  bool at_lattice = true;
  bool at_origin = true;
  double r_eta2 = 0.0;
  double r_xi2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    at_lattice = at_lattice && eta[i] == 0.0;
    at_origin = at_origin && k0[i] == 0;
    r_eta2 += eta[i] * eta[i];
    r_xi2 += xi[i] * xi[i];
  }
  if (at_lattice && k.nu >= 0.0) return at_origin ? 1.0 : 0.0;

  const auto terms = detail::periodized_terms(p, k, std::span<const double>(eta.data(), d), s.J);
  const double log_den = detail::log_sum_exp(terms.logs, terms.max_log, 1.0);
  const double log_num = at_origin ? detail::log_abs_phi_hat(k, p.c(), std::sqrt(r_eta2))
                                   : detail::log_abs_phi_hat(k, p.c(), std::sqrt(r_xi2));
  return std::min(1.0, std::exp(log_num - log_den));
}

double lhat(const MultiquadricParams& p, double xi, const PeriodizationSpec& spec) {
  return lhat(p, std::span<const double>(&xi, 1), spec);
}

double lhat_square_sum(const MultiquadricParams& p, std::span<const double> xi,
                       const PeriodizationSpec& spec) {
  const std::size_t d = xi.size();
  if (static_cast<int>(d) != p.dim()) throw_domain("lhat_square_sum: dimension mismatch");
  if (d > 8) throw_validation("dimension above 8 is not supported");
  const auto s = spec.resolved(p.c());
  const auto k = detail::symbol_constants(p);
  std::array<double, 8> eta{};
  detail::nearest_lattice(xi, std::span<double>(eta.data(), d));
  const auto terms = detail::periodized_terms(p, k, std::span<const double>(eta.data(), d), s.J);
  if (terms.has_singular) return 1.0;
  const double l1 = detail::log_sum_exp(terms.logs, terms.max_log, 1.0);
  const double l2 = detail::log_sum_exp(terms.logs, terms.max_log, 2.0);
  return std::exp(l2 - 2.0 * l1);
}

double lhat_square_sum(const MultiquadricParams& p, double xi, const PeriodizationSpec& spec) {
  return lhat_square_sum(p, std::span<const double>(&xi, 1), spec);
}

double lhat_poisson_closed(double c, double xi) {
  if (!(c > 0.0)) throw_domain("lhat_poisson_closed: c must be positive");
  const double m = std::round(xi / kTwoPi);
  const double eta = xi - kTwoPi * m;
  const double b = 1.0 / std::expm1(kTwoPi * c);  // q / (1 - q), q = e^{-2 pi c}
  // Divide numerator and denominator by e^{-c|eta|}.
  const double den = 1.0 + 2.0 * std::cosh(c * eta) * std::exp(c * std::abs(eta)) * b;
  return std::exp(-c * (std::abs(xi) - std::abs(eta))) / den;
}

// ---------------------------------------------------------------------------
// Derivatives

double default_derivative_step(const MultiquadricParams& p) {
  return std::min(0.1, 0.1 / p.c());
}

DerivativeEstimate lhat_derivative(const MultiquadricParams& p, int k, double xi, double h,
                                   const PeriodizationSpec& spec, int max_order) {
  if (p.dim() != 1) throw_validation("lhat_derivative: one dimension only");
  if (k < 1 || k > max_order) {
    std::ostringstream msg;
    msg << "lhat_derivative: order " << k << " outside [1, " << max_order << "]";
    throw_validation(msg.str());
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw_validation("lhat_derivative: step must be positive");
  const double nu = p.signed_order();
  const double lattice_dist = std::abs(xi - kTwoPi * std::round(xi / kTwoPi));
  if (nu > 0.0 && nu < k && lattice_dist < h) {
    throw_validation("lhat_derivative: xi within one step of 2 pi Z where lhat is not k times differentiable");
  }

  const auto s = spec.resolved(p.c());
  // Binomial weights of the k-th central difference with nodes xi + (k/2 - i) h.
  std::array<double, 16> binom{};
  binom[0] = 1.0;
  for (int i = 1; i <= k; ++i) {
    for (int j = i; j >= 1; --j) binom[static_cast<std::size_t>(j)] += binom[static_cast<std::size_t>(j - 1)];
  }
  auto difference = [&](double step) {
    double acc = 0.0;
    for (int i = 0; i <= k; ++i) {
      const double w = (i % 2 == 0 ? 1.0 : -1.0) * binom[static_cast<std::size_t>(i)];
      acc += w * lhat(p, xi + (0.5 * k - i) * step, s);
    }
    return acc / std::pow(step, k);
  };

  constexpr int kTab = 10;
  constexpr double kCon = 1.4;
  constexpr double kCon2 = kCon * kCon;
  constexpr double kSafe = 2.0;
  std::array<std::array<double, kTab>, kTab> a{};
  double hh = h;
  a[0][0] = difference(hh);
  DerivativeEstimate best{a[0][0], std::numeric_limits<double>::max()};
  for (int i = 1; i < kTab; ++i) {
    hh /= kCon;
    a[0][static_cast<std::size_t>(i)] = difference(hh);
    double fac = kCon2;
    for (int j = 1; j <= i; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const auto ui = static_cast<std::size_t>(i);
      a[uj][ui] = (a[uj - 1][ui] * fac - a[uj - 1][ui - 1]) / (fac - 1.0);
      fac *= kCon2;
      const double errt = std::max(std::abs(a[uj][ui] - a[uj - 1][ui]),
                                   std::abs(a[uj][ui] - a[uj - 1][ui - 1]));
      if (errt <= best.error) {
        best.error = errt;
        best.value = a[uj][ui];
      }
    }
    const auto ui = static_cast<std::size_t>(i);
    if (std::abs(a[ui][ui] - a[ui - 1][ui - 1]) >= kSafe * best.error) break;
  }
  if (!std::isfinite(best.value) || best.error > 1e-4 * (1.0 + std::abs(best.value))) {
    std::ostringstream msg;
    msg << "lhat_derivative: extrapolation did not converge (error " << best.error << ")";
    throw_budget(msg.str());
  }
  return best;
}

}  // namespace mqc
