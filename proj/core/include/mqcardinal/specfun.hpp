#pragma once

// Special-function kernel: signed log-Gamma, exponentially scaled modified
// Bessel function of the second kind of real order, and the Laplace-type
// integral F_alpha that serves as an independent route to the multiquadric
// Fourier transform.

#include <cmath>
#include <limits>

namespace mqc {

/// A real number stored as (log|v|, sign v). sign == 0 iff v == 0.
struct LogSigned {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static LogSigned zero() { return {}; }
  static LogSigned from_value(double v);

  [[nodiscard]] double value() const {
    return sign == 0 ? 0.0 : sign * std::exp(log_abs);
  }
  [[nodiscard]] bool is_zero() const { return sign == 0; }

  friend LogSigned operator*(const LogSigned& a, const LogSigned& b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.log_abs + b.log_abs, a.sign * b.sign};
  }
  friend LogSigned operator/(const LogSigned& a, const LogSigned& b);
};

/// Tolerances for the adaptive Gauss-Kronrod driver.
struct QuadSpec {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;

  void validate() const;
};

/// log|Gamma(x)| and the sign of Gamma(x). Throws DomainError at the poles
/// x = 0, -1, -2, ...
LogSigned log_gamma_signed(double x);

/// 1 / Gamma(1 + mu) and 1 / Gamma(1 - mu) for |mu| <= 1/2 from the Taylor
/// series of the reciprocal Gamma function. Exposed for testing.
struct ReciprocalGammaPair {
  double plus;   // 1 / Gamma(1 + mu)
  double minus;  // 1 / Gamma(1 - mu)
  double gam1;   // (minus - plus) / (2 mu), continuous at mu = 0
  double gam2;   // (minus + plus) / 2
};
ReciprocalGammaPair reciprocal_gamma_pair(double mu);

/// e^z K_nu(z) for real order nu >= 0 and z > 0.
///
/// Temme's series for z <= 2, Steed's continued fraction (CF2) above, and
/// forward recurrence from |mu| <= 1/2 up to nu. Throws DomainError for
/// z <= 0, nu < 0 or non-finite input. The result may overflow to +inf for
/// huge orders at tiny arguments; use log_bessel_k_scaled there.
double bessel_k_scaled(double nu, double z);

/// log(e^z K_nu(z)). Finite for every finite nu >= 0 and z > 0.
double log_bessel_k_scaled(double nu, double z);

/// F_alpha(r) = e^{-c r} * int_0^inf e^{-c t} t^alpha (t + 2 r)^alpha dt.
///
/// Requires alpha > -1 (and alpha > -1/2 when r == 0, where the integrand
/// degenerates to t^{2 alpha}). The integral is split at t = 2r and t = 1/c;
/// the algebraic endpoint singularity for negative alpha is removed by a
/// power substitution and the unbounded piece is mapped onto (0, 1].
/// Throws BudgetError when the tolerance is not met within the budget.
double f_alpha(double alpha, double c, double r, const QuadSpec& q = {});

/// Numerically stable log(exp(a) + exp(b)).
inline double log_add_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

}  // namespace mqc
