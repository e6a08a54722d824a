#pragma once

// Fourier-side objects of multiquadric cardinal interpolation.
//
// For phi(x) = (|x|^2 + c^2)^alpha on R^d the generalized Fourier transform is
//
//   phi_hat(r) = 2^{1+alpha} / Gamma(-alpha) * (c / r)^{alpha + d/2}
//                * K_{|alpha + d/2|}(c r),          r = |xi| > 0,
//
// normalised with the (2 pi)^{-d/2} convention (multiply by (2 pi)^{d/2} to
// get the transform int phi(x) e^{-i<xi,x>} dx). The constant cancels in
//
//   L_hat(xi) = phi_hat(xi) / sum_j phi_hat(xi + 2 pi j),
//
// so only coefficient extraction has to undo it. Everything is computed as
// log-magnitudes; ratios are formed as exp(log-difference).
//
// In one dimension the same transform has a Laplace-type representation:
//
//   alpha >= -1/2:  phi_hat(r) = A_alpha c^{2 alpha + 1} r^{-2 alpha - 1} F_alpha(r),
//                   A_alpha = sqrt(2 pi) / (Gamma(-alpha) Gamma(alpha + 1))
//                           = -sqrt(2 / pi) sin(pi alpha),
//   alpha <  -1/2:  phi_hat(r) = B_alpha F_{-alpha-1}(r),
//                   B_alpha = 2^{2 alpha + 3/2} sqrt(pi) / Gamma(-alpha)^2,
//
// obtained from the integral representation of K_nu with r = c|xi| and the
// substitution x|xi| = t + |xi|.

#include <span>
#include <vector>

#include "mqcardinal/specfun.hpp"

namespace mqc {

/// Exponent, shape parameter and dimension of a general multiquadric.
class MultiquadricParams {
 public:
  /// Throws ValidationError for alpha in N0 ("alpha in N0 excluded"),
  /// c <= 0 or d < 1.
  static MultiquadricParams make(double alpha, double c, int d = 1);

  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double c() const { return c_; }
  [[nodiscard]] int dim() const { return d_; }

  /// alpha + d/2; the Bessel order is its absolute value.
  [[nodiscard]] double signed_order() const { return alpha_ + 0.5 * d_; }

  /// The transform is a function for every admissible alpha.
  [[nodiscard]] bool ft_valid() const { return true; }
  /// alpha in (-inf, -3/2) u [1/2, inf) \ N, or alpha == -1.
  [[nodiscard]] bool operator_valid() const;
  [[nodiscard]] bool poisson() const { return alpha_ == -1.0 && d_ == 1; }
  /// phi_hat blows up at the origin (alpha + d/2 >= 0).
  [[nodiscard]] bool singular_at_origin() const { return signed_order() >= 0.0; }
  /// Univariate decay theorems cover alpha > 0 and alpha <= -1.
  [[nodiscard]] bool within_decay_theorems() const;

 private:
  MultiquadricParams(double alpha, double c, int d) : alpha_(alpha), c_(c), d_(d) {}
  double alpha_;
  double c_;
  int d_;
};

/// Truncation of the periodization to the cube |j|_inf <= J.
struct PeriodizationSpec {
  int J = 0;  // 0 selects the default for the shape parameter
  double tail_tol = 1e-12;

  /// Default J = max(4, ceil(1 + 28 / (2 pi c))).
  static int default_J(double c);
  /// Fills in J and raises it until exp(-2 pi c (J - 1)) <= tail_tol.
  [[nodiscard]] PeriodizationSpec resolved(double c) const;
  void validate() const;
};

double phi(const MultiquadricParams& p, std::span<const double> x);
double phi(const MultiquadricParams& p, double x);

/// log|phi_hat(r)| and its sign (constant in r). DomainError for r <= 0.
LogSigned log_phi_hat(const MultiquadricParams& p, double r);

/// Finite value of phi_hat at the origin when alpha + d/2 < 0.
/// DomainError when the transform is singular there.
LogSigned log_phi_hat_origin(const MultiquadricParams& p);

/// phi_hat(r) through F_alpha and adaptive quadrature (d = 1 only); an
/// independent route used to cross-check log_phi_hat.
double laplace_route_phi_hat(const MultiquadricParams& p, double r, const QuadSpec& q = {});

/// log sum_{|j|_inf <= J} |phi_hat(xi + 2 pi j)|.
///
/// xi is first reduced to [-pi, pi)^d, so the result is exactly 2 pi
/// periodic. A term that sits exactly on the singular origin is skipped;
/// callers handle lattice points themselves.
LogSigned periodized_symbol_log(const MultiquadricParams& p, std::span<const double> xi,
                                const PeriodizationSpec& spec = {});
LogSigned periodized_symbol_log(const MultiquadricParams& p, double xi,
                                const PeriodizationSpec& spec = {});

/// Fundamental-function transform, in [0, 1].
///
/// At lattice points 2 pi k the value is delta_{0,k} when phi_hat is singular
/// at the origin; otherwise the regular quotient is returned (for alpha < -1/2
/// in one dimension this is strictly below 1 at xi = 0).
double lhat(const MultiquadricParams& p, std::span<const double> xi,
            const PeriodizationSpec& spec = {});
double lhat(const MultiquadricParams& p, double xi, const PeriodizationSpec& spec = {});

/// sum_{|k|_inf <= J} lhat(xi + 2 pi k)^2, formed as
/// sum phi_hat^2 / (sum phi_hat)^2.
double lhat_square_sum(const MultiquadricParams& p, std::span<const double> xi,
                       const PeriodizationSpec& spec = {});
double lhat_square_sum(const MultiquadricParams& p, double xi,
                       const PeriodizationSpec& spec = {});

/// Closed form of lhat for alpha = -1, d = 1, where phi_hat is a two-sided
/// exponential and the periodization is a pair of geometric series:
///   e^{-c|xi|} / (e^{-c|eta|} + 2 cosh(c eta) / (e^{2 pi c} - 1)),
/// eta the reduction of xi to [-pi, pi).
double lhat_poisson_closed(double c, double xi);

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// k-th derivative of lhat (d = 1) from central differences with Ridders'
/// Richardson extrapolation, starting at step h and shrinking by 1.4.
///
/// ValidationError if k is outside [1, max_order], or if 0 < alpha + 1/2 < k
/// and xi lies within h of 2 pi Z. BudgetError if the extrapolation does not
/// settle below 1e-4 (1 + |value|).
DerivativeEstimate lhat_derivative(const MultiquadricParams& p, int k, double xi, double h,
                                   const PeriodizationSpec& spec = {}, int max_order = 4);

/// A starting step that resolves the 1/c transition width of lhat.
double default_derivative_step(const MultiquadricParams& p);

}  // namespace mqc
