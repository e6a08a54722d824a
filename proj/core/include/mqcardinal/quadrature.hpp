#pragma once

#include <functional>

#include "mqcardinal/specfun.hpp"

namespace mqc {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature on [a, b].
/// Endpoints are never evaluated, so integrable endpoint singularities are
/// allowed. Throws BudgetError if max_subdivisions is reached before
/// max(abs_tol, rel_tol * |I|) is met.
QuadResult integrate(const Integrand& f, double a, double b, const QuadSpec& q = {});

/// Integral over [a, inf) through t = a + scale * (1 - u) / u, u in (0, 1].
/// `scale` should be the decay length of the integrand.
QuadResult integrate_to_infinity(const Integrand& f, double a, double scale,
                                 const QuadSpec& q = {});

}  // namespace mqc
