#pragma once

#include <array>
#include <span>
#include <vector>

#include "mqcardinal/symbol.hpp"

namespace mqc::detail {

struct SymbolConstants {
  double log_const;   // log |2^{1+alpha} / Gamma(-alpha)|
  int sign;           // sign of Gamma(-alpha)
  double nu;          // alpha + d/2
  double order;       // |nu|
  double log_c;
  double log_origin;  // log|phi_hat(0)| when nu < 0, +inf otherwise
};

SymbolConstants symbol_constants(const MultiquadricParams& p);

/// log|phi_hat(r)|; r == 0 returns the origin value (+inf when singular).
double log_abs_phi_hat(const SymbolConstants& k, double c, double r);

/// Reduces xi to eta in [-pi, pi)^d and returns the lattice shift k0.
std::array<int, 8> nearest_lattice(std::span<const double> xi, std::span<double> eta);

struct PeriodizedTerms {
  std::vector<double> logs;
  double max_log = 0.0;
  bool has_singular = false;
};

/// log|phi_hat(eta + 2 pi j)| for |j|_inf <= J, skipping an exact singular origin.
PeriodizedTerms periodized_terms(const MultiquadricParams& p, const SymbolConstants& k,
                                 std::span<const double> eta, int J);

/// log sum exp(scale * l).
double log_sum_exp(std::span<const double> logs, double max_log, double scale);

}  // namespace mqc::detail
