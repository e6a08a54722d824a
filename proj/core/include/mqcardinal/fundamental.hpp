#pragma once

// Real-space fundamental function L(x) = (2 pi)^{-d} int L_hat(xi) e^{i<x,xi>} dxi.
//
// Synthesis uses the trapezoid rule on a uniform frequency grid evaluated by
// one inverse FFT. With frequency step 2 pi / P the rule returns the
// P-periodization of L with alternating signs (the frequency nodes sit at
// half-steps), so the discretization error is the size of L beyond |x| ~ P/2.
//
// Grid layout per axis, for GridSpec{M, oversample}:
//   P  = M * oversample                  real-space period, integers |k| <= P/2 on nodes
//   s  >= 2M + 1                         samples per unit length, N = s P even and 7-smooth
//   dx = 1 / s,  x_m  = (m - N/2) dx     m = 0 .. N-1
//   dk = 2 pi / P, xi_n = (n - N/2 + 1/2) dk, frequency half-extent Xi = pi s >= (2M + 1) pi

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mqcardinal/quadrature.hpp"
#include "mqcardinal/symbol.hpp"

namespace mqc {

struct GridSpec {
  int M = 32;
  int oversample = 8;
  int d = 1;

  /// A grid sized for (alpha, c): frequency tail below 1e-17, period wide
  /// enough that the aliased tail of L stays near roundoff.
  static GridSpec automatic(const MultiquadricParams& p);

  void validate() const;
  [[nodiscard]] int period() const { return M * oversample; }
  [[nodiscard]] int samples_per_unit() const;
  [[nodiscard]] int points_per_axis() const { return samples_per_unit() * period(); }
  [[nodiscard]] double spacing() const { return 1.0 / samples_per_unit(); }
  [[nodiscard]] double frequency_step() const;
  [[nodiscard]] double frequency_extent() const;
  /// Bytes held during synthesis.
  [[nodiscard]] std::size_t working_bytes() const;
};

struct SynthesisOptions {
  std::size_t memory_budget = std::size_t{1} << 30;
};

/// Samples of L on the centred grid x_m = (m - N/2) dx in each axis,
/// row-major with the last axis fastest.
class GridFunction {
 public:
  GridFunction(MultiquadricParams params, GridSpec grid, std::vector<double> values,
               double discretization_bound, double truncation_bound, double imag_residue);

  [[nodiscard]] const MultiquadricParams& params() const { return params_; }
  [[nodiscard]] const GridSpec& grid() const { return grid_; }
  [[nodiscard]] int dim() const { return grid_.d; }
  [[nodiscard]] int points_per_axis() const { return n_; }
  [[nodiscard]] int samples_per_unit() const { return s_; }
  [[nodiscard]] double spacing() const { return 1.0 / s_; }
  /// Half-width of the grid: nodes cover [-extent, extent).
  [[nodiscard]] double extent() const { return 0.5 * n_ / s_; }
  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] double node(int m) const { return (m - n_ / 2) * spacing(); }

  /// Largest |L| on nodes with |x|_inf >= 0.45 P (aliasing proxy).
  [[nodiscard]] double discretization_bound() const { return discretization_bound_; }
  /// Bound on the neglected frequency tail beyond Xi.
  [[nodiscard]] double truncation_bound() const { return truncation_bound_; }
  /// max(discretization, truncation, 1e-14).
  [[nodiscard]] double error_floor() const;
  /// Largest discarded imaginary part, relative to max |L|.
  [[nodiscard]] double imag_residue() const { return imag_residue_; }

  /// Value at a grid index (one entry per axis).
  [[nodiscard]] double at_index(std::span<const int> idx) const;
  /// L at an integer point of the lattice (d = 1).
  [[nodiscard]] double at_integer(long k) const;
  /// Largest |x| at which value_at is defined (one axis).
  [[nodiscard]] double interpolation_radius() const { return extent() - 2.0 * spacing(); }
  /// Local 4-point cubic Lagrange interpolation (tensor product for d > 1),
  /// exact at nodes. DomainError outside interpolation_radius().
  [[nodiscard]] double value_at(std::span<const double> x) const;
  [[nodiscard]] double value_at(double x) const;

 private:
  MultiquadricParams params_;
  GridSpec grid_;
  int n_;
  int s_;
  std::vector<double> values_;
  double discretization_bound_;
  double truncation_bound_;
  double imag_residue_;
};

/// L on the grid of `grid`. Throws BudgetError if the grid needs more than
/// options.memory_budget bytes, ValidationError if grid.d != params.dim().
GridFunction synthesize(const MultiquadricParams& p, const GridSpec& grid,
                        const PeriodizationSpec& spec = {}, const SynthesisOptions& options = {});

/// Same discretization driven by an arbitrary transform, evaluated pointwise
/// at each frequency node. Used to check synthesize against closed forms.
using SymbolFunction = std::function<double(std::span<const double>)>;
GridFunction synthesize_from_symbol(const MultiquadricParams& p, const GridSpec& grid,
                                    const SymbolFunction& symbol,
                                    const SynthesisOptions& options = {});

/// L(x) by adaptive quadrature of the inverse transform (d <= 2), integrating
/// cell by cell over [m pi, (m + 1) pi] so that every kink of L_hat at the
/// lattice 2 pi Z sits on a cell edge. abs_error is the summed estimate.
QuadResult evaluate_direct(const MultiquadricParams& p, std::span<const double> x,
                           const PeriodizationSpec& spec = {}, const QuadSpec& q = {});
QuadResult evaluate_direct(const MultiquadricParams& p, double x,
                           const PeriodizationSpec& spec = {}, const QuadSpec& q = {});

/// Coefficients c_j with L = sum_j c_j phi(. - j) (d = 1): the Fourier
/// coefficients of 1 / sum_k phi_hat(xi + 2 pi k), with phi_hat in the
/// unnormalised convention int phi e^{-i xi x} dx.
struct CoefficientSet {
  long first_index = 0;        // j of values.front()
  std::vector<double> values;  // c_j for j = first_index .. -first_index
  int grid_size = 0;           // periodic DFT length used

  [[nodiscard]] double at(long j) const;
  /// sum_j c_j e^{i j xi}.
  [[nodiscard]] double series(double xi) const;
};

/// c_j for |j| <= n from a DFT of the reciprocal symbol on 2K + 1 equispaced
/// points of [-pi, pi), K = grid_half (0 selects max(8n, 16384)). The symbol
/// is not smooth at xi = 0, so the aliasing error falls only like K^-2 for
/// alpha = -1; the large default keeps it near 1e-10. With grid_half == n the
/// returned set is the full periodic DFT and series() reproduces the
/// reciprocal symbol exactly on the sample points.
CoefficientSet coefficients(const MultiquadricParams& p, const PeriodizationSpec& spec, int n,
                            int grid_half = 0);

/// The reciprocal periodized symbol 1 / sum_k phi_hat(xi + 2 pi k) in the
/// same convention as coefficients(); zero on 2 pi Z when phi_hat is singular.
double reciprocal_symbol(const MultiquadricParams& p, double xi, const PeriodizationSpec& spec = {});

}  // namespace mqc
