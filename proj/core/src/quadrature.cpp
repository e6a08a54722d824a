#include "mqcardinal/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "mqcardinal/errors.hpp"

namespace mqc {
namespace {

// Kronrod abscissae (descending, last is the centre) and weights, with the
// embedded 7-point Gauss weights at the odd positions xgk[1], xgk[3], ...
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod_15(const Integrand& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double value = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, value, err};
}

}  // namespace

void QuadSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw_validation("QuadSpec: tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw_validation("QuadSpec: max_subdivisions must be at least 1");
  }
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadSpec& q) {
  q.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw_domain("integrate: interval endpoints must be finite");
  }
  if (a == b) return {};
  const double sgn = b > a ? 1.0 : -1.0;
  if (sgn < 0) std::swap(a, b);

  std::priority_queue<Segment> heap;
  Segment first = gauss_kronrod_15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  int subdivisions = 1;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  while (total_err > std::max(q.abs_tol, q.rel_tol * std::abs(total))) {
    if (!std::isfinite(total) || !std::isfinite(total_err)) {
      throw_budget("integrate: integrand produced a non-finite value");
    }
    if (subdivisions >= q.max_subdivisions) {
      std::ostringstream msg;
      msg << "integrate: subdivision budget (" << q.max_subdivisions
          << ") exhausted with error estimate " << total_err;
      throw_budget(msg.str());
    }
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (std::abs(worst.b - worst.a) <= 4.0 * eps * std::max(std::abs(worst.a), 1.0)) {
      // Interval cannot be split further; the remaining error is roundoff.
      break;
    }
    heap.pop();
    const Segment left = gauss_kronrod_15(f, worst.a, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }

  // Re-sum to shed the drift accumulated by incremental updates.
  double value = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return {sgn * value, err, subdivisions};
}

QuadResult integrate_to_infinity(const Integrand& f, double a, double scale,
                                 const QuadSpec& q) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw_domain("integrate_to_infinity: scale must be positive and finite");
  }
  auto mapped = [&](double u) {
    const double s = (1.0 - u) / u;
    const double fx = f(a + scale * s);
    return fx == 0.0 ? 0.0 : fx * scale / (u * u);
  };
  return integrate(mapped, 0.0, 1.0, q);
}

}  // namespace mqc
