#include "mqcardinal/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "mqcardinal/errors.hpp"
#include "mqcardinal/quadrature.hpp"

namespace mqc {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1e-16;
constexpr int kMaxIter = 10000;

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Taylor coefficients of 1/Gamma(z) = sum_k kRecipGamma[k-1] z^k.
constexpr std::array<double, 26> kRecipGamma = {
    1.0000000000000000,  0.5772156649015329,  -0.6558780715202538,
    -0.0420026350340952, 0.1665386113822915,  -0.0421977345555443,
    -0.0096219715278770, 0.0072189432466630,  -0.0011651675918591,
    -0.0002152416741149, 0.0001280502823882,  -0.0000201348547807,
    -0.0000012504934821, 0.0000011330272320,  -0.0000002056338417,
    0.0000000061160950,  0.0000000050020075,  -0.0000000011812746,
    0.0000000001043427,  0.0000000000077823,  -0.0000000000036968,
    0.0000000000005100,  -0.0000000000000206, -0.0000000000000054,
    0.0000000000000014,  0.0000000000000001};

// log Gamma(x) for x >= 1/2.
double lgamma_right(double x) {
  x -= 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    a += kLanczos[i] / (x + static_cast<double>(i));
  }
  const double t = x + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (x + 0.5) * std::log(t) - t + std::log(a);
}

// sin(pi x) with exact zeros at the integers.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0) r += 2.0;
  double sign = 1.0;
  if (r > 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(kPi * r);
}

void check_bessel_args(double nu, double z) {
  if (!std::isfinite(nu) || !std::isfinite(z)) {
    throw_domain("bessel_k: non-finite argument");
  }
  if (nu < 0.0) throw_domain("bessel_k: order must be non-negative");
  if (z <= 0.0) throw_domain("bessel_k: argument must be positive");
}

}  // namespace

LogSigned LogSigned::from_value(double v) {
  if (v == 0.0) return zero();
  return {std::log(std::abs(v)), v > 0 ? 1 : -1};
}

LogSigned operator/(const LogSigned& a, const LogSigned& b) {
  if (b.sign == 0) throw_domain("LogSigned: division by zero");
  if (a.sign == 0) return LogSigned::zero();
  return {a.log_abs - b.log_abs, a.sign * b.sign};
}

LogSigned log_gamma_signed(double x) {
  if (!std::isfinite(x)) throw_domain("log_gamma_signed: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) {
    std::ostringstream msg;
    msg << "log_gamma_signed: pole at non-positive integer " << x;
    throw_domain(msg.str());
  }
  if (x >= 0.5) return {lgamma_right(x), 1};
  // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
  const double s = sin_pi(x);
  return {std::log(kPi) - std::log(std::abs(s)) - lgamma_right(1.0 - x), s > 0 ? 1 : -1};
}

ReciprocalGammaPair reciprocal_gamma_pair(double mu) {
  // 1/Gamma(1 + mu) = sum_k c_k mu^{k-1}; split into even and odd powers.
  double even = 0.0;  // sum over odd k of c_k mu^{k-1}
  double odd = 0.0;   // sum over even k of c_k mu^{k-2}
  const double mu2 = mu * mu;
  for (int k = static_cast<int>(kRecipGamma.size()); k >= 1; --k) {
    if (k % 2 == 1) {
      even = even * mu2 + kRecipGamma[static_cast<std::size_t>(k - 1)];
    } else {
      odd = odd * mu2 + kRecipGamma[static_cast<std::size_t>(k - 1)];
    }
  }
  ReciprocalGammaPair out{};
  out.gam2 = even;
  out.gam1 = -odd;
  out.plus = even + mu * odd;
  out.minus = even - mu * odd;
  return out;
}

double log_bessel_k_scaled(double nu, double z) {
  check_bessel_args(nu, z);
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double mu2 = mu * mu;
  const double xi2 = 2.0 / z;

  // Working values carry a factor exp(-log_scale) relative to the true
  // e^z K. Below z = 2 the Temme values are unscaled K times z.
  double k_mu = 0.0;
  double k_mu1 = 0.0;
  double log_scale = 0.0;

  if (z < 2.0) {
    const double x2 = 0.5 * z;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const ReciprocalGammaPair g = reciprocal_gamma_pair(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.plus;
    double q = 0.5 / (e * g.minus);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * i - mu2);
      c *= d / i;
      p /= (i - mu);
      q /= (i + mu);
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIter) throw_budget("bessel_k: Temme series failed to converge");
    // K_mu = sum, K_{mu+1} = 2 sum1 / z; store z K to avoid overflow.
    k_mu = sum * z;
    k_mu1 = 2.0 * sum1;
    log_scale = z - std::log(z);
  } else {
    double b = 2.0 * (1.0 + z);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= kMaxIter; ++i) {
      a -= 2 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    if (i > kMaxIter) throw_budget("bessel_k: continued fraction failed to converge");
    h = a1 * h;
    k_mu = std::sqrt(kPi / (2.0 * z)) / s;
    k_mu1 = k_mu * (mu + z + 0.5 - h) / z;
  }

  // Normalise before a step could overflow; k_mu may underflow to zero
  // relative to k_mu1, which is harmless for forward recurrence.
  constexpr double kHuge = 1e290;
  for (int i = 1; i <= nl; ++i) {
    const double factor = (mu + i) * xi2;
    if (k_mu1 > kHuge / factor) {
      log_scale += std::log(k_mu1);
      k_mu /= k_mu1;
      k_mu1 = 1.0;
    }
    const double next = factor * k_mu1 + k_mu;
    k_mu = k_mu1;
    k_mu1 = next;
  }
  return std::log(k_mu) + log_scale;
}

double bessel_k_scaled(double nu, double z) { return std::exp(log_bessel_k_scaled(nu, z)); }

double f_alpha(double alpha, double c, double r, const QuadSpec& q) {
  q.validate();
  if (!std::isfinite(alpha) || !std::isfinite(c) || !std::isfinite(r)) {
    throw_domain("f_alpha: non-finite argument");
  }
  if (!(alpha > -1.0)) throw_domain("f_alpha: exponent must exceed -1");
  if (!(c > 0.0)) throw_domain("f_alpha: c must be positive");
  if (r < 0.0) throw_domain("f_alpha: r must be non-negative");
  if (r == 0.0 && !(alpha > -0.5)) {
    throw_domain("f_alpha: integral diverges at r = 0 for exponent <= -1/2");
  }

  const double two_r = 2.0 * r;
  auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    return std::exp(-c * t + alpha * (std::log(t) + std::log(t + two_r)));
  };

  std::vector<double> cuts;
  if (r > 0.0) cuts.push_back(two_r);
  cuts.push_back(1.0 / c);
  std::sort(cuts.begin(), cuts.end());
  if (cuts.size() == 2 && cuts[1] - cuts[0] <= 1e-14 * cuts[1]) cuts.pop_back();

  double total = 0.0;
  // [0, cuts[0]]: the endpoint behaves like t^e0.
  const double b1 = cuts.front();
  const double e0 = r > 0.0 ? alpha : 2.0 * alpha;
  if (e0 < 0.0) {
    // t = b1 u^p with p = 1/(e0 + 1) cancels the t^e0 factor exactly.
    const double p = 1.0 / (e0 + 1.0);
    const double pref = p * std::pow(b1, e0 + 1.0);
    auto g = [&](double u) {
      const double t = b1 * std::pow(u, p);
      const double rest = r > 0.0 ? std::pow(t + two_r, alpha) : 1.0;
      return pref * std::exp(-c * t) * rest;
    };
    total += integrate(g, 0.0, 1.0, q).value;
  } else {
    total += integrate(integrand, 0.0, b1, q).value;
  }
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    total += integrate(integrand, cuts[i - 1], cuts[i], q).value;
  }
  total += integrate_to_infinity(integrand, cuts.back(), 1.0 / c, q).value;
  return std::exp(-c * r) * total;
}

}  // namespace mqc
