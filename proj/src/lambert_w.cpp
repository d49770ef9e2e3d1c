#include "lgw/lambert_w.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "lgw/errors.hpp"

namespace lgw {

namespace {

constexpr double kE = std::numbers::e;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 1/e = kInvEHi + kInvELo to ~1e-33; lets ez + 1 be formed without cancellation.
constexpr long double kInvELong = 0.367879441171442321595523770161460867L;
constexpr double kInvEHi = static_cast<double>(kInvELong);
const double kInvELo = static_cast<double>(kInvELong - static_cast<long double>(kInvEHi));

// W around the branch point as a series in p = sqrt(2(ez+1)).
constexpr std::array<double, 10> kBranchSeries = {
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680863.0 / 43545600.0,
    -1963.0 / 204120.0,
    226287557.0 / 37623398400.0,
};

template <typename T>
T horner(const std::array<double, 10>& c, T p) {
  T acc = c.back();
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it) acc = acc * p + *it;
  return acc;
}

/// 2(ez + 1), accurate near z = -1/e.
Complex branch_argument(Complex z) {
  return 2.0 * kE * ((z + kInvEHi) + kInvELo);
}

double branch_argument(double x) { return 2.0 * kE * ((x + kInvEHi) + kInvELo); }

Complex pade_origin(Complex z) {
  // (2,2) Pade approximant of W_0 at the origin
  const Complex num = (12.85106382978723404255 * z + 12.34042553191489361902) * z + 1.0;
  const Complex den = (32.53191489361702127660 * z + 14.34042553191489361702) * z + 1.0;
  return z * num / den;
}

Complex asymptotic_seed(Complex z, std::int64_t k) {
  const Complex l1 = std::log(z) + Complex(0.0, kTwoPi * static_cast<double>(k));
  const Complex l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

Complex seed(std::int64_t k, Complex z) {
  const bool near_branch = std::abs(z + kInvE) < 0.3;
  if (k == 0) {
    if (near_branch) return horner(kBranchSeries, std::sqrt(branch_argument(z)));
    if (-1.0 < z.real() && z.real() < 1.5 && std::abs(z.imag()) < 1.0 &&
        -2.5 * std::abs(z.imag()) - 0.2 < z.real())
      return pade_origin(z);
    return asymptotic_seed(z, 0);
  }
  // W_{-1} above the real axis and W_1 below it both touch w = -1.
  if (near_branch && ((k == -1 && z.imag() >= 0.0) || (k == 1 && z.imag() < 0.0)))
    return horner(kBranchSeries, -std::sqrt(branch_argument(z)));
  return asymptotic_seed(z, k);
}

/// Halley correction for f(w) = w e^w - z; w_next = w - step.
Complex halley_step(Complex w, Complex z) {
  const Complex wp1 = w + 1.0;
  if (wp1 == 0.0) return 0.0;
  if (w.real() >= 0.0) {
    // scaled by e^-w so large Re w cannot overflow
    const Complex g = w - z * std::exp(-w);
    return g / (wp1 - (w + 2.0) * g / (2.0 * wp1));
  }
  const Complex ew = std::exp(w);
  const Complex f = w * ew - z;
  return f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string describe(std::int64_t k, Complex z) {
  return "k=" + std::to_string(k) + ", z=(" + std::to_string(z.real()) + ", " +
         std::to_string(z.imag()) + ")";
}

}  // namespace

double w_residual(Complex w, Complex z) {
  Complex diff;
  if (w.real() > 0.0) {
    const Complex ew = std::exp(w);
    diff = ew * (w - z / ew);
  } else {
    diff = w * std::exp(w) - z;
  }
  return std::abs(diff) / (1.0 + std::abs(z));
}

WEvaluation lambert_w(BranchIndex branch, Complex z) {
  const std::int64_t k = branch.k;
  if (!finite(z)) throw Error(ErrorKind::NonFinite, "lambert_w: " + describe(k, z));
  // cut values come from above
  if (z.imag() == 0.0) z.imag(0.0);

  if (z == 0.0) {
    if (k == 0) return {Complex(0.0, 0.0), branch, 0.0, 0};
    throw Error(ErrorKind::BranchSingularity, "W_k(0) diverges for k != 0");
  }
  if (z.imag() == 0.0 && z.real() == -kInvEHi && (k == 0 || k == -1))
    return {Complex(-1.0, 0.0), branch, w_residual(Complex(-1.0, 0.0), z), 0};

  Complex w = seed(k, z);
  int iterations = 0;
  while (iterations < kMaxHalleyIterations) {
    const Complex step = halley_step(w, z);
    w -= step;
    ++iterations;
    if (!finite(w)) break;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
  }
  if (!finite(w))
    throw Error(ErrorKind::NoConvergence, "lambert_w iterate left the finite range, " + describe(k, z));
  if (w.imag() == 0.0) w.imag(0.0);

  const double residual = w_residual(w, z);
  if (!(residual <= kWTolerance))
    throw Error(ErrorKind::NoConvergence,
                "lambert_w residual " + std::to_string(residual) + " after " +
                    std::to_string(iterations) + " iterations, " + describe(k, z));
  return {w, branch, residual, iterations};
}

double lambert_w_real(BranchIndex branch, double x) {
  const std::int64_t k = branch.k;
  if (!std::isfinite(x)) throw Error(ErrorKind::NonFinite, "lambert_w_real: non-finite argument");
  if (k != 0 && k != -1)
    throw Error(ErrorKind::DomainError, "lambert_w_real: only branches 0 and -1 are real");
  if (x < -kInvEHi || (k == -1 && x >= 0.0))
    throw Error(ErrorKind::DomainError,
                "lambert_w_real: x=" + std::to_string(x) + " outside the real domain of W_" +
                    std::to_string(k));
  if (x == -kInvEHi) return -1.0;
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.25) {
    const double p = std::sqrt(std::max(branch_argument(x), 0.0));
    w = horner(kBranchSeries, k == 0 ? p : -p);
  } else if (k == 0) {
    w = x <= 3.0 ? pade_origin(Complex(x, 0.0)).real()
                 : [&] {
                     const double l1 = std::log(x);
                     const double l2 = std::log(l1);
                     return l1 - l2 + l2 / l1;
                   }();
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int i = 0; i < kMaxHalleyIterations; ++i) {
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    if (!std::isfinite(step)) break;
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return w;
}

Complex w_derivative(BranchIndex k, Complex z) {
  const WEvaluation w = lambert_w(k, z);
  if (std::abs(z + kInvE) <= 1e-12 && std::abs(w.value + 1.0) < 1e-4)
    throw Error(ErrorKind::BranchPointSingularity, "dW/dz is singular at z = -1/e");
  return 1.0 / (z + std::exp(w.value));
}

Complex w_series(Complex z, int n_terms) {
  if (n_terms < 1 || n_terms > kMaxSeriesTerms)
    throw Error(ErrorKind::TermLimitExceeded,
                "w_series: n_terms=" + std::to_string(n_terms) + " outside [1, " +
                    std::to_string(kMaxSeriesTerms) + "]");
  if (!finite(z)) throw Error(ErrorKind::NonFinite, "w_series: non-finite argument");
  // term_{n+1} / term_n = -(1 + 1/n)^(n-1) z
  Complex term = z;
  Complex sum = term;
  for (int n = 1; n < n_terms; ++n) {
    const double ratio = std::exp((n - 1) * std::log1p(1.0 / n));
    term *= -ratio * z;
    sum += term;
  }
  return sum;
}

}  // namespace lgw
