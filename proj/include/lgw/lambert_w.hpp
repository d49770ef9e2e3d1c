#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace lgw {

using Complex = std::complex<double>;

/// Branch selector for W_k. Standard numbering: k = 0 is the principal branch,
/// real on [-1/e, inf); k = -1 is the other real branch on [-1/e, 0).
///
/// Some texts number the principal branch W_1. Under that numbering their
/// W_j is our W_{j-1} whenever they mean the principal branch.
struct BranchIndex {
  std::int64_t k = 0;

  constexpr BranchIndex() = default;
  constexpr explicit BranchIndex(std::int64_t k_) : k(k_) {}
  friend constexpr bool operator==(BranchIndex, BranchIndex) = default;
};

struct WEvaluation {
  Complex value;
  BranchIndex branch;
  double residual = 0.0;  ///< |w e^w - z| / (1 + |z|)
  int iterations = 0;
};

inline constexpr double kInvE = 0.36787944117144232160;  // 1/e
inline constexpr double kBranchPoint = -kInvE;
inline constexpr double kWTolerance = 1e-12;
inline constexpr int kMaxHalleyIterations = 64;
inline constexpr int kMaxSeriesTerms = 170;

/// W_k(z) by seeded Halley iteration.
///
/// Seeds: branch-point series in p = sqrt(2(ez+1)) near -1/e (k = 0 everywhere,
/// k = -1 on Im z >= 0, k = 1 on Im z < 0), a (2,2) Pade approximant near the
/// origin for k = 0, and the asymptotic L1 - L2 + L2/L1 expansion otherwise.
/// Values on a branch cut are taken from above (Im z = -0.0 counts as +0.0).
///
/// Throws NonFinite, BranchSingularity (k != 0, z = 0) or NoConvergence.
WEvaluation lambert_w(BranchIndex k, Complex z);

/// Real fast path for k in {0, -1}. Throws DomainError outside the real domain
/// of the requested branch.
double lambert_w_real(BranchIndex k, double x);

/// dW_k/dz = 1 / (z + e^{W_k(z)}).
Complex w_derivative(BranchIndex k, Complex z);

/// Partial sum of the Maclaurin series sum_{n>=1} (-n)^{n-1}/n! z^n.
/// Converges to W_0 for |z| < 1/e.
Complex w_series(Complex z, int n_terms);

/// |w e^w - z| / (1 + |z|), evaluated without overflowing for large Re w.
double w_residual(Complex w, Complex z);

}  // namespace lgw
