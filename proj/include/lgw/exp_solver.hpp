#pragma once

#include <optional>

#include "lgw/lambert_w.hpp"

namespace lgw {

/// z = A + B e^{C z} with B C != 0.
class ExpLinearEquation {
 public:
  /// Throws DegenerateCoefficients when B C = 0.
  ExpLinearEquation(Complex a, Complex b, Complex c);

  Complex a() const noexcept { return a_; }
  Complex b() const noexcept { return b_; }
  Complex c() const noexcept { return c_; }

  /// |z - A - B e^{C z}|
  double residual(Complex z) const;

 private:
  Complex a_, b_, c_;
};

/// z = A - W_k(-B C e^{A C}) / C.
Complex solve_exp_linear(const ExpLinearEquation& eq, BranchIndex k);

enum class CaseTag { ComplexCase, RealCase };
enum class Pairing { SameBranch, ConjugateBranch };

/// A unit eps given in polar-log form, eps = exp(log_modulus + i argument).
///
/// The logarithm used downstream is log|eps| + i(arg eps + 2 pi log_branch)
/// in the complex case and the real logarithm in the real case. Keeping the
/// log instead of eps lets real units far beyond binary64 range (regulators
/// over ~709) be handled.
struct UnitInput {
  double log_modulus = 0.0;
  double argument = 0.0;  ///< radians; from_value() normalizes to (-pi, pi]
  std::int64_t log_branch = 0;
  CaseTag case_tag = CaseTag::ComplexCase;

  static UnitInput from_value(Complex eps, CaseTag tag, std::int64_t log_branch = 0);
  static UnitInput from_log(Complex log_eps, CaseTag tag, std::int64_t log_branch = 0);

  /// Numeric eps; may overflow for very large real units.
  Complex epsilon() const;
  /// log eps under this input's conventions. Throws InvalidUnitInput when the
  /// case invariants are violated.
  Complex log_epsilon() const;
};

struct Conventions {
  std::int64_t log_branch = 0;
  std::optional<Pairing> pairing;  ///< real case only
};

struct FixedPointReport {
  Complex alpha;
  BranchIndex branch;
  double beta = 0.0;
  double residual_defining = 0.0;
  std::optional<double> residual_split_1;
  std::optional<double> residual_split_2;
  std::optional<double> residual_sum_equation;
  Conventions conventions;
};

/// alpha = -W_j(-2 pi log eps) / (2 pi i), obtained through the
/// exp-linear solver with A = beta, B = log eps / e^{2 pi beta}, C = 2 pi.
FixedPointReport alpha_complex_case(const UnitInput& u, BranchIndex j, double beta = 0.0);

/// alpha = alpha1 + alpha2 where alpha1 solves a = L e^{2 pi i a} on branch j
/// and alpha2 solves a = L e^{-2 pi i a} on branch j (SameBranch) or -j
/// (ConjugateBranch), L = log eps > 0.
FixedPointReport alpha_real_case(const UnitInput& u, BranchIndex j,
                                 Pairing pairing = Pairing::ConjugateBranch);

/// |i alpha - e^{2 pi i alpha} log eps| (complex case) or
/// |alpha - cos(2 pi alpha) log eps| (real case).
double verify_fixed_point(Complex alpha, const UnitInput& u);

}  // namespace lgw
