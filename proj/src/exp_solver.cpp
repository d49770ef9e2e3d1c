#include "lgw/exp_solver.hpp"

#include <cmath>
#include <string>

#include "lgw/errors.hpp"

namespace lgw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double normalize_angle(double theta) {
  theta = std::remainder(theta, kTwoPi);  // [-pi, pi]
  if (theta <= -kPi) theta += kTwoPi;
  return theta;
}

}  // namespace

ExpLinearEquation::ExpLinearEquation(Complex a, Complex b, Complex c) : a_(a), b_(b), c_(c) {
  if (b * c == 0.0)
    throw Error(ErrorKind::DegenerateCoefficients, "z = A + B e^{Cz} needs B C != 0");
}

double ExpLinearEquation::residual(Complex z) const {
  return std::abs(z - a_ - b_ * std::exp(c_ * z));
}

Complex solve_exp_linear(const ExpLinearEquation& eq, BranchIndex k) {
  const Complex ac = eq.a() * eq.c();
  const Complex arg = -eq.b() * eq.c() * std::exp(ac);
  return eq.a() - lambert_w(k, arg).value / eq.c();
}

UnitInput UnitInput::from_value(Complex eps, CaseTag tag, std::int64_t log_branch) {
  if (!std::isfinite(eps.real()) || !std::isfinite(eps.imag()))
    throw Error(ErrorKind::NonFinite, "unit value is not finite");
  if (eps == 0.0) throw Error(ErrorKind::InvalidUnitInput, "unit must be nonzero");
  UnitInput u;
  u.log_modulus = std::log(std::abs(eps));
  u.argument = normalize_angle(std::arg(eps));
  if (eps.imag() == 0.0 && eps.real() > 0.0) u.argument = 0.0;
  u.log_branch = log_branch;
  u.case_tag = tag;
  return u;
}

UnitInput UnitInput::from_log(Complex log_eps, CaseTag tag, std::int64_t log_branch) {
  if (!std::isfinite(log_eps.real()) || !std::isfinite(log_eps.imag()))
    throw Error(ErrorKind::NonFinite, "log of unit is not finite");
  return UnitInput{log_eps.real(), log_eps.imag(), log_branch, tag};
}

Complex UnitInput::epsilon() const { return std::exp(Complex(log_modulus, argument)); }

Complex UnitInput::log_epsilon() const {
  if (case_tag == CaseTag::RealCase) {
    if (argument != 0.0)
      throw Error(ErrorKind::InvalidUnitInput, "real case requires a real positive unit");
    if (log_branch != 0)
      throw Error(ErrorKind::InvalidUnitInput, "real case uses the real logarithm; log_branch must be 0");
    return {log_modulus, 0.0};
  }
  return {log_modulus, argument + kTwoPi * static_cast<double>(log_branch)};
}

double verify_fixed_point(Complex alpha, const UnitInput& u) {
  const Complex log_eps = u.log_epsilon();
  if (u.case_tag == CaseTag::ComplexCase)
    return std::abs(kI * alpha - std::exp(kTwoPi * kI * alpha) * log_eps);
  return std::abs(alpha - std::cos(kTwoPi * alpha) * log_eps);
}

FixedPointReport alpha_complex_case(const UnitInput& u, BranchIndex j, double beta) {
  if (u.case_tag != CaseTag::ComplexCase)
    throw Error(ErrorKind::InvalidUnitInput, "alpha_complex_case needs a ComplexCase unit");
  const Complex log_eps = u.log_epsilon();
  if (log_eps == 0.0)
    throw Error(ErrorKind::ZeroLogUnit, "log eps = 0 on log branch " + std::to_string(u.log_branch));

  // beta + i alpha = beta + (log eps / e^{2 pi beta}) e^{2 pi (beta + i alpha)}
  const ExpLinearEquation eq(beta, log_eps / std::exp(kTwoPi * beta), kTwoPi);
  const Complex z = solve_exp_linear(eq, j);
  const Complex alpha = (z - beta) / kI;

  FixedPointReport report;
  report.alpha = alpha;
  report.branch = j;
  report.beta = beta;
  report.residual_defining = verify_fixed_point(alpha, u);
  report.conventions.log_branch = u.log_branch;
  return report;
}

FixedPointReport alpha_real_case(const UnitInput& u, BranchIndex j, Pairing pairing) {
  if (u.case_tag != CaseTag::RealCase)
    throw Error(ErrorKind::InvalidUnitInput, "alpha_real_case needs a RealCase unit");
  if (u.log_modulus == 0.0 && u.argument == 0.0)
    throw Error(ErrorKind::ZeroLogUnit, "eps = 1 has log eps = 0");
  const Complex log_eps = u.log_epsilon();
  if (!(log_eps.real() > 0.0))
    throw Error(ErrorKind::InvalidUnitInput, "real case requires eps > 1");

  const BranchIndex second = pairing == Pairing::SameBranch ? j : BranchIndex(-j.k);
  const ExpLinearEquation first_eq(0.0, log_eps, Complex(0.0, kTwoPi));
  const ExpLinearEquation second_eq(0.0, log_eps, Complex(0.0, -kTwoPi));
  const Complex alpha1 = solve_exp_linear(first_eq, j);
  const Complex alpha2 = solve_exp_linear(second_eq, second);
  const Complex alpha = alpha1 + alpha2;

  FixedPointReport report;
  report.alpha = alpha;
  report.branch = j;
  report.residual_defining = verify_fixed_point(alpha, u);
  report.residual_split_1 = first_eq.residual(alpha1);
  report.residual_split_2 = second_eq.residual(alpha2);
  report.residual_sum_equation =
      std::abs(2.0 * alpha - log_eps * std::exp(kTwoPi * kI * alpha) -
               log_eps * std::exp(-kTwoPi * kI * alpha));
  report.conventions.log_branch = u.log_branch;
  report.conventions.pairing = pairing;
  return report;
}

}  // namespace lgw
