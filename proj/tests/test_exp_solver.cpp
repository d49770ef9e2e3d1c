#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lgw/errors.hpp"
#include "lgw/exp_solver.hpp"
#include "oracles.hpp"

using lgw::BranchIndex;
using lgw::CaseTag;
using lgw::Complex;
using lgw::ErrorKind;
using lgw::ExpLinearEquation;
using lgw::Pairing;
using lgw::UnitInput;

namespace {

constexpr double kE = 2.718281828459045;
constexpr double kPi = 3.141592653589793;
const Complex kI{0.0, 1.0};

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const lgw::Error& e) {
    return e.kind();
  }
  FAIL("expected lgw::Error");
  return ErrorKind::DomainError;
}

}  // namespace

TEST_CASE("solve_exp_linear: z = e^{-z}") {
  const double oracle = lgw::oracle::bisect([](double z) { return z - std::exp(-z); }, 0.0, 1.0);
  const ExpLinearEquation eq(0.0, 1.0, -1.0);
  const Complex z = lgw::solve_exp_linear(eq, BranchIndex(0));
  CHECK(std::abs(z - oracle) < 1e-15);
  CHECK(eq.residual(z) < 1e-15);
}

TEST_CASE("ExpLinearEquation rejects B C = 0") {
  CHECK(kind_of([] { ExpLinearEquation(0.0, 1.0, 0.0); }) == ErrorKind::DegenerateCoefficients);
  CHECK(kind_of([] { ExpLinearEquation(1.0, 0.0, 2.0); }) == ErrorKind::DegenerateCoefficients);
}

TEST_CASE("solve_exp_linear: two distinct roots of z = 1 + 2 e^{z/2}") {
  auto f = [](double z) { return z - 1.0 - 2.0 * std::exp(0.5 * z); };
  const ExpLinearEquation eq(1.0, 2.0, 0.5);
  const Complex z0 = lgw::solve_exp_linear(eq, BranchIndex(0));
  const Complex zm = lgw::solve_exp_linear(eq, BranchIndex(-1));
  CHECK(eq.residual(z0) <= 1e-10);
  CHECK(eq.residual(zm) <= 1e-10);
  CHECK(std::abs(z0 - zm) > 1e-6);

  // -B C e^{AC} = -e^{1/2} < -1/e, so there is no real root: both are complex
  // conjugates and f keeps its sign on the real line
  int sign_changes = 0;
  for (int i = 0; i < 4000; ++i) {
    const double a = -40.0 + 0.02 * i, b = a + 0.02;
    if ((f(a) < 0) != (f(b) < 0)) ++sign_changes;
  }
  CHECK(sign_changes == 0);
  CHECK(std::abs(z0 - std::conj(zm)) < 1e-12);
}

TEST_CASE("solve_exp_linear: two real roots when the argument is in (-1/e, 0)") {
  // z = 0.1 e^{z}: -BC e^{AC} = -0.1
  auto f = [](double z) { return z - 0.1 * std::exp(z); };
  const double r0 = lgw::oracle::bisect(f, 0.0, 1.0);
  const double r1 = lgw::oracle::bisect(f, 1.0, 10.0);
  const ExpLinearEquation eq(0.0, 0.1, 1.0);
  const Complex z0 = lgw::solve_exp_linear(eq, BranchIndex(0));
  const Complex zm = lgw::solve_exp_linear(eq, BranchIndex(-1));
  CHECK(std::abs(z0 - r0) < 1e-14);
  CHECK(std::abs(zm - r1) < 1e-13);
}

TEST_CASE("solve_exp_linear round trip on random equations") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> mod(0.1, 5.0), ang(-kPi, kPi);
  auto draw = [&] { return std::polar(mod(rng), ang(rng)); };
  for (int i = 0; i < 500; ++i) {
    const ExpLinearEquation eq(draw(), draw(), draw());
    for (std::int64_t k = -2; k <= 2; ++k) {
      const Complex z = lgw::solve_exp_linear(eq, BranchIndex(k));
      CHECK(eq.residual(z) <= 1e-10 * (1.0 + std::abs(z)));
    }
  }
}

TEST_CASE("UnitInput conventions") {
  const UnitInput u = UnitInput::from_value(Complex(-1.0, 0.0), CaseTag::ComplexCase);
  CHECK(u.argument == doctest::Approx(kPi));
  CHECK(u.log_epsilon() == Complex(0.0, u.argument));
  const UnitInput shifted = UnitInput::from_value(Complex(-1.0, 0.0), CaseTag::ComplexCase, 2);
  CHECK(shifted.log_epsilon().imag() == doctest::Approx(5.0 * kPi));

  const UnitInput r = UnitInput::from_value(3.0, CaseTag::RealCase);
  CHECK(r.log_epsilon() == Complex(std::log(3.0), 0.0));
  CHECK(kind_of([] { UnitInput::from_value(-3.0, CaseTag::RealCase).log_epsilon(); }) ==
        ErrorKind::InvalidUnitInput);
  CHECK(kind_of([] { UnitInput::from_value(3.0, CaseTag::RealCase, 1).log_epsilon(); }) ==
        ErrorKind::InvalidUnitInput);
  CHECK(kind_of([] { UnitInput::from_value(0.0, CaseTag::ComplexCase); }) == ErrorKind::InvalidUnitInput);

  // large units survive in log form
  const UnitInput big = UnitInput::from_log(1000.0, CaseTag::RealCase);
  CHECK(big.log_epsilon().real() == 1000.0);
}

TEST_CASE("alpha_complex_case: forced root i/(2 pi)") {
  // log eps = -e/(2 pi) makes the W argument e, and W_0(e) = 1
  const UnitInput u = UnitInput::from_log(Complex(-kE / (2.0 * kPi), 0.0), CaseTag::ComplexCase);
  const auto report = lgw::alpha_complex_case(u, BranchIndex(0));
  CHECK(std::abs(report.alpha - kI / (2.0 * kPi)) < 1e-15);
  CHECK(report.residual_defining <= 1e-14);
  CHECK(lgw::verify_fixed_point(kI / (2.0 * kPi), u) <= 1e-14);
  CHECK_FALSE(report.residual_split_1.has_value());
  CHECK_FALSE(report.residual_sum_equation.has_value());
  CHECK_FALSE(report.conventions.pairing.has_value());
}

TEST_CASE("alpha with eps = 1 has no logarithm to work with") {
  const UnitInput one_c = UnitInput::from_value(1.0, CaseTag::ComplexCase);
  const UnitInput one_r = UnitInput::from_value(1.0, CaseTag::RealCase);
  CHECK(kind_of([&] { lgw::alpha_complex_case(one_c, BranchIndex(0)); }) == ErrorKind::ZeroLogUnit);
  CHECK(kind_of([&] { lgw::alpha_real_case(one_r, BranchIndex(0)); }) == ErrorKind::ZeroLogUnit);
  // on another log branch log 1 = 2 pi i, which is fine
  const UnitInput one_shifted = UnitInput::from_value(1.0, CaseTag::ComplexCase, 1);
  CHECK(lgw::alpha_complex_case(one_shifted, BranchIndex(0)).residual_defining <= 1e-10);
}

TEST_CASE("alpha_complex_case: eps = i") {
  const UnitInput u = UnitInput::from_value(kI, CaseTag::ComplexCase);
  CHECK(u.log_epsilon().imag() == doctest::Approx(kPi / 2.0));
  const auto report = lgw::alpha_complex_case(u, BranchIndex(0));
  CHECK(report.residual_defining <= 1e-10);
  CHECK(lgw::verify_fixed_point(report.alpha, u) == report.residual_defining);
}

TEST_CASE("alpha_complex_case: identity and beta invariance across branches") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lm(-3.0, 3.0), ang(-kPi, kPi);
  for (int i = 0; i < 100; ++i) {
    const UnitInput u = UnitInput::from_log(Complex(lm(rng), ang(rng)), CaseTag::ComplexCase);
    for (std::int64_t j = -3; j <= 3; ++j) {
      const auto r0 = lgw::alpha_complex_case(u, BranchIndex(j), 0.0);
      CHECK(r0.residual_defining <= 1e-10);
      for (double beta : {-10.0, 10.0}) {
        const auto rb = lgw::alpha_complex_case(u, BranchIndex(j), beta);
        CHECK(std::abs(rb.alpha - r0.alpha) <= 1e-13);
        CHECK(rb.beta == beta);
      }
    }
  }
}

TEST_CASE("alpha_real_case: golden ratio") {
  const UnitInput u = UnitInput::from_value((1.0 + std::sqrt(5.0)) / 2.0, CaseTag::RealCase);
  const auto report = lgw::alpha_real_case(u, BranchIndex(0), Pairing::ConjugateBranch);
  CHECK(std::abs(report.alpha.imag()) <= 1e-12);
  REQUIRE(report.residual_split_1.has_value());
  REQUIRE(report.residual_split_2.has_value());
  REQUIRE(report.residual_sum_equation.has_value());
  CHECK(*report.residual_split_1 <= 1e-10);
  CHECK(*report.residual_split_2 <= 1e-10);
  CHECK(report.conventions.pairing == Pairing::ConjugateBranch);
}

TEST_CASE("alpha_real_case: 1 + sqrt 2 with same-branch pairing") {
  const UnitInput u = UnitInput::from_value(1.0 + std::sqrt(2.0), CaseTag::RealCase);
  const auto report = lgw::alpha_real_case(u, BranchIndex(0), Pairing::SameBranch);
  CHECK(*report.residual_split_1 <= 1e-10);
  CHECK(*report.residual_split_2 <= 1e-10);
  CHECK(std::isfinite(*report.residual_sum_equation));
  // j = 0 is self-conjugate, so both pairings agree there
  const auto conj = lgw::alpha_real_case(u, BranchIndex(0), Pairing::ConjugateBranch);
  CHECK(std::abs(conj.alpha - report.alpha) < 1e-15);
}

TEST_CASE("alpha_real_case: pairings differ off the principal branch") {
  const UnitInput u = UnitInput::from_value(1.0 + std::sqrt(2.0), CaseTag::RealCase);
  for (std::int64_t j : {-2, -1, 1, 2}) {
    const auto c = lgw::alpha_real_case(u, BranchIndex(j), Pairing::ConjugateBranch);
    const auto s = lgw::alpha_real_case(u, BranchIndex(j), Pairing::SameBranch);
    CHECK(std::abs(c.alpha.imag()) <= 1e-12);
    CHECK(std::abs(s.alpha.imag()) > 1e-3);
    CHECK(*s.residual_split_1 <= 1e-10);
    CHECK(*s.residual_split_2 <= 1e-10);
  }
}

TEST_CASE("alpha_real_case rejects units it cannot use") {
  CHECK(kind_of([] {
          lgw::alpha_real_case(UnitInput::from_value(0.5, CaseTag::RealCase), BranchIndex(0));
        }) == ErrorKind::InvalidUnitInput);
  CHECK(kind_of([] {
          lgw::alpha_real_case(UnitInput::from_value(2.0, CaseTag::ComplexCase), BranchIndex(0));
        }) == ErrorKind::InvalidUnitInput);
  CHECK(kind_of([] {
          lgw::alpha_complex_case(UnitInput::from_value(2.0, CaseTag::RealCase), BranchIndex(0));
        }) == ErrorKind::InvalidUnitInput);
}

TEST_CASE("verify_fixed_point direct evaluation") {
  const UnitInput u = UnitInput::from_log(1.0, CaseTag::RealCase);
  CHECK(lgw::verify_fixed_point(0.0, u) == 1.0);
}

TEST_CASE("real-case split identities and realness over a log-eps sweep") {
  std::vector<double> alphas;
  for (int i = 1; i <= 200; ++i) {
    const UnitInput u = UnitInput::from_log(5.0 * i / 200.0, CaseTag::RealCase);
    const auto r = lgw::alpha_real_case(u, BranchIndex(0));
    CHECK(*r.residual_split_1 <= 1e-10);
    CHECK(*r.residual_split_2 <= 1e-10);
    CHECK(std::abs(r.alpha.imag()) <= 1e-12);
    alphas.push_back(r.alpha.real());
  }
  // injectivity probe; a collision would be a finding, so only count them
  std::sort(alphas.begin(), alphas.end());
  int collisions = 0;
  for (std::size_t i = 1; i < alphas.size(); ++i)
    if (alphas[i] - alphas[i - 1] <= 1e-9) ++collisions;
  MESSAGE("alpha collisions on the log-eps grid: " << collisions);
}
