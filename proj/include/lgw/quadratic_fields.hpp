#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "lgw/lambert_w.hpp"

namespace lgw {

using BigInt = mpz_class;

struct QuadraticFieldDescriptor {
  std::int64_t d = 0;  ///< squarefree radicand
  std::int64_t D = 0;  ///< fundamental discriminant
  int sigma1 = 0;      ///< real embeddings
  int sigma2 = 0;      ///< pairs of complex embeddings
  int unit_rank = 0;
};

/// Smallest unit eps > 1 of the ring of integers of Q(sqrt d):
/// eps = (x + y sqrt d) / 2 when half_integral, else x + y sqrt d.
struct FundamentalUnit {
  std::int64_t d = 0;
  BigInt x, y;
  bool half_integral = false;
  int norm = 1;
  double regulator = 0.0;  ///< log eps

  double value() const;  ///< may be +inf for large regulators
  std::string to_string() const;
};

struct Signature {
  int sigma1 = 0;
  int sigma2 = 0;
  int rank = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Torsion units mu(k) of an imaginary quadratic field, elements[k] = zeta_n^k.
struct RootsOfUnity {
  int n = 0;
  std::vector<Complex> elements;
};

template <typename Int>
struct BasicQuadraticForm {
  Int a, b, c;

  Int discriminant() const { return b * b - 4 * a * c; }
  friend bool operator==(const BasicQuadraticForm&, const BasicQuadraticForm&) = default;
};

using BinaryQuadraticForm = BasicQuadraticForm<BigInt>;
using SmallQuadraticForm = BasicQuadraticForm<std::int64_t>;

struct ReductionResult {
  BinaryQuadraticForm form;
  int steps = 0;
};

bool is_squarefree(std::int64_t n);
bool is_fundamental_discriminant(std::int64_t D);
/// D -> d (D = d or 4d). Requires a fundamental D.
std::int64_t radicand_of(std::int64_t D);
/// d -> D. Requires squarefree d outside {0, 1}.
std::int64_t discriminant_of(std::int64_t d);

/// Kronecker symbol (a / n) for n >= 1.
int kronecker(std::int64_t a, std::int64_t n);

QuadraticFieldDescriptor describe_field(std::int64_t d);
Signature unit_rank(int two_r, bool totally_real);
RootsOfUnity roots_of_unity(std::int64_t D);
FundamentalUnit fundamental_unit(std::int64_t d);

bool is_primitive(const BinaryQuadraticForm& f);
bool is_reduced(const BinaryQuadraticForm& f);
/// Reduce a positive definite or indefinite (non-square discriminant) form.
/// Definite forms use Gauss reduction; indefinite forms iterate the rho
/// operator until the form is reduced.
ReductionResult reduce(const BinaryQuadraticForm& f);
/// One application of rho to an indefinite form.
BinaryQuadraticForm rho(const BinaryQuadraticForm& f);

/// All reduced primitive forms of discriminant D (both signs of a when D > 0).
std::vector<SmallQuadraticForm> reduced_forms(std::int64_t D);

struct ClassNumberInfo {
  std::int64_t h = 0;       ///< wide class number
  std::int64_t h_plus = 0;  ///< narrow class number (= h for D < 0)
  int unit_norm = 1;        ///< norm of the fundamental unit (D > 0)
};

ClassNumberInfo class_number_info(std::int64_t D);
std::int64_t class_number(std::int64_t D);
std::int64_t narrow_class_number(std::int64_t D);

/// Class number from the finite Dirichlet class-number formula.
/// precision_terms caps the character-sum length (0 = full sum); a truncated
/// sum that does not round cleanly raises PrecisionLoss.
std::int64_t class_number_analytic(std::int64_t D, std::int64_t precision_terms = 0);

}  // namespace lgw
