#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lgw/exp_solver.hpp"
#include "lgw/quadratic_fields.hpp"

namespace lgw {

struct SurveyOptions {
  BranchIndex branch{0};
  std::int64_t log_branch = 0;  ///< complex-log branch for torsion units
  Pairing pairing = Pairing::ConjugateBranch;
  int unit_powers = 1;  ///< real fields: attach eps^n for n = 1..unit_powers
  unsigned jobs = 1;
};

/// One alpha attached to a field, tagged with the unit it came from.
struct AlphaEntry {
  std::string unit;  ///< "zeta_n^k", "x+y*sqrt(d)", "(...)^n"
  FixedPointReport report;
};

struct SurveyRow {
  std::int64_t D = 0;
  std::int64_t d = 0;
  std::int64_t h = 0;
  CaseTag case_tag = CaseTag::ComplexCase;
  std::variant<RootsOfUnity, FundamentalUnit> unit;
  std::vector<AlphaEntry> alpha_reports;  ///< nonempty iff h = 1
};

struct AlphaStatistics {
  std::size_t alpha_count = 0;
  std::size_t distinct_alpha_count = 0;
  /// Smallest distance between distinct alphas; empty when fewer than two.
  std::optional<double> min_alpha_separation;
};

struct SurveySummary {
  CaseTag case_tag = CaseTag::ComplexCase;
  std::int64_t D_min = 0;
  std::int64_t D_max = 0;
  std::size_t count_h1 = 0;
  std::vector<SurveyRow> rows;
  AlphaStatistics alpha_stats;
  /// Distinct torsion units over the h = 1 imaginary fields, first-seen order.
  std::vector<Complex> distinct_units;
  SurveyOptions options;
};

/// alphas closer than this count as the same root
inline constexpr double kAlphaSeparationTolerance = 1e-9;

SurveyRow survey_row(std::int64_t D, const SurveyOptions& opts);

/// Fundamental D in [-limit, -3], ordered by |D|.
SurveySummary scan_imaginary(std::int64_t limit, const SurveyOptions& opts = {});
/// Fundamental D in [5, limit], ascending.
SurveySummary scan_real(std::int64_t limit, const SurveyOptions& opts = {});

AlphaStatistics alpha_statistics(const std::vector<SurveyRow>& rows);

/// Flat record with the serialized column set; alpha fields are empty for
/// rows that carry no alpha.
struct TableRecord {
  std::int64_t D = 0;
  std::int64_t d = 0;
  std::int64_t h = 0;
  std::string unit;
  int norm = 1;
  std::optional<double> regulator;
  std::optional<Complex> alpha;
  std::optional<double> residual_defining;
  std::optional<double> residual_split_1;
  std::optional<double> residual_split_2;
  std::optional<double> residual_sum_equation;
  std::optional<std::int64_t> branch;
  std::int64_t log_branch = 0;
};

struct CorrespondenceTable {
  std::vector<TableRecord> records;
  AlphaStatistics stats;
};

/// One record per (field, unit, branch) over the rows that carry alphas.
CorrespondenceTable correspondence_table(const std::vector<SurveyRow>& rows);

/// Every row flattened, including rows without alphas (one record each).
std::vector<TableRecord> flatten_rows(const std::vector<SurveyRow>& rows, std::int64_t log_branch);

}  // namespace lgw
