#include "lgw/gauss_survey.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "lgw/errors.hpp"

namespace lgw {

namespace {

std::string torsion_label(int n, std::size_t k) {
  return "zeta_" + std::to_string(n) + "^" + std::to_string(k);
}

std::vector<SurveyRow> compute_rows(const std::vector<std::int64_t>& discriminants,
                                    const SurveyOptions& opts) {
  std::vector<SurveyRow> rows(discriminants.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(rows.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = survey_row(discriminants[i], opts);
    return rows;
  }
  // strided split; each slot is written by exactly one worker
  std::vector<std::exception_ptr> failures(jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < rows.size(); i += jobs) rows[i] = survey_row(discriminants[i], opts);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return rows;
}

SurveySummary summarize(CaseTag tag, std::int64_t lo, std::int64_t hi, std::vector<SurveyRow> rows,
                        const SurveyOptions& opts) {
  SurveySummary s;
  s.case_tag = tag;
  s.D_min = lo;
  s.D_max = hi;
  s.options = opts;
  s.count_h1 = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SurveyRow& r) { return r.h == 1; }));
  s.alpha_stats = alpha_statistics(rows);
  if (tag == CaseTag::ComplexCase) {
    for (const SurveyRow& r : rows) {
      if (r.h != 1) continue;
      for (const Complex& z : std::get<RootsOfUnity>(r.unit).elements) {
        const bool known = std::any_of(s.distinct_units.begin(), s.distinct_units.end(),
                                       [&](const Complex& u) { return std::abs(u - z) < 1e-12; });
        if (!known) s.distinct_units.push_back(z);
      }
    }
  }
  s.rows = std::move(rows);
  return s;
}

}  // namespace

SurveyRow survey_row(std::int64_t D, const SurveyOptions& opts) {
  SurveyRow row;
  row.D = D;
  row.d = radicand_of(D);
  row.h = class_number(D);
  if (D < 0) {
    row.case_tag = CaseTag::ComplexCase;
    RootsOfUnity mu = roots_of_unity(D);
    if (row.h == 1) {
      for (std::size_t k = 0; k < mu.elements.size(); ++k) {
        const UnitInput u = UnitInput::from_value(mu.elements[k], CaseTag::ComplexCase, opts.log_branch);
        if (u.log_epsilon() == 0.0) continue;
        row.alpha_reports.push_back({torsion_label(mu.n, k), alpha_complex_case(u, opts.branch)});
      }
    }
    row.unit = std::move(mu);
    return row;
  }
  row.case_tag = CaseTag::RealCase;
  FundamentalUnit eps = fundamental_unit(row.d);
  if (row.h == 1) {
    for (int n = 1; n <= opts.unit_powers; ++n) {
      const UnitInput u = UnitInput::from_log(n * eps.regulator, CaseTag::RealCase);
      std::string label = n == 1 ? eps.to_string() : "(" + eps.to_string() + ")^" + std::to_string(n);
      row.alpha_reports.push_back({std::move(label), alpha_real_case(u, opts.branch, opts.pairing)});
    }
  }
  row.unit = std::move(eps);
  return row;
}

SurveySummary scan_imaginary(std::int64_t limit, const SurveyOptions& opts) {
  std::vector<std::int64_t> ds;
  for (std::int64_t a = 3; a <= limit; ++a)
    if (is_fundamental_discriminant(-a)) ds.push_back(-a);
  return summarize(CaseTag::ComplexCase, -limit, -3, compute_rows(ds, opts), opts);
}

SurveySummary scan_real(std::int64_t limit, const SurveyOptions& opts) {
  std::vector<std::int64_t> ds;
  for (std::int64_t D = 5; D <= limit; ++D)
    if (is_fundamental_discriminant(D)) ds.push_back(D);
  return summarize(CaseTag::RealCase, 5, limit, compute_rows(ds, opts), opts);
}

AlphaStatistics alpha_statistics(const std::vector<SurveyRow>& rows) {
  AlphaStatistics st;
  std::vector<Complex> distinct;
  for (const SurveyRow& r : rows) {
    for (const AlphaEntry& e : r.alpha_reports) {
      ++st.alpha_count;
      const Complex a = e.report.alpha;
      const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const Complex& b) {
        return std::abs(a - b) <= kAlphaSeparationTolerance;
      });
      if (!seen) distinct.push_back(a);
    }
  }
  st.distinct_alpha_count = distinct.size();
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      const double sep = std::abs(distinct[i] - distinct[j]);
      if (!st.min_alpha_separation || sep < *st.min_alpha_separation) st.min_alpha_separation = sep;
    }
  return st;
}

namespace {

TableRecord base_record(const SurveyRow& row, std::int64_t log_branch) {
  TableRecord rec;
  rec.D = row.D;
  rec.d = row.d;
  rec.h = row.h;
  rec.log_branch = log_branch;
  if (const auto* eps = std::get_if<FundamentalUnit>(&row.unit)) {
    rec.unit = eps->to_string();
    rec.norm = eps->norm;
    rec.regulator = eps->regulator;
  } else {
    rec.unit = "mu_" + std::to_string(std::get<RootsOfUnity>(row.unit).n);
    rec.norm = 1;
  }
  return rec;
}

void attach(TableRecord& rec, const AlphaEntry& e) {
  rec.unit = e.unit;
  rec.alpha = e.report.alpha;
  rec.residual_defining = e.report.residual_defining;
  rec.residual_split_1 = e.report.residual_split_1;
  rec.residual_split_2 = e.report.residual_split_2;
  rec.residual_sum_equation = e.report.residual_sum_equation;
  rec.branch = e.report.branch.k;
  rec.log_branch = e.report.conventions.log_branch;
}

}  // namespace

CorrespondenceTable correspondence_table(const std::vector<SurveyRow>& rows) {
  CorrespondenceTable table;
  for (const SurveyRow& row : rows) {
    for (const AlphaEntry& e : row.alpha_reports) {
      TableRecord rec = base_record(row, e.report.conventions.log_branch);
      attach(rec, e);
      table.records.push_back(std::move(rec));
    }
  }
  table.stats = alpha_statistics(rows);
  return table;
}

std::vector<TableRecord> flatten_rows(const std::vector<SurveyRow>& rows, std::int64_t log_branch) {
  std::vector<TableRecord> out;
  for (const SurveyRow& row : rows) {
    if (row.alpha_reports.empty()) {
      out.push_back(base_record(row, log_branch));
      continue;
    }
    for (const AlphaEntry& e : row.alpha_reports) {
      TableRecord rec = base_record(row, log_branch);
      attach(rec, e);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

}  // namespace lgw
