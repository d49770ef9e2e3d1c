#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "lgw/gauss_survey.hpp"
#include "lgw/serialize.hpp"

using lgw::CaseTag;
using lgw::Complex;
using lgw::SurveyOptions;

namespace {

std::set<std::int64_t> h1_discriminants(const lgw::SurveySummary& s) {
  std::set<std::int64_t> out;
  for (const auto& row : s.rows)
    if (row.h == 1) out.insert(row.D);
  return out;
}

std::set<std::int64_t> h1_radicands(const lgw::SurveySummary& s) {
  std::set<std::int64_t> out;
  for (const auto& row : s.rows)
    if (row.h == 1) out.insert(row.d);
  return out;
}

std::string dump(const lgw::SurveySummary& s) {
  return lgw::to_json(s, lgw::flatten_rows(s.rows, s.options.log_branch)).dump();
}

}  // namespace

TEST_CASE("scan_imaginary(200) finds the nine class-number-one fields") {
  const auto s = lgw::scan_imaginary(200);
  CHECK(h1_discriminants(s) == std::set<std::int64_t>{-3, -4, -7, -8, -11, -19, -43, -67, -163});
  CHECK(h1_radicands(s) == std::set<std::int64_t>{-1, -2, -3, -7, -11, -19, -43, -67, -163});
  CHECK(s.count_h1 == 9);
  CHECK(s.case_tag == CaseTag::ComplexCase);
  for (const auto& row : s.rows) CHECK(row.alpha_reports.empty() == (row.h != 1));
  for (std::size_t i = 1; i < s.rows.size(); ++i) CHECK(-s.rows[i - 1].D < -s.rows[i].D);
}

TEST_CASE("scan_imaginary small limits") {
  const auto s10 = lgw::scan_imaginary(10);
  CHECK(h1_discriminants(s10) == std::set<std::int64_t>{-3, -4, -7, -8});
  CHECK(s10.rows.size() == 4);

  const auto s2 = lgw::scan_imaginary(2);
  CHECK(s2.rows.empty());
  CHECK(s2.count_h1 == 0);
  CHECK(s2.alpha_stats.alpha_count == 0);
  CHECK_FALSE(s2.alpha_stats.min_alpha_separation.has_value());
}

TEST_CASE("torsion units over the class-number-one fields") {
  const auto s = lgw::scan_imaginary(200);
  REQUIRE(s.distinct_units.size() == 8);
  const double h = std::sqrt(3.0) / 2.0;
  const Complex listed[] = {{1, 0},    {-1, 0},    {0, 1},      {0, -1},
                            {0.5, h},  {0.5, -h},  {-0.5, h},   {-0.5, -h}};
  for (const Complex z : listed) {
    bool found = false;
    for (const Complex u : s.distinct_units) found = found || std::abs(u - z) <= 1e-14;
    CHECK(found);
  }
}

TEST_CASE("imaginary alpha reports carry the unit label and satisfy their equation") {
  const auto s = lgw::scan_imaginary(10);
  for (const auto& row : s.rows) {
    for (const auto& entry : row.alpha_reports) {
      CHECK(entry.unit.rfind("zeta_", 0) == 0);
      CHECK(entry.report.residual_defining <= 1e-10);
    }
  }
  // eps = 1 has log 0 on the default log branch, so it carries no alpha:
  // Q(i) keeps i, -1, -i
  const auto& gi = s.rows[1];
  REQUIRE(gi.D == -4);
  CHECK(gi.alpha_reports.size() == 3);
}

TEST_CASE("scan_real examples") {
  // the limit bounds D, so radicand 38 (D = 152) needs limit 152
  const std::set<std::int64_t> expected{2, 3, 5, 6, 7, 11, 13, 14, 17, 19, 21, 22, 23, 29, 31, 33, 37, 38};
  const auto wide = h1_radicands(lgw::scan_real(152));
  for (std::int64_t d : expected) CHECK(wide.count(d) == 1);

  const auto s40 = lgw::scan_real(40);
  std::set<std::int64_t> expected40;
  for (std::int64_t d : expected)
    if (lgw::discriminant_of(d) <= 40) expected40.insert(d);
  CHECK(h1_radicands(s40) == expected40);
  for (std::size_t i = 1; i < s40.rows.size(); ++i) CHECK(s40.rows[i - 1].D < s40.rows[i].D);

  const auto s5 = lgw::scan_real(5);
  REQUIRE(s5.rows.size() == 1);
  CHECK(s5.rows[0].d == 5);
  CHECK(s5.rows[0].h == 1);
  REQUIRE(s5.rows[0].alpha_reports.size() == 1);
  CHECK(std::abs(s5.rows[0].alpha_reports[0].report.alpha.imag()) <= 1e-12);

  const auto s4 = lgw::scan_real(4);
  CHECK(s4.rows.empty());
  CHECK(s4.count_h1 == 0);
}

TEST_CASE("scan_real count_h1 is monotone in the limit") {
  std::size_t prev = 0;
  for (std::int64_t limit : {5, 50, 100, 200, 400, 800}) {
    const auto s = lgw::scan_real(limit);
    CHECK(s.count_h1 >= prev);
    prev = s.count_h1;
  }
}

TEST_CASE("unit powers attach one alpha per power") {
  SurveyOptions opts;
  opts.unit_powers = 3;
  const auto s = lgw::scan_real(8, opts);
  for (const auto& row : s.rows) {
    if (row.h != 1) continue;
    REQUIRE(row.alpha_reports.size() == 3);
    CHECK(row.alpha_reports[2].unit.find(")^3") != std::string::npos);
    for (const auto& entry : row.alpha_reports) {
      CHECK(*entry.report.residual_split_1 <= 1e-10);
      CHECK(*entry.report.residual_split_2 <= 1e-10);
    }
  }
}

TEST_CASE("correspondence_table") {
  const auto s = lgw::scan_imaginary(200);
  const auto table = lgw::correspondence_table(s.rows);
  std::size_t expected = 0;
  for (const auto& row : s.rows) expected += row.alpha_reports.size();
  CHECK(table.records.size() == expected);
  CHECK(table.stats.alpha_count == expected);
  CHECK(table.stats.distinct_alpha_count >= 1);
  CHECK(table.stats.distinct_alpha_count <= expected);
  for (const auto& rec : table.records) CHECK(rec.h == 1);

  const auto empty = lgw::correspondence_table({});
  CHECK(empty.records.empty());
  CHECK(empty.stats.alpha_count == 0);
  CHECK(empty.stats.distinct_alpha_count == 0);

  const auto real = lgw::scan_real(8);
  std::vector<lgw::SurveyRow> picked;
  for (const auto& row : real.rows)
    if (row.d == 2 || row.d == 5) picked.push_back(row);
  const auto rt = lgw::correspondence_table(picked);
  REQUIRE(rt.records.size() == 2);
  for (const auto& rec : rt.records) CHECK(std::abs(rec.alpha->imag()) <= 1e-12);
}

TEST_CASE("flatten_rows keeps fields without alphas") {
  const auto s = lgw::scan_imaginary(30);
  const auto recs = lgw::flatten_rows(s.rows, 0);
  std::set<std::int64_t> seen;
  for (const auto& rec : recs) seen.insert(rec.D);
  CHECK(seen.size() == s.rows.size());
  for (const auto& rec : recs) {
    if (rec.h != 1) {
      CHECK_FALSE(rec.alpha.has_value());
      CHECK(rec.unit.rfind("mu_", 0) == 0);
    }
  }
}

TEST_CASE("scan output does not depend on the worker count") {
  SurveyOptions one, many;
  many.jobs = 8;
  CHECK(dump(lgw::scan_imaginary(600, one)) == dump(lgw::scan_imaginary(600, many)));
  CHECK(dump(lgw::scan_real(300, one)) == dump(lgw::scan_real(300, many)));
}

TEST_CASE("serialized records use the fixed column set") {
  const auto s = lgw::scan_real(8);
  const auto recs = lgw::flatten_rows(s.rows, 0);
  REQUIRE_FALSE(recs.empty());
  const auto j = lgw::to_json(recs.front());
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == lgw::record_columns());
  CHECK(lgw::csv_header() ==
        "D,d,h,unit,norm,regulator,alpha_re,alpha_im,residual_defining,residual_split_1,"
        "residual_split_2,residual_sum_equation,branch,log_branch");
  const std::string line = lgw::to_csv(recs.front());
  CHECK(std::count(line.begin(), line.end(), ',') == 13);
}
