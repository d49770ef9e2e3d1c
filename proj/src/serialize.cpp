#include "lgw/serialize.hpp"

#include <array>
#include <charconv>

namespace lgw {

namespace {

Json optional_json(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

std::string optional_csv(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

}  // namespace

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> columns = {
      "D",         "d",        "h",
      "unit",      "norm",     "regulator",
      "alpha_re",  "alpha_im", "residual_defining",
      "residual_split_1",      "residual_split_2",
      "residual_sum_equation", "branch",
      "log_branch",
  };
  return columns;
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string to_string(CaseTag tag) { return tag == CaseTag::ComplexCase ? "ComplexCase" : "RealCase"; }

std::string to_string(Pairing pairing) {
  return pairing == Pairing::SameBranch ? "SameBranch" : "ConjugateBranch";
}

Json to_json(const TableRecord& rec) {
  Json j;
  j["D"] = rec.D;
  j["d"] = rec.d;
  j["h"] = rec.h;
  j["unit"] = rec.unit;
  j["norm"] = rec.norm;
  j["regulator"] = optional_json(rec.regulator);
  j["alpha_re"] = rec.alpha ? Json(rec.alpha->real()) : Json(nullptr);
  j["alpha_im"] = rec.alpha ? Json(rec.alpha->imag()) : Json(nullptr);
  j["residual_defining"] = optional_json(rec.residual_defining);
  j["residual_split_1"] = optional_json(rec.residual_split_1);
  j["residual_split_2"] = optional_json(rec.residual_split_2);
  j["residual_sum_equation"] = optional_json(rec.residual_sum_equation);
  j["branch"] = rec.branch ? Json(*rec.branch) : Json(nullptr);
  j["log_branch"] = rec.log_branch;
  return j;
}

std::string csv_header() {
  std::string out;
  for (const auto& c : record_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string to_csv(const TableRecord& rec) {
  const std::array<std::string, 14> cells = {
      std::to_string(rec.D),
      std::to_string(rec.d),
      std::to_string(rec.h),
      rec.unit,
      std::to_string(rec.norm),
      optional_csv(rec.regulator),
      rec.alpha ? format_double(rec.alpha->real()) : std::string(),
      rec.alpha ? format_double(rec.alpha->imag()) : std::string(),
      optional_csv(rec.residual_defining),
      optional_csv(rec.residual_split_1),
      optional_csv(rec.residual_split_2),
      optional_csv(rec.residual_sum_equation),
      rec.branch ? std::to_string(*rec.branch) : std::string(),
      std::to_string(rec.log_branch),
  };
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

Json to_json(const FixedPointReport& report) {
  Json j;
  j["alpha_re"] = report.alpha.real();
  j["alpha_im"] = report.alpha.imag();
  j["branch"] = report.branch.k;
  j["beta"] = report.beta;
  j["residual_defining"] = report.residual_defining;
  j["residual_split_1"] = optional_json(report.residual_split_1);
  j["residual_split_2"] = optional_json(report.residual_split_2);
  j["residual_sum_equation"] = optional_json(report.residual_sum_equation);
  j["log_branch"] = report.conventions.log_branch;
  j["pairing"] = report.conventions.pairing ? Json(to_string(*report.conventions.pairing)) : Json(nullptr);
  return j;
}

Json to_json(const AlphaStatistics& stats) {
  Json j;
  j["alpha_count"] = stats.alpha_count;
  j["distinct_alpha_count"] = stats.distinct_alpha_count;
  j["min_alpha_separation"] = optional_json(stats.min_alpha_separation);
  return j;
}

Json to_json(const SurveySummary& summary, const std::vector<TableRecord>& records) {
  Json j;
  j["case"] = to_string(summary.case_tag);
  j["range"] = Json::array({summary.D_min, summary.D_max});
  j["field_count"] = summary.rows.size();
  j["count_h1"] = summary.count_h1;
  const Json stats = to_json(summary.alpha_stats);
  for (const auto& [key, value] : stats.items()) j[key] = value;
  if (summary.case_tag == CaseTag::ComplexCase) {
    j["distinct_unit_count"] = summary.distinct_units.size();
    Json units = Json::array();
    for (const Complex& u : summary.distinct_units) units.push_back(Json::array({u.real(), u.imag()}));
    j["distinct_units"] = std::move(units);
  }
  Json rows = Json::array();
  for (const TableRecord& rec : records) rows.push_back(to_json(rec));
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace lgw
