#include "lgw/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "lgw/errors.hpp"
#include "lgw/exp_solver.hpp"
#include "lgw/gauss_survey.hpp"
#include "lgw/lambert_w.hpp"
#include "lgw/quadratic_fields.hpp"
#include "lgw/serialize.hpp"

namespace lgw::cli {

namespace {

enum class Format { Json, Csv, Plain };

struct Common {
  Format format = Format::Json;
  std::optional<double> tolerance_override;
  std::int64_t branch = 0;
  std::int64_t log_branch = 0;
  Pairing pairing = Pairing::ConjugateBranch;

  double tolerance() const { return tolerance_override.value_or(kDefaultTolerance); }

  Json conventions() const {
    Json c;
    c["branch"] = branch;
    c["log_branch"] = log_branch;
    c["pairing"] = to_string(pairing);
    c["tolerance"] = tolerance();
    return c;
  }
};

struct UnitArgs {
  std::optional<double> eps_re, eps_im, log_re, log_im;
  std::string case_name = "complex";

  UnitInput build(std::int64_t log_branch) const {
    const CaseTag tag = case_name == "real" ? CaseTag::RealCase : CaseTag::ComplexCase;
    if (log_re || log_im)
      return UnitInput::from_log({log_re.value_or(0.0), log_im.value_or(0.0)}, tag, log_branch);
    return UnitInput::from_value({eps_re.value_or(0.0), eps_im.value_or(0.0)}, tag, log_branch);
  }
};

void add_unit_options(CLI::App* cmd, UnitArgs& u) {
  auto* er = cmd->add_option("--eps-re", u.eps_re, "Real part of the unit eps");
  auto* ei = cmd->add_option("--eps-im", u.eps_im, "Imaginary part of the unit eps");
  auto* lr = cmd->add_option("--log-re", u.log_re, "Real part of log eps (instead of eps)");
  auto* li = cmd->add_option("--log-im", u.log_im, "Imaginary part of log eps (instead of eps)");
  for (auto* e : {er, ei}) {
    e->excludes(lr);
    e->excludes(li);
  }
  cmd->add_option("--case", u.case_name, "complex (i a = e^{2 pi i a} log eps) or real (a = cos(2 pi a) log eps)")
      ->check(CLI::IsMember({"complex", "real"}))
      ->capture_default_str();
}

std::optional<std::int64_t> discriminant_from(const std::optional<std::int64_t>& D,
                                              const std::optional<std::int64_t>& d) {
  if (D) return D;
  if (d) return discriminant_of(*d);
  return std::nullopt;
}

std::string plain_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

/// Emit a flat object in the requested format. The conventions key is JSON-only.
void emit_object(std::ostream& out, const Json& obj, Format format) {
  if (format == Format::Json) {
    out << obj.dump() << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> cells;
  for (const auto& [key, value] : obj.items()) {
    if (key == "conventions") continue;
    cells.emplace_back(key, value.is_null() ? std::string() : plain_value(value));
  }
  if (format == Format::Plain) {
    for (const auto& [k, v] : cells) out << k << ": " << v << '\n';
    return;
  }
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i].first;
  out << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i].second;
  out << '\n';
}

void emit_records(std::ostream& out, const std::vector<TableRecord>& records) {
  out << csv_header() << '\n';
  for (const TableRecord& r : records) out << to_csv(r) << '\n';
}

unsigned jobs_from(const std::optional<unsigned>& flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("LGW_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lambert W, exp-linear fixed points and quadratic-field class numbers", "lgw"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  std::string format_name = "json";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"json", "csv", "plain"}))
      ->capture_default_str();
  app.add_option("--tolerance", common.tolerance_override,
                 "Acceptance tolerance for the 'ok' verdicts (default 1e-10)")
      ->check(CLI::Range(1e-15, 1e-6));
  app.add_option("--branch", common.branch, "Lambert W branch k (default 0)")->capture_default_str();
  app.add_option("--log-branch", common.log_branch, "Complex-log branch of log eps (default 0)")
      ->capture_default_str();
  std::string pairing_name = "conjugate";
  app.add_option("--pairing", pairing_name,
                 "Real-case branch pairing: conjugate (second root on -k) or same (default conjugate)")
      ->check(CLI::IsMember({"conjugate", "same"}))
      ->capture_default_str();

  // w
  auto* w_cmd = app.add_subcommand("w", "Evaluate W_k(z)");
  double w_re = 0.0, w_im = 0.0;
  bool w_derivative_flag = false;
  std::optional<int> w_series_terms;
  w_cmd->add_option("--re", w_re, "Re z")->required();
  w_cmd->add_option("--im", w_im, "Im z")->capture_default_str();
  w_cmd->add_flag("--derivative", w_derivative_flag, "Also report dW/dz");
  w_cmd->add_option("--series", w_series_terms, "Also report the n-term Maclaurin partial sum");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve z = A + B e^{Cz} on branch k");
  double a_re = 0, a_im = 0, b_re = 0, b_im = 0, c_re = 0, c_im = 0;
  solve_cmd->add_option("--a-re", a_re)->capture_default_str();
  solve_cmd->add_option("--a-im", a_im)->capture_default_str();
  solve_cmd->add_option("--b-re", b_re)->capture_default_str();
  solve_cmd->add_option("--b-im", b_im)->capture_default_str();
  solve_cmd->add_option("--c-re", c_re)->capture_default_str();
  solve_cmd->add_option("--c-im", c_im)->capture_default_str();

  // alpha
  auto* alpha_cmd = app.add_subcommand("alpha", "Fixed-point root alpha for a unit eps");
  UnitArgs alpha_unit;
  double beta = 0.0;
  add_unit_options(alpha_cmd, alpha_unit);
  alpha_cmd->add_option("--beta", beta, "Auxiliary constant beta (complex case; cancels)")->capture_default_str();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Residual of the defining fixed-point equation");
  UnitArgs verify_unit;
  double alpha_re = 0.0, alpha_im = 0.0;
  add_unit_options(verify_cmd, verify_unit);
  verify_cmd->add_option("--alpha-re", alpha_re)->required();
  verify_cmd->add_option("--alpha-im", alpha_im)->capture_default_str();

  // field selectors shared by unit/classno
  std::optional<std::int64_t> unit_D, unit_d, classno_D, classno_d;
  auto add_field_selector = [](CLI::App* cmd, std::optional<std::int64_t>& D, std::optional<std::int64_t>& d) {
    auto* by_disc = cmd->add_option("--discriminant", D, "Fundamental discriminant D");
    auto* by_rad = cmd->add_option("--d", d, "Squarefree radicand d");
    by_disc->excludes(by_rad);
    by_rad->excludes(by_disc);
  };

  // unit
  auto* unit_cmd = app.add_subcommand("unit", "Field signature and unit group (fundamental unit or roots of unity)");
  add_field_selector(unit_cmd, unit_D, unit_d);
  std::optional<int> degree;
  bool totally_real = false;
  unit_cmd->add_option("--degree", degree, "Signature/rank table for a Galois field of degree 2r instead");
  unit_cmd->add_flag("--totally-real", totally_real, "With --degree: totally real field");

  // classno
  auto* classno_cmd = app.add_subcommand("classno", "Class number of a quadratic field");
  add_field_selector(classno_cmd, classno_D, classno_d);
  bool narrow = false, analytic = false;
  classno_cmd->add_flag("--narrow", narrow, "Also report the narrow class number h+");
  classno_cmd->add_flag("--analytic", analytic, "Also report the class-number-formula value");
  std::int64_t analytic_terms = 0;
  classno_cmd->add_option("--terms", analytic_terms, "Character-sum length for --analytic (0 = full sum)")
      ->check(CLI::NonNegativeNumber);

  // scan / table
  struct ScanArgs {
    bool imaginary = false, real = false, only_h1 = false;
    std::int64_t limit = 0;
    int powers = 1;
    std::optional<unsigned> jobs;
  };
  ScanArgs scan_args, table_args;
  auto add_scan_options = [](CLI::App* cmd, ScanArgs& s) {
    auto* im = cmd->add_flag("--imaginary", s.imaginary, "Scan D in [-limit, -3]");
    auto* re = cmd->add_flag("--real", s.real, "Scan D in [5, limit]");
    im->excludes(re);
    cmd->add_option("--limit", s.limit, "Scan bound |D| <= limit")->required();
    cmd->add_option("--powers", s.powers, "Real fields: attach eps^n for n <= N (default 1)")
        ->check(CLI::Range(1, 64))
        ->capture_default_str();
    cmd->add_option("--jobs", s.jobs, "Worker threads (falls back to LGW_JOBS, then 1)");
  };
  auto* scan_cmd = app.add_subcommand("scan", "Survey class numbers over a discriminant range");
  add_scan_options(scan_cmd, scan_args);
  scan_cmd->add_flag("--only-h1", scan_args.only_h1, "Emit only class-number-one rows");
  auto* table_cmd = app.add_subcommand("table", "Field/unit/alpha correspondence table over h = 1 fields");
  add_scan_options(table_cmd, table_args);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  common.format = format_name == "csv" ? Format::Csv : format_name == "plain" ? Format::Plain : Format::Json;
  common.pairing = pairing_name == "same" ? Pairing::SameBranch : Pairing::ConjugateBranch;
  const BranchIndex k{common.branch};

  auto usage_error = [&](const std::string& msg, CLI::App* cmd) {
    err << "error: " << msg << '\n' << cmd->help();
    return kExitUsage;
  };

  try {
    if (w_cmd->parsed()) {
      const Complex z{w_re, w_im};
      const WEvaluation w = lambert_w(k, z);
      Json j;
      j["re"] = w.value.real();
      j["im"] = w.value.imag();
      j["residual"] = w.residual;
      j["iterations"] = w.iterations;
      j["branch"] = w.branch.k;
      if (w_derivative_flag) {
        const Complex dw = w_derivative(k, z);
        j["derivative_re"] = dw.real();
        j["derivative_im"] = dw.imag();
      }
      if (w_series_terms) {
        const Complex s = w_series(z, *w_series_terms);
        j["series_re"] = s.real();
        j["series_im"] = s.imag();
        j["series_terms"] = *w_series_terms;
      }
      j["conventions"] = common.conventions();
      emit_object(out, j, common.format);
      return kExitOk;
    }

    if (solve_cmd->parsed()) {
      const ExpLinearEquation eq({a_re, a_im}, {b_re, b_im}, {c_re, c_im});
      const Complex z = solve_exp_linear(eq, k);
      const double residual = eq.residual(z);
      Json j;
      j["re"] = z.real();
      j["im"] = z.imag();
      j["residual"] = residual;
      j["branch"] = k.k;
      j["ok"] = residual <= common.tolerance() * (1.0 + std::abs(z));
      j["conventions"] = common.conventions();
      emit_object(out, j, common.format);
      return kExitOk;
    }

    if (alpha_cmd->parsed()) {
      const UnitInput u = alpha_unit.build(common.log_branch);
      const FixedPointReport report = u.case_tag == CaseTag::ComplexCase
                                          ? alpha_complex_case(u, k, beta)
                                          : alpha_real_case(u, k, common.pairing);
      Json j = to_json(report);
      j["case"] = to_string(u.case_tag);
      const double tol = common.tolerance();
      j["ok"] = u.case_tag == CaseTag::ComplexCase
                    ? report.residual_defining <= tol
                    : *report.residual_split_1 <= tol && *report.residual_split_2 <= tol;
      j["conventions"] = common.conventions();
      emit_object(out, j, common.format);
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const UnitInput u = verify_unit.build(common.log_branch);
      const double residual = verify_fixed_point({alpha_re, alpha_im}, u);
      Json j;
      j["residual"] = residual;
      j["case"] = to_string(u.case_tag);
      j["ok"] = residual <= common.tolerance();
      j["conventions"] = common.conventions();
      emit_object(out, j, common.format);
      return kExitOk;
    }

    if (unit_cmd->parsed()) {
      Json j;
      if (degree) {
        const Signature s = unit_rank(*degree, totally_real);
        j["degree"] = *degree;
        j["totally_real"] = totally_real;
        j["sigma1"] = s.sigma1;
        j["sigma2"] = s.sigma2;
        j["unit_rank"] = s.rank;
      } else {
        const auto D = discriminant_from(unit_D, unit_d);
        if (!D) return usage_error("unit needs --discriminant, --d or --degree", unit_cmd);
        const QuadraticFieldDescriptor f = describe_field(radicand_of(*D));
        j["D"] = f.D;
        j["d"] = f.d;
        j["sigma1"] = f.sigma1;
        j["sigma2"] = f.sigma2;
        j["unit_rank"] = f.unit_rank;
        if (f.D < 0) {
          const RootsOfUnity mu = roots_of_unity(f.D);
          j["n"] = mu.n;
          Json elems = Json::array();
          for (const Complex& z : mu.elements) elems.push_back(Json::array({z.real(), z.imag()}));
          j["elements"] = std::move(elems);
        } else {
          const FundamentalUnit eps = fundamental_unit(f.d);
          j["unit"] = eps.to_string();
          j["x"] = eps.x.get_str();
          j["y"] = eps.y.get_str();
          j["half_integral"] = eps.half_integral;
          j["norm"] = eps.norm;
          j["regulator"] = eps.regulator;
        }
      }
      j["conventions"] = common.conventions();
      emit_object(out, j, common.format);
      return kExitOk;
    }

    if (classno_cmd->parsed()) {
      const auto D = discriminant_from(classno_D, classno_d);
      if (!D) return usage_error("classno needs --discriminant or --d", classno_cmd);
      const ClassNumberInfo info = class_number_info(*D);
      Json j;
      j["D"] = *D;
      j["h"] = info.h;
      if (narrow) j["h_plus"] = info.h_plus;
      if (analytic) j["h_analytic"] = class_number_analytic(*D, analytic_terms);
      j["conventions"] = common.conventions();
      emit_object(out, j, common.format);
      return kExitOk;
    }

    const bool is_scan = scan_cmd->parsed();
    if (is_scan || table_cmd->parsed()) {
      const ScanArgs& s = is_scan ? scan_args : table_args;
      CLI::App* cmd = is_scan ? scan_cmd : table_cmd;
      if (s.imaginary == s.real) return usage_error("choose exactly one of --imaginary or --real", cmd);
      SurveyOptions opts;
      opts.branch = k;
      opts.log_branch = common.log_branch;
      opts.pairing = common.pairing;
      opts.unit_powers = s.powers;
      opts.jobs = jobs_from(s.jobs);
      const SurveySummary summary = s.imaginary ? scan_imaginary(s.limit, opts) : scan_real(s.limit, opts);

      if (is_scan) {
        std::vector<SurveyRow> shown;
        for (const SurveyRow& r : summary.rows)
          if (!s.only_h1 || r.h == 1) shown.push_back(r);
        const std::vector<TableRecord> records = flatten_rows(shown, common.log_branch);
        if (common.format == Format::Csv) {
          emit_records(out, records);
        } else if (common.format == Format::Plain) {
          out << "case: " << to_string(summary.case_tag) << '\n'
              << "range: " << summary.D_min << " " << summary.D_max << '\n'
              << "fields: " << summary.rows.size() << '\n'
              << "count_h1: " << summary.count_h1 << '\n'
              << "distinct_alpha_count: " << summary.alpha_stats.distinct_alpha_count << '\n';
          if (summary.case_tag == CaseTag::ComplexCase)
            out << "distinct_unit_count: " << summary.distinct_units.size() << '\n';
          out << "h1_discriminants:";
          for (const SurveyRow& r : summary.rows)
            if (r.h == 1) out << ' ' << r.D;
          out << '\n';
        } else {
          Json j = to_json(summary, records);
          j["conventions"] = common.conventions();
          out << j.dump() << '\n';
        }
        return kExitOk;
      }

      const CorrespondenceTable table = correspondence_table(summary.rows);
      if (common.format == Format::Json) {
        Json j = to_json(table.stats);
        Json recs = Json::array();
        for (const TableRecord& r : table.records) recs.push_back(to_json(r));
        j["records"] = std::move(recs);
        j["conventions"] = common.conventions();
        out << j.dump() << '\n';
      } else {
        emit_records(out, table.records);
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return category(e.kind()) == ErrorCategory::Numerical ? kExitNumerical : kExitDomain;
  }
  return kExitUsage;
}

}  // namespace lgw::cli
