#include "envdet/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "envdet/errors.hpp"

namespace envdet::cli {
namespace {

std::string full(double x) { return fmt::format("{:.17g}", x); }
std::string brief(double x) { return fmt::format("{:.6g}", x); }

long parse_long(std::string_view s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

void write_diagnostics_text(std::ostream& os, const std::vector<verify::Diagnostic>& ds) {
  for (const auto& d : ds) {
    os << (d.passed ? "[PASS] " : "[FAIL] ") << d.name << "  measured = " << brief(d.measured)
       << "  tolerance = " << brief(d.tolerance) << '\n';
  }
}

void emit(std::ostream& out, const OutputRecord& rec, Format fmt) {
  if (fmt == Format::json) {
    out << nlohmann::json(rec).dump(2) << '\n';
  } else {
    out << to_text(rec);
  }
}

}  // namespace

bool OutputRecord::all_passed() const {
  return std::all_of(diagnostics.begin(), diagnostics.end(),
                     [](const verify::Diagnostic& d) { return d.passed; });
}

void to_json(nlohmann::json& j, const OutputRecord& r) {
  auto diags = nlohmann::json::array();
  for (const auto& d : r.diagnostics) {
    diags.push_back({{"name", d.name},
                     {"passed", d.passed},
                     {"measured", d.measured},
                     {"tolerance", d.tolerance}});
  }
  j = nlohmann::json{{"schema_version", r.schema_version},
                     {"command", r.command},
                     {"inputs", r.inputs},
                     {"results", r.results},
                     {"labels", r.labels},
                     {"diagnostics", diags}};
}

void from_json(const nlohmann::json& j, OutputRecord& r) {
  j.at("schema_version").get_to(r.schema_version);
  j.at("command").get_to(r.command);
  j.at("inputs").get_to(r.inputs);
  j.at("results").get_to(r.results);
  j.at("labels").get_to(r.labels);
  r.diagnostics.clear();
  for (const auto& d : j.at("diagnostics")) {
    r.diagnostics.push_back({d.at("name").get<std::string>(), d.at("passed").get<bool>(),
                             d.at("measured").get<double>(), d.at("tolerance").get<double>()});
  }
}

std::string to_text(const OutputRecord& r) {
  std::ostringstream os;
  os << "command: " << r.command << '\n';
  for (const auto& [k, v] : r.inputs) os << "input " << k << " = " << v << '\n';
  for (const auto& [k, v] : r.labels) os << k << ": " << v << '\n';
  for (const auto& [k, v] : r.results) os << k << " = " << brief(v) << '\n';
  write_diagnostics_text(os, r.diagnostics);
  return os.str();
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  throw DomainError("unknown format '" + s + "'");
}

AngleParam parse_beta(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return AngleParam(parse_double(s));
  const std::string_view sv(s);
  return AngleParam::from_fraction(parse_long(sv.substr(0, slash)), parse_long(sv.substr(slash + 1)));
}

QuadratureSpec quadrature_from_env() {
  QuadratureSpec spec;
  if (const char* tol = std::getenv("ENVDET_QUAD_TOL"); tol != nullptr && *tol != '\0') {
    const double v = parse_double(tol);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("ENVDET_QUAD_TOL must be a positive number");
    }
    spec.abs_tol = v;
    spec.rel_tol = v;
  }
  spec.validate();
  return spec;
}

void write_scan_csv(std::ostream& os, const ScanTable& table) {
  os << "beta,log_det,d1,d2,asym_neg1,asym_neghalf\n";
  for (const auto& r : table.rows) {
    os << full(r.beta) << ',' << full(r.log_det) << ',' << full(r.d1) << ',' << full(r.d2) << ','
       << full(r.asym_neg1) << ',' << full(r.asym_neghalf) << '\n';
  }
}

nlohmann::json scan_to_json(const ScanTable& table) {
  auto rows = nlohmann::json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"beta", r.beta},
                    {"log_det", r.log_det},
                    {"d1", r.d1},
                    {"d2", r.d2},
                    {"asym_neg1", r.asym_neg1},
                    {"asym_neghalf", r.asym_neghalf},
                    {"exact", r.exact}});
  }
  return {{"schema_version", kSchemaVersion},
          {"command", "scan"},
          {"area", table.area},
          {"grid", {{"beta_min", table.beta_min}, {"beta_max", table.beta_max}, {"count", table.count}}},
          {"rows", rows}};
}

OutputRecord cmd_eval(const std::string& beta, double area, const QuadratureSpec& quad) {
  const AngleParam p = parse_beta(beta);
  EvalOptions opts;
  opts.quad = quad;
  const DetResult det = log_det_area(p, area, opts);
  const EnvelopeGeometry geo = geometry(p, area);

  OutputRecord rec;
  rec.command = "eval";
  rec.inputs = {{"beta", beta}, {"area", full(area)}};
  rec.labels["route"] = std::string(barnes::route_name(det.route));
  rec.results = {
      {"beta", p.beta()},
      {"log_det", det.log_det},
      {"elementary_part", det.elementary_part},
      {"barnes_part", det.barnes_part},
      {"area_term", det.area_term},
      {"barnes_error_bound", det.barnes_error_bound},
      {"zeta0", zeta0(p)},
      {"scaling_factor", scaling_factor(p)},
      {"side_ab", geo.side_ab},
      {"angle_a", geo.angle_a},
      {"angle_b", geo.angle_b},
      {"angle_c", geo.angle_c},
      {"area", geo.area},
  };
  if (p.is_exact()) {
    EvalOptions exact = opts;
    exact.route = barnes::Route::rational;
    rec.results["log_det_rational"] = log_det_area(p, area, exact).log_det;
  }
  return rec;
}

OutputRecord cmd_scan(const ScanRequest& req, std::ostream& fallback, const QuadratureSpec& quad) {
  if (req.format == Format::text) throw DomainError("scan output format must be csv or json");
  ScanOptions opts;
  opts.exact_points = req.exact_points;
  opts.quad = quad;
  const ScanTable table = scan(req.beta_min, req.beta_max, req.count, req.area, opts);

  auto write = [&](std::ostream& os) {
    if (req.format == Format::csv) {
      write_scan_csv(os, table);
    } else {
      os << scan_to_json(table).dump(2) << '\n';
    }
  };
  if (req.out_path.empty()) {
    write(fallback);
  } else {
    std::ofstream file(req.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + req.out_path + "' for writing");
    write(file);
    file.flush();
    if (!file) throw IoError("failed writing '" + req.out_path + "'");
  }

  OutputRecord rec;
  rec.command = "scan";
  rec.inputs = {{"from", full(req.beta_min)},
                {"to", full(req.beta_max)},
                {"count", std::to_string(req.count)},
                {"area", full(req.area)},
                {"exact_points", req.exact_points ? "true" : "false"}};
  if (!req.out_path.empty()) rec.labels["out"] = req.out_path;
  const auto imin = argmin_log_det(table);
  rec.results = {{"rows", static_cast<double>(table.rows.size())},
                 {"argmin_beta", table.rows[imin].beta},
                 {"min_log_det", table.rows[imin].log_det}};
  return rec;
}

OutputRecord cmd_verify(verify::Suite suite, const QuadratureSpec& quad) {
  OutputRecord rec;
  rec.command = "verify";
  rec.inputs = {{"suite", suite == verify::Suite::fast ? "fast" : "full"}};
  rec.diagnostics = verify::run_suite(suite, quad);
  const auto passed = std::count_if(rec.diagnostics.begin(), rec.diagnostics.end(),
                                    [](const verify::Diagnostic& d) { return d.passed; });
  rec.results = {{"checks", static_cast<double>(rec.diagnostics.size())},
                 {"passed", static_cast<double>(passed)}};
  return rec;
}

OutputRecord cmd_critical(double area, const QuadratureSpec& quad) {
  const AngleParam p = AngleParam::from_fraction(-2, 3);
  EvalOptions opts;
  opts.quad = quad;
  const double log_s = std::log(area);
  const DetResult det = log_det_area(p, area, opts);
  const double d1 = d_log_det(p, quad) - zeta0_d1(p) * log_s;
  const double d2 = d2_log_det(p, quad) - zeta0_d2(p) * log_s;
  const double closed = 2.0 / 3.0 * kConstants.log_pi + std::log(2.0 / 3.0) / 3.0 -
                        2.0 * log_gamma(2.0 / 3.0) + log_s / 3.0;

  OutputRecord rec;
  rec.command = "critical";
  rec.inputs = {{"area", full(area)}};
  rec.results = {{"beta_star", p.beta()},
                 {"log_det", det.log_det},
                 {"log_det_closed_form", closed},
                 {"d1", d1},
                 {"d2", d2},
                 {"critical_area", critical_area(quad)}};
  std::string cls = "degenerate";
  if (std::abs(d2) > 1e-6) cls = d2 > 0.0 ? "minimum" : "maximum";
  rec.labels["classification"] = cls;
  return rec;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral determinant of the Laplacian on isosceles triangle envelopes", "envdet"};
  app.require_subcommand(1);

  std::string beta;
  double area = 1.0;
  std::string format = "text";
  auto* eval = app.add_subcommand("eval", "log det with breakdown and geometry");
  eval->add_option("--beta", beta, "beta in (-1, -1/2); decimal or fraction such as -2/3")
      ->required();
  eval->add_option("--area", area, "envelope area S > 0");
  eval->add_option("--format", format, "json or text");

  ScanRequest scan_req;
  std::string scan_format = "csv";
  auto* scan_cmd = app.add_subcommand("scan", "tabulate log det and derivatives over a beta grid");
  scan_cmd->add_option("--from", scan_req.beta_min, "first beta")->required();
  scan_cmd->add_option("--to", scan_req.beta_max, "last beta")->required();
  scan_cmd->add_option("--count", scan_req.count, "number of grid points (>= 2)")->required();
  scan_cmd->add_option("--area", scan_req.area, "envelope area S > 0");
  scan_cmd->add_option("--out", scan_req.out_path, "output file (default: stdout)");
  scan_cmd->add_option("--format", scan_format, "csv or json");
  scan_cmd->add_flag("--exact-points", scan_req.exact_points,
                     "add rows at rational beta evaluated in closed form");

  std::string suite = "fast";
  auto* verify_cmd = app.add_subcommand("verify", "run the numerical self-checks");
  verify_cmd->add_option("--suite", suite, "fast or full");
  verify_cmd->add_option("--format", format, "json or text");

  auto* critical = app.add_subcommand("critical", "critical point beta = -2/3 at a given area");
  critical->add_option("--area", area, "envelope area S > 0");
  critical->add_option("--format", format, "json or text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "envdet: " << e.what() << '\n';
    return kDomainError;
  }

  try {
    const QuadratureSpec quad = quadrature_from_env();
    if (eval->parsed()) {
      const Format f = parse_format(format);
      if (f == Format::csv) throw DomainError("eval output format must be json or text");
      emit(out, cmd_eval(beta, area, quad), f);
    } else if (scan_cmd->parsed()) {
      scan_req.format = parse_format(scan_format);
      const auto rec = cmd_scan(scan_req, out, quad);
      if (!scan_req.out_path.empty()) emit(out, rec, Format::text);
    } else if (verify_cmd->parsed()) {
      verify::Suite s;
      if (suite == "fast") {
        s = verify::Suite::fast;
      } else if (suite == "full") {
        s = verify::Suite::full;
      } else {
        throw DomainError("unknown suite '" + suite + "'");
      }
      const Format f = parse_format(format);
      if (f == Format::csv) throw DomainError("verify output format must be json or text");
      const auto rec = cmd_verify(s, quad);
      emit(out, rec, f);
      return rec.all_passed() ? kOk : kVerificationFailed;
    } else if (critical->parsed()) {
      const Format f = parse_format(format);
      if (f == Format::csv) throw DomainError("critical output format must be json or text");
      if (!(area > 0.0)) throw DomainError("area must be positive");
      emit(out, cmd_critical(area, quad), f);
    }
  } catch (const IoError& e) {
    err << "envdet: I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConvergenceError& e) {
    err << "envdet: numerical non-convergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::domain_error& e) {
    err << "envdet: domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "envdet: numerical failure: " << e.what() << '\n';
    return kNonConvergence;
  }
  return kOk;
}

}  // namespace envdet::cli
