#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "envdet/cli.hpp"

using namespace envdet;
using namespace envdet::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"envdet"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::size_t nearest(const std::vector<std::vector<double>>& rows, double beta) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs(rows[i][0] - beta) < std::abs(rows[best][0] - beta)) best = i;
  }
  return best;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("envdet_test_" + name);
}

}  // namespace

TEST_CASE("eval text and json") {
  const auto text = invoke({"eval", "--beta", "-2/3"});
  CHECK(text.code == kOk);
  CHECK(text.out.find("log_det = 0.0216977") != std::string::npos);

  const auto json = invoke({"eval", "--beta", "-3/4", "--format", "json"});
  REQUIRE(json.code == kOk);
  const auto rec = nlohmann::json::parse(json.out).get<OutputRecord>();
  CHECK(rec.schema_version == kSchemaVersion);
  CHECK(std::abs(rec.results.at("log_det") - 0.0829) < 1e-4);
  CHECK(std::abs(rec.results.at("log_det") - rec.results.at("log_det_rational")) < 1e-10);
  CHECK(rec.results.at("zeta0") == doctest::Approx(-0.25));

  const auto dec = invoke({"eval", "--beta", "-0.6", "--area", "2", "--format", "json"});
  REQUIRE(dec.code == kOk);
  const auto r2 = nlohmann::json::parse(dec.out).get<OutputRecord>();
  CHECK(r2.results.count("log_det_rational") == 0);
  CHECK(r2.results.at("area") == doctest::Approx(2.0));
}

TEST_CASE("exit codes") {
  CHECK(invoke({"eval", "--beta", "-0.6", "--area", "0"}).code == kDomainError);
  CHECK(invoke({"eval", "--beta", "0.3"}).code == kDomainError);
  CHECK(invoke({"eval", "--beta", "abc"}).code == kDomainError);
  CHECK(invoke({"eval", "--beta", "-1/2"}).code == kDomainError);
  CHECK(invoke({"eval"}).code == kDomainError);
  CHECK(invoke({"frobnicate"}).code == kDomainError);
  CHECK(invoke({"scan", "--from", "-0.6", "--to", "-0.9", "--count", "5"}).code == kDomainError);
  CHECK(invoke({"critical", "--area", "-1"}).code == kDomainError);
  CHECK(invoke({"verify", "--suite", "medium"}).code == kDomainError);
  CHECK(invoke({"scan", "--from", "-0.9", "--to", "-0.6", "--count", "5", "--out",
                "/nonexistent-dir/x.csv"})
            .code == kIoError);
  CHECK(invoke({"--help"}).code == kOk);
}

TEST_CASE("non-convergence maps to exit 3") {
  // A tolerance below what double quadrature can certify.
  setenv("ENVDET_QUAD_TOL", "1e-30", 1);
  const auto r = invoke({"eval", "--beta", "-0.7"});
  unsetenv("ENVDET_QUAD_TOL");
  CHECK(r.code == kNonConvergence);

  setenv("ENVDET_QUAD_TOL", "-1", 1);
  CHECK(invoke({"eval", "--beta", "-0.7"}).code == kDomainError);
  unsetenv("ENVDET_QUAD_TOL");
}

TEST_CASE("scan csv") {
  const auto path = temp_path("s1.csv");
  const auto r = invoke({"scan", "--from", "-0.95", "--to", "-0.55", "--count", "101", "--out",
                         path.c_str()});
  REQUIRE(r.code == kOk);
  const std::string text = read_file(path);
  CHECK(text.rfind("beta,log_det,d1,d2,asym_neg1,asym_neghalf\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 102);
  CHECK(text.find('\r') == std::string::npos);
  const auto rows = parse_csv(text);
  REQUIRE(rows.size() == 101);
  std::size_t imin = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][1] < rows[imin][1]) imin = i;
  }
  CHECK(imin == nearest(rows, -2.0 / 3.0));

  // Determinism: byte-identical on a second run.
  const auto again = temp_path("s1b.csv");
  invoke({"scan", "--from", "-0.95", "--to", "-0.55", "--count", "101", "--out", again.c_str()});
  CHECK(read_file(again) == text);
  std::filesystem::remove(path);
  std::filesystem::remove(again);
}

TEST_CASE("scan at area 3 turns the critical point into a local maximum") {
  const auto r = invoke({"scan", "--from", "-0.95", "--to", "-0.55", "--count", "101", "--area", "3"});
  REQUIRE(r.code == kOk);
  const auto rows = parse_csv(r.out);
  const double centre = rows[nearest(rows, -2.0 / 3.0)][1];
  CHECK(centre > rows[nearest(rows, -0.75)][1]);
  CHECK(centre > rows[nearest(rows, -0.58)][1]);
}

TEST_CASE("scan json and exact points") {
  const auto r = invoke({"scan", "--from", "-0.9", "--to", "-0.6", "--count", "4", "--format", "json",
                         "--exact-points"});
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("schema_version") == kSchemaVersion);
  CHECK(j.at("grid").at("count") == 4);
  bool any_exact = false;
  for (const auto& row : j.at("rows")) any_exact = any_exact || row.at("exact").get<bool>();
  CHECK(any_exact);
  CHECK(j.at("rows").size() > 4);
}

TEST_CASE("critical classification") {
  auto classify = [](double area) {
    return cmd_critical(area).labels.at("classification");
  };
  CHECK(classify(1.0) == "minimum");
  CHECK(classify(3.0) == "maximum");
  const auto rec = cmd_critical(critical_area());
  CHECK(std::abs(rec.results.at("d2")) <= 1e-6);
  CHECK(rec.labels.at("classification") == "degenerate");
  CHECK(std::abs(rec.results.at("beta_star") + 2.0 / 3.0) < 1e-15);
  const auto s2 = cmd_critical(2.0);
  CHECK(std::abs(s2.results.at("log_det") - s2.results.at("log_det_closed_form")) < 1e-12);
}

TEST_CASE("verify fast") {
  const auto r = invoke({"verify", "--format", "json"});
  CHECK(r.code == kOk);
  const auto rec = nlohmann::json::parse(r.out).get<OutputRecord>();
  bool found = false;
  for (const auto& d : rec.diagnostics) {
    if (d.name == "critical_value") {
      found = true;
      CHECK(d.passed);
      CHECK(d.tolerance == 1e-4);
      CHECK(std::abs(d.measured - 0.0217) < 1e-4);
    }
    CHECK(d.name.find("convexity") == std::string::npos);
  }
  CHECK(found);
}

TEST_CASE("json round trip") {
  std::vector<OutputRecord> records = {
      cmd_eval("-2/3", 1.0),
      cmd_eval("-0.61", 2.5),
      cmd_critical(3.0),
      cmd_verify(verify::Suite::fast),
  };
  OutputRecord odd;
  odd.command = "synthetic";
  odd.inputs = {{"x", "a,b \"quoted\""}};
  odd.results = {{"tiny", 4.9406564584124654e-324}, {"big", 1.7976931348623157e308}, {"neg", -0.1}};
  odd.labels = {{"unicode", "\xce\xb2"}};
  odd.diagnostics = {{"d", false, 1.0 / 3.0, 1e-17}};
  records.push_back(odd);
  for (const auto& rec : records) {
    const std::string text = nlohmann::json(rec).dump();
    CHECK(nlohmann::json::parse(text).get<OutputRecord>() == rec);
  }
}

TEST_CASE("parse_beta") {
  CHECK(parse_beta("-2/3").is_exact());
  CHECK(parse_beta("-2/3").beta() == doctest::Approx(-2.0 / 3.0));
  CHECK_FALSE(parse_beta("-0.7").is_exact());
  CHECK_THROWS(parse_beta("-2/"));
  CHECK_THROWS(parse_beta("-0.7x"));
}
