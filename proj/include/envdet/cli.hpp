#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "envdet/envelope.hpp"
#include "envdet/verify.hpp"

namespace envdet::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kDomainError = 2,
  kNonConvergence = 3,
  kIoError = 4,
};

struct OutputRecord {
  std::string schema_version = kSchemaVersion;
  std::string command;
  std::map<std::string, std::string> inputs;
  std::map<std::string, double> results;
  std::map<std::string, std::string> labels;
  std::vector<verify::Diagnostic> diagnostics;

  bool all_passed() const;
  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

void to_json(nlohmann::json& j, const OutputRecord& r);
void from_json(const nlohmann::json& j, OutputRecord& r);

std::string to_text(const OutputRecord& r);

enum class Format { json, text, csv };
Format parse_format(const std::string& s);

/// "-2/3" (exact) or "-0.6".
AngleParam parse_beta(const std::string& s);

/// Default quadrature, with ENVDET_QUAD_TOL applied to both tolerances.
QuadratureSpec quadrature_from_env();

void write_scan_csv(std::ostream& os, const ScanTable& table);
nlohmann::json scan_to_json(const ScanTable& table);

OutputRecord cmd_eval(const std::string& beta, double area, const QuadratureSpec& quad = {});

struct ScanRequest {
  double beta_min = 0.0;
  double beta_max = 0.0;
  int count = 0;
  double area = 1.0;
  std::string out_path;  // empty: write to the stream passed to cmd_scan
  Format format = Format::csv;
  bool exact_points = false;
};
OutputRecord cmd_scan(const ScanRequest& req, std::ostream& fallback,
                      const QuadratureSpec& quad = {});

OutputRecord cmd_verify(verify::Suite suite, const QuadratureSpec& quad = {});
OutputRecord cmd_critical(double area, const QuadratureSpec& quad = {});

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace envdet::cli
