#pragma once

// Numerical self-checks of the determinant pipeline, grouped by criterion.
// Shared by `envdet verify` and the acceptance test binary.

#include <functional>
#include <string>
#include <vector>

#include "envdet/specfun.hpp"

namespace envdet::verify {

struct Diagnostic {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct Criterion {
  int id;
  std::string title;
  double runtime_limit_s;
  bool full_only;  // skipped by the fast suite
  std::function<std::vector<Diagnostic>(const QuadratureSpec&)> run;
};

const std::vector<Criterion>& criteria();

enum class Suite { fast, full };

std::vector<Diagnostic> run_suite(Suite suite, const QuadratureSpec& quad = {});

// Individual criteria.
std::vector<Diagnostic> critical_value(const QuadratureSpec& quad);
std::vector<Diagnostic> special_values(const QuadratureSpec& quad);
std::vector<Diagnostic> criticality(const QuadratureSpec& quad);
std::vector<Diagnostic> second_derivative_threshold(const QuadratureSpec& quad);
std::vector<Diagnostic> convexity(const QuadratureSpec& quad, int grid_points = 10000);
std::vector<Diagnostic> barnes_routes(const QuadratureSpec& quad);
std::vector<Diagnostic> asymptotics(const QuadratureSpec& quad);
std::vector<Diagnostic> dedekind_reciprocity(const QuadratureSpec& quad);
std::vector<Diagnostic> rescaling_flip(const QuadratureSpec& quad);

}  // namespace envdet::verify
