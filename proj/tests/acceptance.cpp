// Acceptance runner: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <exception>

#include <fmt/format.h>

#include "envdet/verify.hpp"

int main() {
  using Clock = std::chrono::steady_clock;
  int failures = 0;
  for (const auto& c : envdet::verify::criteria()) {
    const auto start = Clock::now();
    bool ok = true;
    std::vector<envdet::verify::Diagnostic> diags;
    std::string error;
    try {
      diags = c.run(envdet::QuadratureSpec{});
    } catch (const std::exception& e) {
      ok = false;
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    for (const auto& d : diags) ok = ok && d.passed;
    const bool in_time = secs < c.runtime_limit_s;
    ok = ok && in_time;
    if (!ok) ++failures;
    fmt::print("[{}] AC{} {} ({:.3f} s, limit {} s)\n", ok ? "PASS" : "FAIL", c.id, c.title, secs,
               c.runtime_limit_s);
    for (const auto& d : diags) {
      if (!d.passed) {
        fmt::print("    {} measured={:.17g} tolerance={:.17g}\n", d.name, d.measured, d.tolerance);
      }
    }
    if (!error.empty()) fmt::print("    error: {}\n", error);
    if (!in_time) fmt::print("    over the runtime limit\n");
  }
  fmt::print("{} of {} criteria passed\n", envdet::verify::criteria().size() - failures,
             envdet::verify::criteria().size());
  return failures == 0 ? 0 : 1;
}
