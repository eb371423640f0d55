#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lawson/io.hpp"

namespace lawson {

struct RunConfig {
  int m = 3;
  int k = 2;
  int level = 5;
  double tol_grad = 1e-10;
  double tol_sym = 1e-10;
  std::string out = "out";
  std::uint64_t seed = 1;
  std::string suite = "all";
  std::string format = "json";
};

// key = value lines; blank lines and # comments are ignored. Keys match the
// CLI flags without dashes (m, k, level, tol-grad, tol-sym, out, seed, suite,
// format). Throws Usage on unknown keys or unparsable values.
void apply_config_text(RunConfig& cfg, const std::string& text);
// Throws UnsupportedParameters for m < 3 or k < 2, InvalidInput otherwise.
void validate(const RunConfig& cfg);
Json config_json(const RunConfig& cfg);

// Check groups in run order.
const std::vector<std::string>& suite_groups();

enum class Status { Pass, Fail, Skip };
std::string_view to_string(Status s);

struct CheckEntry {
  std::string id;
  Status status = Status::Pass;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string witness;
  std::string reason;   // why a check was skipped
  std::string warning;  // recorded without failing the check
};

struct VerificationSuite {
  RunConfig config;
  std::vector<CheckEntry> checks;
  Json details;  // reports behind the checks, keyed by group
  bool pass() const;
};

// Runs the selected group(s); a suite name may also be a single check id.
// Errors inside a group are recorded as failed checks.
VerificationSuite run_suite(const RunConfig& cfg);

Json suite_json(const VerificationSuite& s);
std::string suite_text(const VerificationSuite& s);

}  // namespace lawson
