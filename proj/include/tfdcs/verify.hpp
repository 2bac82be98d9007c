#ifndef TFDCS_VERIFY_HPP
#define TFDCS_VERIFY_HPP

#include <string>
#include <vector>

#include "tfdcs/model.hpp"

namespace tfdcs::verify {

enum class CheckMode {
  AbsDiff,     // pass iff |lhs - rhs| <= tolerance
  UpperBound,  // pass iff lhs <= rhs + tolerance
  Info,        // diagnostic value, never fails
};

struct Check {
  std::string suite;
  std::string name;  // human-readable, includes model and grid point
  std::string id;    // stable identifier for tooling
  double lhs = 0.0;
  double rhs = 0.0;
  double tolerance = 0.0;
  CheckMode mode = CheckMode::AbsDiff;
  bool pass = true;
  bool skipped = false;
  std::string reason;       // populated for skipped checks
  double runtime_ms = 0.0;  // console reporting only, not serialized
};

struct Report {
  std::vector<Check> checks;

  int passed() const;
  int failed() const;
  int skipped() const;
  bool pass() const { return failed() == 0; }
};

struct NamedModel {
  std::string name;
  DeformedModel model;
};

/// The four reference models used by the built-in battery; hbar_omega = 1.
std::vector<NamedModel> reference_battery();

struct Options {
  double tol_override = 0.0;  // > 0 replaces every check tolerance
  Truncation trunc;
};

/// Runs one suite ("specfun", "thermal", "coherent", "quasiprob") or "all"
/// over the given models and appends the outcome to the returned report.
Report run_suites(const std::string& suite,
                  const std::vector<NamedModel>& models, const Options& opts);

/// JSON text of the report (schema_version 1). Excludes runtimes so that
/// identical configurations serialize byte-identically.
std::string report_to_json(const Report& report, const std::string& suite,
                           const std::string& model_label);

}  // namespace tfdcs::verify

#endif
