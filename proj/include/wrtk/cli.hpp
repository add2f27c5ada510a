#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wrtk/cyclo.hpp"
#include "wrtk/qlaurent.hpp"

namespace wrtk::cli {

/// Version tag written into every report.
inline constexpr const char* kSchema = "wrtkernel/1";

/// Exit status of a run.
enum ExitCode : int { kOk = 0, kFalsified = 1, kUsage = 2 };

/// Bad command line, unreadable file or unknown suite.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/**
 * Everything a run needs.  Fields that a verb does not use are ignored;
 * optional ones fall back to per-suite defaults.
 */
struct RunConfig {
  /// tau, lens, gauss, verify, pairing or blocks.
  std::string verb;
  /// Suite for verify (thm2, prop32, splitting, oracles, lemma12, appendix)
  /// or action for pairing (verify-e339, diagonalize).
  std::string suite;
  std::string pres_path;
  std::string in_path;
  /// Report file; empty for standard output only.
  std::string output_path;

  std::optional<Group> group;
  int r = 5;
  std::optional<long> u;
  std::optional<int> rmax;
  std::optional<int> nmax;
  /// Coefficient range for the exhaustive thm2 and prop32 sweeps.
  std::optional<long> range;
  long b = 1;
  long a = 1;
  int k = 1;
  long s = 1;
  /// Block depth for the blocks verb.
  long kmax = 4;
  /// Worker threads; reports do not depend on it.
  int jobs = 1;
  /// Print the JSON report instead of the one-line-per-instance summary.
  bool json = false;
};

/// Outcome of a run: the exit status and the full report.
struct RunResult {
  int exit_code = kOk;
  nlohmann::json report;
};

/**
 * Parses argv (argv[0] is the program name).  Returns nullopt after
 * printing help to out.  Throws UsageError on malformed arguments.
 */
std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/**
 * Executes the verb.  Falsification signals are caught and recorded in the
 * report (exit code 1).  Invalid input throws SchemaError, SpecError or
 * UsageError.
 */
RunResult run(const RunConfig& config);

/// parse_command_line + run + printing, mapping every failure to an exit code.
int main_with(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// {"conductor":t,"denominator":"d","coeffs":["c_0",...]} for sum c_i zeta_t^i / d.
nlohmann::json to_json(const CycElt& x);
/// {"text":"<canonical>","terms":[[quarter_exponent,"coeff"],...]}
nlohmann::json to_json(const QLaurent& f);

}  // namespace wrtk::cli
