#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mqcardinal/analysis.hpp"
#include "mqcardinal/fundamental.hpp"
#include "mqcardinal/interpolate.hpp"
#include "mqcardinal/symbol.hpp"

namespace mqc::cli {

enum class Command { fundamental, interpolate, coefficients, study };

/// Everything a run depends on. Serialized verbatim into the manifest, so a
/// manifest replays the run.
struct RunConfig {
  Command command = Command::fundamental;

  double alpha = 0.5;
  std::vector<double> cs{1.0};  // one value except for study sweeps
  int d = 1;

  std::optional<int> M;           // unset: GridSpec::automatic
  std::optional<int> oversample;
  PeriodizationSpec periodization;
  TruncationPolicy truncation;
  std::size_t memory_budget = std::size_t{1} << 30;

  // interpolate
  std::string input;            // CSV j,y
  double growth_class = 0.0;
  bool finite_support = false;
  std::string op = "cardinal";  // or "whittaker"
  std::vector<double> xs;
  int random_points = 0;        // draws in window when > 0
  std::uint64_t seed = 0;

  // coefficients
  int n_coeffs = 32;

  // study
  StudyKind study_kind = StudyKind::sinc_convergence;
  double window_lo = -5.0;
  double window_hi = 5.0;
  int k = 1;
  double threshold = -3.0;
  PWFunctionSpec::Kind pw_kind = PWFunctionSpec::Kind::xi_squared_hat;
  double pw_a = 3.141592653589793;
  std::string metric = "sup";

  std::string out;
  std::string format;           // csv | bin | json; empty: from extension
  std::string metrics_csv;      // optional study metrics CSV
};

std::string to_string(Command c);
Command command_from_string(const std::string& s);

/// Comma list "1,2,4" or geometric range "start:stop:factor" (inclusive).
std::vector<double> parse_sweep(const std::string& text);

/// The parameters for sweep entry i.
MultiquadricParams params_at(const RunConfig& cfg, std::size_t i = 0);
/// Grid actually used: explicit M / oversample or the automatic choice.
GridSpec resolved_grid(const RunConfig& cfg, const MultiquadricParams& p);

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);

/// Parses a command line. Throws ValidationError on bad input; returns
/// std::nullopt after printing help.
std::optional<RunConfig> parse_args(int argc, const char* const* argv);

struct RunOutcome {
  int exit_code = 0;
  std::vector<std::filesystem::path> artifacts;
  std::string message;
};

/// Executes the run, writes artifacts atomically and `<out>.manifest.json`.
/// Maps ValidationError / DomainError to 2 and BudgetError to 3.
RunOutcome run(const RunConfig& cfg);

/// Reloads the configuration stored in a manifest and runs it again,
/// optionally redirecting the primary output.
RunOutcome replay(const std::filesystem::path& manifest, const std::optional<std::string>& out = {});

/// Entry point shared by the executable and tests.
int main_entry(int argc, const char* const* argv);

}  // namespace mqc::cli
