#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace mml::cli {

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> details;  ///< one measurement per line
  double seconds = 0.0;
};

struct VerifyOptions {
  bool fast = false;            ///< fewer replicates, wider Monte Carlo bands
  std::size_t threads = 0;      ///< simulation workers, 0 = auto
  std::vector<std::string> only;  ///< subset of criterion_names(); empty = all
  /// κ_d used by the codelength-constants criterion; defaults to kappa_const.
  /// Injectable so a corrupted constant can be shown to be caught.
  std::function<double(std::size_t)> kappa;
  /// Called as each criterion finishes (for streaming output).
  std::function<void(const CriterionResult&)> on_result;
};

const std::vector<std::string>& criterion_names();

std::vector<CriterionResult> run_verification(const VerifyOptions& options);

/// "PASS name (1.2 s)" followed by indented detail lines.
std::string format_result(const CriterionResult& result);

}  // namespace mml::cli
