#pragma once

#include <string>

#include "mml/bias.hpp"
#include "mml/codelength.hpp"
#include "mml/estimators.hpp"
#include "mml/simulate.hpp"
#include "mml_cli/table.hpp"
#include "mml_cli/verify.hpp"

// Conversions from library results to printable tables and JSON text.

namespace mml::cli {

struct FitReport {
  std::string model;
  std::string prior;
  std::size_t n = 0;
  std::vector<std::string> parameter_names;
  EstimateResult mle;
  EstimateResult wf;
  Vector predicted_shift;  ///< I(θ̂_MLE)⁻¹ a(θ̂_MLE) / n
};

Table fit_table(const FitReport& report);
std::string fit_json(const FitReport& report);

/// Theory columns: first-order bias for the two estimators and the predicted shift at θ₀.
struct SimTheory {
  Vector mle_bias;
  Vector wf_bias;
  Vector shift;
};
Table sim_table(const SimReport& report, const SimTheory& theory, const std::vector<std::string>& names);
std::string sim_json(const SimReport& report, const SimTheory& theory, const std::vector<std::string>& names);

Table sweep_table(const SweepTable& sweep, const std::vector<std::string>& names);
Table shift_table(const std::vector<ShiftRow>& rows, const std::vector<std::string>& names);

Table codelength_table(const CodelengthReport& report, const std::string& units);
std::string codelength_json(const CodelengthReport& report, const std::string& units,
                            const std::vector<GapPoint>& profile);
Table gap_table(const std::vector<GapPoint>& profile, const std::vector<std::string>& names);

Table verify_table(const std::vector<CriterionResult>& results);

/// Array of row objects keyed by column name.
std::string table_json(const Table& table);

}  // namespace mml::cli
