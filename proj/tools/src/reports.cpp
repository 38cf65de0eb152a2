#include "mml_cli/reports.hpp"

#include <cmath>
#include <json.hpp>

namespace mml::cli {

namespace {

using nlohmann::ordered_json;

ordered_json num(double x) {
  if (!std::isfinite(x)) return format_number(x);
  return round_to_printed(x);
}

ordered_json named(std::span<const double> v, const std::vector<std::string>& names) {
  ordered_json o = ordered_json::object();
  for (std::size_t i = 0; i < v.size(); ++i) o[names[i]] = num(v[i]);
  return o;
}

ordered_json estimate_json(const EstimateResult& r, const std::vector<std::string>& names) {
  return ordered_json{{"theta", named(r.theta_hat.values(), names)},
                      {"objective", num(r.objective)},
                      {"residual", num(r.residual)},
                      {"iterations", r.iterations},
                      {"converged", r.converged}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

Table fit_table(const FitReport& report) {
  Table t;
  t.columns.push_back("estimate");
  for (const std::string& p : report.parameter_names) t.columns.push_back(p);
  for (const char* c : {"objective", "residual", "iterations", "converged"}) t.columns.push_back(c);
  const std::size_t d = report.parameter_names.size();

  const auto estimate_row = [&](const char* label, const EstimateResult& r) {
    std::vector<Cell> row{std::string(label)};
    for (std::size_t i = 0; i < d; ++i) row.push_back(r.theta_hat[i]);
    row.push_back(r.objective);
    row.push_back(r.residual);
    row.push_back(static_cast<double>(r.iterations));
    row.push_back(std::string(r.converged ? "true" : "false"));
    t.add_row(std::move(row));
  };
  const auto shift_row = [&](const char* label, const Vector& v) {
    std::vector<Cell> row{std::string(label)};
    for (std::size_t i = 0; i < d; ++i) row.push_back(v[i]);
    for (int i = 0; i < 4; ++i) row.push_back(std::string());
    t.add_row(std::move(row));
  };
  estimate_row("mle", report.mle);
  estimate_row("wf", report.wf);
  shift_row("observed_shift", report.wf.theta_hat.values() - report.mle.theta_hat.values());
  shift_row("predicted_shift", report.predicted_shift);
  return t;
}

std::string fit_json(const FitReport& report) {
  const Vector observed = report.wf.theta_hat.values() - report.mle.theta_hat.values();
  return dump(ordered_json{{"model", report.model},
                           {"prior", report.prior},
                           {"n", report.n},
                           {"mle", estimate_json(report.mle, report.parameter_names)},
                           {"wf", estimate_json(report.wf, report.parameter_names)},
                           {"observed_shift", named(observed, report.parameter_names)},
                           {"predicted_shift", named(report.predicted_shift, report.parameter_names)}});
}

Table sim_table(const SimReport& report, const SimTheory& theory, const std::vector<std::string>& names) {
  Table t;
  t.columns = {"estimator", "coordinate", "mean", "bias", "se", "theory", "z", "used", "failures"};
  const auto rows = [&](const char* label, const Vector& mean, const Vector& bias, const Vector& se,
                        const Vector& want) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      const double z = se[c] > 0.0 ? (bias[c] - want[c]) / se[c] : 0.0;
      t.add_row({std::string(label), names[c], mean[c], bias[c], se[c], want[c], z,
                 static_cast<double>(report.used), static_cast<double>(report.failures)});
    }
  };
  rows("mle", report.mle.mean, report.mle.bias, report.mle.mean_se, theory.mle_bias);
  rows("wf", report.wf.mean, report.wf.bias, report.wf.mean_se, theory.wf_bias);
  // For the shift the "mean" and the "bias" are the same quantity.
  rows("shift", report.shift_mean, report.shift_mean, report.shift_se, theory.shift);
  return t;
}

std::string sim_json(const SimReport& report, const SimTheory& theory, const std::vector<std::string>& names) {
  const auto stats = [&](const EstimatorStats& s, const Vector& want) {
    ordered_json cov = ordered_json::array(), cov_se = ordered_json::array();
    for (std::size_t i = 0; i < names.size(); ++i) {
      ordered_json row = ordered_json::array(), row_se = ordered_json::array();
      for (std::size_t j = 0; j < names.size(); ++j) {
        row.push_back(num(s.scaled_cov(i, j)));
        row_se.push_back(num(s.scaled_cov_se(i, j)));
      }
      cov.push_back(row);
      cov_se.push_back(row_se);
    }
    return ordered_json{{"mean", named(s.mean, names)},       {"bias", named(s.bias, names)},
                        {"se", named(s.mean_se, names)},      {"theory_bias", named(want, names)},
                        {"rmse", named(s.rmse, names)},       {"scaled_cov", cov},
                        {"scaled_cov_se", cov_se}};
  };
  return dump(ordered_json{{"model", report.model},
                           {"prior", report.prior},
                           {"theta0", named(report.theta0, names)},
                           {"n", report.n},
                           {"replicates", report.replicates},
                           {"seed", report.seed},
                           {"used", report.used},
                           {"failures", report.failures},
                           {"mle", stats(report.mle, theory.mle_bias)},
                           {"wf", stats(report.wf, theory.wf_bias)},
                           {"shift", {{"mean", named(report.shift_mean, names)},
                                      {"se", named(report.shift_se, names)},
                                      {"theory", named(theory.shift, names)}}}});
}

Table sweep_table(const SweepTable& sweep, const std::vector<std::string>& names) {
  Table t;
  t.columns = {"n", "coordinate", "rmse_mle", "rmse_wf", "bias_mle", "bias_se_mle", "bias_wf", "bias_se_wf", "failures"};
  for (const SweepRow& r : sweep.rows)
    for (std::size_t c = 0; c < names.size(); ++c)
      t.add_row({static_cast<double>(r.n), names[c], r.rmse_mle[c], r.rmse_wf[c], r.bias_mle[c], r.bias_se_mle[c],
                 r.bias_wf[c], r.bias_se_wf[c], static_cast<double>(r.failures)});
  for (std::size_t c = 0; c < names.size(); ++c)
    t.add_row({std::string("slope"), names[c], sweep.slope_mle[c], sweep.slope_wf[c], std::string(), std::string(),
               std::string(), std::string(), std::string()});
  return t;
}

Table shift_table(const std::vector<ShiftRow>& rows, const std::vector<std::string>& names) {
  Table t;
  t.columns = {"n", "coordinate", "n_shift", "n_se", "theory", "z"};
  for (const ShiftRow& r : rows)
    for (std::size_t c = 0; c < names.size(); ++c)
      t.add_row({static_cast<double>(r.n), names[c], r.scaled_shift[c], r.scaled_shift_se[c], r.theory[c], r.z[c]});
  return t;
}

Table codelength_table(const CodelengthReport& report, const std::string& units) {
  Table t;
  t.columns = {"total", "assertion", "detail", "bic_form", "gap", "units", "up_to_constant", "approximate_kappa"};
  t.add_row({report.total, report.assertion_part, report.detail_part, report.bic_form, report.gap, units,
             std::string(report.up_to_constant ? "true" : "false"),
             std::string(report.approximate_kappa ? "true" : "false")});
  return t;
}

std::string codelength_json(const CodelengthReport& report, const std::string& units,
                            const std::vector<GapPoint>& profile) {
  ordered_json j{{"total", num(report.total)},
                 {"assertion", num(report.assertion_part)},
                 {"detail", num(report.detail_part)},
                 {"bic_form", num(report.bic_form)},
                 {"gap", num(report.gap)},
                 {"units", units},
                 {"up_to_constant", report.up_to_constant},
                 {"approximate_kappa", report.approximate_kappa}};
  if (!profile.empty()) {
    ordered_json arr = ordered_json::array();
    for (const GapPoint& p : profile) arr.push_back({{"n", p.n}, {"gap", num(p.gap)}});
    j["gap_profile"] = arr;
  }
  return dump(j);
}

Table gap_table(const std::vector<GapPoint>& profile, const std::vector<std::string>& names) {
  Table t;
  t.columns = {"n", "gap"};
  for (const std::string& p : names) t.columns.push_back(p);
  for (const GapPoint& g : profile) {
    std::vector<Cell> row{static_cast<double>(g.n), g.gap};
    for (double v : g.theta_hat) row.push_back(v);
    t.add_row(std::move(row));
  }
  return t;
}

Table verify_table(const std::vector<CriterionResult>& results) {
  Table t;
  t.columns = {"criterion", "status", "seconds", "details"};
  for (const CriterionResult& r : results) {
    std::string details;
    for (const std::string& d : r.details) details += (details.empty() ? "" : "; ") + d;
    t.add_row({r.name, std::string(r.passed ? "pass" : "fail"), r.seconds, details});
  }
  return t;
}

std::string table_json(const Table& table) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json o = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const double* d = std::get_if<double>(&row[i]))
        o[table.columns[i]] = num(*d);
      else
        o[table.columns[i]] = std::get<std::string>(row[i]);
    }
    arr.push_back(o);
  }
  return dump(arr);
}

}  // namespace mml::cli
