#include "mml_cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "mml/bias.hpp"
#include "mml/codelength.hpp"
#include "mml/dataset_io.hpp"
#include "mml/errors.hpp"
#include "mml/estimators.hpp"
#include "mml/priors.hpp"
#include "mml/simulate.hpp"
#include "mml/weibull.hpp"
#include "mml_cli/config.hpp"
#include "mml_cli/reports.hpp"
#include "mml_cli/verify.hpp"

namespace mml::cli {

namespace {

struct Context {
  RunConfig config;
  std::optional<std::string> format;  // csv | json; unset = command default
  std::optional<std::string> out_path;
  bool fast = false;
  std::ostream& out;
  std::ostream& err;
};

void emit(const Context& ctx, const std::string& text) {
  if (!ctx.out_path) {
    ctx.out << text;
    return;
  }
  std::ofstream f(*ctx.out_path);
  if (!f || !(f << text)) throw IoError("cannot write output file '" + *ctx.out_path + "'");
}

std::string render(const Context& ctx, const Table& table) {
  if (ctx.format.value_or("csv") == "json") return table_json(table);
  std::ostringstream os;
  render_csv(os, table);
  return os.str();
}

bool want_json(const Context& ctx) { return ctx.format.value_or("csv") == "json"; }

std::vector<std::string> names_of(const ModelSpec& m) {
  const auto names = m.parameter_names();
  return {names.begin(), names.end()};
}

ModelPtr config_model(const RunConfig& cfg) { return make_model(cfg.str_or("model", "weibull")); }

PriorSpec config_prior(const RunConfig& cfg, const ModelPtr& model) {
  const double scale = cfg.real_or("prior_scale", 1.0);
  if (!(scale > 0.0)) throw ConfigError("field 'prior_scale': must be positive");
  return make_prior(cfg.str_or("prior", "half_cauchy"), model, scale);
}

ParamPoint config_theta(const RunConfig& cfg, const ModelSpec& model) {
  const Vector v = cfg.reals("theta");
  if (v.size() != model.dim())
    throw ConfigError("field 'theta': expected " + std::to_string(model.dim()) + " values for model '" +
                      std::string(model.name()) + "'");
  try {
    return model.point(v);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("field 'theta': ") + e.what());
  }
}

std::string config_units(const RunConfig& cfg) {
  const std::string units = cfg.str_or("units", "nats");
  if (units != "nats" && units != "bits") throw ConfigError("field 'units': expected nats or bits, got '" + units + "'");
  return units;
}

// fit -------------------------------------------------------------------------
int cmd_fit(Context& ctx) {
  static constexpr std::string_view kKeys[] = {"model", "prior", "prior_scale", "data"};
  ctx.config.require_known(kKeys, "fit");
  const ModelPtr model = config_model(ctx.config);
  const PriorSpec prior = config_prior(ctx.config, model);
  const DataSet data = read_dataset(ctx.config.str("data"));
  validate_data(*model, data);

  const EstimateResult mle = fit_mle(*model, data);
  const EstimateResult wf = fit_wf(*model, prior, data, mle.theta_hat);
  FitReport report{std::string(model->name()), prior.name, data.n(), names_of(*model), mle, wf,
                   predicted_shift(*model, prior, mle.theta_hat.values(), data.n())};
  emit(ctx, want_json(ctx) ? fit_json(report) : render(ctx, fit_table(report)));
  return kOk;
}

// bias-table --------------------------------------------------------------------
int cmd_bias_table(Context& ctx) {
  static constexpr std::string_view kKeys[] = {"model", "k_grid", "lambda_grid", "n_grid"};
  ctx.config.require_known(kKeys, "bias-table");
  if (ctx.config.str_or("model", "weibull") != "weibull")
    throw ConfigError("bias-table: closed forms exist only for model 'weibull'");
  const Vector ks = ctx.config.has("k_grid") ? ctx.config.reals("k_grid") : Vector{0.5, 1.0, 2.0, 5.0};
  const Vector lams = ctx.config.has("lambda_grid") ? ctx.config.reals("lambda_grid") : Vector{1.0};
  const std::vector<std::size_t> ns =
      ctx.config.has("n_grid") ? ctx.config.counts("n_grid") : std::vector<std::size_t>{100};

  const ModelPtr model = make_model("weibull");
  const PriorSpec hc = half_cauchy_prior({1.0, 1.0});
  Table t;
  t.columns = {"k",          "lambda",          "n",         "mle_bias_k", "mle_bias_lambda", "wf_bias_k",
               "wf_bias_lambda", "closed_mle_bias_k", "closed_mle_bias_lambda", "closed_wf_bias_k",
               "closed_wf_bias_lambda", "ratio_R", "max_rel_discrepancy"};
  double worst = 0.0;
  for (double k : ks)
    for (double lam : lams)
      for (std::size_t n : ns) {
        ParamPoint th = ParamPoint::positive({1.0, 1.0});
        try {
          th = ParamPoint::positive({k, lam});
        } catch (const DomainError& e) {
          throw ConfigError(std::string("bias-table grid: ") + e.what());
        }
        if (n == 0) throw ConfigError("bias-table grid: n must be positive");
        const Vector mle = cox_snell_bias(*model, th.values(), n);
        const Vector wf = wf_bias(*model, hc, th.values(), n);
        const Vector cmle = weibull_mle_bias_closed(th, n);
        const Vector cwf = weibull_mml_bias_closed(th, n);
        double disc = 0.0;
        for (std::size_t i = 0; i < 2; ++i) {
          disc = std::max(disc, std::abs(mle[i] - cmle[i]) / std::abs(cmle[i]));
          disc = std::max(disc, std::abs(wf[i] - cwf[i]) / std::abs(cwf[i]));
        }
        worst = std::max(worst, disc);
        const Cell ratio = lam == 1.0 ? Cell(weibull_bias_ratio(k)) : Cell(std::string());
        t.add_row({k, lam, static_cast<double>(n), mle[0], mle[1], wf[0], wf[1], cmle[0], cmle[1], cwf[0], cwf[1],
                   ratio, disc});
      }
  emit(ctx, render(ctx, t));
  if (worst > 1e-5) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "bias-table: generic pipeline disagrees with closed form (max rel %.3g > 1e-5)",
                  worst);
    throw OracleMismatch(buf);
  }
  return kOk;
}

// codelength ------------------------------------------------------------------
int cmd_codelength(Context& ctx) {
  static constexpr std::string_view kKeys[] = {"model", "prior", "prior_scale", "data", "theta", "units", "sizes"};
  ctx.config.require_known(kKeys, "codelength");
  const ModelPtr model = config_model(ctx.config);
  const PriorSpec prior = config_prior(ctx.config, model);
  const std::string units = config_units(ctx.config);
  const DataSet data = read_dataset(ctx.config.str("data"));
  validate_data(*model, data);
  const Vector theta = ctx.config.has("theta") ? [&] {
    const ParamPoint p = config_theta(ctx.config, *model);
    return Vector(p.values().begin(), p.values().end());
  }()
                                               : [&] {
                                                   const EstimateResult wf = fit_wf(*model, prior, data);
                                                   return Vector(wf.theta_hat.values().begin(),
                                                                 wf.theta_hat.values().end());
                                                 }();
  CodelengthReport report = message_length(*model, prior, data, theta);
  std::vector<GapPoint> profile;
  if (ctx.config.has("sizes")) {
    const std::vector<std::size_t> sizes = ctx.config.counts("sizes");
    profile = bic_gap_profile(*model, prior, data, sizes);
  }
  if (units == "bits") {
    report = to_bits(report);
    for (GapPoint& p : profile) p.gap /= std::log(2.0);
  }
  if (want_json(ctx))
    emit(ctx, codelength_json(report, units, profile));
  else
    emit(ctx, render(ctx, profile.empty() ? codelength_table(report, units) : gap_table(profile, names_of(*model))));
  return kOk;
}

// simulate --------------------------------------------------------------------
int cmd_simulate(Context& ctx) {
  static constexpr std::string_view kKeys[] = {"model", "prior",   "prior_scale", "theta",  "n",
                                               "replicates", "seed", "threads",  "mode", "n_grid"};
  ctx.config.require_known(kKeys, "simulate");
  const ModelPtr model = config_model(ctx.config);
  SimConfig cfg{model,
                config_prior(ctx.config, model),
                config_theta(ctx.config, *model),
                ctx.config.count_or("n", 100),
                ctx.config.count_or("replicates", 1000),
                ctx.config.u64_or("seed", 1),
                ctx.config.count_or("threads", 0)};
  const std::vector<std::string> names = names_of(*model);
  const std::string mode = ctx.config.str_or("mode", "single");
  if (mode == "single") {
    if (ctx.config.has("n_grid")) throw ConfigError("field 'n_grid' requires mode = sweep or shift");
    const SimReport rep = run_sim(cfg);
    const SimTheory theory{cox_snell_bias(*model, cfg.theta0.values(), cfg.n),
                           wf_bias(*model, cfg.prior, cfg.theta0.values(), cfg.n),
                           predicted_shift(*model, cfg.prior, cfg.theta0.values(), cfg.n)};
    emit(ctx, want_json(ctx) ? sim_json(rep, theory, names) : render(ctx, sim_table(rep, theory, names)));
    return kOk;
  }
  const std::vector<std::size_t> grid = ctx.config.counts("n_grid");
  if (mode == "sweep") {
    emit(ctx, render(ctx, sweep_table(consistency_sweep(cfg, grid), names)));
  } else if (mode == "shift") {
    emit(ctx, render(ctx, shift_table(shift_scaling_check(cfg, grid), names)));
  } else {
    throw ConfigError("field 'mode': expected single, sweep or shift, got '" + mode + "'");
  }
  return kOk;
}

// sample ----------------------------------------------------------------------
int cmd_sample(Context& ctx) {
  static constexpr std::string_view kKeys[] = {"model", "theta", "n", "seed", "stream"};
  ctx.config.require_known(kKeys, "sample");
  const ModelPtr model = config_model(ctx.config);
  const ParamPoint theta = config_theta(ctx.config, *model);
  const std::size_t n = ctx.config.count("n");
  const std::uint64_t seed = ctx.config.u64_or("seed", 1);
  const std::uint64_t stream = ctx.config.u64_or("stream", 0);
  RngStream rng(seed, stream);
  const DataSet data = model->sample(theta, n, rng);
  std::ostringstream os;
  std::ostringstream header;
  header << model->name() << " theta=";
  for (std::size_t i = 0; i < theta.dim(); ++i) header << (i ? "," : "") << theta[i];
  header << " n=" << n << " seed=" << seed << " stream=" << stream;
  write_dataset(os, data, header.str());
  emit(ctx, os.str());
  return kOk;
}

// verify ----------------------------------------------------------------------
int cmd_verify(Context& ctx) {
  static constexpr std::string_view kKeys[] = {"criteria", "threads"};
  ctx.config.require_known(kKeys, "verify");
  VerifyOptions opt;
  opt.fast = ctx.fast;
  opt.threads = ctx.config.count_or("threads", 0);
  if (ctx.config.has("criteria")) opt.only = ctx.config.words("criteria");
  const bool streaming = !ctx.format && !ctx.out_path;
  if (streaming) opt.on_result = [&](const CriterionResult& r) { ctx.out << format_result(r) << std::flush; };

  const std::vector<CriterionResult> results = run_verification(opt);
  std::string failed;
  for (const CriterionResult& r : results)
    if (!r.passed) failed += (failed.empty() ? "" : ", ") + r.name;
  if (!streaming) {
    if (ctx.format) {
      emit(ctx, render(ctx, verify_table(results)));
    } else {
      std::string text;
      for (const CriterionResult& r : results) text += format_result(r);
      emit(ctx, text);
    }
  }
  if (!failed.empty()) {
    ctx.err << "verification failed: " << failed << '\n';
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wallace–Freeman and maximum likelihood estimation, bias and codelength tools", "mml_estim"};
  std::string command;
  std::vector<std::string> overrides;
  std::string config_path, out_path, format;
  std::optional<std::uint64_t> seed;
  bool fast = false;

  app.add_option("command", command, "fit | bias-table | codelength | simulate | sample | verify")
      ->required()
      ->check(CLI::IsMember({"fit", "bias-table", "codelength", "simulate", "sample", "verify"}));
  app.add_option("overrides", overrides, "key=value settings applied after the config file");
  app.add_option("--config", config_path, "flat key = value config file");
  app.add_option("--out", out_path, "write output here instead of stdout");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", seed, "random seed (overrides config)");
  app.add_flag("--fast", fast, "verify: fewer replicates, wider bands");

  std::vector<const char*> argv{"mml_estim"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    Context ctx{config_path.empty() ? RunConfig{} : read_config(config_path),
                format.empty() ? std::nullopt : std::optional<std::string>(format),
                out_path.empty() ? std::nullopt : std::optional<std::string>(out_path),
                fast,
                out,
                err};
    for (const std::string& o : overrides) apply_override(ctx.config, o);
    if (seed) ctx.config.set("seed", std::to_string(*seed), "--seed");

    if (command == "fit") return cmd_fit(ctx);
    if (command == "bias-table") return cmd_bias_table(ctx);
    if (command == "codelength") return cmd_codelength(ctx);
    if (command == "simulate") return cmd_simulate(ctx);
    if (command == "sample") return cmd_sample(ctx);
    return cmd_verify(ctx);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.is_numerical() ? kNumericalError : kInputError;
  }
}

}  // namespace mml::cli
