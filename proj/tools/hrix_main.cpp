#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrix/breaks.hpp"
#include "hrix/csv.hpp"
#include "hrix/forecast.hpp"
#include "hrix/model_selection.hpp"
#include "hrix/pipeline.hpp"
#include "hrix/prob.hpp"
#include "hrix/risk_index.hpp"
#include "hrix/rng.hpp"
#include "hrix/simulate.hpp"
#include "hrix/stats.hpp"
#include "hrix/table.hpp"
#include "hrix/tgarch.hpp"

namespace fs = std::filesystem;
using namespace hrix;

namespace {

TimeSeries load_series_arg(const std::string& path, const std::string& column) {
  Panel p = load_panel(path, "date");
  return column.empty() ? p.col(0) : p.col(column);
}

std::optional<Panel> load_optional_panel(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return load_panel(path, "date");
}

std::vector<double> parse_quantiles(const std::string& arg) {
  std::vector<double> out;
  for (const auto& q : split_list(arg)) out.push_back(std::stod(q));
  return out;
}

fs::path out_dir_or_env(const std::string& flag_value) {
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return flag_value;
}

PredictiveSpec make_pspec(int lag, int lead, const std::string& quantiles,
                          const std::string& nw_lag, int bootstrap, std::uint64_t seed) {
  PredictiveSpec spec;
  spec.lag_index = lag;
  spec.lead_dependent = lead;
  spec.quantiles = parse_quantiles(quantiles);
  spec.nw_lag = nw_lag == "auto" ? kAutoNwLag : static_cast<int>(std::stol(nw_lag));
  spec.quantile_opt = QuantileOptions{bootstrap, seed};
  return spec;
}

void print_regression(const RegressionFit& fit) {
  Table t;
  t.headers = {"Term", "Coefficient", "HAC SE", "t", "p"};
  for (std::size_t j = 0; j < fit.names.size(); ++j) {
    t.add_row({fit.names[j], fmt_num(fit.coef[j], 4), fmt_num(fit.hac_se[j], 4),
               fmt_num(fit.t_stats[j], 2), fmt_num(fit.p_values[j], 4)});
  }
  t.add_row({"Adj R-Sq", fmt_num(fit.adj_r2, 4) + " (" + fmt_num(100 * fit.adj_r2, 1) + "%)", "",
             "", ""});
  t.add_row({"N", std::to_string(fit.n), "NW lag", std::to_string(fit.nw_lag), ""});
  std::cout << to_markdown(t);
}

void print_quantile(const QuantileFit& fit) {
  Table t;
  t.headers = {"Term", "tau=" + fmt_num(fit.tau, 2), "SE"};
  for (std::size_t j = 0; j < fit.names.size(); ++j) {
    t.add_row({fit.names[j], fmt_num(fit.coef[j], 4), fmt_num(fit.se[j], 4)});
  }
  t.add_row({"Pinball loss", fmt_num(fit.objective, 4), ""});
  std::cout << to_markdown(t);
}

void write_predictive_tables(const PredictiveResult& result, const fs::path& prefix) {
  Table ols;
  ols.title = "OLS with Newey-West standard errors";
  ols.headers = {"Term", "Coefficient", "HAC SE", "t", "p"};
  for (std::size_t j = 0; j < result.ols.names.size(); ++j) {
    ols.add_row({result.ols.names[j], format_value(result.ols.coef[j]),
                 format_value(result.ols.hac_se[j]), format_value(result.ols.t_stats[j]),
                 format_value(result.ols.p_values[j])});
  }
  ols.add_row({"Adj R-Sq", format_value(result.ols.adj_r2), "", "", ""});
  ols.add_row({"N", std::to_string(result.ols.n), "", "", ""});
  write_table(ols, prefix.string() + "_ols");

  if (!result.quantile_fits.empty()) {
    Table qt;
    qt.title = "Quantile regressions";
    qt.headers = {"Term"};
    for (const auto& q : result.quantile_fits) {
      qt.headers.push_back("tau=" + fmt_num(q.tau, 2));
      qt.headers.push_back("SE");
    }
    for (std::size_t j = 0; j < result.quantile_fits.front().names.size(); ++j) {
      std::vector<std::string> row{result.quantile_fits.front().names[j]};
      for (const auto& q : result.quantile_fits) {
        row.push_back(format_value(q.coef[j]));
        row.push_back(format_value(q.se[j]));
      }
      qt.add_row(std::move(row));
    }
    write_table(qt, prefix.string() + "_quantile");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"housing-risk time-series toolkit"};
  app.require_subcommand(1);

  try {
    // ---- simulate ----
    auto* sim = app.add_subcommand("simulate", "write a synthetic data set with known truth");
    std::string sim_out = "sim";
    SimulateConfig sim_cfg;
    sim->add_option("--out", sim_out, "output directory");
    sim->add_option("--seed", sim_cfg.seed, "random seed");
    sim->add_option("--n", sim_cfg.n, "months to generate");
    sim->add_option("--macro-cols", sim_cfg.macro_cols, "macro panel width");
    sim->add_option("--returns-beta", sim_cfg.returns_beta, "loading of returns on the index");
    sim->callback([&] {
      write_corpus(simulate_corpus(sim_cfg), out_dir_or_env(sim_out));
      std::cout << "wrote synthetic corpus to " << out_dir_or_env(sim_out).string() << "\n";
    });

    // ---- ingest ----
    auto* ing = app.add_subcommand("ingest", "validate a CSV and apply column transforms");
    std::string ing_in, ing_out, ing_date = "date";
    std::vector<std::string> ing_cols, ing_transforms;
    ing->add_option("--input", ing_in)->required();
    ing->add_option("--output", ing_out)->required();
    ing->add_option("--date-column", ing_date);
    ing->add_option("--columns", ing_cols, "subset of columns, default all");
    ing->add_option("--transform", ing_transforms, "col=kind, kind in log|diff|pct_change|standardize");
    ing->callback([&] {
      Panel p = load_panel(ing_in, ing_date, ing_cols);
      std::vector<TimeSeries> cols(p.columns());
      for (const auto& spec : ing_transforms) {
        auto eq = spec.find('=');
        if (eq == std::string::npos) fail(Errc::config_error, "--transform expects col=kind");
        std::string col = spec.substr(0, eq);
        Transform kind = parse_transform(spec.substr(eq + 1));
        bool found = false;
        for (auto& c : cols) {
          if (c.id() == col) {
            c = transform(c, kind);
            found = true;
          }
        }
        if (!found) fail(Errc::schema_mismatch, "no column '" + col + "'");
      }
      DateRange r{cols.front().start(), cols.front().end()};
      for (const auto& c : cols) r = common_range({{r.from, r.to}, {c.start(), c.end()}});
      for (auto& c : cols) c = c.slice(r.from, r.to);
      write_panel(Panel(cols), ing_out);
      std::cout << "wrote " << ing_out << "\n";
    });

    // ---- describe ----
    auto* desc = app.add_subcommand("describe", "summary statistics and correlations");
    std::string desc_in, desc_date = "date";
    desc->add_option("--input", desc_in)->required();
    desc->add_option("--date-column", desc_date);
    desc->callback([&] {
      Panel p = load_panel(desc_in, desc_date);
      Table t;
      t.title = "Summary statistics";
      t.headers = {"Series", "N", "Mean", "St. Dev.", "Min", "Max",
                   "Skew", "Kurt", "JB", "p", "Q(1)", "p"};
      for (const auto& c : p.columns()) {
        SummaryStats s = describe(c);
        t.add_row({c.id(), std::to_string(s.n), fmt_num(s.mean), fmt_num(s.std_dev),
                   fmt_num(s.min), fmt_num(s.max), fmt_num(s.skewness),
                   fmt_num(s.excess_kurtosis),
                   s.jarque_bera.available ? fmt_num(s.jarque_bera.stat, 1) : "n/a",
                   s.jarque_bera.available ? fmt_num(s.jarque_bera.p_value) : "n/a",
                   s.ljung_box_q1.available ? fmt_num(s.ljung_box_q1.stat, 2) : "n/a",
                   s.ljung_box_q1.available ? fmt_num(s.ljung_box_q1.p_value) : "n/a"});
      }
      std::cout << to_markdown(t) << "\n";
      CorrMatrix cm = corr_matrix(p);
      Table ct;
      ct.title = "Correlation matrix";
      ct.headers = {""};
      for (const auto& id : cm.ids) ct.headers.push_back(id);
      for (std::size_t i = 0; i < cm.ids.size(); ++i) {
        std::vector<std::string> row{cm.ids[i]};
        for (std::size_t j = 0; j < cm.ids.size(); ++j) {
          row.push_back(fmt_num(cm.rho(i, j), 2) + cm.stars[i][j]);
        }
        ct.add_row(std::move(row));
      }
      std::cout << to_markdown(ct);
    });

    // ---- factor ----
    auto* fac = app.add_subcommand("factor", "principal components of a panel");
    std::string fac_in, fac_mode = "correlation", fac_prefix = "factor";
    std::size_t fac_k = 1;
    fac->add_option("--input", fac_in)->required();
    fac->add_option("--mode", fac_mode, "covariance or correlation");
    fac->add_option("--components", fac_k, "score series to emit");
    fac->add_option("--out-prefix", fac_prefix);
    fac->callback([&] {
      Panel p = load_panel(fac_in, "date");
      PcaModel model = fit_pca(p, parse_pca_mode(fac_mode));
      Table loads;
      loads.title = "Factor loadings";
      loads.headers = {"Variable"};
      for (std::size_t c = 0; c < model.ids.size(); ++c) {
        loads.headers.push_back("PC" + std::to_string(c + 1));
      }
      for (std::size_t i = 0; i < model.ids.size(); ++i) {
        std::vector<std::string> row{model.ids[i]};
        for (std::size_t c = 0; c < model.ids.size(); ++c) {
          row.push_back(format_value(model.loadings(i, c)));
        }
        loads.add_row(std::move(row));
      }
      write_table(loads, fac_prefix + "_loadings");
      Table props;
      props.title = "Importance of components";
      props.headers = {"Component", "Eigenvalue", "Proportion", "Cumulative"};
      double cum = 0.0;
      for (std::size_t c = 0; c < model.ids.size(); ++c) {
        cum += model.proportions[c];
        props.add_row({"PC" + std::to_string(c + 1), format_value(model.eigenvalues[c]),
                       format_value(model.proportions[c]), format_value(cum)});
      }
      write_table(props, fac_prefix + "_proportions");
      std::vector<ScoreSeries> sc = scores(model, p, fac_k);
      std::vector<TimeSeries> cols;
      for (const auto& s : sc) cols.push_back(s.series);
      write_panel(Panel(cols), fac_prefix + "_scores.csv");
      std::cout << "PC1 explains " << fmt_num(100.0 * model.proportions[0], 1)
                << "% of the panel variance\n";
    });

    // ---- tgarch ----
    auto* tg = app.add_subcommand("tgarch", "bivariate T-GARCH fits for each housing column");
    std::string tg_housing, tg_factor, tg_prefix = "tgarch", tg_factor_col;
    FitOptions tg_opt;
    bool tg_no_standardize = false;
    std::uint64_t tg_seed = 42;
    tg->add_option("--housing", tg_housing)->required();
    tg->add_option("--factor", tg_factor)->required();
    tg->add_option("--factor-col", tg_factor_col, "factor column, default first");
    tg->add_option("--out-prefix", tg_prefix);
    tg->add_option("--seed", tg_seed);
    tg->add_option("--restarts", tg_opt.restarts);
    tg->add_option("--max-evals", tg_opt.max_evals);
    tg->add_flag("--no-standardize", tg_no_standardize, "fit the raw housing columns");
    tg->callback([&] {
      Panel housing = load_panel(tg_housing, "date");
      TimeSeries factor = load_series_arg(tg_factor, tg_factor_col);
      Table params;
      params.title = "T-GARCH parameters";
      params.headers = {"Variable", "Equation", "omega", "alpha", "phi", "gamma",
                        "loglik", "converged"};
      std::vector<TGarchFit> fits;
      for (std::size_t j = 0; j < housing.n_cols(); ++j) {
        TimeSeries x = tg_no_standardize ? housing.col(j)
                                         : transform(housing.col(j), Transform::standardize);
        FitOptions opt = tg_opt;
        opt.seed = Rng::derive_seed(tg_seed, 100 + j);
        fits.push_back(fit_tgarch(x, factor, opt));
        const auto& fit = fits.back();
        auto row = [&](const char* eq, const GarchEq& e) {
          params.add_row({fit.id, eq, format_value(e.omega), format_value(e.alpha),
                          format_value(e.phi), format_value(e.gamma), format_value(fit.loglik),
                          fit.trace.converged ? "yes" : "no"});
        };
        row("variance_x", fit.params.var_x);
        row("variance_f", fit.params.var_f);
        row("covariance", fit.params.cov_xf);
      }
      write_table(params, tg_prefix + "_params");
      write_panel(build_volatility_panel(fits), tg_prefix + "_volatility.csv");
      std::cout << "fitted " << fits.size() << " variables; volatility panel at " << tg_prefix
                << "_volatility.csv\n";
    });

    // ---- index ----
    auto* ix = app.add_subcommand("index", "risk index from a volatility panel");
    std::string ix_in, ix_mode = "covariance", ix_prefix = "index";
    ix->add_option("--input", ix_in)->required();
    ix->add_option("--mode", ix_mode);
    ix->add_option("--out-prefix", ix_prefix);
    ix->callback([&] {
      Panel vol = load_panel(ix_in, "date");
      RiskIndex idx = build_risk_index(vol, parse_pca_mode(ix_mode));
      Table loads;
      loads.title = "Risk index loadings";
      loads.headers = {"Variable", "PC1 loading"};
      for (std::size_t j = 0; j < idx.ids.size(); ++j) {
        loads.add_row({idx.ids[j], format_value(idx.loadings[j])});
      }
      write_table(loads, ix_prefix + "_loadings");
      Table props;
      props.headers = {"Component", "Proportion"};
      props.title = "Variance shares";
      for (std::size_t c = 0; c < idx.proportions.size(); ++c) {
        props.add_row({"PC" + std::to_string(c + 1), format_value(idx.proportions[c])});
      }
      write_table(props, ix_prefix + "_proportions");
      write_series(idx.standardized, ix_prefix + "_series.csv");
      std::cout << "PC1 explains " << fmt_num(100.0 * idx.explained_share, 1)
                << "% of the volatility panel\n";
    });

    // ---- regress / quantile ----
    for (const char* name : {"regress", "quantile"}) {
      bool quantile_only = std::string(name) == "quantile";
      auto* rg = app.add_subcommand(name, quantile_only
                                              ? "quantile predictive regressions"
                                              : "predictive regressions with HAC inference");
      auto state = std::make_shared<std::tuple<std::string, std::string, std::string, std::string,
                                               std::string, std::string>>();
      auto& [rg_dep, rg_index, rg_controls, rg_dep_col, rg_quantiles, rg_nw] = *state;
      rg_quantiles = quantile_only ? "0.25,0.5,0.75,0.95" : "";
      rg_nw = "auto";
      auto lag = std::make_shared<int>(1);
      auto lead = std::make_shared<int>(0);
      auto boot = std::make_shared<int>(499);
      auto seed = std::make_shared<std::uint64_t>(7);
      auto prefix = std::make_shared<std::string>(name);
      rg->add_option("--dep", rg_dep)->required();
      rg->add_option("--dep-col", rg_dep_col);
      rg->add_option("--index", rg_index)->required();
      rg->add_option("--controls", rg_controls);
      rg->add_option("--lag", *lag, "months the index is lagged");
      rg->add_option("--lead", *lead, "months the dependent is led");
      rg->add_option("--quantiles", rg_quantiles, "comma list of taus");
      rg->add_option("--nw-lag", rg_nw, "auto or a lag count");
      rg->add_option("--bootstrap", *boot, "quantile bootstrap replicates");
      rg->add_option("--seed", *seed);
      rg->add_option("--out-prefix", *prefix);
      rg->callback([&app, state, lag, lead, boot, seed, prefix, quantile_only] {
        auto& [dep, index_path, controls_path, dep_col, quantiles, nw] = *state;
        TimeSeries y = load_series_arg(dep, dep_col);
        TimeSeries h = load_series_arg(index_path, "");
        std::optional<Panel> controls = load_optional_panel(controls_path);
        PredictiveSpec spec = make_pspec(*lag, *lead, quantiles, nw, *boot, *seed);
        PredictiveResult result = predictive_regression(y, h, controls, spec);
        if (!quantile_only) print_regression(result.ols);
        for (const auto& q : result.quantile_fits) print_quantile(q);
        write_predictive_tables(result, *prefix);
        (void)app;
      });
    }

    // ---- select ----
    auto* sel = app.add_subcommand("select", "Bayesian covariate-subset ranking");
    std::string sel_dep, sel_cand, sel_dep_col, sel_always, sel_out = "selection_ranking";
    std::size_t sel_topk = 20;
    sel->add_option("--dep", sel_dep)->required();
    sel->add_option("--dep-col", sel_dep_col);
    sel->add_option("--candidates", sel_cand)->required();
    sel->add_option("--always-include", sel_always, "comma list of pinned columns");
    sel->add_option("--top-k", sel_topk);
    sel->add_option("--out-prefix", sel_out);
    sel->callback([&] {
      TimeSeries y = load_series_arg(sel_dep, sel_dep_col);
      Panel cands = load_panel(sel_cand, "date");
      DateRange r = common_range({{y.start(), y.end()}, {cands.start(), cands.end()}});
      ModelRanking ranking = enumerate_models(y.slice(r.from, r.to), cands.slice(r.from, r.to),
                                              split_list(sel_always), sel_topk);
      Table t;
      t.title = "Covariate selection by log posterior odds";
      t.headers = {"Rank", "Log marginal", "Posterior prob", "Regressors", "Included"};
      for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
        const auto& e = ranking.entries[i];
        std::string inc;
        for (const auto& id : e.included) inc += (inc.empty() ? "" : " ") + id;
        t.add_row({std::to_string(i + 1), format_value(e.log_marginal),
                   format_value(e.posterior_prob), std::to_string(e.size), inc});
      }
      write_table(t, sel_out);
      std::cout << to_markdown(t);
    });

    // ---- breaks ----
    auto* br = app.add_subcommand("breaks", "structural breaks and subsample fits");
    std::string br_dep, br_index, br_controls, br_dep_col, br_at, br_prefix = "breaks";
    std::size_t br_max = 5;
    double br_trim = 0.15;
    int br_lag = 1;
    br->add_option("--dep", br_dep)->required();
    br->add_option("--dep-col", br_dep_col);
    br->add_option("--index", br_index)->required();
    br->add_option("--controls", br_controls);
    br->add_option("--max-breaks", br_max);
    br->add_option("--trim", br_trim);
    br->add_option("--lag", br_lag);
    br->add_option("--subsample-at", br_at, "YYYY-MM split override");
    br->add_option("--out-prefix", br_prefix);
    br->callback([&] {
      TimeSeries y = load_series_arg(br_dep, br_dep_col);
      TimeSeries h = load_series_arg(br_index, "");
      std::optional<Panel> controls = load_optional_panel(br_controls);
      AlignedDesign d = build_predictive_design(y, h, controls, br_lag, 0);
      BreakpointSet breaks = find_breaks(d.y, d.X, br_max, br_trim);
      Table bt;
      bt.title = "Structural breakpoints";
      bt.headers = {"Break", "Date", "Segment SSR"};
      for (std::size_t i = 0; i < breaks.segment_ssr.size(); ++i) {
        bt.add_row({i < breaks.break_labels.size() ? breaks.break_labels[i] : "(end)",
                    i < breaks.break_dates.size() ? breaks.break_dates[i].str() : "",
                    format_value(breaks.segment_ssr[i])});
      }
      write_table(bt, br_prefix + "_dates");
      Table ct;
      ct.title = "Break count criterion";
      ct.headers = {"Breaks", "BIC"};
      for (std::size_t m = 0; m < breaks.criterion_values.size(); ++m) {
        ct.add_row({std::to_string(m), format_value(breaks.criterion_values[m])});
      }
      write_table(ct, br_prefix + "_criterion");
      std::cout << to_markdown(bt) << to_markdown(ct);

      std::optional<Month> split_at;
      if (!br_at.empty()) {
        split_at = Month::parse(br_at);
      } else if (!breaks.break_dates.empty()) {
        split_at = breaks.break_dates.back();
      }
      if (split_at) {
        PredictiveSpec spec = make_pspec(br_lag, 0, "0.25,0.5,0.75,0.95", "auto", 199, 7);
        SubsampleFit sub = subsample_fit(y, h, controls, *split_at, spec);
        write_predictive_tables(sub.pre, br_prefix + "_pre");
        write_predictive_tables(sub.post, br_prefix + "_post");
        std::cout << "subsample split at " << split_at->break_label() << "\n";
      }
    });

    // ---- forecast ----
    auto* fc = app.add_subcommand("forecast", "train/validation comparison of models");
    std::string fc_dep, fc_index, fc_controls, fc_dep_col, fc_models = "univariate,nber,multivariate,ff3";
    std::string fc_prefix = "forecast_comparison";
    double fc_ratio = 0.8;
    int fc_lag = 1;
    fc->add_option("--dep", fc_dep)->required();
    fc->add_option("--dep-col", fc_dep_col);
    fc->add_option("--index", fc_index)->required();
    fc->add_option("--controls", fc_controls);
    fc->add_option("--ratio", fc_ratio);
    fc->add_option("--lag", fc_lag);
    fc->add_option("--models", fc_models);
    fc->add_option("--out-prefix", fc_prefix);
    fc->callback([&] {
      TimeSeries y = load_series_arg(fc_dep, fc_dep_col);
      TimeSeries h = load_series_arg(fc_index, "");
      std::optional<Panel> controls = load_optional_panel(fc_controls);
      std::vector<ForecastReport> reports;
      for (const auto& model : split_list(fc_models)) {
        std::optional<Panel> ctl;
        std::string id;
        if (model == "univariate") {
          id = "Univariate";
        } else if (model == "nber") {
          if (!controls || !controls->contains("NBER")) continue;
          ctl = controls->select({"NBER"});
          id = "Univariate with NBER dummy";
        } else if (model == "multivariate") {
          if (!controls) continue;
          std::vector<std::string> ids;
          for (const auto& cid : controls->ids()) {
            if (cid != "NBER" && cid != "VIX") ids.push_back(cid);
          }
          if (ids.empty()) continue;
          ctl = controls->select(ids);
          id = "Multivariate with risk factors";
        } else if (model == "ff3") {
          if (!controls || !controls->contains("MKT_RF") || !controls->contains("SMB") ||
              !controls->contains("HML")) {
            continue;
          }
          ctl = controls->select({"MKT_RF", "SMB", "HML"});
          id = "Fama-French three-factors";
        } else {
          fail(Errc::config_error, "unknown model '" + model + "'");
        }
        AlignedDesign d = build_predictive_design(y, h, ctl, fc_lag, 0);
        reports.push_back(evaluate(id, d.y, d.X, fc_ratio));
      }
      if (reports.empty()) fail(Errc::config_error, "no evaluable models");
      std::size_t best = 0;
      for (std::size_t i = 1; i < reports.size(); ++i) {
        if (reports[i].out_msfe < reports[best].out_msfe) best = i;
      }
      Table t;
      t.title = "In-sample and out-of-sample accuracy";
      t.headers = {"Model", "In Corr Accuracy", "In Residual Std Error", "Out Corr Accuracy",
                   "Out MSFE", "Sign Agreement", "N train", "N test"};
      for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        t.add_row({r.model_id + (i == best ? " *" : ""),
                   fmt_num(r.in_correlation_accuracy, 1) + "%", fmt_num(r.in_residual_std_error),
                   fmt_num(r.out_correlation_accuracy, 1) + "%", fmt_num(r.out_msfe),
                   fmt_num(r.sign_agreement, 1) + "%", std::to_string(r.n_train),
                   std::to_string(r.n_test)});
      }
      write_table(t, fc_prefix);
      std::cout << to_markdown(t);
    });

    // ---- run ----
    auto* run = app.add_subcommand("run", "full pipeline from a config file");
    std::string run_config;
    run->add_option("--config", run_config)->required();
    run->callback([&] {
      PipelineConfig cfg = PipelineConfig::load(run_config);
      ReportBundle bundle = run_pipeline(cfg);
      std::cout << "report bundle at " << bundle.dir.string() << " ("
                << bundle.outputs.size() << " files, manifest " << bundle.manifest_hash << ")\n";
    });

    // ---- report ----
    auto* rep = app.add_subcommand("report", "collate a bundle's tables into report.md");
    std::string rep_dir;
    rep->add_option("--bundle", rep_dir)->required();
    rep->callback([&] {
      std::vector<fs::path> mds;
      for (const auto& entry : fs::directory_iterator(rep_dir)) {
        if (entry.path().extension() == ".md" && entry.path().filename() != "report.md") {
          mds.push_back(entry.path());
        }
      }
      std::sort(mds.begin(), mds.end());
      std::ofstream outf(fs::path(rep_dir) / "report.md");
      if (!outf) fail(Errc::file_not_found, "cannot write report.md");
      for (const auto& p : mds) {
        std::ifstream in(p);
        outf << in.rdbuf() << "\n";
      }
      std::cout << "wrote " << (fs::path(rep_dir) / "report.md").string() << "\n";
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return errc_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
