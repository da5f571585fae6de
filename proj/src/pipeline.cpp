#include "hrix/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "hrix/breaks.hpp"
#include "hrix/csv.hpp"
#include "hrix/forecast.hpp"
#include "hrix/model_selection.hpp"
#include "hrix/prob.hpp"
#include "hrix/risk_index.hpp"
#include "hrix/rng.hpp"
#include "hrix/table.hpp"
#include "hrix/tgarch.hpp"

namespace hrix {

namespace {

std::string trim_copy(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename F>
auto stage(const std::string& name, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), "stage " + name + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim_copy(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_copy(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(Errc::config_error, "line " + std::to_string(lineno) + ": unterminated section");
      }
      section = trim_copy(line.substr(1, line.size() - 2));
      cfg.sections_[section];
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(Errc::config_error, "line " + std::to_string(lineno) + ": expected key = value");
    }
    cfg.sections_[section][trim_copy(line.substr(0, eq))] = trim_copy(line.substr(eq + 1));
  }
  return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::config_error, "cannot open config '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

std::string Config::get(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
  auto s = sections_.find(section);
  if (s == sections_.end()) return fallback;
  auto k = s->second.find(key);
  return k == s->second.end() ? fallback : k->second;
}

std::string Config::require(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  if (s != sections_.end()) {
    auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  fail(Errc::config_error, "missing [" + section + "] " + key);
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

double Config::get_num(const std::string& section, const std::string& key,
                       double fallback) const {
  std::string v = get(section, key, "");
  if (v.empty()) return fallback;
  char* end = nullptr;
  double out = std::strtod(v.c_str(), &end);
  if (end != v.c_str() + v.size()) {
    fail(Errc::config_error, "[" + section + "] " + key + " = '" + v + "' is not a number");
  }
  return out;
}

long Config::get_int(const std::string& section, const std::string& key, long fallback) const {
  double v = get_num(section, key, static_cast<double>(fallback));
  return static_cast<long>(v);
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) const {
  std::string v = get(section, key, "");
  if (v.empty()) return fallback;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(Errc::config_error, "[" + section + "] " + key + " = '" + v + "' is not a boolean");
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  Config c = Config::parse_file(path);
  PipelineConfig p;
  p.config_path = path;
  p.macro_path = c.require("paths", "macro");
  p.housing_path = c.require("paths", "housing");
  p.returns_path = c.require("paths", "returns");
  if (c.has("paths", "controls")) p.controls_path = c.get("paths", "controls", "");
  if (c.has("paths", "econ")) p.econ_path = c.get("paths", "econ", "");
  p.output_dir = c.get("paths", "output", "out");
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) p.output_dir = env;

  auto sec = c.sections().find("transforms");
  if (sec != c.sections().end()) {
    for (const auto& [col, kind] : sec->second) {
      if (kind == "none") continue;
      p.macro_transforms[col] = parse_transform(kind);
    }
  }

  p.macro_mode = parse_pca_mode(c.get("pca", "macro_mode", "correlation"));
  p.index_mode = parse_pca_mode(c.get("pca", "index_mode", "covariance"));

  p.tgarch_restarts = static_cast<int>(c.get_int("tgarch", "restarts", 20));
  p.tgarch_max_evals = static_cast<int>(c.get_int("tgarch", "max_evals", 20000));
  p.standardize_housing = c.get_bool("tgarch", "standardize", true);

  p.regression_lag = static_cast<int>(c.get_int("regression", "lag", 1));
  if (c.has("regression", "quantiles")) {
    p.quantiles.clear();
    for (const auto& q : split_list(c.get("regression", "quantiles", ""))) {
      p.quantiles.push_back(std::stod(q));
    }
  }
  std::string nw = c.get("regression", "nw_lag", "auto");
  p.nw_lag = nw == "auto" ? kAutoNwLag : static_cast<int>(std::stol(nw));
  p.quantile_bootstrap = static_cast<int>(c.get_int("regression", "bootstrap", 499));

  p.selection_top_k = static_cast<std::size_t>(c.get_int("selection", "top_k", 20));
  p.always_include = split_list(c.get("selection", "always_include", ""));
  p.selection_candidates = split_list(c.get("selection", "candidates", ""));

  p.max_breaks = static_cast<std::size_t>(c.get_int("breaks", "max_breaks", 5));
  p.trim = c.get_num("breaks", "trim", 0.15);

  p.forecast_ratio = c.get_num("forecast", "ratio", 0.8);
  p.seed = static_cast<std::uint64_t>(c.get_int("run", "seed", 42));

  for (const auto& path_opt : {p.macro_path, p.housing_path, p.returns_path}) {
    if (!std::filesystem::exists(path_opt)) {
      fail(Errc::config_error, "input file '" + path_opt.string() + "' does not exist");
    }
  }
  if (p.controls_path && !std::filesystem::exists(*p.controls_path)) {
    fail(Errc::config_error, "input file '" + p.controls_path->string() + "' does not exist");
  }
  if (p.econ_path && !std::filesystem::exists(*p.econ_path)) {
    fail(Errc::config_error, "input file '" + p.econ_path->string() + "' does not exist");
  }
  return p;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::file_not_found, "cannot hash '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return fnv1a_hex(buf.str());
}

namespace {

struct TableEmitter {
  std::filesystem::path dir;
  std::vector<std::string>* outputs;

  void emit(const Table& t, const std::string& base) {
    write_table(t, dir / base);
    outputs->push_back(base + ".csv");
    outputs->push_back(base + ".md");
  }
  void emit_panel(const Panel& p, const std::string& name) {
    write_panel(p, dir / name);
    outputs->push_back(name);
  }
  void emit_series(const TimeSeries& s, const std::string& name) {
    write_series(s, dir / name);
    outputs->push_back(name);
  }
};

Table pca_loadings_table(const PcaModel& model) {
  Table t;
  t.title = "Factor loadings";
  t.headers = {"Variable"};
  for (std::size_t c = 0; c < model.ids.size(); ++c) {
    t.headers.push_back("PC" + std::to_string(c + 1));
  }
  for (std::size_t i = 0; i < model.ids.size(); ++i) {
    std::vector<std::string> row{model.ids[i]};
    for (std::size_t c = 0; c < model.ids.size(); ++c) {
      row.push_back(fmt_num(model.loadings(i, c)));
    }
    t.add_row(std::move(row));
  }
  return t;
}

Table pca_proportions_table(const PcaModel& model) {
  Table t;
  t.title = "Importance of components";
  t.headers = {"Statistic"};
  for (std::size_t c = 0; c < model.ids.size(); ++c) {
    t.headers.push_back("PC" + std::to_string(c + 1));
  }
  std::vector<std::string> sd{"Standard deviation"}, prop{"Proportion of Variance"},
      cum{"Cumulative Proportion"};
  double running = 0.0;
  for (std::size_t c = 0; c < model.ids.size(); ++c) {
    sd.push_back(fmt_num(std::sqrt(model.eigenvalues[c])));
    prop.push_back(fmt_num(model.proportions[c]));
    running += model.proportions[c];
    cum.push_back(fmt_num(running));
  }
  t.add_row(std::move(sd));
  t.add_row(std::move(prop));
  t.add_row(std::move(cum));
  return t;
}

std::string adj_r2_cell(double adj_r2) {
  return fmt_num(adj_r2) + " (" + fmt_num(100.0 * adj_r2, 1) + "%)";
}

void add_ols_rows(Table& t, const std::string& label, const RegressionFit& fit) {
  // Slope on the first regressor (the risk index) is the headline number.
  t.add_row({label, coef_cell(fit.coef[1], fit.hac_se[1], fit.p_values[1])});
  t.add_row({"Adj R-Sq", adj_r2_cell(fit.adj_r2)});
  t.add_row({"N", std::to_string(fit.n)});
}

void add_quantile_rows(Table& t, const std::vector<QuantileFit>& fits) {
  for (const auto& q : fits) {
    // Bootstrap SEs give the stars through a normal approximation.
    double z = q.se[1] > 0.0 ? q.coef[1] / q.se[1] : 0.0;
    double p = z == 0.0 ? 1.0 : 2.0 * (1.0 - normal_cdf(std::fabs(z)));
    t.add_row({"Q (" + fmt_num(q.tau, 2) + ")", coef_cell(q.coef[1], q.se[1], p)});
  }
  if (!fits.empty()) t.add_row({"N", std::to_string(fits.front().n)});
}

}  // namespace

ReportBundle run_pipeline(const PipelineConfig& cfg) {
  ReportBundle bundle;
  bundle.dir = cfg.output_dir;
  std::filesystem::create_directories(bundle.dir);
  TableEmitter out{bundle.dir, &bundle.outputs};

  // ---- load ----
  Panel macro = stage("load-data", [&] { return load_panel(cfg.macro_path, "date"); });
  Panel housing = stage("load-data", [&] { return load_panel(cfg.housing_path, "date"); });
  TimeSeries returns = stage("load-data", [&] {
    Panel p = load_panel(cfg.returns_path, "date");
    return p.col(0);
  });
  std::optional<Panel> controls;
  if (cfg.controls_path) {
    controls = stage("load-data", [&] { return load_panel(*cfg.controls_path, "date"); });
  }
  std::optional<Panel> econ;
  if (cfg.econ_path) {
    econ = stage("load-data", [&] { return load_panel(*cfg.econ_path, "date"); });
  }

  stage("load-data", [&] {
    DateRange r = common_range({{macro.start(), macro.end()},
                                {housing.start(), housing.end()},
                                {returns.start(), returns.end()}});
    if (r.size() < 120) {
      fail(Errc::too_short, "panels share only " + std::to_string(r.size()) +
                                " months; at least 120 are required");
    }
    return 0;
  });

  // ---- factor extraction ----
  TimeSeries factor = stage("factor", [&] {
    std::vector<TimeSeries> cols;
    for (const auto& c : macro.columns()) {
      auto it = cfg.macro_transforms.find(c.id());
      cols.push_back(it == cfg.macro_transforms.end() ? c : transform(c, it->second));
    }
    DateRange r = common_range({{cols.front().start(), cols.front().end()}});
    for (const auto& c : cols) r = common_range({{r.from, r.to}, {c.start(), c.end()}});
    for (auto& c : cols) c = c.slice(r.from, r.to);
    Panel transformed(std::move(cols));
    PcaModel model = fit_pca(transformed, cfg.macro_mode);
    out.emit(pca_loadings_table(model), "factor_loadings");
    out.emit(pca_proportions_table(model), "factor_proportions");
    TimeSeries f = scores(model, transformed, 1).front().series.renamed("factor");
    out.emit_series(f, "factor_scores.csv");
    return f;
  });

  // ---- ten T-GARCH fits, one per housing column, a parallel stage ----
  std::vector<TGarchFit> fits = stage("tgarch", [&] {
    std::vector<TimeSeries> xs;
    for (const auto& c : housing.columns()) {
      xs.push_back(cfg.standardize_housing ? transform(c, Transform::standardize) : c);
    }
    FitOptions base;
    base.restarts = cfg.tgarch_restarts;
    base.max_evals = cfg.tgarch_max_evals;

    std::vector<std::future<TGarchFit>> tasks;
    tasks.reserve(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      FitOptions opt = base;
      opt.seed = Rng::derive_seed(cfg.seed, 100 + j);
      tasks.push_back(std::async(std::launch::async,
                                 [x = xs[j], &factor, opt] { return fit_tgarch(x, factor, opt); }));
    }
    std::vector<TGarchFit> result;
    result.reserve(xs.size());
    for (auto& t : tasks) result.push_back(t.get());

    Table params;
    params.title = "T-GARCH parameters";
    params.headers = {"Variable", "Equation", "omega", "alpha", "phi", "gamma", "loglik",
                      "converged"};
    for (const auto& fit : result) {
      auto row = [&](const char* eq, const GarchEq& e) {
        params.add_row({fit.id, eq, format_value(e.omega), format_value(e.alpha),
                        format_value(e.phi), format_value(e.gamma), format_value(fit.loglik),
                        fit.trace.converged ? "yes" : "no"});
      };
      row("variance_x", fit.params.var_x);
      row("variance_f", fit.params.var_f);
      row("covariance", fit.params.cov_xf);
    }
    out.emit(params, "tgarch_params");
    return result;
  });

  Panel vol_panel = stage("tgarch", [&] {
    Panel p = build_volatility_panel(fits);
    out.emit_panel(p, "volatility_panel.csv");
    return p;
  });

  // ---- risk index ----
  RiskIndex index = stage("index", [&] {
    RiskIndex idx = build_risk_index(vol_panel, cfg.index_mode);
    Table loads;
    loads.title = "Risk index loadings";
    loads.headers = {"Variable", "PC1 loading"};
    for (std::size_t j = 0; j < idx.ids.size(); ++j) {
      loads.add_row({idx.ids[j], fmt_num(idx.loadings[j])});
    }
    out.emit(loads, "index_loadings");
    Table props;
    props.title = "Risk index variance shares";
    props.headers = {"Component", "Proportion"};
    for (std::size_t c = 0; c < idx.proportions.size(); ++c) {
      props.add_row({"PC" + std::to_string(c + 1), fmt_num(idx.proportions[c])});
    }
    out.emit(props, "index_proportions");
    out.emit_series(idx.standardized, "risk_index.csv");
    return idx;
  });
  const TimeSeries& h = index.standardized;

  PredictiveSpec pspec;
  pspec.lag_index = cfg.regression_lag;
  pspec.quantiles = cfg.quantiles;
  pspec.nw_lag = cfg.nw_lag;
  pspec.quantile_opt = QuantileOptions{cfg.quantile_bootstrap, Rng::derive_seed(cfg.seed, 7)};

  // ---- univariate predictive regressions ----
  stage("regression", [&] {
    Table t;
    t.title = "Baseline regression with the risk index";
    t.headers = {"Model", returns.id()};
    PredictiveResult base = predictive_regression(returns, h, std::nullopt, pspec);
    add_ols_rows(t, "Univariate OLS", base.ols);
    if (controls && controls->contains("NBER")) {
      PredictiveResult with_nber =
          predictive_regression(returns, h, controls->select({"NBER"}), pspec);
      add_ols_rows(t, "OLS (with NBER dummy)", with_nber.ols);
    }
    if (controls && controls->contains("VIX")) {
      PredictiveResult with_vix =
          predictive_regression(returns, h, controls->select({"VIX"}), pspec);
      add_ols_rows(t, "OLS (with VIX)", with_vix.ols);
    }
    add_quantile_rows(t, base.quantile_fits);
    out.emit(t, "table_univariate");
    return 0;
  });

  // ---- Bayesian covariate selection ----
  std::vector<std::string> best_subset;
  if (controls) {
    best_subset = stage("selection", [&] {
      std::vector<std::string> cand_ids = cfg.selection_candidates;
      if (cand_ids.empty()) {
        for (const auto& id : controls->ids()) {
          if (id != "NBER" && id != "VIX") cand_ids.push_back(id);
        }
      }
      // Candidates at the dependent's date, index lagged, all on one axis.
      AlignedDesign d = build_predictive_design(returns, h, controls->select(cand_ids),
                                                cfg.regression_lag, 0);
      std::vector<std::string> pinned{h.id()};
      for (const auto& id : cfg.always_include) pinned.push_back(id);
      ModelRanking ranking = enumerate_models(d.y, d.X, pinned, cfg.selection_top_k);

      Table t;
      t.title = "Covariate selection by log posterior odds";
      t.headers = {"Rank", "Log marginal", "Posterior prob", "Regressors", "Included"};
      for (std::size_t r = 0; r < ranking.entries.size(); ++r) {
        const auto& e = ranking.entries[r];
        std::string inc;
        for (const auto& id : e.included) inc += (inc.empty() ? "" : " ") + id;
        t.add_row({std::to_string(r + 1), fmt_num(e.log_marginal), fmt_num(e.posterior_prob, 4),
                   std::to_string(e.size), inc});
      }
      out.emit(t, "selection_ranking");

      std::vector<std::string> subset;
      for (const auto& id : ranking.best.included) {
        if (id != h.id()) subset.push_back(id);
      }
      return subset;
    });
  }

  // ---- multivariate regression with the selected covariates ----
  if (controls) {
    stage("regression", [&] {
      std::optional<Panel> sel;
      if (!best_subset.empty()) sel = controls->select(best_subset);
      PredictiveResult multi = predictive_regression(returns, h, sel, pspec);
      Table t;
      t.title = "Regression with selected control variables";
      t.headers = {"Predictor", returns.id()};
      for (std::size_t j = 1; j < multi.ols.names.size(); ++j) {
        t.add_row({multi.ols.names[j],
                   coef_cell(multi.ols.coef[j], multi.ols.hac_se[j], multi.ols.p_values[j])});
      }
      t.add_row({"Adj R-Sq", adj_r2_cell(multi.ols.adj_r2)});
      t.add_row({"N", std::to_string(multi.ols.n)});
      add_quantile_rows(t, multi.quantile_fits);
      out.emit(t, "table_multivariate");
      return 0;
    });
  }

  // ---- structural breaks on the univariate design ----
  stage("breaks", [&] {
    AlignedDesign d = build_predictive_design(returns, h, std::nullopt, cfg.regression_lag, 0);
    BreakpointSet breaks = find_breaks(d.y, d.X, cfg.max_breaks, cfg.trim);

    Table bt;
    bt.title = "Structural breakpoints";
    bt.headers = {"Break", "Date"};
    for (std::size_t i = 0; i < breaks.break_labels.size(); ++i) {
      bt.add_row({std::to_string(i + 1), breaks.break_labels[i]});
    }
    out.emit(bt, "breakpoints");

    Table ct;
    ct.title = "Break count criterion";
    ct.headers = {"Breaks", "BIC"};
    for (std::size_t m = 0; m < breaks.criterion_values.size(); ++m) {
      ct.add_row({std::to_string(m), fmt_num(breaks.criterion_values[m], 2)});
    }
    out.emit(ct, "breaks_criterion");

    if (!breaks.break_dates.empty()) {
      Month at = breaks.break_dates.back();
      try {
        SubsampleFit sub = subsample_fit(returns, h, std::nullopt, at, pspec);
        Table t;
        t.title = "Risk beta in sub-samples (split at " + at.break_label() + ")";
        t.headers = {"Sub-sample", "Model", returns.id()};
        auto add_side = [&](const std::string& label, const PredictiveResult& r) {
          t.add_row({label, "OLS",
                     coef_cell(r.ols.coef[1], r.ols.hac_se[1], r.ols.p_values[1])});
          t.add_row({label, "Adj R-sq", adj_r2_cell(r.ols.adj_r2)});
          t.add_row({label, "N", std::to_string(r.ols.n)});
          for (const auto& q : r.quantile_fits) {
            double z = q.se[1] > 0.0 ? q.coef[1] / q.se[1] : 0.0;
            double p = z == 0.0 ? 1.0 : 2.0 * (1.0 - normal_cdf(std::fabs(z)));
            t.add_row({label, "Q (" + fmt_num(q.tau, 2) + ")",
                       coef_cell(q.coef[1], q.se[1], p)});
          }
        };
        add_side("through " + at.break_label(), sub.pre);
        add_side("after " + at.break_label(), sub.post);
        out.emit(t, "table_subsample");
      } catch (const Error& e) {
        if (e.code() != Errc::segment_too_short) throw;
        // A break too close to the sample edge leaves no subsample table.
      }
    }
    return 0;
  });

  // ---- forecast comparison ----
  stage("forecast", [&] {
    struct ModelDef {
      std::string id;
      std::vector<std::string> control_ids;
    };
    std::vector<ModelDef> defs{{"Univariate", {}}};
    if (controls && controls->contains("NBER")) {
      defs.push_back({"Univariate with NBER dummy", {"NBER"}});
    }
    if (controls) {
      std::vector<std::string> risk_factors;
      for (const auto& id : controls->ids()) {
        if (id != "NBER" && id != "VIX") risk_factors.push_back(id);
      }
      if (!risk_factors.empty()) defs.push_back({"Multivariate with risk factors", risk_factors});
      if (controls->contains("MKT_RF") && controls->contains("SMB") &&
          controls->contains("HML")) {
        defs.push_back({"Fama-French three-factors", {"MKT_RF", "SMB", "HML"}});
      }
    }

    std::vector<ForecastReport> reports;
    for (const auto& def : defs) {
      std::optional<Panel> ctl;
      if (!def.control_ids.empty()) ctl = controls->select(def.control_ids);
      AlignedDesign d = build_predictive_design(returns, h, ctl, cfg.regression_lag, 0);
      reports.push_back(evaluate(def.id, d.y, d.X, cfg.forecast_ratio));
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < reports.size(); ++i) {
      if (reports[i].out_msfe < reports[best].out_msfe) best = i;
    }

    Table t;
    t.title = "In-sample and out-of-sample accuracy";
    t.headers = {"Model",      "In Corr Accuracy",  "In Residual Std Error",
                 "Out Corr Accuracy", "Out MSFE",   "Sign Agreement",
                 "N train",    "N test"};
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      t.add_row({r.model_id + (i == best ? " *" : ""),
                 fmt_num(r.in_correlation_accuracy, 1) + "%",
                 fmt_num(r.in_residual_std_error),
                 fmt_num(r.out_correlation_accuracy, 1) + "%", fmt_num(r.out_msfe),
                 fmt_num(r.sign_agreement, 1) + "%", std::to_string(r.n_train),
                 std::to_string(r.n_test)});
    }
    out.emit(t, "forecast_comparison");
    return 0;
  });

  // ---- economic-condition lead regressions ----
  if (econ) {
    stage("econ", [&] {
      Table t;
      t.title = "Economic conditions regressed on the lagged risk index";
      t.headers = {"Dependent", "Risk index", "Constant", "N", "R2"};
      PredictiveSpec lead;
      lead.lag_index = 0;
      lead.lead_dependent = 1;
      lead.nw_lag = cfg.nw_lag;
      for (const auto& col : econ->columns()) {
        PredictiveResult r = predictive_regression(col, h, std::nullopt, lead);
        t.add_row({col.id(),
                   coef_cell(r.ols.coef[1], r.ols.hac_se[1], r.ols.p_values[1]),
                   coef_cell(r.ols.coef[0], r.ols.hac_se[0], r.ols.p_values[0]),
                   std::to_string(r.ols.n), fmt_num(r.ols.r2)});
      }
      out.emit(t, "table_econ");
      return 0;
    });
  }

  // ---- manifest ----
  stage("manifest", [&] {
    nlohmann::json m;
    m["version"] = kVersion;
    m["seed"] = cfg.seed;
    m["config_hash"] = hash_file(cfg.config_path);
    nlohmann::json inputs;
    inputs["macro"] = hash_file(cfg.macro_path);
    inputs["housing"] = hash_file(cfg.housing_path);
    inputs["returns"] = hash_file(cfg.returns_path);
    if (cfg.controls_path) inputs["controls"] = hash_file(*cfg.controls_path);
    if (cfg.econ_path) inputs["econ"] = hash_file(*cfg.econ_path);
    m["inputs"] = inputs;
    std::sort(bundle.outputs.begin(), bundle.outputs.end());
    m["outputs"] = bundle.outputs;

    std::string key = m["config_hash"].get<std::string>();
    for (const auto& item : inputs.items()) key += item.value().get<std::string>();
    key += std::to_string(cfg.seed);
    key += kVersion;
    bundle.manifest_hash = fnv1a_hex(key);
    m["manifest_hash"] = bundle.manifest_hash;

    std::ofstream f(bundle.dir / "manifest.json");
    if (!f) fail(Errc::file_not_found, "cannot write manifest.json");
    f << m.dump(2) << '\n';
    bundle.outputs.push_back("manifest.json");
    return 0;
  });

  return bundle;
}

}  // namespace hrix
