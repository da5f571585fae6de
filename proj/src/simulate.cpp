#include "hrix/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "hrix/csv.hpp"
#include "hrix/rng.hpp"

namespace hrix {

namespace {

using nlohmann::json;

std::vector<double> ar1(Rng& rng, std::size_t n, double rho, double innov_sd,
                        std::size_t burn = 100) {
  std::vector<double> out(n);
  double x = 0.0;
  for (std::size_t t = 0; t < burn + n; ++t) {
    x = rho * x + innov_sd * rng.normal();
    if (t >= burn) out[t - burn] = x;
  }
  return out;
}

std::vector<double> standardized(std::vector<double> v) {
  double m = mean(v);
  double sd = sample_std(v);
  for (auto& x : v) x = (x - m) / sd;
  return v;
}

}  // namespace

const std::vector<std::string>& housing_column_names() {
  static const std::vector<std::string> names{"HOUST",  "PERMIT", "HPRICE",  "HSTMW",
                                              "HSTNE",  "HSTSOU", "HSTW",    "HSOLD",
                                              "SATSOLD", "MORINT"};
  return names;
}

SyntheticData simulate_corpus(const SimulateConfig& cfg) {
  if (cfg.n < 120) fail(Errc::too_short, "synthetic corpus needs n >= 120");
  if (cfg.macro_cols < 2) fail(Errc::config_error, "macro panel needs at least 2 columns");

  const std::size_t n = cfg.n;
  Rng root(cfg.seed);

  // Latent macro factor and the wide macro panel loading on it.
  Rng rng_macro = root.fork(1);
  std::vector<double> factor = ar1(rng_macro, n, 0.7, 1.0);
  std::vector<TimeSeries> macro_cols;
  std::vector<double> macro_loadings(cfg.macro_cols);
  for (std::size_t j = 0; j < cfg.macro_cols; ++j) {
    double b = 0.5 + rng_macro.uniform();  // in [0.5, 1.5]
    macro_loadings[j] = b;
    std::vector<double> col(n);
    for (std::size_t t = 0; t < n; ++t) col[t] = b * factor[t] + 0.5 * rng_macro.normal();
    char name[16];
    std::snprintf(name, sizeof(name), "MACRO%02zu", j + 1);
    macro_cols.emplace_back(name, cfg.start, std::move(col));
  }

  // Common volatility state and the housing panel.
  Rng rng_house = root.fork(2);
  std::vector<double> vol_state = ar1(rng_house, n, 0.95, 0.25);
  const auto& hnames = housing_column_names();
  std::vector<double> vol_scale(hnames.size()), vol_sens(hnames.size()), mean_load(hnames.size());
  std::vector<TimeSeries> housing_cols;
  std::vector<double> true_raw(n, 0.0);
  for (std::size_t j = 0; j < hnames.size(); ++j) {
    vol_scale[j] = 0.3 + 0.9 * rng_house.uniform();
    vol_sens[j] = 0.6 + 0.8 * rng_house.uniform();
    mean_load[j] = 0.1 + 0.2 * rng_house.uniform();
    std::vector<double> col(n);
    double prev = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      double sigma = vol_scale[j] * std::exp(vol_sens[j] * vol_state[t]);
      true_raw[t] += sigma;
      double x = 0.3 * prev + mean_load[j] * factor[t] + sigma * rng_house.normal();
      col[t] = x;
      prev = x;
    }
    housing_cols.emplace_back(hnames[j], cfg.start, std::move(col));
  }
  std::vector<double> true_index = standardized(true_raw);

  // Control predictors: four traded factors plus persistent macro-finance
  // series; names follow the usual mnemonics.
  Rng rng_ctrl = root.fork(3);
  auto iid = [&](double sd) {
    std::vector<double> v(n);
    for (auto& x : v) x = sd * rng_ctrl.normal();
    return v;
  };
  std::vector<TimeSeries> controls;
  controls.emplace_back("MKT_RF", cfg.start, iid(4.5));
  controls.emplace_back("SMB", cfg.start, iid(3.0));
  controls.emplace_back("HML", cfg.start, iid(2.9));
  controls.emplace_back("MOM", cfg.start, iid(4.3));
  controls.emplace_back("CRDSPR", cfg.start, ar1(rng_ctrl, n, 0.95, 0.2));
  controls.emplace_back("D12", cfg.start, ar1(rng_ctrl, n, 0.98, 0.5));
  controls.emplace_back("E12", cfg.start, ar1(rng_ctrl, n, 0.98, 1.0));
  controls.emplace_back("BM", cfg.start, ar1(rng_ctrl, n, 0.97, 0.05));
  controls.emplace_back("LTY", cfg.start, ar1(rng_ctrl, n, 0.98, 0.01));
  controls.emplace_back("NTIS", cfg.start, ar1(rng_ctrl, n, 0.9, 0.01));
  controls.emplace_back("SVAR", cfg.start, [&] {
    auto v = ar1(rng_ctrl, n, 0.6, 0.5);
    for (auto& x : v) x = 0.002 * std::exp(x);
    return v;
  }());
  controls.emplace_back("DFY", cfg.start, ar1(rng_ctrl, n, 0.95, 0.002));

  // Recession dummy and implied-volatility proxy keyed to the common state.
  std::vector<double> sorted_state = vol_state;
  std::sort(sorted_state.begin(), sorted_state.end());
  double q80 = sorted_state[static_cast<std::size_t>(0.8 * static_cast<double>(n))];
  std::vector<double> nber(n), vix(n);
  for (std::size_t t = 0; t < n; ++t) {
    nber[t] = vol_state[t] > q80 ? 1.0 : 0.0;
    vix[t] = 15.0 * std::exp(0.4 * vol_state[t]) + 0.5 * std::fabs(rng_ctrl.normal());
  }
  controls.emplace_back("NBER", cfg.start, std::move(nber));
  controls.emplace_back("VIX", cfg.start, std::move(vix));
  Panel controls_panel(std::move(controls));

  // Returns: alpha + beta * true_index_{t-1} + factor exposures + noise.
  Rng rng_ret = root.fork(4);
  std::vector<double> ret(n);
  for (std::size_t t = 0; t < n; ++t) {
    double h_lag = t > 0 ? true_index[t - 1] : 0.0;
    ret[t] = cfg.returns_alpha + cfg.returns_beta * h_lag +
             cfg.mkt_loading * controls_panel.col("MKT_RF")[t] +
             cfg.smb_loading * controls_panel.col("SMB")[t] +
             cfg.hml_loading * controls_panel.col("HML")[t] + cfg.returns_sigma * rng_ret.normal();
  }

  // Six economic-condition indices led by one month relative to the index.
  Rng rng_econ = root.fork(5);
  struct EconSpec {
    const char* name;
    double slope;
    double intercept;
    double noise;
  };
  const EconSpec econ_specs[] = {
      {"NBER", 0.026, 0.125, 0.3},  {"CFNAI", -0.111, 0.0, 0.4}, {"MEI", -0.131, 0.0, 0.4},
      {"KCFSI", 0.111, -0.02, 0.4}, {"IPG", -0.040, 0.186, 0.3}, {"SRP", 2.44, 8.586, 9.0},
  };
  std::vector<TimeSeries> econ_cols;
  for (const auto& spec : econ_specs) {
    std::vector<double> v(n);
    for (std::size_t t = 0; t < n; ++t) {
      double h_lag = t > 0 ? true_index[t - 1] : 0.0;
      v[t] = spec.intercept + spec.slope * h_lag + spec.noise * rng_econ.normal();
    }
    econ_cols.emplace_back(spec.name, cfg.start, std::move(v));
  }

  json truth;
  truth["seed"] = cfg.seed;
  truth["n"] = n;
  truth["macro_cols"] = cfg.macro_cols;
  truth["macro_loadings"] = macro_loadings;
  truth["vol_scale"] = vol_scale;
  truth["vol_sensitivity"] = vol_sens;
  truth["housing_mean_factor_loading"] = mean_load;
  truth["returns"] = {{"alpha", cfg.returns_alpha},
                      {"beta_on_true_index", cfg.returns_beta},
                      {"sigma", cfg.returns_sigma},
                      {"mkt_loading", cfg.mkt_loading},
                      {"smb_loading", cfg.smb_loading},
                      {"hml_loading", cfg.hml_loading}};
  json econ_truth = json::object();
  for (const auto& spec : econ_specs) {
    econ_truth[spec.name] = {{"slope", spec.slope}, {"intercept", spec.intercept}};
  }
  truth["econ"] = econ_truth;

  return SyntheticData{
      Panel(std::move(macro_cols)),
      Panel(std::move(housing_cols)),
      TimeSeries("REIT", cfg.start, std::move(ret)),
      std::move(controls_panel),
      Panel(std::move(econ_cols)),
      TimeSeries("latent_factor", cfg.start, std::move(factor)),
      TimeSeries("true_index", cfg.start, std::move(true_index)),
      truth.dump(2),
  };
}

void write_corpus(const SyntheticData& data, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_panel(data.macro, dir / "macro.csv");
  write_panel(data.housing, dir / "housing.csv");
  write_series(data.returns, dir / "returns.csv");
  write_panel(data.controls, dir / "controls.csv");
  write_panel(data.econ, dir / "econ.csv");
  write_panel(Panel({data.latent_factor, data.true_index}), dir / "latent.csv");
  std::ofstream truth(dir / "truth.json");
  if (!truth) fail(Errc::file_not_found, "cannot write truth.json");
  truth << data.truth_json << '\n';
}

}  // namespace hrix
