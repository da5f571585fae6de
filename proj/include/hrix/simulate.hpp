#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hrix/timeseries.hpp"

namespace hrix {

// Synthetic corpus with known ground truth: one latent macro factor behind a
// wide macro panel, a housing panel whose conditional volatilities share a
// common state, returns with a configurable loading on the true risk index,
// control predictors, and six economic-condition indices.
struct SimulateConfig {
  std::size_t n = 576;
  std::size_t macro_cols = 76;
  Month start{1971, 1};
  std::uint64_t seed = 42;

  double returns_beta = 0.5;   // loading of returns on the lagged true index
  double returns_alpha = 0.3;
  double returns_sigma = 1.0;
  double mkt_loading = 0.6;
  double smb_loading = 0.2;
  double hml_loading = 0.3;
};

struct SyntheticData {
  Panel macro;
  Panel housing;
  TimeSeries returns;
  Panel controls;  // 12 candidate predictors plus NBER and VIX
  Panel econ;      // NBER, CFNAI, MEI, KCFSI, IPG, SRP
  TimeSeries latent_factor;  // the macro factor the panel loads on
  TimeSeries true_index;     // standardized common volatility component
  std::string truth_json;    // ground-truth manifest
};

SyntheticData simulate_corpus(const SimulateConfig& cfg);

// Writes macro.csv, housing.csv, returns.csv, controls.csv, econ.csv,
// latent.csv and truth.json under dir.
void write_corpus(const SyntheticData& data, const std::filesystem::path& dir);

// The ten housing mnemonics used for synthetic housing columns.
const std::vector<std::string>& housing_column_names();

}  // namespace hrix
