#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hrix/pca.hpp"
#include "hrix/regression.hpp"
#include "hrix/timeseries.hpp"

namespace hrix {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputDirEnv = "HRIX_OUTPUT_DIR";

// Sectioned key = value configuration text, '#' and ';' comments.
class Config {
 public:
  static Config parse_file(const std::filesystem::path& path);
  static Config parse_text(const std::string& text);

  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  std::string require(const std::string& section, const std::string& key) const;
  double get_num(const std::string& section, const std::string& key, double fallback) const;
  long get_int(const std::string& section, const std::string& key, long fallback) const;
  bool get_bool(const std::string& section, const std::string& key, bool fallback) const;
  bool has(const std::string& section, const std::string& key) const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

struct PipelineConfig {
  std::filesystem::path config_path;
  std::filesystem::path macro_path;
  std::filesystem::path housing_path;
  std::filesystem::path returns_path;
  std::optional<std::filesystem::path> controls_path;
  std::optional<std::filesystem::path> econ_path;
  std::filesystem::path output_dir;

  std::map<std::string, Transform> macro_transforms;

  PcaMode macro_mode = PcaMode::correlation;
  PcaMode index_mode = PcaMode::covariance;

  int tgarch_restarts = 20;
  int tgarch_max_evals = 20000;
  bool standardize_housing = true;

  int regression_lag = 1;
  std::vector<double> quantiles{0.25, 0.5, 0.75, 0.95};
  int nw_lag = kAutoNwLag;
  int quantile_bootstrap = 499;

  std::size_t selection_top_k = 20;
  std::vector<std::string> always_include;
  std::vector<std::string> selection_candidates;  // empty: every control column

  std::size_t max_breaks = 5;
  double trim = 0.15;

  double forecast_ratio = 0.8;

  std::uint64_t seed = 42;

  // Reads the config file; HRIX_OUTPUT_DIR overrides [paths] output.
  static PipelineConfig load(const std::filesystem::path& path);
};

struct ReportBundle {
  std::filesystem::path dir;
  std::vector<std::string> outputs;  // file names inside dir
  std::string manifest_hash;
};

// Runs factor extraction, the ten volatility fits, index construction,
// regressions, covariate selection, structural breaks, forecast comparison
// and the economic-condition regressions; failures carry a stage tag.
ReportBundle run_pipeline(const PipelineConfig& cfg);

std::string fnv1a_hex(const std::string& bytes);
std::string hash_file(const std::filesystem::path& path);

std::vector<std::string> split_list(const std::string& csv);

}  // namespace hrix
