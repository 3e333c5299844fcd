#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "attrib/estimate.hpp"

namespace attrib {

// One Monte-Carlo cell: a (case, estimator, n) triple aggregated over
// replications.  bias/sse summarize the point estimates, ese/cp95 the
// plug-in standard errors; estimators without a plug-in SE leave ese/cp95
// unset (negative sentinel, written as NA).
struct MetricsRow {
  int case_id = 0;
  Method estimator = Method::PnMono;
  int n = 0;
  int reps = 0;
  double truth = 0.0;
  double bias = 0.0;
  double sse = 0.0;
  double ese = -1.0;
  double cp95 = -1.0;
  int failures = 0;

  bool valid() const { return failures * 20 <= reps; }  // <= 5% failed
  bool has_se() const { return ese >= 0.0; }
};

struct StudyConfig {
  std::vector<int> case_ids;
  std::vector<Method> estimators;
  std::vector<int> n_values;
  int reps = 1000;
  int folds = 5;
  std::uint64_t seed = 20240101;
  int workers = 0;  // 0 = all hardware threads; the output does not depend on it
  std::size_t truth_samples = 1'000'000;
};

// Runs reps independent replications per (case, n) cell; every replication
// draws its own stream from (seed, case, n, rep), so the table is
// bit-identical across worker counts and repeated runs.
std::vector<MetricsRow> run_study(const StudyConfig& config);

std::string metrics_to_csv(const std::vector<MetricsRow>& rows);
void write_metrics_csv(const std::vector<MetricsRow>& rows, const std::filesystem::path& path);
std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path);

// Aligned text rendering in the case/estimator-by-n layout of the
// simulation tables.
std::string render_metrics_table(const std::vector<MetricsRow>& rows);

}  // namespace attrib
