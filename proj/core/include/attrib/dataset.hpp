#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace attrib {

// Observed sample: covariate matrix x (n rows, p columns), binary cause
// indicator a and binary outcome y.  Treated as immutable after
// construction; all estimators share const references across threads.
struct Dataset {
  Eigen::MatrixXd x;
  Eigen::VectorXd a;
  Eigen::VectorXd y;
  std::vector<std::string> column_names;  // one per covariate column, may be empty
  std::size_t dropped_rows = 0;           // rows removed during ingestion

  Eigen::Index n() const { return x.rows(); }
  Eigen::Index p() const { return x.cols(); }

  int column_index(const std::string& name) const;  // -1 when absent
};

// Validates the container invariants (binary a/y, matching row counts,
// finite covariates) and throws ArgumentError on violation.
Dataset make_dataset(Eigen::MatrixXd x, Eigen::VectorXd a, Eigen::VectorXd y,
                     std::vector<std::string> column_names = {},
                     std::size_t dropped_rows = 0);

// Reads a header CSV, keeping covariates in the listed order.  Rows with a
// missing token in any used column are dropped and counted in
// Dataset::dropped_rows.
Dataset load_csv(const std::filesystem::path& path, const std::string& treatment_col,
                 const std::string& outcome_col,
                 const std::vector<std::string>& covariate_cols);

// Inverse of load_csv up to float round-trip: writes columns
// covariates..., treatment, outcome with 17-significant-digit formatting.
void write_csv(const Dataset& d, const std::filesystem::path& path,
               const std::string& treatment_col = "a",
               const std::string& outcome_col = "y");

// Appends one product column per (continuous, discrete) pair, named
// "<cont>:<disc>"; original columns are preserved.
Dataset expand_interactions(const Dataset& d, const std::vector<std::string>& continuous_cols,
                            const std::vector<std::string>& discrete_cols);

}  // namespace attrib
