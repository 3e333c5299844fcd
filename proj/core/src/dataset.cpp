#include "attrib/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "attrib/csv.hpp"
#include "attrib/errors.hpp"

namespace attrib {

namespace {

bool is_binary01(double v) { return v == 0.0 || v == 1.0; }

double parse_number(const std::string& token, std::size_t row, const std::string& col) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ", column '" + col +
                     "': cannot parse '" + token + "' as a number");
  }
  if (pos != token.size()) {
    throw ParseError("row " + std::to_string(row) + ", column '" + col +
                     "': trailing characters in '" + token + "'");
  }
  return v;
}

}  // namespace

int Dataset::column_index(const std::string& name) const {
  auto it = std::find(column_names.begin(), column_names.end(), name);
  if (it == column_names.end()) return -1;
  return static_cast<int>(it - column_names.begin());
}

Dataset make_dataset(Eigen::MatrixXd x, Eigen::VectorXd a, Eigen::VectorXd y,
                     std::vector<std::string> column_names, std::size_t dropped_rows) {
  const Eigen::Index n = x.rows();
  if (n < 1) throw ArgumentError("dataset needs at least one row");
  if (a.size() != n || y.size() != n) {
    throw ArgumentError("treatment/outcome length does not match covariate rows");
  }
  if (!column_names.empty() && static_cast<Eigen::Index>(column_names.size()) != x.cols()) {
    throw ArgumentError("column_names length does not match covariate columns");
  }
  if (!x.allFinite()) throw ArgumentError("covariate matrix contains non-finite values");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!is_binary01(a[i])) throw ArgumentError("treatment is not binary at row " + std::to_string(i));
    if (!is_binary01(y[i])) throw ArgumentError("outcome is not binary at row " + std::to_string(i));
  }
  Dataset d;
  d.x = std::move(x);
  d.a = std::move(a);
  d.y = std::move(y);
  d.column_names = std::move(column_names);
  d.dropped_rows = dropped_rows;
  return d;
}

Dataset load_csv(const std::filesystem::path& path, const std::string& treatment_col,
                 const std::string& outcome_col,
                 const std::vector<std::string>& covariate_cols) {
  const csv::Table table = csv::read_file(path);

  auto find_col = [&](const std::string& name) {
    auto it = std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end()) {
      throw SchemaError("column '" + name + "' not found in " + path.string());
    }
    return static_cast<std::size_t>(it - table.header.begin());
  };

  const std::size_t a_idx = find_col(treatment_col);
  const std::size_t y_idx = find_col(outcome_col);
  std::vector<std::size_t> x_idx;
  x_idx.reserve(covariate_cols.size());
  for (const auto& name : covariate_cols) x_idx.push_back(find_col(name));

  std::vector<double> a_vals, y_vals;
  std::vector<double> x_vals;  // row-major staging
  std::size_t dropped = 0;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t row_no = r + 2;  // 1-based, counting the header
    auto field = [&](std::size_t c) -> const std::string& {
      static const std::string empty;
      return c < row.size() ? row[c] : empty;
    };

    bool missing = csv::is_missing(field(a_idx)) || csv::is_missing(field(y_idx));
    for (std::size_t c : x_idx) missing = missing || csv::is_missing(field(c));
    if (missing) {
      ++dropped;
      continue;
    }

    const double a = parse_number(field(a_idx), row_no, treatment_col);
    if (!is_binary01(a)) {
      throw ParseError("row " + std::to_string(row_no) + ": treatment value '" +
                       field(a_idx) + "' is not 0/1");
    }
    const double y = parse_number(field(y_idx), row_no, outcome_col);
    if (!is_binary01(y)) {
      throw ParseError("row " + std::to_string(row_no) + ": outcome value '" +
                       field(y_idx) + "' is not 0/1");
    }
    a_vals.push_back(a);
    y_vals.push_back(y);
    for (std::size_t j = 0; j < x_idx.size(); ++j) {
      x_vals.push_back(parse_number(field(x_idx[j]), row_no, covariate_cols[j]));
    }
  }

  const std::size_t n = a_vals.size();
  if (n == 0) throw EmptyInputError("no usable rows in " + path.string());
  const std::size_t p = covariate_cols.size();

  Eigen::MatrixXd x(n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) x(i, j) = x_vals[i * p + j];
  }
  Eigen::VectorXd a = Eigen::Map<Eigen::VectorXd>(a_vals.data(), n);
  Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(y_vals.data(), n);
  return make_dataset(std::move(x), std::move(a), std::move(y), covariate_cols, dropped);
}

void write_csv(const Dataset& d, const std::filesystem::path& path,
               const std::string& treatment_col, const std::string& outcome_col) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write file: " + path.string());

  for (Eigen::Index j = 0; j < d.p(); ++j) {
    const std::string name =
        d.column_names.empty() ? "x" + std::to_string(j + 1) : d.column_names[j];
    out << csv::escape_field(name) << ',';
  }
  out << csv::escape_field(treatment_col) << ',' << csv::escape_field(outcome_col) << '\n';

  for (Eigen::Index i = 0; i < d.n(); ++i) {
    for (Eigen::Index j = 0; j < d.p(); ++j) out << csv::format_double(d.x(i, j)) << ',';
    out << csv::format_double(d.a[i]) << ',' << csv::format_double(d.y[i]) << '\n';
  }
}

Dataset expand_interactions(const Dataset& d, const std::vector<std::string>& continuous_cols,
                            const std::vector<std::string>& discrete_cols) {
  std::set<std::string> cont(continuous_cols.begin(), continuous_cols.end());
  for (const auto& name : discrete_cols) {
    if (cont.count(name)) {
      throw ArgumentError("column '" + name + "' listed as both continuous and discrete");
    }
  }

  auto index_of = [&](const std::string& name) {
    const int idx = d.column_index(name);
    if (idx < 0) throw ArgumentError("column '" + name + "' not present in dataset");
    return idx;
  };

  const Eigen::Index extra =
      static_cast<Eigen::Index>(continuous_cols.size() * discrete_cols.size());
  Eigen::MatrixXd x(d.n(), d.p() + extra);
  x.leftCols(d.p()) = d.x;
  std::vector<std::string> names = d.column_names;

  Eigen::Index col = d.p();
  for (const auto& c : continuous_cols) {
    const int ci = index_of(c);
    for (const auto& g : discrete_cols) {
      const int gi = index_of(g);
      x.col(col) = d.x.col(ci).cwiseProduct(d.x.col(gi));
      names.push_back(c + ":" + g);
      ++col;
    }
  }
  return make_dataset(std::move(x), d.a, d.y, std::move(names), d.dropped_rows);
}

}  // namespace attrib
