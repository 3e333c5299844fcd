#include "attrib/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

#include "attrib/crossfit.hpp"
#include "attrib/csv.hpp"
#include "attrib/dgp.hpp"
#include "attrib/errors.hpp"
#include "attrib/rng.hpp"
#include "attrib/truth.hpp"
#include "ratio_terms.hpp"

namespace attrib {

namespace {

bool needs_estimated_propensity(Method m) {
  return !method_requires_known_e(m);
}

struct RepOutcome {
  std::vector<double> value;  // per estimator, NaN on failure
  std::vector<double> se;     // NaN when the method has no plug-in SE
};

std::string fmt(double v, const char* spec) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace

std::vector<MetricsRow> run_study(const StudyConfig& config) {
  if (config.reps < 1) throw ArgumentError("run_study needs reps >= 1");
  if (config.case_ids.empty() || config.estimators.empty() || config.n_values.empty()) {
    throw ArgumentError("run_study needs at least one case, estimator and sample size");
  }

  const std::size_t m = config.estimators.size();
  bool want_estimated = false, want_known = false;
  for (Method est : config.estimators) {
    (needs_estimated_propensity(est) ? want_estimated : want_known) = true;
  }

  int workers = config.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }

  std::vector<MetricsRow> table;
  const StreamKey study_root = StreamKey::root(config.seed).child("study");

  for (int case_id : config.case_ids) {
    const DgpSpec spec = case_registry(case_id);

    // Ground truth per estimand, resolved before the replication loop.
    double truth_pn = 0.0, truth_ps = 0.0;
    bool have_pn = false, have_ps = false;
    for (Method est : config.estimators) {
      if (method_estimand(est) == Estimand::PN && !have_pn) {
        truth_pn = true_value(spec, Estimand::PN, config.truth_samples, config.seed);
        have_pn = true;
      }
      if (method_estimand(est) == Estimand::PS && !have_ps) {
        truth_ps = true_value(spec, Estimand::PS, config.truth_samples, config.seed);
        have_ps = true;
      }
    }

    for (int n : config.n_values) {
      std::vector<RepOutcome> outcomes(config.reps);
      const StreamKey cell_key = study_root.child(static_cast<std::uint64_t>(case_id))
                                     .child(static_cast<std::uint64_t>(n));

      auto run_block = [&](int first, int last) {
        for (int r = first; r < last; ++r) {
          RepOutcome& out = outcomes[r];
          out.value.assign(m, std::numeric_limits<double>::quiet_NaN());
          out.se.assign(m, std::numeric_limits<double>::quiet_NaN());

          const StreamKey rep_key = cell_key.child(static_cast<std::uint64_t>(r));
          GeneratedSample sample;
          try {
            sample = generate_case(spec, n, rep_key.child("data").value);
          } catch (const Error&) {
            continue;  // every estimator fails this replication
          }

          // Main-effects logistic nuisances, as in the replication protocol.
          CrossFitOptions options;
          options.model = ModelKind::Logistic;

          std::optional<NuisanceFit> nf_est, nf_known;
          if (want_estimated) {
            try {
              nf_est = cross_fit(sample.data, config.folds, options, std::nullopt,
                                 rep_key.child("folds").value);
            } catch (const Error&) {
            }
          }
          if (want_known) {
            try {
              nf_known = cross_fit(sample.data, config.folds, options, sample.e_true,
                                   rep_key.child("folds").value);
            } catch (const Error&) {
            }
          }

          for (std::size_t j = 0; j < m; ++j) {
            const Method est = config.estimators[j];
            const std::optional<NuisanceFit>& nf =
                needs_estimated_propensity(est) ? nf_est : nf_known;
            if (!nf) continue;
            try {
              const detail::RatioTerms terms = detail::ratio_terms(est, sample.data, *nf);
              out.value[j] = terms.value();
              if (method_has_plugin_se(est)) {
                out.se[j] = terms.plugin_sigma() / std::sqrt(static_cast<double>(n));
              }
            } catch (const Error&) {
            }
          }
        }
      };

      if (workers == 1 || config.reps == 1) {
        run_block(0, config.reps);
      } else {
        std::vector<std::thread> pool;
        const int block = (config.reps + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
          const int first = w * block;
          const int last = std::min(config.reps, first + block);
          if (first >= last) break;
          pool.emplace_back(run_block, first, last);
        }
        for (auto& th : pool) th.join();
      }

      // Reduce in replication order so sums are worker-count independent.
      for (std::size_t j = 0; j < m; ++j) {
        const Method est = config.estimators[j];
        const double truth = method_estimand(est) == Estimand::PN ? truth_pn : truth_ps;

        MetricsRow row;
        row.case_id = case_id;
        row.estimator = est;
        row.n = n;
        row.reps = config.reps;
        row.truth = truth;

        std::vector<double> values;
        values.reserve(config.reps);
        double se_sum = 0.0;
        int covered = 0, with_se = 0;
        for (int r = 0; r < config.reps; ++r) {
          const double v = outcomes[r].value[j];
          if (std::isnan(v)) continue;
          values.push_back(v);
          const double se = outcomes[r].se[j];
          if (!std::isnan(se)) {
            ++with_se;
            se_sum += se;
            if (v - kZ95 * se <= truth && truth <= v + kZ95 * se) ++covered;
          }
        }
        row.failures = config.reps - static_cast<int>(values.size());

        if (!values.empty()) {
          double mean = 0.0;
          for (double v : values) mean += v;
          mean /= static_cast<double>(values.size());
          row.bias = mean - truth;
          if (values.size() > 1) {
            double ss = 0.0;
            for (double v : values) ss += (v - mean) * (v - mean);
            row.sse = std::sqrt(ss / static_cast<double>(values.size() - 1));
          }
        }
        if (with_se > 0) {
          row.ese = se_sum / static_cast<double>(with_se);
          row.cp95 = static_cast<double>(covered) / static_cast<double>(with_se);
        }
        table.push_back(row);
      }
    }
  }
  return table;
}

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
  std::ostringstream out;
  out << "case,estimator,n,reps,bias,sse,ese,cp95,failures\n";
  for (const auto& r : rows) {
    out << r.case_id << ',' << method_name(r.estimator) << ',' << r.n << ',' << r.reps << ','
        << fmt(r.bias, "%.6f") << ',' << fmt(r.sse, "%.6f") << ','
        << (r.has_se() ? fmt(r.ese, "%.6f") : "NA") << ','
        << (r.has_se() ? fmt(r.cp95, "%.4f") : "NA") << ',' << r.failures << '\n';
  }
  return out.str();
}

void write_metrics_csv(const std::vector<MetricsRow>& rows,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write file: " + path.string());
  out << metrics_to_csv(rows);
}

std::vector<MetricsRow> read_metrics_csv(const std::filesystem::path& path) {
  const csv::Table t = csv::read_file(path);
  const std::vector<std::string> expected = {"case", "estimator", "n",    "reps", "bias",
                                             "sse",  "ese",       "cp95", "failures"};
  if (t.header != expected) {
    throw SchemaError("metrics csv header does not match the simulate output layout");
  }
  std::vector<MetricsRow> rows;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& rec = t.rows[i];
    if (rec.size() != expected.size()) {
      throw ParseError("metrics csv row " + std::to_string(i + 2) + " is malformed");
    }
    MetricsRow r;
    r.case_id = std::stoi(rec[0]);
    const auto est = method_from_name(rec[1]);
    if (!est) throw ParseError("unknown estimator '" + rec[1] + "'");
    r.estimator = *est;
    r.n = std::stoi(rec[2]);
    r.reps = std::stoi(rec[3]);
    r.bias = std::stod(rec[4]);
    r.sse = std::stod(rec[5]);
    r.ese = csv::is_missing(rec[6]) ? -1.0 : std::stod(rec[6]);
    r.cp95 = csv::is_missing(rec[7]) ? -1.0 : std::stod(rec[7]);
    r.failures = std::stoi(rec[8]);
    rows.push_back(r);
  }
  return rows;
}

std::string render_metrics_table(const std::vector<MetricsRow>& rows) {
  std::vector<int> ns;
  for (const auto& r : rows) {
    if (std::find(ns.begin(), ns.end(), r.n) == ns.end()) ns.push_back(r.n);
  }
  std::sort(ns.begin(), ns.end());

  // (case, estimator) in first-appearance order.
  std::vector<std::pair<int, Method>> groups;
  std::map<std::pair<int, std::string>, const MetricsRow*> cell;
  for (const auto& r : rows) {
    const auto g = std::make_pair(r.case_id, r.estimator);
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) groups.push_back(g);
    cell[{r.case_id, method_name(r.estimator) + "@" + std::to_string(r.n)}] = &r;
  }

  std::ostringstream out;
  std::ostringstream head1, head2;
  head1 << "                        ";
  head2 << "Case  Estimator         ";
  for (int n : ns) {
    char block[64];
    std::snprintf(block, sizeof(block), "| %-28s", ("n = " + std::to_string(n)).c_str());
    head1 << block;
    head2 << "|   Bias    SSE    ESE   CP95 ";
  }
  out << head1.str() << '\n' << head2.str() << '\n';

  bool any_invalid = false;
  for (const auto& [case_id, est] : groups) {
    char lead[40];
    std::snprintf(lead, sizeof(lead), "%-6d%-18s", case_id, method_name(est).c_str());
    out << lead;
    for (int n : ns) {
      auto it = cell.find({case_id, method_name(est) + "@" + std::to_string(n)});
      if (it == cell.end()) {
        out << "|                             ";
        continue;
      }
      const MetricsRow& r = *it->second;
      const std::string ese = r.has_se() ? fmt(r.ese, "%6.3f") : "     -";
      const std::string cp = r.has_se() ? fmt(r.cp95, "%6.3f") : "     -";
      out << "| " << fmt(r.bias, "%6.3f") << ' ' << fmt(r.sse, "%6.3f") << ' ' << ese << ' '
          << cp << (r.valid() ? " " : "!");
      if (!r.valid()) any_invalid = true;
    }
    out << '\n';
  }
  out << "\nBias and SSE are the mean error and standard deviation of the point\n"
         "estimates across replications; ESE is the mean plug-in standard error;\n"
         "CP95 is the coverage proportion of 95% confidence intervals.\n";
  if (any_invalid) {
    out << "Cells marked '!' had more than 5% failed replications.\n";
  }
  return out.str();
}

}  // namespace attrib
