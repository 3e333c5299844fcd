#include "attrib/truth.hpp"

#include <cstdlib>
#include <fstream>

#include "attrib/csv.hpp"
#include "attrib/errors.hpp"
#include "attrib/rng.hpp"

namespace attrib {

double simulate_true_value(const DgpSpec& spec, Estimand estimand, std::size_t samples,
                           std::uint64_t seed) {
  if (samples == 0) throw ArgumentError("true_value needs samples >= 1");

  RandomStream stream(StreamKey::root(seed).child("truth").child(
      static_cast<std::uint64_t>(spec.case_id)));

  const double sd = std::sqrt(spec.cov_scale);
  Eigen::RowVectorXd row(spec.p);
  std::size_t hits = 0, conditioning = 0;

  for (std::size_t s = 0; s < samples; ++s) {
    for (int j = 0; j < spec.p; ++j) row[j] = sd * stream.normal();
    const double a = stream.bernoulli(spec.propensity(row)) ? 1.0 : 0.0;
    double y0 = stream.bernoulli(spec.mu0(row)) ? 1.0 : 0.0;
    const double y1 = stream.bernoulli(spec.mu1(row)) ? 1.0 : 0.0;
    if (spec.monotonicity_adjust && y1 == 0.0) y0 = 0.0;

    if (estimand == Estimand::PN) {
      if (a == 1.0 && y1 == 1.0) {
        ++conditioning;
        if (y0 == 0.0) ++hits;
      }
    } else {
      if (a == 0.0 && y0 == 0.0) {
        ++conditioning;
        if (y1 == 1.0) ++hits;
      }
    }
  }
  if (conditioning == 0) {
    throw DegenerateTruthError("conditioning event never occurred in " +
                               std::to_string(samples) + " draws");
  }
  return static_cast<double>(hits) / static_cast<double>(conditioning);
}

std::filesystem::path truth_cache_dir() {
  if (const char* dir = std::getenv("ATTRIB_CACHE_DIR")) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME")) {
    return std::filesystem::path(xdg) / "attrib";
  }
  if (const char* home = std::getenv("HOME")) {
    return std::filesystem::path(home) / ".cache" / "attrib";
  }
  return std::filesystem::path(".attrib-cache");
}

double true_value(const DgpSpec& spec, Estimand estimand, std::size_t samples,
                  std::uint64_t seed) {
  const std::filesystem::path dir = truth_cache_dir();
  const std::string key = "truth_case" + std::to_string(spec.case_id) +
                          (estimand == Estimand::PN ? "_pn" : "_ps") + "_s" +
                          std::to_string(samples) + "_seed" + std::to_string(seed) + ".txt";
  const std::filesystem::path file = dir / key;

  {
    std::ifstream in(file);
    double cached = 0.0;
    if (in && (in >> cached)) return cached;
  }

  const double value = simulate_true_value(spec, estimand, samples, seed);

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!ec) {
    const std::filesystem::path tmp = file.string() + ".tmp";
    std::ofstream out(tmp);
    if (out) {
      out << csv::format_double(value) << '\n';
      out.close();
      std::filesystem::rename(tmp, file, ec);  // atomic against racing readers
    }
  }
  return value;
}

}  // namespace attrib
