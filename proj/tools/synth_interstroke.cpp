// Writes a synthetic case-control CSV with the stroke-risk-factor schema
// (case, region, six binary exposures, demographics, lifestyle scores) for
// end-to-end runs; the real study data is not redistributable.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "attrib/logistic.hpp"
#include "attrib/rng.hpp"

namespace {

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic stroke-risk CSV"};
  std::string out = "interstroke_synth.csv";
  std::uint64_t seed = 20240101;
  long rows = 13712;
  app.add_option("--out", out, "output CSV path");
  app.add_option("--rows", rows, "number of rows (default 13712)");
  app.add_option("--seed", seed, "random seed");
  CLI11_PARSE(app, argc, argv);

  std::ofstream file(out, std::ios::binary);
  if (!file) {
    std::cerr << "cannot write " << out << '\n';
    return 1;
  }

  attrib::RandomStream rng(attrib::StreamKey::root(seed).child("interstroke"));
  file << "case,region,smoking,stress,exercise,diabetes,heart_disease,hypertension,"
          "sex,age,whr,alcohol,diet,lipids,education\n";

  char line[256];
  for (long i = 0; i < rows; ++i) {
    const int region = 1 + static_cast<int>(rng.below(7));
    const int sex = rng.bernoulli(0.45) ? 1 : 0;
    const int age = static_cast<int>(clamp(std::round(55.0 + 12.0 * rng.normal()), 20, 95));
    const double whr = clamp(0.92 + 0.08 * rng.normal(), 0.60, 1.40);
    const double u_alc = rng.uniform();
    const int alcohol = u_alc < 0.5 ? 1 : (u_alc < 0.8 ? 2 : 3);
    const double diet = clamp(55.0 + 15.0 * rng.normal(), 0.0, 100.0);
    const double lipids = clamp(0.85 + 0.25 * rng.normal(), 0.20, 1.90);
    const double u_edu = rng.uniform();
    const int education = u_edu < 0.25 ? 1 : (u_edu < 0.55 ? 2 : (u_edu < 0.85 ? 3 : 4));

    const double age_c = age - 55.0;
    const double whr_c = whr - 0.92;
    const int smoking =
        rng.bernoulli(attrib::expit(-0.9 + 0.015 * age_c + 0.5 * (sex == 0) + 0.05 * region))
            ? 1
            : 0;
    const int stress = rng.bernoulli(attrib::expit(-0.6 + 0.3 * whr_c)) ? 1 : 0;
    const int exercise = rng.bernoulli(attrib::expit(0.3 + 0.010 * age_c)) ? 1 : 0;
    const int diabetes = rng.bernoulli(attrib::expit(-1.9 + 0.030 * age_c + 1.2 * whr_c)) ? 1 : 0;
    const int heart = rng.bernoulli(attrib::expit(-1.9 + 0.040 * age_c)) ? 1 : 0;
    const int hypertension =
        rng.bernoulli(attrib::expit(-0.7 + 0.035 * age_c + 0.8 * whr_c)) ? 1 : 0;

    const double risk = -0.95 + 0.85 * hypertension + 0.60 * heart + 0.50 * smoking +
                        0.35 * diabetes + 0.28 * stress + 0.32 * exercise + 0.018 * age_c +
                        1.10 * whr_c + 0.25 * (lipids - 0.85) - 0.004 * (diet - 55.0) +
                        0.06 * (alcohol - 1) - 0.05 * (education - 2.5) +
                        0.02 * (region - 4);
    const int stroke = rng.bernoulli(attrib::expit(risk)) ? 1 : 0;

    std::snprintf(line, sizeof(line), "%d,%d,%d,%d,%d,%d,%d,%d,%d,%d,%.3f,%d,%.1f,%.3f,%d\n",
                  stroke, region, smoking, stress, exercise, diabetes, heart, hypertension,
                  sex, age, whr, alcohol, diet, lipids, education);
    file << line;
  }
  return 0;
}
