#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "attrib/csv.hpp"
#include "attrib/dataset.hpp"
#include "attrib/errors.hpp"
#include "attrib/moments.hpp"
#include "attrib/rng.hpp"
#include "test_support.hpp"

using namespace attrib;

namespace {

std::filesystem::path write_file(const std::string& name, const std::string& content) {
  const auto path = test_support::scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("load_csv ingests a plain file") {
  const auto path = write_file("plain.csv", "x1,a,y\n1.5,1,1\n-2,0,0\n0.25,1,0\n3,0,1\n");
  const Dataset d = load_csv(path, "a", "y", {"x1"});
  CHECK(d.n() == 4);
  CHECK(d.p() == 1);
  CHECK(d.dropped_rows == 0);
  CHECK(d.x(0, 0) == 1.5);
  CHECK(d.a[0] == 1.0);
  CHECK(d.y[3] == 1.0);
}

TEST_CASE("load_csv drops and counts rows with missing tokens") {
  const auto path = write_file("missing.csv", "x1,a,y\n1,1,1\nNA,0,0\n2,1,0\n3,0,1\n");
  const Dataset d = load_csv(path, "a", "y", {"x1"});
  CHECK(d.n() == 3);
  CHECK(d.dropped_rows == 1);
}

TEST_CASE("load_csv error paths") {
  const auto path = write_file("bad.csv", "x1,a,y\n1,1,1\n2,2,0\n");
  CHECK_THROWS_AS(load_csv(path, "a", "y", {"zz"}), SchemaError);
  try {
    load_csv(path, "a", "y", {"x1"});
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
  const auto empty = write_file("empty.csv", "");
  CHECK_THROWS_AS(load_csv(empty, "a", "y", {"x1"}), EmptyInputError);
}

TEST_CASE("load_csv handles a fifteen-column risk-factor table") {
  std::string header =
      "case,region,smoking,stress,exercise,diabetes,heart_disease,hypertension,sex,age,whr,"
      "alcohol,diet,lipids,education";
  std::string body =
      "\n1,3,1,0,1,0,0,1,0,62,0.95,2,48.5,0.9,2"
      "\n0,5,0,1,0,1,0,0,1,51,0.88,1,62.0,0.8,3"
      "\n1,1,0,0,1,0,1,1,0,70,1.02,3,39.0,1.1,1";
  const auto path = write_file("risk.csv", header + body + "\n");
  const std::vector<std::string> covs = {"region", "smoking",  "stress", "exercise",
                                         "diabetes", "heart_disease", "sex", "age",
                                         "whr",     "alcohol",  "diet",   "lipids",
                                         "education"};
  const Dataset d = load_csv(path, "hypertension", "case", covs);
  CHECK(d.p() == 13);
  CHECK(d.n() == 3);
}

TEST_CASE("csv quoting round-trips") {
  const csv::Table t = csv::parse("name,\"va,lue\"\n\"a\"\"b\",2\n");
  REQUIRE(t.header.size() == 2);
  CHECK(t.header[1] == "va,lue");
  CHECK(t.rows[0][0] == "a\"b");
}

TEST_CASE("write_csv then load_csv is the identity") {
  RandomStream rng(StreamKey::root(77));
  Eigen::MatrixXd x(6, 3);
  Eigen::VectorXd a(6), y(6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = 1e3 * rng.normal();
    a[i] = i % 2;
    y[i] = rng.bernoulli(0.5);
  }
  const Dataset d = make_dataset(x, a, y, {"c1", "c2", "c3"});
  const auto path = test_support::scratch_dir() / "roundtrip.csv";
  write_csv(d, path, "treat", "out");
  const Dataset back = load_csv(path, "treat", "out", {"c1", "c2", "c3"});
  REQUIRE(back.n() == d.n());
  CHECK((back.x - d.x).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((back.a - d.a).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((back.y - d.y).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("make_dataset enforces container invariants") {
  Eigen::MatrixXd x(2, 1);
  x << 0.0, 1.0;
  Eigen::VectorXd a(2), y(2);
  a << 0, 1;
  y << 1, 0;
  CHECK_NOTHROW(make_dataset(x, a, y));

  Eigen::VectorXd bad_a(2);
  bad_a << 0.5, 1;
  CHECK_THROWS_AS(make_dataset(x, bad_a, y), ArgumentError);

  Eigen::MatrixXd bad_x(2, 1);
  bad_x << std::nan(""), 0.0;
  CHECK_THROWS_AS(make_dataset(bad_x, a, y), ArgumentError);

  Eigen::VectorXd short_y(1);
  short_y << 1;
  CHECK_THROWS_AS(make_dataset(x, a, short_y), ArgumentError);
}

TEST_CASE("expand_interactions appends product columns") {
  Eigen::MatrixXd x(3, 2);
  x << 1, 2, 3, 4, 5, 6;
  Eigen::VectorXd a(3), y(3);
  a << 1, 0, 1;
  y << 0, 1, 1;
  const Dataset d = make_dataset(x, a, y, {"c", "g"});

  const Dataset e = expand_interactions(d, {"c"}, {"g"});
  CHECK(e.p() == 3);
  CHECK(e.column_names[2] == "c:g");
  CHECK(e.x(1, 2) == 12.0);

  SUBCASE("zero continuous column gives a zero product") {
    Eigen::MatrixXd xz = x;
    xz.col(0).setZero();
    const Dataset dz = make_dataset(xz, a, y, {"c", "g"});
    const Dataset ez = expand_interactions(dz, {"c"}, {"g"});
    CHECK(ez.x.col(2).lpNorm<Eigen::Infinity>() == 0.0);
  }

  SUBCASE("overlapping lists are rejected") {
    CHECK_THROWS_AS(expand_interactions(d, {"c"}, {"c"}), ArgumentError);
    CHECK_THROWS_AS(expand_interactions(d, {"nope"}, {"g"}), ArgumentError);
  }
}

TEST_CASE("expand_interactions matches the elementwise product oracle") {
  RandomStream rng(StreamKey::root(31));
  const int n = 17;
  Eigen::MatrixXd x(n, 5);
  Eigen::VectorXd a(n), y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < 5; ++j) x(i, j) = rng.normal();
    a[i] = rng.bernoulli(0.5);
    y[i] = rng.bernoulli(0.5);
  }
  const Dataset d = make_dataset(x, a, y, {"u", "v", "w", "s", "t"});
  const Dataset e = expand_interactions(d, {"u", "v", "w"}, {"s", "t"});
  REQUIRE(e.p() == 11);

  // Direct elementwise recomputation, column by column.
  int col = 5;
  for (int ci : {0, 1, 2}) {
    for (int gi : {3, 4}) {
      for (int i = 0; i < n; ++i) {
        CHECK(e.x(i, col) == x(i, ci) * x(i, gi));
      }
      ++col;
    }
  }
}

TEST_CASE("moment functionals of constant predictions") {
  NuisanceFit nf;
  nf.e_hat = Eigen::VectorXd::Constant(10, 0.5);
  nf.mu0_hat = Eigen::VectorXd::Constant(10, 0.2);
  nf.mu1_hat = Eigen::VectorXd::Constant(10, 0.6);
  const MomentFunctionals f = moment_functionals(nf);
  CHECK(f.mu0 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(f.mu1 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(f.mu == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(f.bar_mu0 == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(f.bar_mu1 == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(f.bar_mu == doctest::Approx(0.06).epsilon(1e-12));
  CHECK(f.barbar_mu0 == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(f.barbar_mu1 == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("moment functionals vanish when the propensity is one") {
  NuisanceFit nf;
  nf.e_hat = Eigen::VectorXd::Constant(4, 1.0);
  nf.mu0_hat = Eigen::VectorXd::Constant(4, 0.3);
  nf.mu1_hat = Eigen::VectorXd::Constant(4, 0.9);
  const MomentFunctionals f = moment_functionals(nf);
  CHECK(f.bar_mu0 == 0.0);
  CHECK(f.bar_mu1 == 0.0);
  CHECK(f.bar_mu == 0.0);
  CHECK(f.barbar_mu0 == 0.0);
  CHECK(f.barbar_mu1 == 0.0);
}

TEST_CASE("moment functionals match a direct recomputation") {
  RandomStream rng(StreamKey::root(99));
  const int n = 10;
  NuisanceFit nf;
  nf.e_hat.resize(n);
  nf.mu0_hat.resize(n);
  nf.mu1_hat.resize(n);
  for (int i = 0; i < n; ++i) {
    nf.e_hat[i] = 0.05 + 0.9 * rng.uniform();
    nf.mu0_hat[i] = rng.uniform();
    nf.mu1_hat[i] = rng.uniform();
  }
  const MomentFunctionals f = moment_functionals(nf);

  double mu0 = 0, mu1 = 0, mu = 0, b0 = 0, b1 = 0, b = 0, bb0 = 0, bb1 = 0;
  for (int i = 0; i < n; ++i) {
    const double e = nf.e_hat[i], m0 = nf.mu0_hat[i], m1 = nf.mu1_hat[i];
    mu0 += e * m0;
    mu1 += e * m1;
    mu += e * m0 * m1;
    b0 += (1 - e) * m0;
    b1 += (1 - e) * m1;
    b += (1 - e) * m0 * m1;
    bb0 += (1 - e) * (1 - m0);
    bb1 += (1 - e) * (1 - m1);
  }
  CHECK(f.mu0 == doctest::Approx(mu0 / n).epsilon(1e-14));
  CHECK(f.mu1 == doctest::Approx(mu1 / n).epsilon(1e-14));
  CHECK(f.mu == doctest::Approx(mu / n).epsilon(1e-14));
  CHECK(f.bar_mu0 == doctest::Approx(b0 / n).epsilon(1e-14));
  CHECK(f.bar_mu1 == doctest::Approx(b1 / n).epsilon(1e-14));
  CHECK(f.bar_mu == doctest::Approx(b / n).epsilon(1e-14));
  CHECK(f.barbar_mu0 == doctest::Approx(bb0 / n).epsilon(1e-14));
  CHECK(f.barbar_mu1 == doctest::Approx(bb1 / n).epsilon(1e-14));

  // mu <= min(mu0, mu1) whenever predictions are probabilities.
  CHECK(f.mu <= f.mu0);
  CHECK(f.mu <= f.mu1);
}
