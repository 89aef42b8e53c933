#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobforge/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <string>
#include <vector>

using namespace frobforge;

namespace {

PotentialExpr cubic_identity_potential() {
  // F = 1/2 t1^2 t2, the minimal potential satisfying the identity axiom for
  // the two-dimensional antidiagonal pairing.
  PotentialExpr p;
  p.dim = 2;
  PotentialTerm term;
  term.coeff = RationalComplex(Rational(1, 2));
  term.exponents = {2, 1};
  term.exp_form = {Rational(0), Rational(0)};
  p.terms.push_back(term);
  return p;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(format_rational(Rational(22, 4)) == "11/2");
  CHECK(format_rational(Rational(-3)) == "-3");
  CHECK(factorial(5) == 120);
  CHECK(factorial(0) == 1);
  CHECK_THROWS_AS(parse_rational("1/0"), std::exception);
}

TEST_CASE("catalog lists the three builtin models") {
  const auto names = catalog_names();
  CHECK(names.size() == 3);
  for (const char* n : {"P1", "P2", "poly2d"}) {
    CHECK(std::find(names.begin(), names.end(), std::string(n)) != names.end());
  }
  CHECK_THROWS_AS(builtin_catalog("nosuch", 8), ModelError);
}

TEST_CASE("P1 model structure and exact potential") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  CHECK(m.dim() == 2);
  // the exponential potential is exact, so no truncation is recorded
  CHECK(m.truncation_degree() == 0);
  CHECK(m.eta()(0, 1) == std::complex<double>(1.0, 0.0));
  CHECK(m.eta()(0, 0) == std::complex<double>(0.0, 0.0));
  CHECK(m.b()[0] == Rational(0));
  CHECK(m.b()[1] == Rational(1));
  CHECK(m.c_matrix()[0][1] == Rational(2));

  Eigen::VectorXcd t(2);
  t << std::complex<double>(0.3, 0.0), std::complex<double>(0.7, 0.0);
  const double expected = 0.5 * 0.3 * 0.3 * 0.7 + std::exp(0.7);
  CHECK(std::abs(m.potential().evaluate(t) - expected) < 1e-14);
}

TEST_CASE("P2 model structure") {
  const FrobeniusModel m = builtin_catalog("P2", 8);
  CHECK(m.dim() == 3);
  CHECK(m.truncation_degree() == 8);
  CHECK(m.b()[0] == Rational(-1, 2));
  CHECK(m.b()[1] == Rational(1, 2));
  CHECK(m.b()[2] == Rational(3, 2));
  CHECK(m.c_matrix()[0][1] == Rational(3));
  CHECK(m.c_matrix()[1][2] == Rational(3));
}

TEST_CASE("plane instanton numbers from the series oracle") {
  // Frozen goldens; only N_1 = 1 seeds the recursion. counts[d] = N_d.
  const auto n = plane_instanton_numbers(6);
  REQUIRE(n.size() == 7);
  CHECK(n[1] == Rational(1));
  CHECK(n[2] == Rational(1));
  CHECK(n[3] == Rational(12));
  CHECK(n[4] == Rational(620));
  CHECK(n[5] == Rational(87304));
  CHECK(n[6] == Rational(26312976));
}

TEST_CASE("WDVV validation passes on catalog models") {
  std::vector<Eigen::VectorXcd> p1_points;
  for (double s : {-0.4, 0.0, 0.5}) {
    Eigen::VectorXcd t(2);
    t << std::complex<double>(0.1 * s, 0.0), std::complex<double>(s, 0.0);
    p1_points.push_back(t);
  }
  const WdvvReport p1 = validate_wdvv(builtin_catalog("P1", 8), p1_points, 1e-10);
  CHECK(p1.pass);
  CHECK(p1.max_residual < 1e-12);

  std::vector<Eigen::VectorXcd> p2_points;
  for (double s : {-0.2, 0.1, 0.3}) {
    Eigen::VectorXcd t(3);
    t << std::complex<double>(0.0, 0.0), std::complex<double>(s, 0.0),
        std::complex<double>(0.1, 0.0);
    p2_points.push_back(t);
  }
  const WdvvReport p2 = validate_wdvv(builtin_catalog("P2", 8), p2_points, 1e-9);
  CHECK(p2.pass);
}

TEST_CASE("WDVV failure at low truncation is attributed to the series cut") {
  std::vector<Eigen::VectorXcd> points;
  Eigen::VectorXcd t(3);
  t << std::complex<double>(0.0, 0.0), std::complex<double>(0.4, 0.0),
      std::complex<double>(0.5, 0.0);
  points.push_back(t);
  const WdvvReport rep = validate_wdvv(builtin_catalog("P2", 4), points, 1e-9);
  CHECK_FALSE(rep.pass);
  CHECK(rep.truncation_dominated);
  CHECK(rep.worst_point == 0);
}

TEST_CASE("model JSON round trip") {
  const FrobeniusModel m = builtin_catalog("P2", 6);
  const FrobeniusModel back = load_model(emit_model(m));
  CHECK(back.dim() == m.dim());
  CHECK(back.truncation_degree() == m.truncation_degree());
  CHECK((back.eta() - m.eta()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(back.b() == m.b());
  Eigen::VectorXcd t(3);
  t << std::complex<double>(0.05, 0.0), std::complex<double>(-0.2, 0.0),
      std::complex<double>(0.12, 0.0);
  CHECK(std::abs(back.potential().evaluate(t) - m.potential().evaluate(t)) < 1e-14);
}

TEST_CASE("model file loading matches the builtin catalog") {
  const FrobeniusModel file = load_model_file(std::string(FROBFORGE_DATA_DIR) + "/p1_model.json");
  const FrobeniusModel cat = builtin_catalog("P1", 8);
  CHECK(file.name() == cat.name());
  CHECK(file.dim() == cat.dim());
  Eigen::VectorXcd t(2);
  t << std::complex<double>(0.2, 0.1), std::complex<double>(-0.3, 0.0);
  CHECK(std::abs(file.potential().evaluate(t) - cat.potential().evaluate(t)) < 1e-14);
  CHECK_THROWS_AS(load_model_file("/nonexistent/model.json"), ModelError);
}

TEST_CASE("model validation rejects inconsistent definitions") {
  Eigen::MatrixXcd eta(2, 2);
  eta << 0, 1, 1, 0;
  std::vector<Rational> b = {Rational(0), Rational(1)};
  std::vector<std::vector<Rational>> c = {{Rational(0), Rational(0)},
                                          {Rational(0), Rational(0)}};
  const PotentialExpr pot = cubic_identity_potential();

  SUBCASE("valid baseline") {
    CHECK_NOTHROW(FrobeniusModel("ok", 2, eta, b, c, pot, 0));
  }
  SUBCASE("asymmetric eta") {
    Eigen::MatrixXcd bad = eta;
    bad(0, 1) = 2.0;
    CHECK_THROWS_WITH_AS(FrobeniusModel("bad", 2, bad, b, c, pot, 0),
                         doctest::Contains("eta must be symmetric"), ModelError);
  }
  SUBCASE("eta pairing violating degree duality") {
    std::vector<Rational> bb = {Rational(0), Rational(0)};
    CHECK_THROWS_WITH_AS(FrobeniusModel("bad", 2, eta, bb, c, pot, 0),
                         doctest::Contains("b_a + b_c = 1"), ModelError);
  }
  SUBCASE("c_matrix entry violating grading shift") {
    auto cc = c;
    cc[1][0] = Rational(5);
    CHECK_THROWS_WITH_AS(FrobeniusModel("bad", 2, eta, b, cc, pot, 0),
                         doctest::Contains("b_c - b_a = 1"), ModelError);
  }
  SUBCASE("identity axiom violation") {
    PotentialExpr p = pot;
    PotentialTerm quad;
    quad.coeff = RationalComplex(Rational(1));
    quad.exponents = {3, 0};
    quad.exp_form = {Rational(0), Rational(0)};
    p.terms.push_back(quad);
    CHECK_THROWS_WITH_AS(FrobeniusModel("bad", 2, eta, b, c, p, 0),
                         doctest::Contains("identity axiom"), ModelError);
  }
  SUBCASE("exponential dependence on t1 rejected") {
    PotentialExpr p = pot;
    PotentialTerm expterm;
    expterm.coeff = RationalComplex(Rational(1));
    expterm.exponents = {0, 0};
    expterm.exp_form = {Rational(1), Rational(0)};
    p.terms.push_back(expterm);
    CHECK_THROWS_AS(FrobeniusModel("bad", 2, eta, b, c, p, 0), ModelError);
  }
}

TEST_CASE("potential differentiation is exact") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  // d/dt2 of (1/2 t1^2 t2 + e^{t2}) = 1/2 t1^2 + e^{t2}
  const PotentialExpr d2 = m.potential().derivative(1);
  Eigen::VectorXcd t(2);
  t << std::complex<double>(1.5, 0.0), std::complex<double>(-0.25, 0.0);
  const double expected = 0.5 * 1.5 * 1.5 + std::exp(-0.25);
  CHECK(std::abs(d2.evaluate(t) - expected) < 1e-14);

  // third derivative d1 d1 d2 is the constant eta_{12} = 1
  const PotentialExpr d112 = m.potential().derivative(0).derivative(0).derivative(1);
  Eigen::VectorXcd z = Eigen::VectorXcd::Zero(2);
  CHECK(std::abs(d112.evaluate(z) - 1.0) < 1e-15);
}
