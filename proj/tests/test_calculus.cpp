#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobforge/calculus.hpp"
#include "frobforge/model.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <vector>

using namespace frobforge;

namespace {

Eigen::VectorXcd p1_point() {
  Eigen::VectorXcd t(2);
  t << std::complex<double>(0.15, 0.0), std::complex<double>(-0.3, 0.0);
  return t;
}

Eigen::VectorXcd p2_point() {
  Eigen::VectorXcd t(3);
  t << std::complex<double>(0.0, 0.0), std::complex<double>(0.2, 0.0),
      std::complex<double>(0.1, 0.0);
  return t;
}

}  // namespace

TEST_CASE("three-point correlators match the closed P1 values") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  Eigen::VectorXcd t(2);
  t << std::complex<double>(0.4, 0.0), std::complex<double>(0.9, 0.0);
  // F = 1/2 t1^2 t2 + e^{t2}
  CHECK(std::abs(correlator(m, t, {0, 0, 1}) - 1.0) < 1e-15);
  CHECK(std::abs(correlator(m, t, {0, 0, 0})) < 1e-15);
  CHECK(std::abs(correlator(m, t, {1, 1, 1}) - std::exp(0.9)) < 1e-14);
  CHECK(std::abs(correlator(m, t, {0, 1, 1})) < 1e-15);
}

TEST_CASE("correlators are symmetric in their indices") {
  const FrobeniusModel m = builtin_catalog("P2", 8);
  const Eigen::VectorXcd t = p2_point();
  std::vector<int> idx = {0, 1, 2, 2, 1};
  const Complex base = correlator(m, t, idx);
  std::sort(idx.begin(), idx.end());
  do {
    CHECK(std::abs(correlator(m, t, idx) - base) < 1e-14);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

TEST_CASE("correlator tensor agrees with pointwise evaluation") {
  const FrobeniusModel m = builtin_catalog("P2", 8);
  const Eigen::VectorXcd t = p2_point();
  const CorrelatorTensor tensor = correlator_tensor(m, t, 4);
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      for (int c = b; c < 3; ++c) {
        for (int d = c; d < 3; ++d) {
          CHECK(std::abs(tensor.at({a, b, c, d}) - correlator(m, t, {a, b, c, d})) < 1e-14);
        }
      }
    }
  }
  CHECK_THROWS_AS(correlator_tensor(m, t, 7), CalculusError);
  CHECK_THROWS_AS(tensor.at({0, 1}), CalculusError);
}

TEST_CASE("derivatives of correlators are higher correlators") {
  // d/dt^c <<g_a g_b g_d>> = <<g_a g_b g_d g_c>>, checked by central FD.
  const FrobeniusModel m = builtin_catalog("P2", 8);
  const Eigen::VectorXcd t = p2_point();
  const double h = 1e-5;
  for (int c = 0; c < 3; ++c) {
    Eigen::VectorXcd tp = t, tm = t;
    tp(c) += h;
    tm(c) -= h;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int d = 0; d < 3; ++d) {
          const Complex fd =
              (correlator(m, tp, {a, b, d}) - correlator(m, tm, {a, b, d})) / (2.0 * h);
          CHECK(std::abs(fd - correlator(m, t, {a, b, d, c})) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("quantum product is commutative, unital and associative") {
  for (const char* name : {"P1", "P2"}) {
    const FrobeniusModel m = builtin_catalog(name, 8);
    const Eigen::VectorXcd t = m.dim() == 2 ? p1_point() : p2_point();
    const Correlators corr(m, t);
    const int n = m.dim();

    Eigen::VectorXcd a(n), b(n), c(n);
    for (int k = 0; k < n; ++k) {
      a(k) = Complex(0.3 + 0.1 * k, 0.05);
      b(k) = Complex(-0.2 + 0.07 * k, -0.1);
      c(k) = Complex(0.11 * (k + 1), 0.02 * k);
    }

    const Eigen::VectorXcd ab = corr.product(a, b);
    CHECK((ab - corr.product(b, a)).cwiseAbs().maxCoeff() < 1e-14);

    Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(n);
    unit(0) = 1.0;
    CHECK((corr.product(unit, a) - a).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::VectorXcd left = corr.product(ab, c);
    const Eigen::VectorXcd right = corr.product(a, corr.product(b, c));
    CHECK((left - right).cwiseAbs().maxCoeff() < 1e-10);

    // the free function agrees with the cached object
    CHECK((quantum_product(m, t, a, b) - ab).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("contract is multilinear and matches basis entries") {
  const FrobeniusModel m = builtin_catalog("P2", 8);
  const Eigen::VectorXcd t = p2_point();
  const Correlators corr(m, t);
  const int n = m.dim();

  std::vector<Eigen::VectorXcd> basis;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e(k) = 1.0;
    basis.push_back(e);
  }
  CHECK(std::abs(corr.contract({basis[0], basis[1], basis[2]}) - corr.entry({0, 1, 2})) < 1e-15);

  Eigen::VectorXcd v = 2.0 * basis[1] + Complex(0.0, 3.0) * basis[2];
  const Complex got = corr.contract({basis[0], v, basis[2]});
  const Complex want =
      2.0 * corr.entry({0, 1, 2}) + Complex(0.0, 3.0) * corr.entry({0, 2, 2});
  CHECK(std::abs(got - want) < 1e-14);
}

TEST_CASE("low-order entries match potential derivatives") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  const Eigen::VectorXcd t = p1_point();
  const Correlators corr(m, t);
  // order 0: the potential itself; order 1: its gradient
  CHECK(std::abs(corr.entry({}) - m.potential().evaluate(t)) < 1e-14);
  const PotentialExpr d1 = m.potential().derivative(0);
  CHECK(std::abs(corr.entry({0}) - d1.evaluate(t)) < 1e-14);
  // repeated queries hit the cache and stay identical
  CHECK(corr.entry({1, 1, 1}) == corr.entry({1, 1, 1}));
  CHECK_THROWS_AS(corr.entry({0, 0, 0, 0, 0, 0, 0}), ModelError);
  CHECK_THROWS_AS(corr.entry({9, 0}), CalculusError);
}
