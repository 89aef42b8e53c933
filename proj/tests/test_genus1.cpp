#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobforge/calculus.hpp"
#include "frobforge/frame.hpp"
#include "frobforge/genus1.hpp"
#include "frobforge/model.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

using namespace frobforge;

namespace {

Eigen::VectorXcd make_point(std::initializer_list<double> coords) {
  Eigen::VectorXcd t(static_cast<int>(coords.size()));
  int k = 0;
  for (double c : coords) t(k++) = Complex(c, 0.0);
  return t;
}

}  // namespace

TEST_CASE("P1 genus-one goldens at the origin") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  const CanonicalFrame fr = canonical_frame(m, make_point({0.0, 0.0}));
  const Eigen::VectorXcd phi = genus1_phi(fr);

  // slot 0 carries u = -2: phi = +1/48; slot 1 (u = +2): phi = -1/48
  CHECK(std::abs(phi(0) - Complex(1.0 / 48.0, 0.0)) < 1e-12);
  CHECK(std::abs(phi(1) + Complex(1.0 / 48.0, 0.0)) < 1e-12);

  const Eigen::VectorXcd one = genus1_onepoint(fr);
  CHECK(std::abs(one(0)) < 1e-12);                               // <<gamma_1>>_1 = 0
  CHECK(std::abs(one(1) + Complex(1.0 / 24.0, 0.0)) < 1e-12);    // <<gamma_2>>_1 = -1/24
}

TEST_CASE("phi sums to zero on the slice") {
  for (const char* name : {"P1", "P2"}) {
    const FrobeniusModel m = builtin_catalog(name, 8);
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(m.dim());
    t(m.dim() - 1) = Complex(0.13, 0.0);
    if (m.dim() == 3) t(1) = Complex(0.2, 0.0);
    const CanonicalFrame fr = canonical_frame(m, t);
    CHECK(std::abs(genus1_phi(fr).sum()) < 1e-12);
  }
}

TEST_CASE("one-point evaluation is linear in the field") {
  const FrobeniusModel m = builtin_catalog("P2", 8);
  const Eigen::VectorXcd t = make_point({0.0, 0.2, 0.1});
  const CanonicalFrame fr = canonical_frame(m, t);
  const Eigen::VectorXcd one = genus1_onepoint(fr);

  Eigen::VectorXcd w(3);
  w << Complex(2.0, 0.5), Complex(-1.0, 0.0), Complex(0.0, 3.0);
  Complex want(0.0, 0.0);
  for (int a = 0; a < 3; ++a) want += w(a) * one(a);
  CHECK(std::abs(genus1_onepoint_of(fr, w) - want) < 1e-13);
}

TEST_CASE("G0 is symmetric and satisfies the exchange relations") {
  const FrobeniusModel m = builtin_catalog("P2", 8);
  const Eigen::VectorXcd t = make_point({0.0, 0.18, 0.09});
  const CanonicalFrame fr = canonical_frame(m, t);
  const Correlators corr(m, t);

  // permutation symmetry on generic arguments
  std::array<Eigen::VectorXcd, 4> args = {fr.idempotent(0), fr.idempotent(1), fr.idempotent(0),
                                          fr.idempotent(2)};
  const Complex base = g0_tensor(corr, args);
  std::array<Eigen::VectorXcd, 4> shuffled = {args[3], args[1], args[0], args[2]};
  CHECK(std::abs(g0_tensor(corr, shuffled) - base) < 1e-12);

  CHECK(g0_vanishing_residual(corr, fr) < 1e-9);
  CHECK(g0_exchange_residual(corr, fr) < 1e-9);
}

TEST_CASE("Getzler relation holds by finite differences") {
  struct Case {
    const char* model;
    Eigen::VectorXcd point;
  };
  std::vector<Case> cases;
  cases.push_back({"P1", make_point({0.1, -0.2})});
  cases.push_back({"P2", make_point({0.0, 0.2, 0.1})});

  for (const auto& cs : cases) {
    CAPTURE(cs.model);
    const FrobeniusModel m = builtin_catalog(cs.model, 8);
    const int n = m.dim();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const GetzlerCheck chk = getzler_check(m, cs.point, i, j);
        CHECK(chk.residual < 1e-5);
      }
    }
  }
}

TEST_CASE("degree-two Virasoro constraint") {
  for (const char* name : {"P1", "P2"}) {
    const FrobeniusModel m = builtin_catalog(name, 8);
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(m.dim());
    t(m.dim() - 1) = Complex(0.11, 0.0);
    if (m.dim() == 3) t(1) = Complex(-0.15, 0.0);
    const CanonicalFrame fr = canonical_frame(m, t);
    const VirasoroCheck chk = virasoro_l1_check(fr);
    CHECK(chk.residual < 1e-9);
    CHECK(chk.symmetrization_residual < 1e-9);
  }
}

TEST_CASE("Euler-field route to phi via the descendant rewriter") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  const Eigen::VectorXcd t = make_point({0.07, -0.3});
  const CanonicalFrame fr = canonical_frame(m, t);
  CHECK(phi_euler_residual(m, fr) < 1e-9);

  const FrobeniusModel p2 = builtin_catalog("P2", 8);
  const Eigen::VectorXcd s = make_point({0.0, 0.2, 0.1});
  const CanonicalFrame fr2 = canonical_frame(p2, s);
  CHECK(phi_euler_residual(p2, fr2) < 1e-9);
}

TEST_CASE("rotation-coefficient reduction of the diagonal Euler derivative") {
  for (const char* name : {"P1", "P2"}) {
    const FrobeniusModel m = builtin_catalog(name, 8);
    Eigen::VectorXcd t = Eigen::VectorXcd::Zero(m.dim());
    t(m.dim() - 1) = Complex(0.14, 0.0);
    if (m.dim() == 3) t(1) = Complex(0.22, 0.0);
    const CanonicalFrame fr = canonical_frame(m, t);
    CHECK(t_l04pt_residual(fr) < 1e-9);
  }
}

TEST_CASE("genus-one one-point gradient is symmetric") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  CHECK(genus1_gradient_symmetry(m, make_point({0.05, -0.2})) < 1e-5);
}
