// Acceptance gate: nine criteria, one [PASS]/[FAIL] line each, tolerances and
// runtime budgets pinned below. Exits nonzero when any criterion fails.

#include "frobforge/calculus.hpp"
#include "frobforge/frame.hpp"
#include "frobforge/genus1.hpp"
#include "frobforge/model.hpp"
#include "frobforge/verify.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace frobforge;

namespace {

// Pinned tolerances.
constexpr double kTolGolden = 1e-12;       // criteria 1-2
constexpr double kTolFrameCore = 1e-9;     // criterion 3
constexpr double kTolDerivative = 1e-5;    // criterion 4
constexpr double kTolGetzler = 1e-5;       // criterion 5 (FD side)
constexpr double kTolVanishing = 1e-9;     // criterion 5 (G0 structure)
constexpr double kTolVirasoro = 1e-9;      // criterion 6
constexpr double kTolRewriter = 1e-9;      // criterion 7
constexpr double kFdStep = 1e-5;           // criterion 4 step

struct Failure {
  std::string detail;
};

using CriterionFn = std::function<void(std::vector<Failure>&)>;

void expect(std::vector<Failure>& fails, bool ok, const std::string& detail) {
  if (!ok) fails.push_back({detail});
}

void expect_near(std::vector<Failure>& fails, const Complex& got, const Complex& want, double tol,
                 const std::string& what) {
  const double err = std::abs(got - want);
  if (err > tol) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s: |%.3e| > %.1e", what.c_str(), err, tol);
    fails.push_back({buf});
  }
}

Eigen::VectorXcd origin(int dim) { return Eigen::VectorXcd::Zero(dim); }

VerifyReport run(const FrobeniusModel& model, const std::string& suite,
                 std::vector<std::string> ids = {}) {
  SuiteSpec spec;
  spec.suite = suite;
  spec.identities = std::move(ids);
  spec.grid = default_grid(model.name());
  spec.fd_step = kFdStep;
  return run_suite(model, spec);
}

void check_report(std::vector<Failure>& fails, const VerifyReport& rep, double tol,
                  const std::string& label) {
  expect(fails, rep.usable_points == rep.grid_points,
         label + ": skipped " + std::to_string(rep.grid_points - rep.usable_points) +
             " grid points");
  for (const auto& ir : rep.identities) {
    if (ir.max_residual > tol) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s: %s residual %.3e > %.1e", label.c_str(),
                    ir.id.c_str(), ir.max_residual, tol);
      fails.push_back({buf});
    }
  }
}

// --- criterion bodies -------------------------------------------------------

void criterion1(std::vector<Failure>& fails) {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  const CanonicalFrame fr = canonical_frame(m, origin(2));
  const Correlators corr(m, origin(2));

  // labels: slot 0 is "-" (u = -2, g = -1/2), slot 1 is "+" (u = +2, g = +1/2)
  expect_near(fails, fr.u(0), Complex(-2.0, 0.0), kTolGolden, "u_-");
  expect_near(fails, fr.u(1), Complex(2.0, 0.0), kTolGolden, "u_+");
  expect_near(fails, fr.g(0), Complex(-0.5, 0.0), kTolGolden, "g_-");
  expect_near(fails, fr.g(1), Complex(0.5, 0.0), kTolGolden, "g_+");

  const Complex golden[2][2] = {{Complex(0.125, 0.0), Complex(0.0, -0.125)},
                                {Complex(0.0, -0.125), Complex(-0.125, 0.0)}};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      // V-route value (frame construction) against the golden table
      expect_near(fails, fr.Gamma(i, j), golden[i][j], kTolGolden, "r (V-route)");
      // independent 4-point route r_ij = -<<E_i^3 E_j>> / (sqrt(g_i) sqrt(g_j))
      const Complex four = -corr.contract({fr.idempotent(i), fr.idempotent(i), fr.idempotent(i),
                                           fr.idempotent(j)}) /
                           (fr.sqrt_g(i) * fr.sqrt_g(j));
      expect_near(fails, four, golden[i][j], kTolGolden, "r (4-point route)");
      expect_near(fails, four, fr.Gamma(i, j), kTolGolden, "route agreement");
    }
  }
}

void criterion2(std::vector<Failure>& fails) {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  const CanonicalFrame fr = canonical_frame(m, origin(2));
  const Eigen::VectorXcd phi = genus1_phi(fr);
  // phi_+ = -1/48 (slot 1), phi_- = +1/48 (slot 0)
  expect_near(fails, phi(0), Complex(1.0 / 48.0, 0.0), kTolGolden, "phi_-");
  expect_near(fails, phi(1), Complex(-1.0 / 48.0, 0.0), kTolGolden, "phi_+");
  const Eigen::VectorXcd one = genus1_onepoint(fr);
  expect_near(fails, one(0), Complex(0.0, 0.0), kTolGolden, "<<gamma_1>>_1");
  expect_near(fails, one(1), Complex(-1.0 / 24.0, 0.0), kTolGolden, "<<gamma_2>>_1");
}

void criterion3(std::vector<Failure>& fails) {
  for (const char* name : {"P1", "P2", "poly2d"}) {
    const FrobeniusModel m = builtin_catalog(name, 8);
    const VerifyReport rep = run(m, "frame-core");
    expect(fails, rep.grid_points >= 20, std::string(name) + ": grid smaller than 20 points");
    check_report(fails, rep, kTolFrameCore, name);
  }
}

void criterion4(std::vector<Failure>& fails) {
  for (const char* name : {"P1", "P2", "poly2d"}) {
    const FrobeniusModel m = builtin_catalog(name, 8);
    check_report(fails, run(m, "rotation-derivatives"), kTolDerivative, name);
  }
}

void criterion5(std::vector<Failure>& fails) {
  for (const char* name : {"P1", "P2"}) {
    const FrobeniusModel m = builtin_catalog(name, 8);
    const VerifyReport rep = run(m, "genus1", {"g1.getzler", "g1.g0-vanishing"});
    for (const auto& ir : rep.identities) {
      const double tol = ir.id == "g1.getzler" ? kTolGetzler : kTolVanishing;
      if (ir.max_residual > tol) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%s: %s residual %.3e > %.1e", name, ir.id.c_str(),
                      ir.max_residual, tol);
        fails.push_back({buf});
      }
    }
    expect(fails, rep.usable_points == rep.grid_points,
           std::string(name) + ": skipped grid points");
  }
}

void criterion6(std::vector<Failure>& fails) {
  for (const char* name : {"P1", "P2"}) {
    const FrobeniusModel m = builtin_catalog(name, 8);
    check_report(fails, run(m, "genus1", {"g1.virasoro-l1", "g1.virasoro-symmetrization"}),
                 kTolVirasoro, name);
  }
}

void criterion7(std::vector<Failure>& fails) {
  const std::vector<std::string> ids = {"desc.t-four-point", "desc.t-pairing",
                                        "desc.decomposition", "frame.f-vector-sum",
                                        "g1.t-l0-four-point"};
  for (const char* name : {"P1", "P2"}) {
    const FrobeniusModel m = builtin_catalog(name, 8);
    SuiteSpec spec;
    spec.suite = "all";
    spec.identities = ids;
    spec.grid = default_grid(name);
    check_report(fails, run_suite(m, spec), kTolRewriter, name);
  }
}

void criterion8(std::vector<Failure>& fails) {
  const auto n = plane_instanton_numbers(4);
  expect(fails, n.size() == 5, "oracle returned wrong arity");
  expect(fails, n[1] == Rational(1), "N_1 != 1");
  expect(fails, n[2] == Rational(1), "N_2 != 1 (got " + format_rational(n[2]) + ")");
  expect(fails, n[3] == Rational(12), "N_3 != 12 (got " + format_rational(n[3]) + ")");
  expect(fails, n[4] == Rational(620), "N_4 != 620 (got " + format_rational(n[4]) + ")");

  // catalog consistency: the P2 potential must reproduce the oracle values,
  // so a disagreement fails the build
  const FrobeniusModel p2 = builtin_catalog("P2", 5);
  const auto counts = plane_instanton_numbers(5);
  for (const auto& term : p2.potential().terms) {
    const int e3 = term.exponents[2];
    if (term.exp_form[1] == 0) continue;  // classical part
    const int d = static_cast<int>(term.exp_form[1].convert_to<long>());
    const Rational want = counts[static_cast<size_t>(d)] / factorial(3 * d - 1);
    expect(fails, e3 == 3 * d - 1 && term.coeff == RationalComplex(want),
           "catalog P2 term at degree " + std::to_string(d) + " disagrees with the oracle");
  }
}

void criterion9(std::vector<Failure>& fails) {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  SuiteSpec spec;
  spec.suite = "genus1";
  spec.grid = default_grid("P1");
  const std::string a = render_json(run_suite(m, spec));
  const std::string b = render_json(run_suite(m, spec));
  expect(fails, a == b, "genus1 suite reports differ between runs");

  SuiteSpec fc;
  fc.suite = "frame-core";
  fc.grid = default_grid("P2");
  const FrobeniusModel p2 = builtin_catalog("P2", 8);
  const std::string c = render_json(run_suite(p2, fc));
  const std::string d = render_json(run_suite(p2, fc));
  expect(fails, c == d, "frame-core suite reports differ between runs");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    double budget_s;
    CriterionFn fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "P1 golden frame, V-route vs 4-point route to 1e-12", 1.0, criterion1},
      {2, "P1 genus-1 goldens to 1e-12", 1.0, criterion2},
      {3, "frame-core suite <= 1e-9, 20+ points per catalog model", 30.0, criterion3},
      {4, "derivative-law FD suite (h = 1e-5) <= 1e-5", 120.0, criterion4},
      {5, "Getzler relation <= 1e-5, G0 vanishing <= 1e-9 (P1, P2)", 120.0, criterion5},
      {6, "Virasoro L1 constraint <= 1e-9 (P1, P2)", 30.0, criterion6},
      {7, "descendant rewriter laws <= 1e-9 (P1, P2)", 60.0, criterion7},
      {8, "WDVV oracle gate: N_2 = 1, N_3 = 12, N_4 = 620", 10.0, criterion8},
      {9, "byte-identical JSON reports across runs", 120.0, criterion9},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::vector<Failure> fails;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.fn(fails);
    } catch (const std::exception& e) {
      fails.push_back({std::string("exception: ") + e.what()});
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > c.budget_s) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "runtime %.2f s exceeds budget %.0f s", dt, c.budget_s);
      fails.push_back({buf});
    }
    const bool ok = fails.empty();
    std::printf("[%s] criterion %d: %s  (%.2f s)\n", ok ? "PASS" : "FAIL", c.id, c.label, dt);
    for (const auto& f : fails) std::printf("        %s\n", f.detail.c_str());
    if (!ok) ++failures;
  }
  if (failures) {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("acceptance: all 9 criteria passed\n");
  return 0;
}
