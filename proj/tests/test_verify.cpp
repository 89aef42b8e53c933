#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frobforge/model.hpp"
#include "frobforge/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

using namespace frobforge;

TEST_CASE("identity registry is well formed") {
  const auto& registry = identity_registry();
  CHECK(registry.size() >= 50);

  const auto suites = suite_names();
  std::set<std::string> ids;
  for (const auto& spec : registry) {
    CAPTURE(spec.id);
    CHECK(ids.insert(spec.id).second);  // unique ids
    CHECK_FALSE(spec.anchor.empty());
    CHECK(spec.tol > 0.0);
    CHECK(std::find(suites.begin(), suites.end(), spec.suite) != suites.end());
    CHECK(static_cast<bool>(spec.eval));
  }

  for (const char* s :
       {"frame-core", "rotation-derivatives", "descendants", "genus1", "calculus"}) {
    CHECK(std::find(suites.begin(), suites.end(), std::string(s)) != suites.end());
  }
}

TEST_CASE("default grids exist for catalog models only") {
  for (const char* name : {"P1", "P2", "poly2d"}) {
    const GridSpec grid = default_grid(name);
    CHECK(grid.points >= 20);
  }
  CHECK_THROWS_AS(default_grid("nosuch"), VerifyError);
}

TEST_CASE("frame-core suite passes on P1") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  SuiteSpec spec;
  spec.suite = "frame-core";
  spec.grid = default_grid("P1");
  const VerifyReport rep = run_suite(m, spec);

  CHECK(rep.pass);
  CHECK(rep.suite == "frame-core");
  CHECK(rep.model == "P1");
  CHECK(rep.usable_points == rep.grid_points);
  CHECK_FALSE(rep.identities.empty());
  for (const auto& ir : rep.identities) {
    CAPTURE(ir.id);
    CHECK(ir.pass);
    CHECK(ir.max_residual <= ir.tol);
    CHECK(ir.skipped == 0);
  }
}

TEST_CASE("identity filter selects a subset and rejects unknown ids") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  SuiteSpec spec;
  spec.suite = "frame-core";
  spec.grid = default_grid("P1");
  spec.grid.points = 20;
  spec.identities = {"frame.idempotency", "frame.partition"};
  const VerifyReport rep = run_suite(m, spec);
  CHECK(rep.identities.size() == 2);

  SuiteSpec bad = spec;
  bad.identities = {"frame.nosuch"};
  CHECK_THROWS_AS(run_suite(m, bad), VerifyError);

  SuiteSpec badsuite;
  badsuite.suite = "nosuch";
  badsuite.grid = default_grid("P1");
  CHECK_THROWS_AS(run_suite(m, badsuite), VerifyError);
}

TEST_CASE("tolerance override applies to every identity") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  SuiteSpec spec;
  spec.suite = "frame-core";
  spec.grid = default_grid("P1");
  spec.grid.points = 20;
  spec.identities = {"frame.idempotency"};
  spec.tol_override = 1e-30;  // absurdly tight: even exact identities fail
  const VerifyReport rep = run_suite(m, spec);
  CHECK_FALSE(rep.pass);
  CHECK(rep.identities[0].tol == 1e-30);
}

TEST_CASE("degenerate grid points are skipped and gate the report") {
  // a 4-point segment ending on the poly2d discriminant t2 = 0: the last
  // point is non-semisimple and must be counted, not silently dropped
  const FrobeniusModel m = builtin_catalog("poly2d", 8);
  SuiteSpec spec;
  spec.suite = "frame-core";
  spec.identities = {"frame.idempotency"};
  spec.grid.start = Eigen::VectorXcd::Zero(2);
  spec.grid.end = Eigen::VectorXcd::Zero(2);
  spec.grid.start(1) = Complex(0.4, 0.0);
  spec.grid.end(1) = Complex(0.0, 0.0);
  spec.grid.points = 4;
  const VerifyReport rep = run_suite(m, spec);

  CHECK(rep.grid_points == 4);
  CHECK(rep.usable_points == 3);
  CHECK(rep.identities[0].skipped == 1);
  // identities hold on the usable points, but 3/4 < 0.8 usable gates the run
  CHECK(rep.identities[0].pass);
  CHECK_FALSE(rep.pass);
}

TEST_CASE("reports are deterministic") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  SuiteSpec spec;
  spec.suite = "genus1";
  spec.grid = default_grid("P1");

  const std::string a = render_json(run_suite(m, spec));
  const std::string b = render_json(run_suite(m, spec));
  CHECK(a == b);

  // determinism must not depend on the worker count
  setenv("FROBENIUS_FORGE_THREADS", "1", 1);
  const std::string serial = render_json(run_suite(m, spec));
  setenv("FROBENIUS_FORGE_THREADS", "7", 1);
  const std::string parallel = render_json(run_suite(m, spec));
  unsetenv("FROBENIUS_FORGE_THREADS");
  CHECK(serial == a);
  CHECK(parallel == a);
}

TEST_CASE("renderers expose the per-identity verdicts") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  SuiteSpec spec;
  spec.suite = "calculus";
  spec.grid = default_grid("P1");
  const VerifyReport rep = run_suite(m, spec);

  const std::string text = render_text(rep);
  CHECK(text.find("[PASS]") != std::string::npos);
  CHECK(text.find("calc.associativity") != std::string::npos);
  CHECK(text.find("overall:") != std::string::npos);

  const std::string md = render_markdown(rep);
  CHECK(md.find("|") != std::string::npos);
  CHECK(md.find("calc.associativity") != std::string::npos);

  const std::string js = render_json(rep);
  CHECK(js.find("\"suite\"") != std::string::npos);
  CHECK(js.find("\"identities\"") != std::string::npos);
  CHECK(js.find("\"anchor\"") != std::string::npos);
  // no wall-clock content: reports must be byte-stable across runs
  CHECK(js.find("time") == std::string::npos);
  CHECK(js.find("duration") == std::string::npos);
}

TEST_CASE("the all suite covers every registered identity") {
  const FrobeniusModel m = builtin_catalog("P1", 8);
  SuiteSpec spec;
  spec.suite = "all";
  spec.grid = default_grid("P1");
  spec.grid.points = 20;
  const VerifyReport rep = run_suite(m, spec);
  CHECK(rep.identities.size() == identity_registry().size());
  CHECK(rep.pass);
}
