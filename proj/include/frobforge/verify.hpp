/// Identity verification suites: a registry of structural identities, each
/// anchored to its defining formula, evaluated over deterministic grids with
/// frame continuation. Produces stable reports (text, markdown, JSON) whose
/// bytes do not depend on thread count or wall-clock.
#pragma once

#include "frobforge/frame.hpp"
#include "frobforge/model.hpp"

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobforge {

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything an identity evaluation may consume at one usable grid point.
/// The frame has been continued from the previous grid point, so labels and
/// square-root branches vary continuously along the grid.
struct VerifyContext {
  const FrobeniusModel* model = nullptr;
  Eigen::VectorXcd point;
  const CanonicalFrame* frame = nullptr;
  double fd_step = 1e-5;
  FrameOptions frame_opts;  ///< reference already set to *frame
};

using IdentityFn = std::function<double(const VerifyContext&)>;

struct IdentitySpec {
  std::string id;      ///< e.g. "frame.partition-of-unity"
  std::string anchor;  ///< defining formula, e.g. "sum_i E_i = gamma_1"
  std::string suite;   ///< frame-core | rotation-derivatives | descendants | genus1 | calculus
  double tol = 1e-9;
  IdentityFn eval;
};

/// The full identity registry, in fixed report order.
const std::vector<IdentitySpec>& identity_registry();

/// Names of all suites, in fixed order (excluding the pseudo-suite "all").
std::vector<std::string> suite_names();

/// Straight-line grid from start to end with `points` samples (inclusive).
struct GridSpec {
  Eigen::VectorXcd start;
  Eigen::VectorXcd end;
  int points = 20;
};

/// Catalog default grid for a builtin model; throws VerifyError for models
/// without one.
GridSpec default_grid(const std::string& model_name);

struct SuiteSpec {
  std::string suite = "all";           ///< suite name or "all"
  std::vector<std::string> identities; ///< subset filter; empty = whole suite
  GridSpec grid;
  double fd_step = 1e-5;
  double tol_override = 0.0;           ///< > 0 replaces every identity tolerance
  FrameOptions frame_opts;
  /// Minimum usable fraction of grid points; below it the run fails.
  double min_usable_fraction = 0.8;
};

struct IdentityResult {
  std::string id;
  std::string anchor;
  int points = 0;   ///< usable grid points evaluated
  int skipped = 0;  ///< grid points skipped (frame construction failed)
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  std::string model;
  std::vector<IdentityResult> identities;
  int grid_points = 0;
  int usable_points = 0;
  double usable_fraction = 0.0;
  double fd_step = 0.0;
  int truncation = 0;
  bool pass = false;
};

/// Runs the suite over the grid: serial frame continuation along the grid
/// path, identity evaluations distributed over FROBENIUS_FORGE_THREADS
/// workers (default: hardware concurrency, capped at 8). Results do not
/// depend on the thread count.
VerifyReport run_suite(const FrobeniusModel& model, const SuiteSpec& spec);

std::string render_text(const VerifyReport& report);
std::string render_markdown(const VerifyReport& report);
std::string render_json(const VerifyReport& report);

}  // namespace frobforge
