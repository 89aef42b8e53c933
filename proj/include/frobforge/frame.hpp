/// \file frame.hpp
/// Canonical (idempotent) frames of a semisimple Frobenius manifold: Euler
/// field, idempotent decomposition, frame metric, rotation coefficients, the
/// skew pairing matrix V, frame matching/continuation, directional
/// derivatives with Richardson extrapolation, and closed-form derivative laws
/// of the frame data.

#pragma once

#include "frobforge/calculus.hpp"
#include "frobforge/model.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <vector>

namespace frobforge {

struct FrameError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when the Euler multiplication has (numerically) repeated
/// eigenvalues at the requested point.
struct NonSemisimpleError : FrameError {
  using FrameError::FrameError;
};

struct CanonicalFrame {
  Eigen::VectorXcd point;   ///< slice coordinates t
  Eigen::MatrixXcd J;       ///< row i = coefficients of the idempotent E_i
  Eigen::VectorXcd u;       ///< Euler eigenvalues, u_i
  Eigen::VectorXcd g;       ///< frame metric, g_i = <E_i, E_i>
  Eigen::VectorXcd sqrt_g;  ///< chosen square-root branch of g_i
  Eigen::MatrixXcd psi;     ///< psi_{i alpha} = <E_i, gamma_alpha> / sqrt(g_i)
  Eigen::MatrixXcd V;       ///< v_ij = (u_j - u_i) r_ij (skew)
  Eigen::MatrixXcd Gamma;   ///< rotation coefficients r_ij (symmetric)

  int dim() const { return static_cast<int>(u.size()); }
  Eigen::VectorXcd idempotent(int i) const { return J.row(i).transpose(); }
  /// Normalized frame vector E_i / sqrt(g_i).
  Eigen::VectorXcd unit_vector(int i) const { return J.row(i).transpose() / sqrt_g(i); }
};

struct FrameOptions {
  /// Tolerance for internal structural residuals (idempotency, partition of
  /// unity, psi-orthogonality).
  double tol_frame = 1e-9;
  /// Relative eigenvalue-separation threshold: the point is rejected as
  /// non-semisimple when min |u_i - u_j| < tol_semisimple * max(1, max|u|).
  double tol_semisimple = 1e-8;
  /// When set, labels and square-root branches are continued from this frame
  /// instead of using the base ordering/principal branch.
  const CanonicalFrame* reference = nullptr;
};

/// Value of the Euler field at a slice point:
/// X^alpha = (1 + b_1 - b_alpha) t^alpha + C_1^alpha.
Eigen::VectorXcd euler_field(const FrobeniusModel& model, const Eigen::VectorXcd& point);

/// Compute the canonical frame at a point. Throws NonSemisimpleError when the
/// Euler eigenvalues are not separated, FrameError on structural failures.
CanonicalFrame canonical_frame(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                               const FrameOptions& opts = {});

struct FrameMatch {
  std::vector<int> permutation;  ///< slot i of A pairs with slot permutation[i] of B
  std::vector<int> signs;        ///< sqrt-branch alignment factors (+1/-1) per slot
  double cost = 0.0;             ///< sum of squared eigenvalue distances of the best pairing
  double second_best_cost = 0.0;
};

/// Pair the slots of two frames by Euler eigenvalue proximity. Throws
/// FrameError when the best pairing is ambiguous.
FrameMatch match_frames(const CanonicalFrame& a, const CanonicalFrame& b);

/// Relabel frame B through a match computed against frame A, so that slot i
/// of the result corresponds to slot i of A, with sign-aligned branches.
CanonicalFrame relabel_frame(const CanonicalFrame& b, const FrameMatch& match);

/// Scalar- or vector-valued quantity extracted from a frame.
using FrameQuantityFn =
    std::function<Eigen::VectorXcd(const FrobeniusModel&, const CanonicalFrame&)>;

enum class FrameQuantity {
  EulerEigenvalues,  ///< u (length N)
  MetricDiagonal,    ///< g (length N)
  SqrtMetric,        ///< sqrt_g (length N)
  RotationMatrix,    ///< Gamma flattened row-major (length N^2)
  IdempotentMatrix,  ///< J flattened row-major (length N^2)
};

struct DirectionalDerivative {
  Eigen::VectorXcd value;   ///< Richardson-extrapolated central difference
  Eigen::VectorXcd coarse;  ///< central difference at step h
  Eigen::VectorXcd fine;    ///< central difference at step h/2
  double error_proxy = 0.0;  ///< max |fine - coarse| componentwise
};

/// Central-difference directional derivative of a frame-derived quantity,
/// with labels and branches continued from the frame at `point`.
DirectionalDerivative directional_derivative(const FrobeniusModel& model,
                                             const Eigen::VectorXcd& point,
                                             const Eigen::VectorXcd& direction,
                                             const FrameQuantityFn& quantity, double h,
                                             const FrameOptions& opts = {});

DirectionalDerivative directional_derivative(const FrobeniusModel& model,
                                             const Eigen::VectorXcd& point,
                                             const Eigen::VectorXcd& direction,
                                             FrameQuantity quantity, double h,
                                             const FrameOptions& opts = {});

Eigen::VectorXcd frame_quantity(const CanonicalFrame& frame, FrameQuantity quantity);

/// Complex-bilinear pairing <a, b> = a^T eta b of coefficient vectors.
Complex pairing(const FrobeniusModel& model, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// Two independent routes to the same frame vector, with their disagreement.
struct RoutePair {
  Eigen::VectorXcd direct;
  Eigen::VectorXcd rotation;
  double disagreement = 0.0;
};

/// F_i = <<E_i E_i E_i gamma^alpha>> gamma_alpha, via the four-point route
/// and via F_i = -sum_j r_ij sqrt(g_i/g_j) E_j. Throws FrameError when the
/// routes disagree beyond tol_cross.
RoutePair f_vector(const FrobeniusModel& model, const CanonicalFrame& frame, int i,
                   double tol_cross = 1e-10);
Eigen::VectorXcd f_vector_fourpoint(const Correlators& corr, const CanonicalFrame& frame, int i);
Eigen::VectorXcd f_vector_rotation(const CanonicalFrame& frame, int i);

/// G* E_i via the grading route (G* E_i)^alpha = b_alpha J_{i alpha} and via
/// G* E_i = E_i/2 + sum_j (u_i - u_j) r_ij sqrt(g_i/g_j) E_j. Throws
/// FrameError when the routes disagree beyond tol_cross.
RoutePair gstar(const FrobeniusModel& model, const CanonicalFrame& frame, int i,
                double tol_cross = 1e-10);
Eigen::VectorXcd gstar_direct(const FrobeniusModel& model, const CanonicalFrame& frame, int i);
Eigen::VectorXcd gstar_rotation(const CanonicalFrame& frame, int i);

/// Exact slice derivative E_k sqrt(g_i) = sqrt(g_k) r_ki.
Complex der_sqrt_g(const CanonicalFrame& frame, int k, int i);

/// Exact slice derivative E_k r_ij covering all index patterns.
Complex der_rotation(const CanonicalFrame& frame, int k, int i, int j);

/// Exact slice derivative of the psi matrix along E_k.
Eigen::MatrixXcd der_psi(const CanonicalFrame& frame, int k);

/// Exact slice derivative of V along E_k: [V, [D_k, Gamma]] with
/// D_k = diag(delta_{ik}).
Eigen::MatrixXcd der_v(const CanonicalFrame& frame, int k);

/// Covariant derivative nabla_{E_k} E_i as a coefficient vector.
Eigen::VectorXcd der_idempotent(const CanonicalFrame& frame, int k, int i);

/// Euler derivative sum_k u_k E_k r_ij assembled from the exact pointwise
/// laws. Homogeneity makes this equal to -r_ij on the slice.
Complex euler_der_rotation(const CanonicalFrame& frame, int i, int j);

}  // namespace frobforge
