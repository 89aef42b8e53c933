/// Genus-one structures over a canonical frame: the elliptic potentials
/// phi_i, genus-one one-point values, the Getzler four-tensor G0 with its
/// finite-difference check, the degree-two Virasoro constraint, and the
/// Euler-field cross-checks that tie phi to genus-zero data.
#pragma once

#include "frobforge/calculus.hpp"
#include "frobforge/frame.hpp"
#include "frobforge/model.hpp"

#include <Eigen/Dense>

#include <array>

namespace frobforge {

/// Elliptic potential vector phi, defined on the canonical frame by
///   24 phi_i = 12 sum_j (u_i - u_j) r_ij^2 - sum_j sqrt(g_i/g_j) r_ij.
Eigen::VectorXcd genus1_phi(const CanonicalFrame& frame);

/// Genus-one primary one-point values <<gamma_alpha>>_1 = sum_i psi_{i alpha}
/// phi_i / sqrt(g_i), as a coefficient vector over alpha.
Eigen::VectorXcd genus1_onepoint(const CanonicalFrame& frame);

/// Genus-one one-point value of a primary field with coefficient vector w.
Complex genus1_onepoint_of(const CanonicalFrame& frame, const Eigen::VectorXcd& w);

/// Getzler's genus-one four-tensor
///   G0(v1..v4) = sum_{S4} sum_{al,be} [ (1/6) <<v1 v2 v3 g^al>> <<g_al v4 g_be g^be>>
///              + (1/24) <<v1 v2 v3 v4 g^al>> <<g_al g_be g^be>>
///              - (1/4) <<v1 v2 g^al g^be>> <<g_al g_be v3 v4>> ].
Complex g0_tensor(const Correlators& corr, const std::array<Eigen::VectorXcd, 4>& v);

/// One Getzler relation E_j phi_i = (1/24) G0(E_i, E_i, E_i, E_j): the left
/// side by frame-continued finite differences, the right side exactly.
struct GetzlerCheck {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double error_proxy = 0.0;  ///< finite-difference step-halving proxy
};
GetzlerCheck getzler_check(const FrobeniusModel& model, const Eigen::VectorXcd& point, int i,
                           int j, double h = 1e-5, const FrameOptions& opts = {});

/// Degree-two Virasoro constraint on the genus-one potential:
///   24 sum_i u_i^2 phi_i = sum_{i,j} [ 6 (u_i+u_j)(u_i-u_j)^2 r_ij^2
///                                      - u_i^2 r_ij sqrt(g_i/g_j) ].
/// symmetrization_residual checks the equivalent antisymmetrized kernel
///   sum_{i,j} 6 (u_i+u_j)(u_i-u_j)^2 r_ij^2 = sum_{i,j} 12 u_i^2 (u_i-u_j) r_ij^2.
struct VirasoroCheck {
  Complex lhs;
  Complex rhs;
  double residual = 0.0;
  double symmetrization_residual = 0.0;
};
VirasoroCheck virasoro_l1_check(const CanonicalFrame& frame);

/// Euler-field route to phi: residual of
///   phi_i = (1/24) ( <<E_i tau_-(L0) gamma_al gamma^al>> - G0(E_i,E_i,E_i, X o S) ),
/// with the first correlator and the X o S value produced by the descendant
/// rewriter. Returns the max residual over i.
double phi_euler_residual(const FrobeniusModel& model, const CanonicalFrame& frame);

/// Slice identity tying the Euler derivative of the diagonal rotation
/// coefficients to genus-zero four-point data: for each i,
///   -(r_ii + Xbar r_ii) + sum_{j,k} [ -sqrt(g_j/g_k) u_j r_ij r_ik
///                                     + (sqrt(g_i g_j)/g_k) u_j r_ik r_jk ] = 0,
/// with Xbar r_ii assembled from the exact derivative laws. Max over i.
double t_l04pt_residual(const CanonicalFrame& frame);

/// Max |G0(E_a, E_b, E_c, E_d)| over index tuples containing at least three
/// distinct idempotents (zero when the frame has fewer than three points).
double g0_vanishing_residual(const Correlators& corr, const CanonicalFrame& frame);

/// Max residual of the two-index exchange relations
///   G0(iiij) = G0(ijjj) = -G0(iijj) over all i != j.
double g0_exchange_residual(const Correlators& corr, const CanonicalFrame& frame);

/// Integrability of the genus-one one-point values: max asymmetry of the
/// finite-difference Jacobian d_b <<gamma_a>>_1, which must be symmetric.
double genus1_gradient_symmetry(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                                double h = 1e-5, const FrameOptions& opts = {});

}  // namespace frobforge
