#include "frobforge/verify.hpp"

#include "frobforge/calculus.hpp"
#include "frobforge/descendants.hpp"
#include "frobforge/genus1.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

namespace frobforge {

namespace {

Eigen::VectorXcd bvec(int n, int a) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(a) = Complex(1.0, 0.0);
  return v;
}

double vmax(const Eigen::VectorXcd& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double mmax(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Eigen::VectorXcd flatten_rm(const Eigen::MatrixXcd& m) {
  Eigen::VectorXcd out(m.rows() * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i * m.cols() + j) = m(i, j);
  return out;
}

Eigen::VectorXcd fd_quantity(const VerifyContext& c, const Eigen::VectorXcd& dir,
                             FrameQuantity q) {
  return directional_derivative(*c.model, c.point, dir, q, c.fd_step, c.frame_opts).value;
}

Eigen::VectorXcd fd_quantity(const VerifyContext& c, const Eigen::VectorXcd& dir,
                             const FrameQuantityFn& fn) {
  return directional_derivative(*c.model, c.point, dir, fn, c.fd_step, c.frame_opts).value;
}

// ---------------------------------------------------------------------------
// frame-core
// ---------------------------------------------------------------------------

double id_idempotency(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Correlators corr(*c.model, c.point);
  const int n = fr.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXcd p = corr.product(fr.idempotent(i), fr.idempotent(j));
      if (i == j) p -= fr.idempotent(i);
      worst = std::max(worst, vmax(p));
    }
  }
  return worst;
}

double id_partition(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(fr.dim());
  for (int i = 0; i < fr.dim(); ++i) sum += fr.idempotent(i);
  sum -= bvec(fr.dim(), 0);
  return vmax(sum);
}

double id_euler_product(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Correlators corr(*c.model, c.point);
  const Eigen::VectorXcd x = euler_field(*c.model, c.point);
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    worst = std::max(worst,
                     vmax(corr.product(x, fr.idempotent(i)) - fr.u(i) * fr.idempotent(i)));
  }
  return worst;
}

double id_metric_diagonal(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    for (int j = 0; j < fr.dim(); ++j) {
      Complex p = pairing(*c.model, fr.idempotent(i), fr.idempotent(j));
      if (i == j) p -= fr.g(i);
      worst = std::max(worst, std::abs(p));
    }
  }
  return worst;
}

double id_psi_orthogonality(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Eigen::MatrixXcd m = fr.psi * c.model->eta_inv() * fr.psi.transpose();
  m -= Eigen::MatrixXcd::Identity(fr.dim(), fr.dim());
  return mmax(m);
}

double id_gamma1_pairing(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  double worst = 0.0;
  for (int j = 0; j < fr.dim(); ++j) {
    worst = std::max(worst, std::abs(pairing(*c.model, bvec(fr.dim(), 0), fr.idempotent(j)) -
                                     fr.g(j)));
  }
  return worst;
}

double id_three_point(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Correlators corr(*c.model, c.point);
  const int n = fr.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        Complex v = corr.contract({fr.idempotent(i), fr.idempotent(j), fr.idempotent(k)});
        if (i == j && j == k) v -= fr.g(i);
        worst = std::max(worst, std::abs(v));
      }
    }
  }
  return worst;
}

double id_four_point_diagonal(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Correlators corr(*c.model, c.point);
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    const Eigen::VectorXcd e = fr.idempotent(i);
    Complex v = corr.contract({e, e, e, e}) + fr.g(i) * fr.Gamma(i, i);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

double id_four_point_mixed(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Correlators corr(*c.model, c.point);
  const int n = fr.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Eigen::VectorXcd ei = fr.idempotent(i);
      const Eigen::VectorXcd ej = fr.idempotent(j);
      const Complex want = -fr.sqrt_g(i) * fr.sqrt_g(j) * fr.Gamma(i, j);
      worst = std::max(worst, std::abs(corr.contract({ej, ei, ei, ei}) - want));
      worst = std::max(worst, std::abs(corr.contract({ej, ej, ei, ei}) + want));
    }
  }
  return worst;
}

double id_four_point_distinct(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  if (n < 3) return 0.0;
  Correlators corr(*c.model, c.point);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        for (int a = 0; a < n; ++a) {
          worst = std::max(worst, std::abs(corr.contract({fr.idempotent(i), fr.idempotent(j),
                                                          fr.idempotent(k), bvec(n, a)})));
        }
      }
    }
  }
  return worst;
}

double id_f_vector_routes(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    worst = std::max(worst, f_vector(*c.model, fr, i).disagreement);
  }
  return worst;
}

double id_f_vector_sum(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(fr.dim());
  for (int i = 0; i < fr.dim(); ++i) sum += f_vector_rotation(fr, i);
  return vmax(sum);
}

double id_gstar_routes(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    worst = std::max(worst, gstar(*c.model, fr, i).disagreement);
  }
  return worst;
}

double id_gstar_skew(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    for (int j = 0; j < fr.dim(); ++j) {
      const Complex lhs = pairing(*c.model, gstar_direct(*c.model, fr, i), fr.idempotent(j)) +
                          pairing(*c.model, fr.idempotent(i), gstar_direct(*c.model, fr, j));
      const Complex rhs = pairing(*c.model, fr.idempotent(i), fr.idempotent(j));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double id_gstar_diagonal(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    worst = std::max(worst, std::abs(pairing(*c.model, gstar_direct(*c.model, fr, i),
                                             fr.idempotent(i)) -
                                     0.5 * fr.g(i)));
  }
  return worst;
}

double id_gstar_product(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Correlators corr(*c.model, c.point);
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    const Eigen::VectorXcd gs = gstar_direct(*c.model, fr, i);
    const Eigen::VectorXcd f = f_vector_rotation(fr, i);
    for (int j = 0; j < fr.dim(); ++j) {
      if (j == i) continue;
      const Eigen::VectorXcd lhs = corr.product(gs, fr.idempotent(j));
      const Eigen::VectorXcd rhs = (fr.u(j) - fr.u(i)) * corr.product(f, fr.idempotent(j));
      worst = std::max(worst, vmax(lhs - rhs));
    }
  }
  return worst;
}

double id_euler_four_point(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Correlators corr(*c.model, c.point);
  const int n = fr.dim();
  const Eigen::VectorXcd x = euler_field(*c.model, c.point);
  const double b1 = c.model->b_value(0);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd e = fr.idempotent(i);
    Eigen::VectorXcd lowered(n);
    for (int a = 0; a < n; ++a) lowered(a) = corr.contract({x, e, e, bvec(n, a)});
    const Eigen::VectorXcd lhs = c.model->eta_inv() * lowered;
    const Eigen::VectorXcd gs = gstar_direct(*c.model, fr, i);
    const Eigen::VectorXcd rhs = 2.0 * corr.product(gs, e) - gs - b1 * e;
    worst = std::max(worst, vmax(lhs - rhs));
  }
  return worst;
}

double id_rotation_row_sum(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < fr.dim(); ++j) acc += fr.sqrt_g(j) * fr.Gamma(i, j);
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

double id_rotation_weighted_sum(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const double b1 = c.model->b_value(0);
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < fr.dim(); ++j) acc += fr.u(j) * fr.sqrt_g(j) * fr.Gamma(i, j);
    worst = std::max(worst, std::abs(acc - (b1 - 0.5) * fr.sqrt_g(i)));
  }
  return worst;
}

double id_v_antisymmetry(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  return mmax(fr.V + fr.V.transpose());
}

double id_v_rotation(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    for (int j = 0; j < fr.dim(); ++j) {
      if (i == j) continue;
      worst = std::max(worst,
                       std::abs(fr.V(i, j) - (fr.u(j) - fr.u(i)) * fr.Gamma(i, j)));
    }
  }
  return worst;
}

double id_euler_rotation_homogeneity(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  double worst = 0.0;
  for (int i = 0; i < fr.dim(); ++i) {
    for (int j = 0; j < fr.dim(); ++j) {
      worst = std::max(worst, std::abs(euler_der_rotation(fr, i, j) + fr.Gamma(i, j)));
    }
  }
  return worst;
}

double id_psi_reconstruction(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    Eigen::VectorXcd rec = Eigen::VectorXcd::Zero(n);
    for (int i = 0; i < n; ++i) rec += fr.psi(i, a) * fr.idempotent(i) / fr.sqrt_g(i);
    rec -= bvec(n, a);
    worst = std::max(worst, vmax(rec));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// rotation-derivatives (finite differences against the exact laws)
// ---------------------------------------------------------------------------

double id_du(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXcd d = fd_quantity(c, fr.idempotent(j), FrameQuantity::EulerEigenvalues);
    d(j) -= Complex(1.0, 0.0);
    worst = std::max(worst, vmax(d));
  }
  return worst;
}

double id_dg(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXcd d = fd_quantity(c, fr.idempotent(j), FrameQuantity::MetricDiagonal);
    for (int i = 0; i < n; ++i) {
      d(i) -= 2.0 * fr.sqrt_g(i) * fr.sqrt_g(j) * fr.Gamma(j, i);
    }
    worst = std::max(worst, vmax(d));
  }
  return worst;
}

double id_dsqrtg(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd d = fd_quantity(c, fr.idempotent(k), FrameQuantity::SqrtMetric);
    for (int i = 0; i < n; ++i) d(i) -= der_sqrt_g(fr, k, i);
    worst = std::max(worst, vmax(d));
  }
  return worst;
}

double id_drot(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd d = fd_quantity(c, fr.idempotent(k), FrameQuantity::RotationMatrix);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d(i * n + j) -= der_rotation(fr, k, i, j);
    }
    worst = std::max(worst, vmax(d));
  }
  return worst;
}

double id_euler_metric(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const Eigen::VectorXcd x = euler_field(*c.model, c.point);
  Eigen::VectorXcd d = fd_quantity(c, x, FrameQuantity::MetricDiagonal);
  const double b1 = c.model->b_value(0);
  for (int i = 0; i < fr.dim(); ++i) d(i) -= (2.0 * b1 - 1.0) * fr.g(i);
  return vmax(d);
}

double id_euler_rotation_fd(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  const Eigen::VectorXcd x = euler_field(*c.model, c.point);
  Eigen::VectorXcd d = fd_quantity(c, x, FrameQuantity::RotationMatrix);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i * n + j) += fr.Gamma(i, j);
  return vmax(d);
}

double id_string_metric(const VerifyContext& c) {
  Eigen::VectorXcd d =
      fd_quantity(c, bvec(c.model->dim(), 0), FrameQuantity::MetricDiagonal);
  return vmax(d);
}

double id_string_rotation(const VerifyContext& c) {
  Eigen::VectorXcd d =
      fd_quantity(c, bvec(c.model->dim(), 0), FrameQuantity::RotationMatrix);
  return vmax(d);
}

double id_covariant_idempotent(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd d = fd_quantity(c, fr.idempotent(k), FrameQuantity::IdempotentMatrix);
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXcd row(n);
      for (int a = 0; a < n; ++a) row(a) = d(i * n + a);
      worst = std::max(worst, vmax(row - der_idempotent(fr, k, i)));
    }
  }
  return worst;
}

double id_commutator(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  std::vector<Eigen::VectorXcd> d(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    d[static_cast<size_t>(k)] = fd_quantity(c, fr.idempotent(k), FrameQuantity::IdempotentMatrix);
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Eigen::VectorXcd comm(n);
      for (int a = 0; a < n; ++a) {
        comm(a) = d[static_cast<size_t>(i)](j * n + a) - d[static_cast<size_t>(j)](i * n + a);
      }
      worst = std::max(worst, vmax(comm));
    }
  }
  return worst;
}

double id_euler_idempotent(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  const Eigen::VectorXcd x = euler_field(*c.model, c.point);
  const double b1 = c.model->b_value(0);
  Eigen::VectorXcd d = fd_quantity(c, x, FrameQuantity::IdempotentMatrix);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXcd row(n);
    for (int a = 0; a < n; ++a) row(a) = d(i * n + a);
    const Eigen::VectorXcd want = b1 * fr.idempotent(i) - gstar_direct(*c.model, fr, i);
    worst = std::max(worst, vmax(row - want));
  }
  return worst;
}

double id_dpsi(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  FrameQuantityFn fn = [](const FrobeniusModel&, const CanonicalFrame& f) {
    return flatten_rm(f.psi);
  };
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd d = fd_quantity(c, fr.idempotent(k), fn);
    worst = std::max(worst, vmax(d - flatten_rm(der_psi(fr, k))));
  }
  return worst;
}

double id_dv(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  const int n = fr.dim();
  FrameQuantityFn fn = [](const FrobeniusModel&, const CanonicalFrame& f) {
    return flatten_rm(f.V);
  };
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd d = fd_quantity(c, fr.idempotent(k), fn);
    worst = std::max(worst, vmax(d - flatten_rm(der_v(fr, k))));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// descendants
// ---------------------------------------------------------------------------

double id_t_product(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  const int n = c.model->dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      auto p = expr::prod(expr::t_op(expr::gamma(a, n)), expr::gamma(b, n));
      worst = std::max(worst, vmax(ctx.expand(p).primary_value()));
    }
  }
  return worst;
}

double id_t_pairing(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  const int n = c.model->dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      worst = std::max(worst, std::abs(ctx.inner_value(expr::t_op(expr::gamma(a, n)),
                                                       expr::gamma(b, n))));
      worst = std::max(
          worst, std::abs(ctx.inner_value(expr::t_op(expr::tau_plus(expr::gamma(a, n))),
                                          expr::gamma(b, n))));
    }
  }
  return worst;
}

double id_t_four_point(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  const int n = c.model->dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        for (int e = 0; e < n; ++e) {
          const Complex lhs =
              ctx.correlator_value({expr::t_op(expr::gamma(a, n)), expr::gamma(b, n),
                                    expr::gamma(d, n), expr::gamma(e, n)});
          const Complex rhs =
              ctx.correlator_value({expr::prod(expr::gamma(a, n), expr::gamma(b, n)),
                                    expr::gamma(d, n), expr::gamma(e, n)});
          worst = std::max(worst, std::abs(lhs - rhs));
        }
  return worst;
}

double id_t_squared_pairing(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  const int n = c.model->dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      worst = std::max(worst,
                       std::abs(ctx.inner_value(expr::t_op(expr::t_op(expr::gamma(a, n))),
                                                expr::gamma(b, n))));
    }
  }
  return worst;
}

double id_decomposition(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  const int n = c.model->dim();
  std::vector<ExprPtr> fields{expr::x_field(), expr::l0_field()};
  for (int a = 0; a < n; ++a) {
    fields.push_back(expr::tau_plus(expr::gamma(a, n)));
    fields.push_back(expr::t_op(expr::gamma(a, n)));
  }
  double worst = 0.0;
  for (const auto& w : fields) {
    auto rhs =
        expr::sum({expr::prod(w, expr::s_field()), expr::t_op(expr::tau_minus(w))});
    worst = std::max(worst, ctx.expand(w).max_difference(ctx.expand(rhs)));
  }
  return worst;
}

double id_dilaton(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  Correlators corr(*c.model, c.point);
  const int n = c.model->dim();
  const Expansion& ts = ctx.expand(expr::t_op(expr::s_field()));
  Eigen::VectorXcd lowered(n);
  for (int a = 0; a < n; ++a) lowered(a) = corr.entry({0, a});
  const Eigen::VectorXcd want0 = -(c.model->eta_inv() * lowered);
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    const SymValue* c0 = ts.coefficient(0, a);
    const SymValue* c1 = ts.coefficient(1, a);
    const Complex v0 = c0 ? c0->resolve() : Complex(0.0, 0.0);
    const Complex v1 = c1 ? c1->resolve() : Complex(0.0, 0.0);
    worst = std::max(worst, std::abs(v0 - want0(a)));
    worst = std::max(worst, std::abs(v1 - (a == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0))));
  }
  return worst;
}

double id_tau_minus_l0(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  const int n = c.model->dim();
  Eigen::VectorXcd v = ctx.expand(expr::tau_minus(expr::l0_field())).primary_value();
  v(0) += Complex(c.model->b_value(0) + 1.0, 0.0);
  return vmax(v);
}

double id_euler_unit_product(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  const Eigen::VectorXcd v =
      ctx.expand(expr::prod(expr::x_field(), expr::s_field())).primary_value();
  return vmax(v - euler_field(*c.model, c.point));
}

double id_rewriter_four_point(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  const CanonicalFrame& fr = *c.frame;
  const int n = c.model->dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    auto ei = expr::primary(fr.idempotent(i));
    Eigen::VectorXcd lowered(n);
    for (int a = 0; a < n; ++a) {
      lowered(a) = ctx.correlator_value({ei, ei, ei, expr::gamma(a, n)});
    }
    const Eigen::VectorXcd via_ctx = c.model->eta_inv() * lowered;
    worst = std::max(worst, vmax(via_ctx - f_vector_rotation(fr, i)));
  }
  return worst;
}

double id_string_pairing(const VerifyContext& c) {
  DescendantContext ctx(*c.model, c.point);
  const int n = c.model->dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      worst = std::max(worst, std::abs(ctx.inner_value(expr::gamma(a, n), expr::gamma(b, n)) -
                                       c.model->eta()(a, b)));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// genus1
// ---------------------------------------------------------------------------

double id_phi_sum(const VerifyContext& c) {
  return std::abs(genus1_phi(*c.frame).sum());
}

double id_getzler(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Correlators corr(*c.model, c.point);
  const int n = fr.dim();
  FrameQuantityFn fn = [](const FrobeniusModel&, const CanonicalFrame& f) {
    return genus1_phi(f);
  };
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXcd d = fd_quantity(c, fr.idempotent(j), fn);
    for (int i = 0; i < n; ++i) {
      const Complex rhs = g0_tensor(corr, {fr.idempotent(i), fr.idempotent(i),
                                           fr.idempotent(i), fr.idempotent(j)}) /
                          24.0;
      worst = std::max(worst, std::abs(d(i) - rhs));
    }
  }
  return worst;
}

double id_g0_vanishing(const VerifyContext& c) {
  Correlators corr(*c.model, c.point);
  return g0_vanishing_residual(corr, *c.frame);
}

double id_g0_exchange(const VerifyContext& c) {
  Correlators corr(*c.model, c.point);
  return g0_exchange_residual(corr, *c.frame);
}

double id_virasoro(const VerifyContext& c) { return virasoro_l1_check(*c.frame).residual; }

double id_virasoro_symmetrization(const VerifyContext& c) {
  return virasoro_l1_check(*c.frame).symmetrization_residual;
}

double id_phi_euler(const VerifyContext& c) {
  return phi_euler_residual(*c.model, *c.frame);
}

double id_t_l0_four_point(const VerifyContext& c) { return t_l04pt_residual(*c.frame); }

double id_gradient_symmetry(const VerifyContext& c) {
  return genus1_gradient_symmetry(*c.model, c.point, c.fd_step, c.frame_opts);
}

// ---------------------------------------------------------------------------
// calculus
// ---------------------------------------------------------------------------

double id_tensor_symmetry(const VerifyContext& c) {
  double worst = 0.0;
  for (int k = 3; k <= 4; ++k) {
    CorrelatorTensor t = correlator_tensor(*c.model, c.point, k);
    const int n = c.model->dim();
    std::vector<int> idx(static_cast<size_t>(k), 0);
    while (true) {
      std::vector<int> sorted = idx;
      std::sort(sorted.begin(), sorted.end());
      worst = std::max(worst, std::abs(t.at(idx) - t.at(sorted)));
      int pos = k - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - 1) {
        idx[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
    }
  }
  return worst;
}

double id_fd_consistency(const VerifyContext& c) {
  const int n = c.model->dim();
  const double h = c.fd_step;
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    Eigen::VectorXcd tp = c.point;
    Eigen::VectorXcd tm = c.point;
    tp(a) += h;
    tm(a) -= h;
    Correlators cp(*c.model, tp);
    Correlators cm(*c.model, tm);
    Correlators c0(*c.model, c.point);
    for (int b = 0; b < n; ++b) {
      for (int d = b; d < n; ++d) {
        const Complex fd2 = (cp.entry({b, d}) - cm.entry({b, d})) / (2.0 * h);
        worst = std::max(worst, std::abs(fd2 - c0.entry({a, b, d})));
        for (int e = d; e < n; ++e) {
          const Complex fd3 = (cp.entry({b, d, e}) - cm.entry({b, d, e})) / (2.0 * h);
          worst = std::max(worst, std::abs(fd3 - c0.entry({a, b, d, e})));
        }
      }
    }
  }
  return worst;
}

double id_product_commutativity(const VerifyContext& c) {
  Correlators corr(*c.model, c.point);
  const int n = c.model->dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      worst = std::max(worst, vmax(corr.product(bvec(n, a), bvec(n, b)) -
                                   corr.product(bvec(n, b), bvec(n, a))));
  return worst;
}

double id_product_unit(const VerifyContext& c) {
  Correlators corr(*c.model, c.point);
  const int n = c.model->dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    worst = std::max(worst, vmax(corr.product(bvec(n, 0), bvec(n, a)) - bvec(n, a)));
  return worst;
}

double id_associativity(const VerifyContext& c) {
  Correlators corr(*c.model, c.point);
  const int n = c.model->dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) {
        const Eigen::VectorXcd lhs = corr.product(corr.product(bvec(n, a), bvec(n, b)), bvec(n, d));
        const Eigen::VectorXcd rhs = corr.product(bvec(n, a), corr.product(bvec(n, b), bvec(n, d)));
        worst = std::max(worst, vmax(lhs - rhs));
      }
  return worst;
}

double id_frame_contraction(const VerifyContext& c) {
  const CanonicalFrame& fr = *c.frame;
  Correlators corr(*c.model, c.point);
  const int n = fr.dim();
  const Eigen::MatrixXcd& einv = c.model->eta_inv();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd e = fr.idempotent(i);
    Complex trace(0.0, 0.0);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (einv(a, b) == Complex(0.0, 0.0)) continue;
        trace += einv(a, b) * corr.contract({bvec(n, a), bvec(n, b), e, e});
      }
    }
    Complex framed(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      framed += corr.contract({fr.idempotent(j), fr.idempotent(j), e, e}) / fr.g(j);
    }
    worst = std::max(worst, std::abs(trace - framed));
  }
  return worst;
}

std::vector<IdentitySpec> build_registry() {
  std::vector<IdentitySpec> reg;
  auto add = [&](const char* id, const char* anchor, const char* suite, double tol,
                 IdentityFn fn) {
    reg.push_back(IdentitySpec{id, anchor, suite, tol, std::move(fn)});
  };

  // frame-core
  add("frame.idempotency", "E_i o E_j = delta_ij E_i", "frame-core", 1e-9, id_idempotency);
  add("frame.partition", "sum_i E_i = gamma_1", "frame-core", 1e-9, id_partition);
  add("frame.euler-product", "X o E_i = u_i E_i", "frame-core", 1e-9, id_euler_product);
  add("frame.metric-diagonal", "<E_i, E_j> = delta_ij g_i", "frame-core", 1e-9,
      id_metric_diagonal);
  add("frame.psi-orthogonality", "psi eta^{-1} psi^T = 1", "frame-core", 1e-9,
      id_psi_orthogonality);
  add("frame.gamma1-pairing", "<gamma_1, E_j> = g_j", "frame-core", 1e-9, id_gamma1_pairing);
  add("frame.three-point", "<<E_i E_j E_k>> = delta_ij delta_ik g_i", "frame-core", 1e-9,
      id_three_point);
  add("frame.four-point-diagonal", "<<E_i E_i E_i E_i>> = -g_i r_ii", "frame-core", 1e-9,
      id_four_point_diagonal);
  add("frame.four-point-mixed",
      "<<E_j E_i E_i E_i>> = -sqrt(g_i g_j) r_ij = -<<E_j E_j E_i E_i>> (i != j)", "frame-core",
      1e-9, id_four_point_mixed);
  add("frame.four-point-distinct", "<<E_i E_j E_k W>> = 0 (i, j, k distinct)", "frame-core",
      1e-9, id_four_point_distinct);
  add("frame.f-vector-routes", "F_i four-point route = F_i rotation route", "frame-core", 1e-9,
      id_f_vector_routes);
  add("frame.f-vector-sum", "sum_i F_i = 0", "frame-core", 1e-9, id_f_vector_sum);
  add("frame.gstar-routes", "G* E_i grading route = G* E_i rotation route", "frame-core", 1e-9,
      id_gstar_routes);
  add("frame.gstar-skew", "<G* W, V> + <W, G* V> = <W, V>", "frame-core", 1e-9, id_gstar_skew);
  add("frame.gstar-diagonal", "<G* E_i, E_i> = g_i / 2", "frame-core", 1e-9, id_gstar_diagonal);
  add("frame.gstar-product", "(G* E_i) o E_j = (u_j - u_i) F_i o E_j (i != j)", "frame-core",
      1e-9, id_gstar_product);
  add("frame.euler-four-point",
      "<<X E_i E_i gamma^al>> gamma_al = 2 (G* E_i) o E_i - G* E_i - b_1 E_i", "frame-core",
      1e-9, id_euler_four_point);
  add("frame.rotation-row-sum", "sum_j sqrt(g_j) r_ij = 0", "frame-core", 1e-9,
      id_rotation_row_sum);
  add("frame.rotation-weighted-sum", "sum_j u_j sqrt(g_j) r_ij = (b_1 - 1/2) sqrt(g_i)",
      "frame-core", 1e-9, id_rotation_weighted_sum);
  add("frame.v-antisymmetry", "V + V^T = 0", "frame-core", 1e-9, id_v_antisymmetry);
  add("frame.v-rotation", "V_ij = (u_j - u_i) r_ij", "frame-core", 1e-9, id_v_rotation);
  add("frame.euler-rotation-homogeneity", "sum_k u_k E_k r_ij = -r_ij", "frame-core", 1e-9,
      id_euler_rotation_homogeneity);
  add("frame.psi-reconstruction", "gamma_al = sum_i psi_{i al} E_i / sqrt(g_i)", "frame-core",
      1e-9, id_psi_reconstruction);

  // rotation-derivatives
  add("deriv.du", "E_j u_i = delta_ij", "rotation-derivatives", 1e-5, id_du);
  add("deriv.dg", "E_j g_i = 2 sqrt(g_i g_j) r_ji", "rotation-derivatives", 1e-5, id_dg);
  add("deriv.dsqrtg", "E_k sqrt(g_i) = sqrt(g_k) r_ki", "rotation-derivatives", 1e-5,
      id_dsqrtg);
  add("deriv.drot", "E_k r_ij follows the exact slice laws", "rotation-derivatives", 1e-5,
      id_drot);
  add("deriv.euler-metric", "X g_i = (2 b_1 - 1) g_i", "rotation-derivatives", 1e-5,
      id_euler_metric);
  add("deriv.euler-rotation", "X r_ij = -r_ij", "rotation-derivatives", 1e-5,
      id_euler_rotation_fd);
  add("deriv.string-metric", "S g_i = 0", "rotation-derivatives", 1e-5, id_string_metric);
  add("deriv.string-rotation", "S r_ij = 0", "rotation-derivatives", 1e-5, id_string_rotation);
  add("deriv.covariant-idempotent",
      "nabla_{E_k} E_i = r_ki (sqrt(g_i/g_k) E_k + sqrt(g_k/g_i) E_i) - delta_ki sum_l ...",
      "rotation-derivatives", 1e-5, id_covariant_idempotent);
  add("deriv.commutator", "[E_i, E_j] = 0", "rotation-derivatives", 1e-5, id_commutator);
  add("deriv.euler-idempotent", "nabla_X E_i = b_1 E_i - G* E_i", "rotation-derivatives", 1e-5,
      id_euler_idempotent);
  add("deriv.dpsi", "E_k psi_{i al} = r_ki psi_{k al} (k != i), E_k psi_{k al} = -sum_j r_kj psi_{j al}",
      "rotation-derivatives", 1e-5, id_dpsi);
  add("deriv.dv", "E_k V = [V, [D_k, Gamma]]", "rotation-derivatives", 1e-5, id_dv);

  // descendants
  add("desc.t-product", "T(W) o V = 0", "descendants", 1e-10, id_t_product);
  add("desc.t-pairing", "<T(W), V> = 0", "descendants", 1e-10, id_t_pairing);
  add("desc.t-four-point", "<<T(W1) W2 W3 W4>> = <<(W1 o W2) W3 W4>>", "descendants", 1e-9,
      id_t_four_point);
  add("desc.t-squared-pairing", "<T(T(W)), V> = 0", "descendants", 1e-10, id_t_squared_pairing);
  add("desc.decomposition", "W = W o S + T(tau_-(W))", "descendants", 1e-10, id_decomposition);
  add("desc.dilaton", "T(S) = tau_1(gamma_1) - eta-raise(dF_{1 nu})", "descendants", 1e-10,
      id_dilaton);
  add("desc.tau-minus-l0", "tau_-(L0) = -(b_1 + 1) S", "descendants", 1e-12, id_tau_minus_l0);
  add("desc.euler-unit-product", "X o S = X", "descendants", 1e-10, id_euler_unit_product);
  add("desc.rewriter-four-point", "<<E_i E_i E_i gamma^al>> gamma_al = F_i", "descendants",
      1e-9, id_rewriter_four_point);
  add("desc.string-pairing", "<gamma_a, gamma_b> = eta_ab", "descendants", 1e-12,
      id_string_pairing);

  // genus1
  add("g1.phi-sum", "sum_i phi_i = 0", "genus1", 1e-10, id_phi_sum);
  add("g1.getzler", "24 E_j phi_i = G0(E_i, E_i, E_i, E_j)", "genus1", 1e-5, id_getzler);
  add("g1.g0-vanishing", "G0 = 0 on three or more distinct idempotents", "genus1", 1e-9,
      id_g0_vanishing);
  add("g1.g0-exchange", "G0(iiij) = G0(ijjj) = -G0(iijj)", "genus1", 1e-9, id_g0_exchange);
  add("g1.virasoro-l1",
      "24 sum u_i^2 phi_i = sum 6 (u_i+u_j)(u_i-u_j)^2 r_ij^2 - u_i^2 r_ij sqrt(g_i/g_j)",
      "genus1", 1e-9, id_virasoro);
  add("g1.virasoro-symmetrization",
      "sum 6 (u_i+u_j)(u_i-u_j)^2 r_ij^2 = sum 12 u_i^2 (u_i-u_j) r_ij^2", "genus1", 1e-9,
      id_virasoro_symmetrization);
  add("g1.phi-euler",
      "24 phi_i = <<E_i tau_-(L0) gamma_al gamma^al>> - G0(E_i, E_i, E_i, X o S)", "genus1",
      1e-9, id_phi_euler);
  add("g1.t-l0-four-point",
      "r_ii + Xbar r_ii = sum_{j,k} u_j r_ik (sqrt(g_i g_j)/g_k r_jk - sqrt(g_j/g_k) r_ij)",
      "genus1", 1e-9, id_t_l0_four_point);
  add("g1.gradient-symmetry", "d_b <<gamma_a>>_1 = d_a <<gamma_b>>_1", "genus1", 1e-5,
      id_gradient_symmetry);

  // calculus
  add("calc.tensor-symmetry", "correlator tensors are symmetric", "calculus", 1e-14,
      id_tensor_symmetry);
  add("calc.fd-consistency", "d_a <<...>>_k = <<gamma_a ...>>_{k+1}", "calculus", 1e-8,
      id_fd_consistency);
  add("calc.product-commutativity", "W1 o W2 = W2 o W1", "calculus", 1e-14,
      id_product_commutativity);
  add("calc.product-unit", "gamma_1 o W = W", "calculus", 1e-12, id_product_unit);
  add("calc.associativity", "(W1 o W2) o W3 = W1 o (W2 o W3)", "calculus", 1e-10,
      id_associativity);
  add("calc.frame-contraction",
      "sum eta^{ab} <<gamma_a gamma_b . .>> = sum_j (1/g_j) <<E_j E_j . .>>", "calculus", 1e-10,
      id_frame_contraction);

  return reg;
}

int thread_budget() {
  if (const char* env = std::getenv("FROBENIUS_FORGE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1 && v <= 64) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

std::string format_residual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

const std::vector<IdentitySpec>& identity_registry() {
  static const std::vector<IdentitySpec> reg = build_registry();
  return reg;
}

std::vector<std::string> suite_names() {
  return {"frame-core", "rotation-derivatives", "descendants", "genus1", "calculus"};
}

GridSpec default_grid(const std::string& model_name) {
  GridSpec grid;
  grid.points = 20;
  if (model_name == "P1") {
    grid.start = Eigen::VectorXcd(2);
    grid.end = Eigen::VectorXcd(2);
    grid.start << Complex(-0.2, 0.0), Complex(-0.5, 0.0);
    grid.end << Complex(0.2, 0.0), Complex(0.5, 0.0);
    return grid;
  }
  if (model_name == "P2") {
    grid.start = Eigen::VectorXcd(3);
    grid.end = Eigen::VectorXcd(3);
    grid.start << Complex(0.0, 0.0), Complex(-0.3, 0.0), Complex(0.05, 0.0);
    grid.end << Complex(0.0, 0.0), Complex(0.3, 0.0), Complex(0.15, 0.0);
    return grid;
  }
  if (model_name == "poly2d") {
    grid.start = Eigen::VectorXcd(2);
    grid.end = Eigen::VectorXcd(2);
    grid.start << Complex(-0.2, 0.0), Complex(0.1, 0.0);
    grid.end << Complex(0.2, 0.0), Complex(0.6, 0.0);
    return grid;
  }
  throw VerifyError("no default grid for model '" + model_name + "'");
}

VerifyReport run_suite(const FrobeniusModel& model, const SuiteSpec& spec) {
  const auto& registry = identity_registry();
  const auto suites = suite_names();
  if (spec.suite != "all" &&
      std::find(suites.begin(), suites.end(), spec.suite) == suites.end()) {
    throw VerifyError("unknown suite '" + spec.suite + "'");
  }

  std::vector<const IdentitySpec*> selected;
  for (const auto& s : registry) {
    if (spec.suite == "all" || s.suite == spec.suite) selected.push_back(&s);
  }
  if (!spec.identities.empty()) {
    std::set<std::string> want(spec.identities.begin(), spec.identities.end());
    std::vector<const IdentitySpec*> filtered;
    for (const auto* s : selected) {
      if (want.erase(s->id) > 0) filtered.push_back(s);
    }
    if (!want.empty()) {
      throw VerifyError("unknown identity '" + *want.begin() + "' in suite '" + spec.suite +
                        "'");
    }
    selected = std::move(filtered);
  }
  if (selected.empty()) throw VerifyError("no identities selected");

  if (spec.grid.points < 1) throw VerifyError("grid needs at least one point");
  if (spec.grid.start.size() != model.dim() || spec.grid.end.size() != model.dim()) {
    throw VerifyError("grid endpoints do not match the model dimension");
  }

  // Walk the grid with frame continuation; collect usable points.
  std::vector<Eigen::VectorXcd> points;
  std::vector<CanonicalFrame> frames;
  points.reserve(static_cast<size_t>(spec.grid.points));
  frames.reserve(static_cast<size_t>(spec.grid.points));
  int skipped_points = 0;
  for (int k = 0; k < spec.grid.points; ++k) {
    const double s =
        spec.grid.points == 1 ? 0.0 : static_cast<double>(k) / (spec.grid.points - 1);
    const Eigen::VectorXcd pt = spec.grid.start + s * (spec.grid.end - spec.grid.start);
    FrameOptions opts = spec.frame_opts;
    opts.reference = frames.empty() ? nullptr : &frames.back();
    try {
      CanonicalFrame fr = canonical_frame(model, pt, opts);
      points.push_back(pt);
      frames.push_back(std::move(fr));
    } catch (const NonSemisimpleError&) {
      ++skipped_points;
    } catch (const FrameError&) {
      ++skipped_points;
    }
  }

  VerifyReport report;
  report.suite = spec.suite;
  report.model = model.name();
  report.grid_points = spec.grid.points;
  report.usable_points = static_cast<int>(points.size());
  report.usable_fraction =
      static_cast<double>(report.usable_points) / static_cast<double>(report.grid_points);
  report.fd_step = spec.fd_step;
  report.truncation = model.truncation_degree();
  report.identities.resize(selected.size());

  // Evaluate identities over the usable points; worker threads own whole
  // identities, so every residual is a deterministic max over the same
  // point order regardless of the thread count.
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const size_t idx = next.fetch_add(1);
      if (idx >= selected.size()) return;
      const IdentitySpec& s = *selected[idx];
      IdentityResult r;
      r.id = s.id;
      r.anchor = s.anchor;
      r.points = static_cast<int>(points.size());
      r.skipped = skipped_points;
      r.tol = spec.tol_override > 0.0 ? spec.tol_override : s.tol;
      for (size_t k = 0; k < points.size(); ++k) {
        VerifyContext ctx;
        ctx.model = &model;
        ctx.point = points[k];
        ctx.frame = &frames[k];
        ctx.fd_step = spec.fd_step;
        ctx.frame_opts = spec.frame_opts;
        ctx.frame_opts.reference = &frames[k];
        double res;
        try {
          res = s.eval(ctx);
        } catch (const std::exception&) {
          res = std::numeric_limits<double>::max();
        }
        r.max_residual = std::max(r.max_residual, res);
      }
      r.pass = !points.empty() && r.max_residual <= r.tol;
      report.identities[idx] = std::move(r);
    }
  };

  const int budget = std::min<int>(thread_budget(), static_cast<int>(selected.size()));
  if (budget <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(budget));
    for (int i = 0; i < budget; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  bool all_pass = report.usable_fraction >= spec.min_usable_fraction;
  for (const auto& r : report.identities) all_pass = all_pass && r.pass;
  report.pass = all_pass;
  return report;
}

std::string render_text(const VerifyReport& report) {
  std::ostringstream os;
  os << "suite: " << report.suite << "   model: " << report.model << "\n";
  os << "grid: " << report.grid_points << " points, " << report.usable_points << " usable";
  char frac[32];
  std::snprintf(frac, sizeof(frac), " (%.1f%%)", 100.0 * report.usable_fraction);
  os << frac << "   fd step: " << format_residual(report.fd_step)
     << "   truncation: " << report.truncation << "\n";
  for (const auto& r : report.identities) {
    char line[256];
    std::snprintf(line, sizeof(line), "  [%s] %-32s max %s  tol %s  (%d pts, %d skipped)",
                  r.pass ? "PASS" : "FAIL", r.id.c_str(), format_residual(r.max_residual).c_str(),
                  format_residual(r.tol).c_str(), r.points, r.skipped);
    os << line << "  " << r.anchor << "\n";
  }
  os << "overall: " << (report.pass ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string render_markdown(const VerifyReport& report) {
  std::ostringstream os;
  os << "# Verification report\n\n";
  os << "- suite: `" << report.suite << "`\n";
  os << "- model: `" << report.model << "`\n";
  os << "- grid: " << report.grid_points << " points, " << report.usable_points << " usable\n";
  os << "- fd step: " << format_residual(report.fd_step) << "\n";
  os << "- truncation: " << report.truncation << "\n\n";
  os << "| status | identity | anchor | points | skipped | max residual | tol |\n";
  os << "| --- | --- | --- | --- | --- | --- | --- |\n";
  for (const auto& r : report.identities) {
    os << "| " << (r.pass ? "PASS" : "FAIL") << " | `" << r.id << "` | `" << r.anchor << "` | "
       << r.points << " | " << r.skipped << " | " << format_residual(r.max_residual) << " | "
       << format_residual(r.tol) << " |\n";
  }
  os << "\n**overall: " << (report.pass ? "PASS" : "FAIL") << "**\n";
  return os.str();
}

std::string render_json(const VerifyReport& report) {
  nlohmann::ordered_json j;
  j["suite"] = report.suite;
  j["model"] = report.model;
  j["identities"] = nlohmann::ordered_json::array();
  for (const auto& r : report.identities) {
    nlohmann::ordered_json e;
    e["id"] = r.id;
    e["anchor"] = r.anchor;
    e["points"] = r.points;
    e["skipped"] = r.skipped;
    e["max_residual"] = r.max_residual;
    e["tol"] = r.tol;
    e["pass"] = r.pass;
    j["identities"].push_back(std::move(e));
  }
  j["meta"] = {{"grid_points", report.grid_points},
               {"usable_points", report.usable_points},
               {"usable_fraction", report.usable_fraction},
               {"fd_step", report.fd_step},
               {"truncation", report.truncation},
               {"pass", report.pass}};
  return j.dump(2) + "\n";
}

}  // namespace frobforge
