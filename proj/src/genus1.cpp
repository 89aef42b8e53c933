#include "frobforge/genus1.hpp"

#include "frobforge/descendants.hpp"

#include <algorithm>
#include <vector>

namespace frobforge {

namespace {

Eigen::VectorXcd basis_vector(int n, int a) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(a) = Complex(1.0, 0.0);
  return v;
}

}  // namespace

Eigen::VectorXcd genus1_phi(const CanonicalFrame& frame) {
  const int n = frame.dim();
  Eigen::VectorXcd phi(n);
  for (int i = 0; i < n; ++i) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < n; ++j) {
      const Complex r = frame.Gamma(i, j);
      acc += 12.0 * (frame.u(i) - frame.u(j)) * r * r;
      acc -= (frame.sqrt_g(i) / frame.sqrt_g(j)) * r;
    }
    phi(i) = acc / 24.0;
  }
  return phi;
}

Eigen::VectorXcd genus1_onepoint(const CanonicalFrame& frame) {
  const int n = frame.dim();
  const Eigen::VectorXcd phi = genus1_phi(frame);
  Eigen::VectorXcd one = Eigen::VectorXcd::Zero(n);
  for (int alpha = 0; alpha < n; ++alpha) {
    for (int i = 0; i < n; ++i) {
      one(alpha) += frame.psi(i, alpha) * phi(i) / frame.sqrt_g(i);
    }
  }
  return one;
}

Complex genus1_onepoint_of(const CanonicalFrame& frame, const Eigen::VectorXcd& w) {
  // <<w>>_1 = sum_i <w, E_i> phi_i / g_i, expressed through the flat
  // one-point vector: w^alpha <<gamma_alpha>>_1.
  return genus1_onepoint(frame).cwiseProduct(w).sum();
}

Complex g0_tensor(const Correlators& corr, const std::array<Eigen::VectorXcd, 4>& v) {
  const FrobeniusModel& model = corr.model();
  const int n = model.dim();
  const Eigen::MatrixXcd& einv = model.eta_inv();

  std::vector<Eigen::VectorXcd> gam(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) gam[static_cast<size_t>(a)] = basis_vector(n, a);

  // C_al = <<gamma_al gamma_be gamma^be>>.
  Eigen::VectorXcd cvec = Eigen::VectorXcd::Zero(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int bp = 0; bp < n; ++bp) {
        if (einv(b, bp) == Complex(0.0, 0.0)) continue;
        cvec(a) += einv(b, bp) * corr.contract({gam[a], gam[b], gam[bp]});
      }
    }
  }

  // B[s](al) = <<gamma_al v_s gamma_be gamma^be>>.
  std::array<Eigen::VectorXcd, 4> bvec;
  for (int s = 0; s < 4; ++s) {
    bvec[s] = Eigen::VectorXcd::Zero(n);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int bp = 0; bp < n; ++bp) {
          if (einv(b, bp) == Complex(0.0, 0.0)) continue;
          bvec[s](a) += einv(b, bp) * corr.contract({gam[a], v[s], gam[b], gam[bp]});
        }
      }
    }
  }

  // A[s](al) = <<v_p v_q v_r gamma_al>> over the triple excluding slot s.
  std::array<Eigen::VectorXcd, 4> avec;
  for (int s = 0; s < 4; ++s) {
    std::vector<Eigen::VectorXcd> triple;
    for (int t = 0; t < 4; ++t) {
      if (t != s) triple.push_back(v[t]);
    }
    avec[s] = Eigen::VectorXcd::Zero(n);
    for (int a = 0; a < n; ++a) {
      auto args = triple;
      args.push_back(gam[a]);
      avec[s](a) = corr.contract(args);
    }
  }

  // P[s][t](al,be) = <<v_s v_t gamma_al gamma_be>>.
  std::array<std::array<Eigen::MatrixXcd, 4>, 4> pmat;
  for (int s = 0; s < 4; ++s) {
    for (int t = s + 1; t < 4; ++t) {
      Eigen::MatrixXcd m(n, n);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) m(a, b) = corr.contract({v[s], v[t], gam[a], gam[b]});
      }
      pmat[s][t] = m;
      pmat[t][s] = m;
    }
  }

  // T5(al) = <<v1 v2 v3 v4 gamma_al>>.
  Eigen::VectorXcd t5(n);
  for (int a = 0; a < n; ++a) t5(a) = corr.contract({v[0], v[1], v[2], v[3], gam[a]});

  Complex total(0.0, 0.0);
  std::array<int, 4> sigma{0, 1, 2, 3};
  do {
    // (1/6) <<v1 v2 v3 gamma^al>> <<gamma_al v4 gamma_be gamma^be>>
    Complex term1(0.0, 0.0);
    for (int a = 0; a < n; ++a) {
      for (int ap = 0; ap < n; ++ap) {
        if (einv(a, ap) == Complex(0.0, 0.0)) continue;
        term1 += einv(a, ap) * avec[sigma[3]](a) * bvec[sigma[3]](ap);
      }
    }
    // (1/24) <<v1 v2 v3 v4 gamma^al>> <<gamma_al gamma_be gamma^be>>
    Complex term2(0.0, 0.0);
    for (int a = 0; a < n; ++a) {
      for (int ap = 0; ap < n; ++ap) {
        if (einv(a, ap) == Complex(0.0, 0.0)) continue;
        term2 += einv(a, ap) * t5(a) * cvec(ap);
      }
    }
    // -(1/4) <<v1 v2 gamma^al gamma^be>> <<gamma_al gamma_be v3 v4>>
    Complex term3(0.0, 0.0);
    const Eigen::MatrixXcd& p12 = pmat[sigma[0]][sigma[1]];
    const Eigen::MatrixXcd& p34 = pmat[sigma[2]][sigma[3]];
    for (int a = 0; a < n; ++a) {
      for (int ap = 0; ap < n; ++ap) {
        if (einv(a, ap) == Complex(0.0, 0.0)) continue;
        for (int b = 0; b < n; ++b) {
          for (int bp = 0; bp < n; ++bp) {
            if (einv(b, bp) == Complex(0.0, 0.0)) continue;
            term3 += einv(a, ap) * einv(b, bp) * p12(a, b) * p34(ap, bp);
          }
        }
      }
    }
    total += term1 / 6.0 + term2 / 24.0 - term3 / 4.0;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

GetzlerCheck getzler_check(const FrobeniusModel& model, const Eigen::VectorXcd& point, int i,
                           int j, double h, const FrameOptions& opts) {
  const CanonicalFrame base = canonical_frame(model, point, opts);
  const Correlators corr(model, point);
  GetzlerCheck out;
  out.rhs = g0_tensor(corr, {base.idempotent(i), base.idempotent(i), base.idempotent(i),
                             base.idempotent(j)}) /
            24.0;
  DirectionalDerivative d = directional_derivative(
      model, point, base.idempotent(j),
      [](const FrobeniusModel&, const CanonicalFrame& f) { return genus1_phi(f); }, h, opts);
  out.lhs = d.value(i);
  out.error_proxy = d.error_proxy;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

VirasoroCheck virasoro_l1_check(const CanonicalFrame& frame) {
  const int n = frame.dim();
  const Eigen::VectorXcd phi = genus1_phi(frame);
  VirasoroCheck out;
  out.lhs = Complex(0.0, 0.0);
  for (int i = 0; i < n; ++i) out.lhs += 24.0 * frame.u(i) * frame.u(i) * phi(i);
  Complex rhs(0.0, 0.0);
  Complex kernel_a(0.0, 0.0);
  Complex kernel_b(0.0, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex r = frame.Gamma(i, j);
      const Complex du = frame.u(i) - frame.u(j);
      rhs += 6.0 * (frame.u(i) + frame.u(j)) * du * du * r * r;
      rhs -= frame.u(i) * frame.u(i) * r * (frame.sqrt_g(i) / frame.sqrt_g(j));
      kernel_a += 6.0 * (frame.u(i) + frame.u(j)) * du * du * r * r;
      kernel_b += 12.0 * frame.u(i) * frame.u(i) * du * r * r;
    }
  }
  out.rhs = rhs;
  out.residual = std::abs(out.lhs - out.rhs);
  out.symmetrization_residual = std::abs(kernel_a - kernel_b);
  return out;
}

double phi_euler_residual(const FrobeniusModel& model, const CanonicalFrame& frame) {
  const int n = frame.dim();
  const Correlators corr(model, frame.point);
  DescendantContext ctx(model, frame.point);
  const Eigen::VectorXcd w =
      ctx.expand(expr::tau_minus(expr::l0_field())).primary_value();
  const Eigen::VectorXcd xbar =
      ctx.expand(expr::prod(expr::x_field(), expr::s_field())).primary_value();
  const Eigen::MatrixXcd& einv = model.eta_inv();
  const Eigen::VectorXcd phi = genus1_phi(frame);

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Complex first(0.0, 0.0);
    for (int a = 0; a < n; ++a) {
      for (int ap = 0; ap < n; ++ap) {
        if (einv(a, ap) == Complex(0.0, 0.0)) continue;
        first += einv(a, ap) * corr.contract({frame.idempotent(i), w, basis_vector(n, a),
                                              basis_vector(n, ap)});
      }
    }
    const Complex g0 = g0_tensor(
        corr, {frame.idempotent(i), frame.idempotent(i), frame.idempotent(i), xbar});
    worst = std::max(worst, std::abs(phi(i) - (first - g0) / 24.0));
  }
  return worst;
}

double t_l04pt_residual(const CanonicalFrame& frame) {
  const int n = frame.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    Complex acc = -(frame.Gamma(i, i) + euler_der_rotation(frame, i, i));
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        acc -= (frame.sqrt_g(j) / frame.sqrt_g(k)) * frame.u(j) * frame.Gamma(i, j) *
               frame.Gamma(i, k);
        acc += (frame.sqrt_g(i) * frame.sqrt_g(j) / (frame.sqrt_g(k) * frame.sqrt_g(k))) *
               frame.u(j) * frame.Gamma(i, k) * frame.Gamma(j, k);
      }
    }
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

double g0_vanishing_residual(const Correlators& corr, const CanonicalFrame& frame) {
  const int n = frame.dim();
  if (n < 3) return 0.0;
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          int distinct = 1;
          std::array<int, 4> idx{a, b, c, d};
          std::sort(idx.begin(), idx.end());
          for (int s = 1; s < 4; ++s) {
            if (idx[s] != idx[s - 1]) ++distinct;
          }
          if (distinct < 3) continue;
          worst = std::max(worst,
                           std::abs(g0_tensor(corr, {frame.idempotent(a), frame.idempotent(b),
                                                     frame.idempotent(c), frame.idempotent(d)})));
        }
      }
    }
  }
  return worst;
}

double g0_exchange_residual(const Correlators& corr, const CanonicalFrame& frame) {
  const int n = frame.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Eigen::VectorXcd ei = frame.idempotent(i);
      const Eigen::VectorXcd ej = frame.idempotent(j);
      const Complex g_iiij = g0_tensor(corr, {ei, ei, ei, ej});
      const Complex g_ijjj = g0_tensor(corr, {ei, ej, ej, ej});
      const Complex g_iijj = g0_tensor(corr, {ei, ei, ej, ej});
      const double scale = std::max({1.0, std::abs(g_iiij), std::abs(g_iijj)});
      worst = std::max(worst, std::abs(g_iiij - g_ijjj) / scale);
      worst = std::max(worst, std::abs(g_iiij + g_iijj) / scale);
    }
  }
  return worst;
}

double genus1_gradient_symmetry(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                                double h, const FrameOptions& opts) {
  const int n = model.dim();
  Eigen::MatrixXcd jac(n, n);
  for (int b = 0; b < n; ++b) {
    DirectionalDerivative d = directional_derivative(
        model, point, basis_vector(n, b),
        [](const FrobeniusModel&, const CanonicalFrame& f) { return genus1_onepoint(f); }, h,
        opts);
    jac.col(b) = d.value;
  }
  return (jac - jac.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace frobforge
