#include "frobforge/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace frobforge {

namespace {

double max_abs(const Eigen::VectorXcd& v) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v(i)));
  return m;
}

Eigen::VectorXcd basis_vector(int n, int alpha) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  e(alpha) = Complex(1.0, 0.0);
  return e;
}

std::string point_string(const Eigen::VectorXcd& point) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    if (i) os << ", ";
    os << point(i).real();
    if (point(i).imag() != 0.0) os << (point(i).imag() < 0 ? "-" : "+")
                                   << std::abs(point(i).imag()) << "i";
  }
  os << ")";
  return os.str();
}

}  // namespace

Eigen::VectorXcd euler_field(const FrobeniusModel& model, const Eigen::VectorXcd& point) {
  const int n = model.dim();
  if (point.size() != n) throw FrameError("point dimension does not match model");
  const double b1 = model.b_value(0);
  Eigen::VectorXcd x(n);
  for (int a = 0; a < n; ++a) {
    x(a) = (1.0 + b1 - model.b_value(a)) * point(a) + to_double(model.c_matrix()[0][a]);
  }
  return x;
}

CanonicalFrame canonical_frame(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                               const FrameOptions& opts) {
  const int n = model.dim();
  if (point.size() != n) throw FrameError("point dimension does not match model");
  Correlators corr(model, point);
  const Eigen::VectorXcd x = euler_field(model, point);

  Eigen::MatrixXcd mult(n, n);
  for (int beta = 0; beta < n; ++beta) {
    mult.col(beta) = corr.product(x, basis_vector(n, beta));
  }

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(mult);
  if (solver.info() != Eigen::Success) {
    throw FrameError("eigendecomposition of the Euler multiplication failed");
  }
  const Eigen::VectorXcd lambda = solver.eigenvalues();
  const double scale = std::max(1.0, max_abs(lambda));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(lambda(i) - lambda(j)) < opts.tol_semisimple * scale) {
        throw NonSemisimpleError("Euler multiplication is not semisimple at " +
                                 point_string(point) + ": eigenvalue gap below threshold");
      }
    }
  }

  std::vector<Eigen::VectorXcd> idem(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXcd v = solver.eigenvectors().col(i);
    Eigen::VectorXcd w = corr.product(v, v);
    int m = 0;
    for (int a = 1; a < n; ++a) {
      if (std::abs(v(a)) > std::abs(v(m))) m = a;
    }
    const Complex c = w(m) / v(m);
    if (std::abs(c) < 1e-13 * scale) {
      throw FrameError("idempotent normalization degenerate at " + point_string(point));
    }
    Eigen::VectorXcd e = v / c;
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd e2 = corr.product(e, e);
      const Eigen::VectorXcd e3 = corr.product(e, e2);
      e = 3.0 * e2 - 2.0 * e3;
    }
    idem[static_cast<size_t>(i)] = e;
  }

  CanonicalFrame frame;
  frame.point = point;
  frame.u.resize(n);
  frame.g.resize(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd& e = idem[static_cast<size_t>(i)];
    const Complex gi = pairing(model, e, e);
    if (std::abs(gi) < 1e-250) {
      throw FrameError("frame metric degenerate at " + point_string(point));
    }
    frame.g(i) = gi;
    frame.u(i) = pairing(model, corr.product(x, e), e) / gi;
  }

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Complex ua = frame.u(a), ub = frame.u(b);
    if (ua.real() != ub.real()) return ua.real() < ub.real();
    return ua.imag() < ub.imag();
  });

  CanonicalFrame sorted;
  sorted.point = point;
  sorted.J.resize(n, n);
  sorted.u.resize(n);
  sorted.g.resize(n);
  sorted.sqrt_g.resize(n);
  for (int i = 0; i < n; ++i) {
    const int s = order[static_cast<size_t>(i)];
    sorted.J.row(i) = idem[static_cast<size_t>(s)].transpose();
    sorted.u(i) = frame.u(s);
    sorted.g(i) = frame.g(s);
    sorted.sqrt_g(i) = std::sqrt(frame.g(s));
  }

  sorted.psi.resize(n, n);
  for (int i = 0; i < n; ++i) {
    sorted.psi.row(i) = (sorted.J.row(i) * model.eta()) / sorted.sqrt_g(i);
  }

  Eigen::MatrixXcd grading = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a) grading(a, a) = model.b_value(a) - 0.5;
  sorted.V = sorted.psi * grading * model.eta_inv() * sorted.psi.transpose();

  sorted.Gamma.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      sorted.Gamma(i, j) = sorted.V(i, j) / (sorted.u(j) - sorted.u(i));
    }
  }
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd e = sorted.idempotent(i);
    const Complex four = corr.contract({e, e, e, e});
    sorted.Gamma(i, i) = -four / sorted.g(i);
  }

  // Structural residuals: idempotency, partition of unity, psi-orthogonality.
  double residual = 0.0;
  Eigen::VectorXcd unit_sum = Eigen::VectorXcd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXcd e = sorted.idempotent(i);
    residual = std::max(residual, max_abs(corr.product(e, e) - e));
    unit_sum += e;
  }
  unit_sum(0) -= Complex(1.0, 0.0);
  residual = std::max(residual, max_abs(unit_sum));
  const Eigen::MatrixXcd ortho =
      sorted.psi * model.eta_inv() * sorted.psi.transpose() - Eigen::MatrixXcd::Identity(n, n);
  residual = std::max(residual, ortho.cwiseAbs().maxCoeff());
  if (residual > opts.tol_frame) {
    std::ostringstream os;
    os << "frame structural residual " << residual << " exceeds tolerance " << opts.tol_frame
       << " at " << point_string(point);
    throw FrameError(os.str());
  }

  if (opts.reference != nullptr) {
    const FrameMatch m = match_frames(*opts.reference, sorted);
    return relabel_frame(sorted, m);
  }
  return sorted;
}

FrameMatch match_frames(const CanonicalFrame& a, const CanonicalFrame& b) {
  const int n = a.dim();
  if (b.dim() != n) throw FrameError("cannot match frames of different dimension");
  if (n > 8) throw FrameError("frame matching supports dimension at most 8");

  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm = perm;
  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (int i = 0; i < n; ++i) {
      const Complex d = a.u(i) - b.u(perm[static_cast<size_t>(i)]);
      cost += std::norm(d);
    }
    if (cost < best) {
      second = best;
      best = cost;
      best_perm = perm;
    } else if (cost < second) {
      second = cost;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  const double scale = std::max({1.0, max_abs(a.u), max_abs(b.u)});
  if (n > 1 && second < 2.0 * best + 1e-12 * scale * scale) {
    throw FrameError("ambiguous frame matching: two candidate pairings within tolerance");
  }

  FrameMatch match;
  match.permutation = best_perm;
  match.cost = best;
  match.second_best_cost = second;
  match.signs.assign(static_cast<size_t>(n), 1);
  for (int i = 0; i < n; ++i) {
    const Complex sb = b.sqrt_g(best_perm[static_cast<size_t>(i)]);
    const Complex sa = a.sqrt_g(i);
    if (std::abs(-sb - sa) < std::abs(sb - sa)) match.signs[static_cast<size_t>(i)] = -1;
  }
  return match;
}

CanonicalFrame relabel_frame(const CanonicalFrame& b, const FrameMatch& match) {
  const int n = b.dim();
  CanonicalFrame out;
  out.point = b.point;
  out.J.resize(n, n);
  out.u.resize(n);
  out.g.resize(n);
  out.sqrt_g.resize(n);
  out.psi.resize(n, n);
  out.V.resize(n, n);
  out.Gamma.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const int p = match.permutation[static_cast<size_t>(i)];
    const double s = static_cast<double>(match.signs[static_cast<size_t>(i)]);
    out.J.row(i) = b.J.row(p);
    out.u(i) = b.u(p);
    out.g(i) = b.g(p);
    out.sqrt_g(i) = s * b.sqrt_g(p);
    out.psi.row(i) = s * b.psi.row(p);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int pi = match.permutation[static_cast<size_t>(i)];
      const int pj = match.permutation[static_cast<size_t>(j)];
      const double s =
          static_cast<double>(match.signs[static_cast<size_t>(i)] * match.signs[static_cast<size_t>(j)]);
      out.V(i, j) = s * b.V(pi, pj);
      out.Gamma(i, j) = s * b.Gamma(pi, pj);
    }
  }
  return out;
}

Eigen::VectorXcd frame_quantity(const CanonicalFrame& frame, FrameQuantity quantity) {
  const int n = frame.dim();
  switch (quantity) {
    case FrameQuantity::EulerEigenvalues:
      return frame.u;
    case FrameQuantity::MetricDiagonal:
      return frame.g;
    case FrameQuantity::SqrtMetric:
      return frame.sqrt_g;
    case FrameQuantity::RotationMatrix: {
      Eigen::VectorXcd flat(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) flat(i * n + j) = frame.Gamma(i, j);
      return flat;
    }
    case FrameQuantity::IdempotentMatrix: {
      Eigen::VectorXcd flat(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) flat(i * n + j) = frame.J(i, j);
      return flat;
    }
  }
  throw FrameError("unknown frame quantity");
}

DirectionalDerivative directional_derivative(const FrobeniusModel& model,
                                             const Eigen::VectorXcd& point,
                                             const Eigen::VectorXcd& direction,
                                             const FrameQuantityFn& quantity, double h,
                                             const FrameOptions& opts) {
  if (!(h > 0.0)) throw FrameError("finite-difference step must be positive");
  const CanonicalFrame base = canonical_frame(model, point, opts);
  FrameOptions inner = opts;
  inner.reference = &base;
  auto eval = [&](double s) {
    return quantity(model, canonical_frame(model, point + s * direction, inner));
  };
  const Eigen::VectorXcd qp = eval(h);
  const Eigen::VectorXcd qm = eval(-h);
  const Eigen::VectorXcd qp2 = eval(h / 2.0);
  const Eigen::VectorXcd qm2 = eval(-h / 2.0);

  DirectionalDerivative out;
  out.coarse = (qp - qm) / (2.0 * h);
  out.fine = (qp2 - qm2) / h;
  out.value = (4.0 * out.fine - out.coarse) / 3.0;
  out.error_proxy = (out.fine - out.coarse).cwiseAbs().maxCoeff();
  return out;
}

DirectionalDerivative directional_derivative(const FrobeniusModel& model,
                                             const Eigen::VectorXcd& point,
                                             const Eigen::VectorXcd& direction,
                                             FrameQuantity quantity, double h,
                                             const FrameOptions& opts) {
  return directional_derivative(
      model, point, direction,
      [quantity](const FrobeniusModel&, const CanonicalFrame& f) {
        return frame_quantity(f, quantity);
      },
      h, opts);
}

Complex pairing(const FrobeniusModel& model, const Eigen::VectorXcd& a,
                const Eigen::VectorXcd& b) {
  if (a.size() != model.dim() || b.size() != model.dim()) {
    throw FrameError("pairing arguments must match model dimension");
  }
  return (a.transpose() * model.eta() * b)(0, 0);
}

Eigen::VectorXcd f_vector_fourpoint(const Correlators& corr, const CanonicalFrame& frame, int i) {
  const int n = frame.dim();
  const Eigen::VectorXcd e = frame.idempotent(i);
  Eigen::VectorXcd lowered(n);
  for (int nu = 0; nu < n; ++nu) {
    lowered(nu) = corr.contract({e, e, e, basis_vector(n, nu)});
  }
  return corr.model().eta_inv() * lowered;
}

Eigen::VectorXcd f_vector_rotation(const CanonicalFrame& frame, int i) {
  const int n = frame.dim();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  for (int j = 0; j < n; ++j) {
    out -= frame.Gamma(i, j) * (frame.sqrt_g(i) / frame.sqrt_g(j)) * frame.idempotent(j);
  }
  return out;
}

RoutePair f_vector(const FrobeniusModel& model, const CanonicalFrame& frame, int i,
                   double tol_cross) {
  Correlators corr(model, frame.point);
  RoutePair pair;
  pair.direct = f_vector_fourpoint(corr, frame, i);
  pair.rotation = f_vector_rotation(frame, i);
  pair.disagreement = max_abs(pair.direct - pair.rotation);
  if (pair.disagreement > tol_cross) {
    std::ostringstream os;
    os << "F-vector routes disagree by " << pair.disagreement << " (tolerance " << tol_cross
       << ")";
    throw FrameError(os.str());
  }
  return pair;
}

Eigen::VectorXcd gstar_direct(const FrobeniusModel& model, const CanonicalFrame& frame, int i) {
  const int n = frame.dim();
  Eigen::VectorXcd out(n);
  for (int a = 0; a < n; ++a) out(a) = model.b_value(a) * frame.J(i, a);
  return out;
}

Eigen::VectorXcd gstar_rotation(const CanonicalFrame& frame, int i) {
  const int n = frame.dim();
  Eigen::VectorXcd out = 0.5 * frame.idempotent(i);
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    out += (frame.u(i) - frame.u(j)) * frame.Gamma(i, j) * (frame.sqrt_g(i) / frame.sqrt_g(j)) *
           frame.idempotent(j);
  }
  return out;
}

RoutePair gstar(const FrobeniusModel& model, const CanonicalFrame& frame, int i,
                double tol_cross) {
  RoutePair pair;
  pair.direct = gstar_direct(model, frame, i);
  pair.rotation = gstar_rotation(frame, i);
  pair.disagreement = max_abs(pair.direct - pair.rotation);
  if (pair.disagreement > tol_cross) {
    std::ostringstream os;
    os << "G* routes disagree by " << pair.disagreement << " (tolerance " << tol_cross << ")";
    throw FrameError(os.str());
  }
  return pair;
}

Complex der_sqrt_g(const CanonicalFrame& frame, int k, int i) {
  return frame.sqrt_g(k) * frame.Gamma(k, i);
}

Complex der_rotation(const CanonicalFrame& frame, int k, int i, int j) {
  const int n = frame.dim();
  const Eigen::MatrixXcd& r = frame.Gamma;
  const Eigen::VectorXcd& u = frame.u;

  if (i != j) {
    if (k != i && k != j) {
      return r(i, k) * r(j, k);
    }
    // E_i r_ij = (r_ij + sum_{l != i,j} (u_l - u_j) r_il r_jl) / (u_j - u_i),
    // and the k == j case by symmetry of r.
    const int a = (k == i) ? i : j;
    const int b = (k == i) ? j : i;
    Complex acc = r(a, b);
    for (int l = 0; l < n; ++l) {
      if (l == a || l == b) continue;
      acc += (u(l) - u(b)) * r(a, l) * r(b, l);
    }
    return acc / (u(b) - u(a));
  }

  if (k != i) {
    // E_k r_ii = r_ik^2 + sqrt(g_k/g_i) (E_i r_ik - r_ii r_ik).
    const Complex der = der_rotation(frame, i, i, k);
    return r(i, k) * r(i, k) +
           (frame.sqrt_g(k) / frame.sqrt_g(i)) * (der - r(i, i) * r(i, k));
  }

  // E_i r_ii = -r_ii^2 - sum_{j != i} (2 r_ij^2
  //            + sqrt(g_j/g_i) r_ij r_jj - sqrt(g_j/g_i) E_j r_ij).
  Complex acc = -r(i, i) * r(i, i);
  for (int l = 0; l < n; ++l) {
    if (l == i) continue;
    const Complex ratio = frame.sqrt_g(l) / frame.sqrt_g(i);
    const Complex der = der_rotation(frame, l, i, l);
    acc -= 2.0 * r(i, l) * r(i, l) + ratio * r(i, l) * r(l, l) - ratio * der;
  }
  return acc;
}

Eigen::MatrixXcd der_psi(const CanonicalFrame& frame, int k) {
  const int n = frame.dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (i == k) continue;
    out.row(i) = frame.Gamma(k, i) * frame.psi.row(k);
    out.row(k) -= frame.Gamma(k, i) * frame.psi.row(i);
  }
  return out;
}

Eigen::MatrixXcd der_v(const CanonicalFrame& frame, int k) {
  const int n = frame.dim();
  Eigen::MatrixXcd dk = Eigen::MatrixXcd::Zero(n, n);
  dk(k, k) = Complex(1.0, 0.0);
  const Eigen::MatrixXcd m = dk * frame.Gamma - frame.Gamma * dk;
  return frame.V * m - m * frame.V;
}

Eigen::VectorXcd der_idempotent(const CanonicalFrame& frame, int k, int i) {
  const int n = frame.dim();
  if (k != i) {
    return frame.Gamma(k, i) * ((frame.sqrt_g(i) / frame.sqrt_g(k)) * frame.idempotent(k) +
                                (frame.sqrt_g(k) / frame.sqrt_g(i)) * frame.idempotent(i));
  }
  Eigen::VectorXcd out = 2.0 * frame.Gamma(i, i) * frame.idempotent(i);
  for (int l = 0; l < n; ++l) {
    out -= frame.Gamma(i, l) * (frame.sqrt_g(i) / frame.sqrt_g(l)) * frame.idempotent(l);
  }
  return out;
}

Complex euler_der_rotation(const CanonicalFrame& frame, int i, int j) {
  Complex acc(0.0, 0.0);
  for (int k = 0; k < frame.dim(); ++k) {
    acc += frame.u(k) * der_rotation(frame, k, i, j);
  }
  return acc;
}

}  // namespace frobforge
