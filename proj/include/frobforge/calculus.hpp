/// \file calculus.hpp
/// Genus-0 correlator evaluation on the small slice: k-point functions,
/// symmetric correlator tensors, and the quantum product.

#pragma once

#include "frobforge/model.hpp"

#include <Eigen/Dense>

#include <map>
#include <vector>

namespace frobforge {

struct CalculusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Symmetric order-k tensor over the primary basis.
class CorrelatorTensor {
 public:
  CorrelatorTensor(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }

  Complex& at(const std::vector<int>& indices);
  const Complex& at(const std::vector<int>& indices) const;

 private:
  size_t offset(const std::vector<int>& indices) const;
  int dim_;
  int order_;
  std::vector<Complex> data_;
};

/// k-point primary correlator <<gamma_{a1} ... gamma_{ak}>>_0 at a slice
/// point: the k-th partial derivative of the genus-0 potential. Indices are
/// 0-based. Requires k >= 2.
Complex correlator(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                   const std::vector<int>& indices);

/// Full symmetric k-tensor of primary correlators, 2 <= k <= 6.
CorrelatorTensor correlator_tensor(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                                   int k);

/// Quantum product of primary coefficient vectors:
/// c^mu = a^alpha b^beta <<gamma_alpha gamma_beta gamma_nu>> eta^{nu mu}.
Eigen::VectorXcd quantum_product(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                                 const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// Per-point correlator cache: memoizes derivative-table evaluations so that
/// repeated contractions at one point (frames, G_0, identity suites) stay
/// cheap. Orders up to the model's precomputed maximum are supported,
/// including 0- and 1-point values needed internally by the descendant
/// reduction.
class Correlators {
 public:
  Correlators(const FrobeniusModel& model, Eigen::VectorXcd point);

  const FrobeniusModel& model() const { return *model_; }
  const Eigen::VectorXcd& point() const { return point_; }

  /// Entry for a multi-index of any order 0..6 (order is indices.size()).
  Complex entry(std::vector<int> indices) const;

  /// <<v_1 ... v_k>> for primary coefficient vectors, k = args.size().
  Complex contract(const std::vector<Eigen::VectorXcd>& args) const;

  /// Quantum product at the cached point.
  Eigen::VectorXcd product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) const;

 private:
  const FrobeniusModel* model_;
  Eigen::VectorXcd point_;
  mutable std::map<std::vector<int>, Complex> cache_;
};

}  // namespace frobforge
