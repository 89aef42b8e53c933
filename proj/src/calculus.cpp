#include "frobforge/calculus.hpp"

#include <algorithm>
#include <numeric>

namespace frobforge {

namespace {

std::vector<int> sorted_indices(std::vector<int> indices, int dim) {
  for (int a : indices) {
    if (a < 0 || a >= dim) {
      throw CalculusError("correlator index out of range");
    }
  }
  std::sort(indices.begin(), indices.end());
  return indices;
}

}  // namespace

CorrelatorTensor::CorrelatorTensor(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1) throw CalculusError("tensor dimension must be positive");
  if (order < 2 || order > 6) throw CalculusError("tensor order must be between 2 and 6");
  size_t n = 1;
  for (int i = 0; i < order; ++i) n *= static_cast<size_t>(dim);
  data_.assign(n, Complex(0.0, 0.0));
}

size_t CorrelatorTensor::offset(const std::vector<int>& indices) const {
  if (static_cast<int>(indices.size()) != order_) {
    throw CalculusError("tensor index arity mismatch");
  }
  size_t off = 0;
  for (int a : indices) {
    if (a < 0 || a >= dim_) throw CalculusError("tensor index out of range");
    off = off * static_cast<size_t>(dim_) + static_cast<size_t>(a);
  }
  return off;
}

Complex& CorrelatorTensor::at(const std::vector<int>& indices) { return data_[offset(indices)]; }

const Complex& CorrelatorTensor::at(const std::vector<int>& indices) const {
  return data_[offset(indices)];
}

Complex correlator(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                   const std::vector<int>& indices) {
  if (indices.size() < 2) {
    throw CalculusError("correlator requires at least two insertions");
  }
  auto sorted = sorted_indices(indices, model.dim());
  return evaluate_terms(model.derivative_terms(sorted), point);
}

CorrelatorTensor correlator_tensor(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                                   int k) {
  const int n = model.dim();
  CorrelatorTensor tensor(n, k);
  std::vector<int> idx(static_cast<size_t>(k), 0);
  while (true) {
    tensor.at(idx) = evaluate_terms(model.derivative_terms(sorted_indices(idx, n)), point);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - 1) {
      idx[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
  }
  return tensor;
}

Eigen::VectorXcd quantum_product(const FrobeniusModel& model, const Eigen::VectorXcd& point,
                                 const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return Correlators(model, point).product(a, b);
}

Correlators::Correlators(const FrobeniusModel& model, Eigen::VectorXcd point)
    : model_(&model), point_(std::move(point)) {
  if (point_.size() != model.dim()) {
    throw CalculusError("point dimension does not match model");
  }
}

Complex Correlators::entry(std::vector<int> indices) const {
  std::sort(indices.begin(), indices.end());
  for (int a : indices) {
    if (a < 0 || a >= model_->dim()) throw CalculusError("correlator index out of range");
  }
  auto it = cache_.find(indices);
  if (it != cache_.end()) return it->second;
  Complex value = evaluate_terms(model_->derivative_terms(indices), point_);
  cache_.emplace(std::move(indices), value);
  return value;
}

Complex Correlators::contract(const std::vector<Eigen::VectorXcd>& args) const {
  const int n = model_->dim();
  const int k = static_cast<int>(args.size());
  if (k < 1) throw CalculusError("contract requires at least one argument");
  for (const auto& v : args) {
    if (v.size() != n) throw CalculusError("argument dimension does not match model");
  }
  std::vector<int> idx(static_cast<size_t>(k), 0);
  Complex total(0.0, 0.0);
  while (true) {
    Complex weight(1.0, 0.0);
    for (int s = 0; s < k; ++s) weight *= args[static_cast<size_t>(s)](idx[static_cast<size_t>(s)]);
    if (weight != Complex(0.0, 0.0)) {
      total += weight * entry(idx);
    }
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == n - 1) {
      idx[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
  }
  return total;
}

Eigen::VectorXcd Correlators::product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) const {
  const int n = model_->dim();
  if (a.size() != n || b.size() != n) {
    throw CalculusError("product arguments must match model dimension");
  }
  Eigen::VectorXcd lowered = Eigen::VectorXcd::Zero(n);
  std::vector<int> idx(3, 0);
  for (int nu = 0; nu < n; ++nu) {
    Complex acc(0.0, 0.0);
    for (int al = 0; al < n; ++al) {
      if (a(al) == Complex(0.0, 0.0)) continue;
      for (int be = 0; be < n; ++be) {
        if (b(be) == Complex(0.0, 0.0)) continue;
        idx[0] = al;
        idx[1] = be;
        idx[2] = nu;
        acc += a(al) * b(be) * entry(idx);
      }
    }
    lowered(nu) = acc;
  }
  return model_->eta_inv() * lowered;
}

}  // namespace frobforge
