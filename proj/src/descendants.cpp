#include "frobforge/descendants.hpp"

#include "frobforge/frame.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace frobforge {

namespace {

std::string insertion_name(const std::vector<std::pair<int, int>>& insertions) {
  std::ostringstream os;
  os << "corr" << insertions.size() << "(";
  for (size_t i = 0; i < insertions.size(); ++i) {
    if (i) os << ";";
    os << insertions[i].first << "," << insertions[i].second;
  }
  os << ")";
  return os.str();
}

}  // namespace

bool SymValue::is_numeric(double tol) const {
  for (const auto& [name, c] : symbols_) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

void SymValue::prune() {
  for (auto it = symbols_.begin(); it != symbols_.end();) {
    if (it->second == Complex(0.0, 0.0)) {
      it = symbols_.erase(it);
    } else {
      ++it;
    }
  }
}

SymValue& SymValue::operator+=(const SymValue& o) {
  num_ += o.num_;
  for (const auto& [name, c] : o.symbols_) symbols_[name] += c;
  prune();
  return *this;
}

SymValue& SymValue::operator-=(const SymValue& o) {
  num_ -= o.num_;
  for (const auto& [name, c] : o.symbols_) symbols_[name] -= c;
  prune();
  return *this;
}

SymValue& SymValue::operator*=(const Complex& c) {
  num_ *= c;
  for (auto& [name, coef] : symbols_) coef *= c;
  prune();
  return *this;
}

SymValue operator*(const SymValue& a, const SymValue& b) {
  const bool sa = !a.symbols_.empty();
  const bool sb = !b.symbols_.empty();
  if (sa && sb) {
    throw DescendantError("irreducible product of symbolic correlators: " +
                          a.symbols_.begin()->first + " times " + b.symbols_.begin()->first);
  }
  if (sa) {
    SymValue out = a;
    out *= b.num_;
    return out;
  }
  SymValue out = b;
  out *= a.num_;
  return out;
}

double SymValue::symbol_norm() const {
  double m = 0.0;
  for (const auto& [name, c] : symbols_) m = std::max(m, std::abs(c));
  return m;
}

Complex SymValue::resolve(double tol) const {
  const double thresh = tol * std::max(1.0, std::abs(num_));
  for (const auto& [name, c] : symbols_) {
    if (std::abs(c) > thresh) {
      std::ostringstream os;
      os << "irreducible correlator symbol " << name << " survives with coefficient magnitude "
         << std::abs(c);
      throw DescendantError(os.str());
    }
  }
  return num_;
}

const SymValue* Expansion::coefficient(int level, int alpha) const {
  auto it = levels.find(level);
  if (it == levels.end()) return nullptr;
  return &it->second[static_cast<size_t>(alpha)];
}

Expansion& Expansion::add_scaled(const Expansion& o, const Complex& w) {
  for (const auto& [level, coeffs] : o.levels) {
    auto& mine = levels[level];
    if (mine.empty()) mine.assign(static_cast<size_t>(dim), SymValue());
    for (int a = 0; a < dim; ++a) {
      mine[static_cast<size_t>(a)] += coeffs[static_cast<size_t>(a)] * w;
    }
  }
  return *this;
}

Eigen::VectorXcd Expansion::primary_value(double tol) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  auto it = levels.find(0);
  if (it == levels.end()) return v;
  for (int a = 0; a < dim; ++a) v(a) = it->second[static_cast<size_t>(a)].resolve(tol);
  return v;
}

double Expansion::max_difference(const Expansion& o) const {
  double m = 0.0;
  auto bound = [&](const Expansion& x, const Expansion& y) {
    for (const auto& [level, coeffs] : x.levels) {
      for (int a = 0; a < x.dim; ++a) {
        SymValue d = coeffs[static_cast<size_t>(a)];
        if (const SymValue* other = y.coefficient(level, a)) d -= *other;
        m = std::max(m, std::abs(d.numeric()));
        m = std::max(m, d.symbol_norm());
      }
    }
  };
  bound(*this, o);
  bound(o, *this);
  return m;
}

namespace expr {

namespace {
ExprPtr make(VectorFieldExpr::Kind kind) {
  auto e = std::make_shared<VectorFieldExpr>();
  e->kind = kind;
  return e;
}
}  // namespace

ExprPtr primary(const Eigen::VectorXcd& value) {
  return primary_affine(Eigen::MatrixXcd::Zero(value.size(), value.size()), value);
}

ExprPtr primary_affine(const Eigen::MatrixXcd& lin, const Eigen::VectorXcd& cst) {
  auto e = std::make_shared<VectorFieldExpr>();
  e->kind = VectorFieldExpr::Kind::PrimaryAffine;
  e->lin = lin;
  e->cst = cst;
  return e;
}

ExprPtr gamma(int alpha, int dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(alpha) = Complex(1.0, 0.0);
  return primary(v);
}

ExprPtr s_field() { return make(VectorFieldExpr::Kind::S); }
ExprPtr x_field() { return make(VectorFieldExpr::Kind::X); }
ExprPtr l0_field() { return make(VectorFieldExpr::Kind::L0); }

ExprPtr tau_plus(ExprPtr w) {
  auto e = make(VectorFieldExpr::Kind::TauPlus);
  std::const_pointer_cast<VectorFieldExpr>(e)->children.push_back(std::move(w));
  return e;
}

ExprPtr tau_minus(ExprPtr w) {
  auto e = make(VectorFieldExpr::Kind::TauMinus);
  std::const_pointer_cast<VectorFieldExpr>(e)->children.push_back(std::move(w));
  return e;
}

ExprPtr t_op(ExprPtr w) {
  auto e = make(VectorFieldExpr::Kind::T);
  std::const_pointer_cast<VectorFieldExpr>(e)->children.push_back(std::move(w));
  return e;
}

ExprPtr prod(ExprPtr a, ExprPtr b) {
  auto e = make(VectorFieldExpr::Kind::Prod);
  auto m = std::const_pointer_cast<VectorFieldExpr>(e);
  m->children.push_back(std::move(a));
  m->children.push_back(std::move(b));
  return e;
}

ExprPtr sum(std::vector<ExprPtr> terms, std::vector<Complex> weights) {
  if (weights.empty()) weights.assign(terms.size(), Complex(1.0, 0.0));
  if (weights.size() != terms.size()) {
    throw DescendantError("sum weights must match the number of terms");
  }
  auto e = make(VectorFieldExpr::Kind::Sum);
  auto m = std::const_pointer_cast<VectorFieldExpr>(e);
  m->children = std::move(terms);
  m->weights = std::move(weights);
  return e;
}

ExprPtr scale(const Complex& w, ExprPtr a) { return sum({std::move(a)}, {w}); }

}  // namespace expr

DescendantContext::DescendantContext(const FrobeniusModel& model, Eigen::VectorXcd point,
                                     int max_level)
    : model_(&model), point_(std::move(point)), corr_(model, point_), max_level_(max_level) {
  if (point_.size() != model.dim()) {
    throw DescendantError("point dimension does not match model");
  }
  if (max_level_ < 1) throw DescendantError("max_level must be at least 1");
}

const Expansion& DescendantContext::expand(const ExprPtr& e) {
  if (!e) throw DescendantError("null expression");
  auto it = expansion_memo_.find(e.get());
  if (it != expansion_memo_.end()) return it->second;
  retained_.push_back(e);
  Expansion exp = expand_node(*e);
  auto [pos, inserted] = expansion_memo_.emplace(e.get(), std::move(exp));
  return pos->second;
}

Expansion DescendantContext::expand_node(const VectorFieldExpr& e) {
  const int n = model_->dim();
  Expansion out;
  out.dim = n;
  using Kind = VectorFieldExpr::Kind;
  switch (e.kind) {
    case Kind::PrimaryAffine: {
      if (e.cst.size() != n || e.lin.rows() != n || e.lin.cols() != n) {
        throw DescendantError("primary field dimension does not match model");
      }
      const Eigen::VectorXcd v = e.cst + e.lin * point_;
      auto& lvl = out.levels[0];
      lvl.assign(static_cast<size_t>(n), SymValue());
      for (int a = 0; a < n; ++a) lvl[static_cast<size_t>(a)] = SymValue(v(a));
      return out;
    }
    case Kind::S: {
      auto& lvl = out.levels[0];
      lvl.assign(static_cast<size_t>(n), SymValue());
      lvl[0] = SymValue(Complex(1.0, 0.0));
      return out;
    }
    case Kind::X: {
      const Eigen::VectorXcd v = euler_field(*model_, point_);
      auto& lvl = out.levels[0];
      lvl.assign(static_cast<size_t>(n), SymValue());
      for (int a = 0; a < n; ++a) lvl[static_cast<size_t>(a)] = SymValue(v(a));
      return out;
    }
    case Kind::L0: {
      const Complex b1(model_->b_value(0), 0.0);
      ExprPtr built = expr::sum({expr::x_field(), expr::t_op(expr::s_field())},
                                {Complex(-1.0, 0.0), -(b1 + Complex(1.0, 0.0))});
      return expand(built);
    }
    case Kind::TauPlus: {
      const Expansion& a = expand(e.children.at(0));
      for (const auto& [level, coeffs] : a.levels) {
        if (level + 1 > max_level_) {
          throw DescendantError("descendant level " + std::to_string(level + 1) +
                                " exceeds the truncation level " + std::to_string(max_level_));
        }
        out.levels[level + 1] = coeffs;
      }
      return out;
    }
    case Kind::TauMinus: {
      const Expansion& a = expand(e.children.at(0));
      for (const auto& [level, coeffs] : a.levels) {
        if (level == 0) continue;
        out.levels[level - 1] = coeffs;
      }
      return out;
    }
    case Kind::T: {
      const Expansion& a = expand(e.children.at(0));
      Expansion up;
      up.dim = n;
      for (const auto& [level, coeffs] : a.levels) {
        if (level + 1 > max_level_) {
          throw DescendantError("descendant level " + std::to_string(level + 1) +
                                " exceeds the truncation level " + std::to_string(max_level_));
        }
        up.levels[level + 1] = coeffs;
      }
      Expansion s;
      s.dim = n;
      s.levels[0].assign(static_cast<size_t>(n), SymValue());
      s.levels[0][0] = SymValue(Complex(1.0, 0.0));
      Expansion correction = product_expansion(s, up);
      Expansion result = up;
      result.add_scaled(correction, Complex(-1.0, 0.0));
      return result;
    }
    case Kind::Prod: {
      const Expansion a = expand(e.children.at(0));
      const Expansion b = expand(e.children.at(1));
      return product_expansion(a, b);
    }
    case Kind::Sum: {
      for (size_t i = 0; i < e.children.size(); ++i) {
        out.add_scaled(expand(e.children[i]), e.weights[i]);
      }
      return out;
    }
  }
  throw DescendantError("unknown expression node");
}

Expansion DescendantContext::product_expansion(const Expansion& a, const Expansion& b) {
  const int n = model_->dim();
  Expansion out;
  out.dim = n;
  std::vector<SymValue> lowered(static_cast<size_t>(n));
  for (const auto& [la, ca] : a.levels) {
    for (int aa = 0; aa < n; ++aa) {
      const SymValue& wa = ca[static_cast<size_t>(aa)];
      if (wa.numeric() == Complex(0.0, 0.0) && wa.symbols().empty()) continue;
      for (const auto& [lb, cb] : b.levels) {
        for (int ab = 0; ab < n; ++ab) {
          const SymValue& wb = cb[static_cast<size_t>(ab)];
          if (wb.numeric() == Complex(0.0, 0.0) && wb.symbols().empty()) continue;
          const SymValue weight = wa * wb;
          for (int nu = 0; nu < n; ++nu) {
            SymValue c = basis_correlator({{la, aa}, {lb, ab}, {0, nu}});
            lowered[static_cast<size_t>(nu)] += weight * c;
          }
        }
      }
    }
  }
  auto& lvl = out.levels[0];
  lvl.assign(static_cast<size_t>(n), SymValue());
  const Eigen::MatrixXcd& einv = model_->eta_inv();
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = 0; nu < n; ++nu) {
      if (einv(mu, nu) == Complex(0.0, 0.0)) continue;
      lvl[static_cast<size_t>(mu)] += lowered[static_cast<size_t>(nu)] * einv(mu, nu);
    }
  }
  return out;
}

SymValue DescendantContext::correlator(const std::vector<ExprPtr>& args) {
  if (args.size() < 3) {
    throw DescendantError("descendant correlator requires at least three arguments");
  }
  std::vector<const Expansion*> exps;
  exps.reserve(args.size());
  for (const auto& a : args) exps.push_back(&expand(a));

  SymValue total;
  std::vector<std::pair<int, int>> insertions(args.size());
  std::function<void(size_t, SymValue)> walk = [&](size_t slot, SymValue weight) {
    if (slot == exps.size()) {
      total += weight * basis_correlator(insertions);
      return;
    }
    for (const auto& [level, coeffs] : exps[slot]->levels) {
      for (int a = 0; a < model_->dim(); ++a) {
        const SymValue& c = coeffs[static_cast<size_t>(a)];
        if (c.numeric() == Complex(0.0, 0.0) && c.symbols().empty()) continue;
        insertions[slot] = {level, a};
        walk(slot + 1, weight * c);
      }
    }
  };
  walk(0, SymValue(Complex(1.0, 0.0)));
  return total;
}

Complex DescendantContext::correlator_value(const std::vector<ExprPtr>& args, double tol) {
  return correlator(args).resolve(tol);
}

SymValue DescendantContext::inner(const ExprPtr& a, const ExprPtr& b) {
  return correlator({expr::s_field(), a, b});
}

Complex DescendantContext::inner_value(const ExprPtr& a, const ExprPtr& b, double tol) {
  return inner(a, b).resolve(tol);
}

SymValue DescendantContext::basis_correlator(std::vector<std::pair<int, int>> insertions) {
  for (const auto& [level, alpha] : insertions) {
    if (level < 0 || level > max_level_) {
      throw DescendantError("descendant level " + std::to_string(level) +
                            " outside [0, " + std::to_string(max_level_) + "]");
    }
    if (alpha < 0 || alpha >= model_->dim()) {
      throw DescendantError("insertion index out of range");
    }
  }
  std::sort(insertions.begin(), insertions.end());
  auto it = correlator_memo_.find(insertions);
  if (it != correlator_memo_.end()) return it->second;
  SymValue value = reduce(insertions);
  correlator_memo_.emplace(std::move(insertions), value);
  return value;
}

SymValue DescendantContext::reduce(const std::vector<std::pair<int, int>>& insertions) {
  const size_t k = insertions.size();
  int total_level = 0;
  for (const auto& [level, alpha] : insertions) total_level += level;

  // All-primary correlators evaluate from the potential's derivative tables;
  // the identity-direction insertions are consistent with the string rule by
  // the identity axiom.
  if (total_level == 0) {
    std::vector<int> idx;
    idx.reserve(k);
    for (const auto& [level, alpha] : insertions) idx.push_back(alpha);
    if (k >= 1) return SymValue(corr_.entry(idx));
    throw DescendantError("empty correlator");
  }

  // String rule: remove one identity insertion, lowering each other slot.
  // (The two-point eta term cannot fire here since some level is positive.)
  for (size_t j = 0; j < k; ++j) {
    if (insertions[j].first == 0 && insertions[j].second == 0) {
      SymValue acc;
      for (size_t l = 0; l < k; ++l) {
        if (l == j || insertions[l].first == 0) continue;
        std::vector<std::pair<int, int>> next;
        next.reserve(k - 1);
        for (size_t m = 0; m < k; ++m) {
          if (m == j) continue;
          auto ins = insertions[m];
          if (m == l) --ins.first;
          next.push_back(ins);
        }
        acc += basis_correlator(std::move(next));
      }
      return acc;
    }
  }

  // Irreducible low-point descendant data.
  if (k == 1 || k == 2) return SymValue::symbol(insertion_name(insertions));

  // Topological recursion: lower the highest-level insertion against the two
  // lowest-level spectators, distributing the rest over both factors.
  size_t target = 0;
  for (size_t j = 1; j < k; ++j) {
    if (insertions[j] > insertions[target]) target = j;
  }
  std::vector<std::pair<int, int>> rest;
  rest.reserve(k - 1);
  for (size_t j = 0; j < k; ++j) {
    if (j != target) rest.push_back(insertions[j]);
  }
  std::sort(rest.begin(), rest.end());
  const auto x = rest[0];
  const auto y = rest[1];
  const std::vector<std::pair<int, int>> spectators(rest.begin() + 2, rest.end());
  const auto lowered = std::make_pair(insertions[target].first - 1, insertions[target].second);

  const int n = model_->dim();
  const Eigen::MatrixXcd& einv = model_->eta_inv();
  SymValue acc;
  const size_t subsets = size_t{1} << spectators.size();
  for (size_t mask = 0; mask < subsets; ++mask) {
    std::vector<std::pair<int, int>> left{lowered};
    std::vector<std::pair<int, int>> right{x, y};
    for (size_t s = 0; s < spectators.size(); ++s) {
      if (mask & (size_t{1} << s)) {
        left.push_back(spectators[s]);
      } else {
        right.push_back(spectators[s]);
      }
    }
    for (int nu = 0; nu < n; ++nu) {
      for (int mu = 0; mu < n; ++mu) {
        if (einv(nu, mu) == Complex(0.0, 0.0)) continue;
        auto lf = left;
        lf.emplace_back(0, nu);
        auto rf = right;
        rf.emplace_back(0, mu);
        acc += einv(nu, mu) * (basis_correlator(std::move(lf)) * basis_correlator(std::move(rf)));
      }
    }
  }
  return acc;
}

}  // namespace frobforge
