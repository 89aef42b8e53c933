/// \file descendants.hpp
/// Symbolic vector fields on the big phase space, restricted to the small
/// slice: level-graded expansions, the shift operators tau_+/tau_-, the
/// T operator, products, and a confluent reduction of descendant correlators
/// to slice data via the topological recursion and string rules. Correlator
/// values that the slice potential does not determine survive as named
/// symbols and must cancel structurally; a nonzero symbolic residue is an
/// error, never a silent drop.

#pragma once

#include "frobforge/calculus.hpp"
#include "frobforge/model.hpp"

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace frobforge {

struct DescendantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Complex value plus a linear combination of named irreducible correlator
/// symbols. Products of two symbolic values are irreducible and throw.
class SymValue {
 public:
  SymValue() = default;
  explicit SymValue(Complex v) : num_(v) {}
  SymValue(Complex v, std::map<std::string, Complex> symbols)
      : num_(v), symbols_(std::move(symbols)) {}

  static SymValue symbol(const std::string& name) {
    SymValue s;
    s.symbols_[name] = Complex(1.0, 0.0);
    return s;
  }

  const Complex& numeric() const { return num_; }
  const std::map<std::string, Complex>& symbols() const { return symbols_; }
  bool is_numeric(double tol = 0.0) const;

  SymValue& operator+=(const SymValue& o);
  SymValue& operator-=(const SymValue& o);
  SymValue& operator*=(const Complex& c);
  friend SymValue operator+(SymValue a, const SymValue& b) { return a += b; }
  friend SymValue operator-(SymValue a, const SymValue& b) { return a -= b; }
  friend SymValue operator*(SymValue a, const Complex& c) { return a *= c; }
  friend SymValue operator*(const Complex& c, SymValue a) { return a *= c; }
  /// Product; throws DescendantError when both factors carry symbols.
  friend SymValue operator*(const SymValue& a, const SymValue& b);

  /// Largest |coefficient| over the symbolic part.
  double symbol_norm() const;
  /// Numeric value after requiring every symbol coefficient to cancel below
  /// tol * max(1, |numeric|). Throws DescendantError listing the survivor.
  Complex resolve(double tol = 1e-9) const;

 private:
  void prune();
  Complex num_{0.0, 0.0};
  std::map<std::string, Complex> symbols_;
};

/// Level-graded expansion of a vector field at a fixed slice point:
/// sum over levels m >= 0 of coefficient vectors in the primary basis.
struct Expansion {
  int dim = 0;
  std::map<int, std::vector<SymValue>> levels;

  const SymValue* coefficient(int level, int alpha) const;
  Expansion& add_scaled(const Expansion& o, const Complex& w);
  /// Numeric primary (level-0) value; higher levels need not vanish.
  Eigen::VectorXcd primary_value(double tol = 1e-9) const;
  double max_difference(const Expansion& o) const;
};

class VectorFieldExpr;
using ExprPtr = std::shared_ptr<const VectorFieldExpr>;

/// Expression tree for vector fields on the big phase space. Nodes are
/// immutable; build with the factory functions below.
class VectorFieldExpr {
 public:
  enum class Kind {
    PrimaryAffine,  ///< primary field with coefficients affine in t
    S,              ///< string field
    X,              ///< Euler field
    L0,             ///< -X - (b_1 + 1) T(S)
    TauPlus,
    TauMinus,
    T,    ///< T(W) = tau_+(W) - S o tau_+(W)
    Prod,
    Sum,
  };

  Kind kind;
  Eigen::MatrixXcd lin;  ///< PrimaryAffine: value(t) = cst + lin t
  Eigen::VectorXcd cst;
  std::vector<ExprPtr> children;
  std::vector<Complex> weights;  ///< Sum only, parallel to children
};

namespace expr {
ExprPtr primary(const Eigen::VectorXcd& value);
ExprPtr primary_affine(const Eigen::MatrixXcd& lin, const Eigen::VectorXcd& cst);
ExprPtr gamma(int alpha, int dim);
ExprPtr s_field();
ExprPtr x_field();
ExprPtr l0_field();
ExprPtr tau_plus(ExprPtr w);
ExprPtr tau_minus(ExprPtr w);
ExprPtr t_op(ExprPtr w);
ExprPtr prod(ExprPtr a, ExprPtr b);
ExprPtr sum(std::vector<ExprPtr> terms, std::vector<Complex> weights = {});
ExprPtr scale(const Complex& w, ExprPtr a);
}  // namespace expr

/// Reduction engine bound to a model and slice point. Memoizes expansions
/// and reduced basis correlators.
class DescendantContext {
 public:
  DescendantContext(const FrobeniusModel& model, Eigen::VectorXcd point, int max_level = 2);

  const FrobeniusModel& model() const { return *model_; }
  const Eigen::VectorXcd& point() const { return point_; }
  const Correlators& correlators() const { return corr_; }
  int max_level() const { return max_level_; }

  /// Level expansion of an expression at the context point.
  const Expansion& expand(const ExprPtr& e);

  /// Genus-0 correlator of expression arguments (at least 3), reduced to
  /// slice data plus any surviving symbols.
  SymValue correlator(const std::vector<ExprPtr>& args);
  Complex correlator_value(const std::vector<ExprPtr>& args, double tol = 1e-9);

  /// Frame-metric pairing <a, b> = <<S a b>>.
  SymValue inner(const ExprPtr& a, const ExprPtr& b);
  Complex inner_value(const ExprPtr& a, const ExprPtr& b, double tol = 1e-9);

  /// Basis correlator of descendant insertions (level, alpha), any arity
  /// >= 1; exposed for tests.
  SymValue basis_correlator(std::vector<std::pair<int, int>> insertions);

 private:
  SymValue reduce(const std::vector<std::pair<int, int>>& insertions);
  Expansion expand_node(const VectorFieldExpr& e);
  Expansion product_expansion(const Expansion& a, const Expansion& b);

  const FrobeniusModel* model_;
  Eigen::VectorXcd point_;
  Correlators corr_;
  int max_level_;
  std::map<const VectorFieldExpr*, Expansion> expansion_memo_;
  std::vector<ExprPtr> retained_;
  std::map<std::vector<std::pair<int, int>>, SymValue> correlator_memo_;
};

}  // namespace frobforge
