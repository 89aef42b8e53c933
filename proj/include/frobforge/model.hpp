/// \file model.hpp
/// Frobenius-manifold model definitions: the exact potential representation,
/// the built-in catalog, model-file I/O, and WDVV validation.

#pragma once

#include "frobforge/rational.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobforge {

/// Error hierarchy: configuration/definition problems (CLI exit code 1).
struct ModelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One exact potential term: coeff * prod_a t_a^{exponents[a]} * exp(sum_a exp_form[a] t_a).
struct PotentialTerm {
  RationalComplex coeff;
  std::vector<int> exponents;      ///< length N, nonnegative
  std::vector<Rational> exp_form;  ///< length N, linear form L(t) in the exponential

  bool same_shape(const PotentialTerm& o) const {
    return exponents == o.exponents && exp_form == o.exp_form;
  }
};

/// Sparse polynomial-times-exponential expression over t^1..t^N with exact
/// rational-complex coefficients. Closed under partial differentiation.
struct PotentialExpr {
  int dim = 0;
  std::vector<PotentialTerm> terms;

  /// Exact partial derivative with respect to t^a (0-based index).
  PotentialExpr derivative(int a) const;

  /// Merge terms with identical monomial/exponential shape; drop zero terms.
  void normalize();

  /// Numeric evaluation at a complex point (length dim).
  Complex evaluate(const Eigen::VectorXcd& t) const;
};

/// A term frozen to floating coefficients for fast repeated evaluation.
struct EvalTerm {
  Complex coeff;
  std::vector<int> exponents;
  std::vector<double> exp_form;
};

Complex evaluate_terms(const std::vector<EvalTerm>& terms, const Eigen::VectorXcd& t);

/// Immutable model: basis pairing, grading, first-Chern data, and the genus-0
/// potential restricted to the small slice. Derivative tables up to order 6
/// are precomputed exactly at construction.
class FrobeniusModel {
 public:
  static constexpr int kMaxDerivativeOrder = 6;

  FrobeniusModel(std::string name, int dim, Eigen::MatrixXcd eta, std::vector<Rational> b,
                 std::vector<std::vector<Rational>> c_matrix, PotentialExpr potential,
                 int truncation_degree);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Eigen::MatrixXcd& eta() const { return eta_; }
  const Eigen::MatrixXcd& eta_inv() const { return eta_inv_; }
  const std::vector<Rational>& b() const { return b_; }
  double b_value(int a) const { return b_double_[a]; }
  const std::vector<std::vector<Rational>>& c_matrix() const { return c_matrix_; }
  const PotentialExpr& potential() const { return potential_; }
  int truncation_degree() const { return truncation_; }

  /// Frozen derivative table for a sorted multi-index (size 0..6).
  const std::vector<EvalTerm>& derivative_terms(const std::vector<int>& sorted_multi_index) const;

 private:
  void validate() const;
  void build_tables();

  std::string name_;
  int dim_;
  Eigen::MatrixXcd eta_;
  Eigen::MatrixXcd eta_inv_;
  std::vector<Rational> b_;
  std::vector<double> b_double_;
  std::vector<std::vector<Rational>> c_matrix_;
  PotentialExpr potential_;
  int truncation_;
  std::map<std::vector<int>, std::vector<EvalTerm>> tables_;
};

/// Built-in catalog: "P1", "P2" (quantum cohomology of the line and the
/// plane), and "poly2d" (quartic polynomial 2d example, degenerate at t_2=0).
/// P2's instanton coefficients come from the WDVV series oracle; nothing past
/// N_1 = 1 is hard-coded.
FrobeniusModel builtin_catalog(const std::string& name, int truncation);

std::vector<std::string> catalog_names();

/// WDVV series oracle for the plane: derives N_1..N_degree by equating series
/// coefficients of the associativity equation for the quadruple (2,2,3,3).
/// Exact rational output; N_1 = 1 is the only seed.
std::vector<Rational> plane_instanton_numbers(int degree);

/// JSON model-file ingestion / emission (schema documented in README).
FrobeniusModel load_model(const std::string& json_text);
std::string emit_model(const FrobeniusModel& model);
FrobeniusModel load_model_file(const std::string& path);

/// WDVV associativity residual report.
struct WdvvReport {
  double max_residual = 0.0;
  int worst_point = -1;
  bool pass = false;
  /// Set when re-checking with the potential chopped two degrees lower makes
  /// the residual >=100x worse, attributing the failure to series truncation
  /// rather than a genuinely inconsistent model.
  bool truncation_dominated = false;
};

WdvvReport validate_wdvv(const FrobeniusModel& model, const std::vector<Eigen::VectorXcd>& points,
                         double tol);

}  // namespace frobforge
