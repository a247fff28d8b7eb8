#ifndef MECH_FIELDS_HPP
#define MECH_FIELDS_HPP

#include <string>
#include <vector>

#include "mech/chart.hpp"
#include "mech/expr.hpp"

namespace mech {

/// Single expression f(x) on the chart.
struct ScalarField {
  Expr f;
};

/// Covariant components a_i(x).
struct OneFormField {
  std::vector<Expr> comp;
  int dim() const { return static_cast<int>(comp.size()); }
};

/// Contravariant components u^i(x).
struct VectorField {
  std::vector<Expr> comp;
  int dim() const { return static_cast<int>(comp.size()); }
};

/// Antisymmetric 2-form; only the strict upper triangle (i < j) is stored,
/// row-major, so F_ji = -F_ij holds structurally.
class TwoFormField {
public:
  TwoFormField() = default;
  TwoFormField(int n, std::vector<Expr> upper);

  int dim() const { return n_; }
  /// Expression for F_ij with i < j.
  const Expr &upper(int i, int j) const;
  /// Antisymmetric value matrix at `p`.
  Eigen::MatrixXd values_at(const Eigen::VectorXd &p) const;

private:
  int n_ = 0;
  std::vector<Expr> upper_;
};

/// Symmetric matrix of expressions housing the metric; the upper triangle
/// (i <= j) is stored, so symmetry holds structurally. No signature
/// assumption is made: components decide it pointwise.
class Metric {
public:
  Metric() = default;
  Metric(int n, std::vector<Expr> upper);

  int dim() const { return n_; }
  /// Expression for g_ij (any index order).
  const Expr &component(int i, int j) const;
  /// Full component grid as source strings (for listings).
  std::vector<std::vector<std::string>> component_strings() const;

private:
  int n_ = 0;
  std::vector<Expr> upper_; // row-major i <= j
};

// Construction from source strings, validating sizes against the chart.
ScalarField parse_scalar(const std::string &src, const Chart &chart);
OneFormField parse_one_form(const std::vector<std::string> &src, const Chart &chart);
VectorField parse_vector(const std::vector<std::string> &src, const Chart &chart);
/// rows[i] holds the entries F_{i,i+1} .. F_{i,n-1}; the last row is empty
/// or omitted.
TwoFormField parse_two_form(const std::vector<std::vector<std::string>> &rows,
                            const Chart &chart);
/// Full n x n grid; the lower triangle must textually mirror the upper.
Metric parse_metric(const std::vector<std::vector<std::string>> &grid, const Chart &chart);

} // namespace mech

#endif
