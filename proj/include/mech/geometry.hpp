#ifndef MECH_GEOMETRY_HPP
#define MECH_GEOMETRY_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mech/chart.hpp"
#include "mech/fields.hpp"

namespace mech {

/// Points with |det g| at or below this are rejected as degenerate.
inline constexpr double kDegeneracyTol = 1e-12;

/// Metric, cometric and determinant at one point.
struct MetricValues {
  Eigen::MatrixXd g;
  Eigen::MatrixXd ginv;
  double det = 0.0;
};

/// MetricValues plus first derivatives of everything needed by the
/// differential operators.
struct MetricJet {
  Eigen::MatrixXd g;
  Eigen::MatrixXd ginv;
  double det = 0.0;
  std::vector<Eigen::MatrixXd> dg;    // dg[k](i,j) = d_k g_ij
  std::vector<Eigen::MatrixXd> dginv; // dginv[k] = -ginv dg[k] ginv
  Eigen::VectorXd dlog_sqrt_det;      // d_k log sqrt|det g|

  int dim() const { return static_cast<int>(g.rows()); }
};

/// Christoffel symbols: gamma[k](i,j) = G^k_ij, symmetric in (i, j).
using Christoffel = std::vector<Eigen::MatrixXd>;

/// Evaluated vector or covector field at a point: components plus their
/// Jacobian, jac(i, j) = d_j comp_i.
struct FieldJet {
  Eigen::VectorXd comp;
  Eigen::MatrixXd jac;
};

MetricValues metric_at(const Metric &g, const Eigen::VectorXd &p,
                       double degeneracy_tol = kDegeneracyTol);
MetricJet metric_jet_at(const Metric &g, const Eigen::VectorXd &p,
                        double degeneracy_tol = kDegeneracyTol);

Christoffel christoffel(const MetricJet &mj);
Christoffel christoffel_at(const Metric &g, const Eigen::VectorXd &p,
                           double degeneracy_tol = kDegeneracyTol);

/// Index raising: (grad a)^i = g^ij a_j; a scalar is differentiated first.
Eigen::VectorXd grad_at(const OneFormField &a, const Metric &g, const Eigen::VectorXd &p);
Eigen::VectorXd grad_at(const ScalarField &f, const Metric &g, const Eigen::VectorXd &p);

/// div u = |det g|^{-1/2} d_i(|det g|^{1/2} u^i).
double divergence_at(const VectorField &u, const Metric &g, const Eigen::VectorXd &p);
double divergence(const FieldJet &u, const MetricJet &mj);

/// Laplace-Beltrami of a scalar, computed from the fused covariant form
/// g^ij (f_ij - G^k_ij f_k).
double laplacian_at(const ScalarField &f, const Metric &g, const Eigen::VectorXd &p);
/// Same kernel on a precomputed order-2 jet.
double laplace_beltrami(const Jet &f, const MetricJet &mj);

/// (da)_ij = d_i a_j - d_j a_i as an antisymmetric value matrix.
Eigen::MatrixXd exterior_derivative_1form_at(const OneFormField &a, const Eigen::VectorXd &p);
/// Same on an evaluated one-form.
Eigen::MatrixXd exterior_derivative(const FieldJet &one_form);

/// 3-form values, strict lexicographic triples i < j < k.
struct ThreeFormValues {
  int n = 0;
  std::vector<double> comp;

  static int count(int n) { return n * (n - 1) * (n - 2) / 6; }
  double at(int i, int j, int k) const;
  double max_abs() const;
};

/// (dF)_ijk = d_i F_jk + d_j F_ki + d_k F_ij; empty for n <= 2.
ThreeFormValues exterior_derivative_2form_at(const TwoFormField &F, const Eigen::VectorXd &p);

/// Codifferential of a 2-form under the fixed convention
/// (dF)*_j = -|det g|^{-1/2} d_i(|det g|^{1/2} F^ik) g_kj.
Eigen::VectorXd codifferential_2form_at(const TwoFormField &F, const Metric &g,
                                        const Eigen::VectorXd &p);

/// S_ij = (1/2)(nabla_i t_j + nabla_j t_i) with nabla_i t_j = d_i t_j - G^k_ij t_k.
Eigen::MatrixXd sym_covariant_derivative_at(const OneFormField &tau, const Metric &g,
                                            const Eigen::VectorXd &p);

// --- Preset metric catalog ---------------------------------------------------
// euclidean(n), minkowski(n) with signature (-,+,...,+), polar2 diag(1, r^2),
// sphere2 diag(1, sin^2 q1), hyperbolic2 diag(1/q2^2, 1/q2^2).

const std::vector<std::string> &preset_metric_names();
bool is_preset_metric(const std::string &name);
/// Component grid of the preset written in the chart's coordinate names.
std::vector<std::vector<std::string>> preset_metric_components(const std::string &name,
                                                               const Chart &chart);
Metric preset_metric(const std::string &name, const Chart &chart);

} // namespace mech

#endif
