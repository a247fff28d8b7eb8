#include "mech/geometry.hpp"

#include <cmath>

namespace mech {

namespace {

void check_point(const Eigen::VectorXd &p, int n) {
  if (static_cast<int>(p.size()) != n)
    throw Error("point dimension " + std::to_string(p.size()) + " does not match metric dimension " +
                std::to_string(n));
}

} // namespace

MetricValues metric_at(const Metric &g, const Eigen::VectorXd &p, double degeneracy_tol) {
  const int n = g.dim();
  check_point(p, n);
  MetricValues mv;
  mv.g.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = g.component(i, j).value(p);
      mv.g(i, j) = v;
      mv.g(j, i) = v;
    }
  mv.det = mv.g.determinant();
  if (!(std::abs(mv.det) > degeneracy_tol))
    throw GeometryError("degenerate metric: |det g| = " + format_double(std::abs(mv.det)) +
                        " at the evaluation point");
  mv.ginv = mv.g.inverse();
  return mv;
}

MetricJet metric_jet_at(const Metric &g, const Eigen::VectorXd &p, double degeneracy_tol) {
  const int n = g.dim();
  check_point(p, n);
  MetricJet mj;
  mj.g.resize(n, n);
  mj.dg.assign(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Jet jet = g.component(i, j).jet(p, 1);
      mj.g(i, j) = jet.value;
      mj.g(j, i) = jet.value;
      for (int k = 0; k < n; ++k) {
        mj.dg[static_cast<std::size_t>(k)](i, j) = jet.grad(k);
        mj.dg[static_cast<std::size_t>(k)](j, i) = jet.grad(k);
      }
    }
  mj.det = mj.g.determinant();
  if (!(std::abs(mj.det) > degeneracy_tol))
    throw GeometryError("degenerate metric: |det g| = " + format_double(std::abs(mj.det)) +
                        " at the evaluation point");
  mj.ginv = mj.g.inverse();
  mj.dginv.resize(static_cast<std::size_t>(n));
  mj.dlog_sqrt_det.resize(n);
  for (int k = 0; k < n; ++k) {
    const auto &dgk = mj.dg[static_cast<std::size_t>(k)];
    mj.dginv[static_cast<std::size_t>(k)] = -mj.ginv * dgk * mj.ginv;
    mj.dlog_sqrt_det(k) = 0.5 * (mj.ginv * dgk).trace();
  }
  return mj;
}

Christoffel christoffel(const MetricJet &mj) {
  const int n = mj.dim();
  Christoffel gamma(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += mj.ginv(k, l) * (mj.dg[static_cast<std::size_t>(i)](j, l) +
                                mj.dg[static_cast<std::size_t>(j)](i, l) -
                                mj.dg[static_cast<std::size_t>(l)](i, j));
        const double v = 0.5 * s;
        gamma[static_cast<std::size_t>(k)](i, j) = v;
        gamma[static_cast<std::size_t>(k)](j, i) = v;
      }
  return gamma;
}

Christoffel christoffel_at(const Metric &g, const Eigen::VectorXd &p, double degeneracy_tol) {
  return christoffel(metric_jet_at(g, p, degeneracy_tol));
}

Eigen::VectorXd grad_at(const OneFormField &a, const Metric &g, const Eigen::VectorXd &p) {
  const MetricValues mv = metric_at(g, p);
  Eigen::VectorXd av(a.dim());
  for (int i = 0; i < a.dim(); ++i) av(i) = a.comp[static_cast<std::size_t>(i)].value(p);
  return mv.ginv * av;
}

Eigen::VectorXd grad_at(const ScalarField &f, const Metric &g, const Eigen::VectorXd &p) {
  const MetricValues mv = metric_at(g, p);
  return mv.ginv * f.f.jet(p, 1).grad;
}

double divergence(const FieldJet &u, const MetricJet &mj) {
  return u.jac.trace() + u.comp.dot(mj.dlog_sqrt_det);
}

namespace {

FieldJet eval_field(const std::vector<Expr> &comp, const Eigen::VectorXd &p) {
  const int n = static_cast<int>(comp.size());
  FieldJet fj;
  fj.comp.resize(n);
  fj.jac.resize(n, static_cast<int>(p.size()));
  for (int i = 0; i < n; ++i) {
    const Jet j = comp[static_cast<std::size_t>(i)].jet(p, 1);
    fj.comp(i) = j.value;
    fj.jac.row(i) = j.grad.transpose();
  }
  return fj;
}

} // namespace

double divergence_at(const VectorField &u, const Metric &g, const Eigen::VectorXd &p) {
  return divergence(eval_field(u.comp, p), metric_jet_at(g, p));
}

double laplace_beltrami(const Jet &f, const MetricJet &mj) {
  if (f.order < 2) throw Error("Laplace-Beltrami needs an order-2 jet");
  const Christoffel gamma = christoffel(mj);
  Eigen::MatrixXd m = f.hess;
  for (int k = 0; k < mj.dim(); ++k) m -= f.grad(k) * gamma[static_cast<std::size_t>(k)];
  return mj.ginv.cwiseProduct(m).sum();
}

double laplacian_at(const ScalarField &f, const Metric &g, const Eigen::VectorXd &p) {
  return laplace_beltrami(f.f.jet(p, 2), metric_jet_at(g, p));
}

Eigen::MatrixXd exterior_derivative(const FieldJet &one_form) {
  return one_form.jac.transpose() - one_form.jac;
}

Eigen::MatrixXd exterior_derivative_1form_at(const OneFormField &a, const Eigen::VectorXd &p) {
  return exterior_derivative(eval_field(a.comp, p));
}

double ThreeFormValues::at(int i, int j, int k) const {
  // strict lexicographic index of (i,j,k), i<j<k
  auto c2 = [](int m) { return m * (m - 1) / 2; };
  auto c3 = [](int m) { return m * (m - 1) * (m - 2) / 6; };
  const int idx = c3(n) - c3(n - i) + c2(n - 1 - i) - c2(n - j) + (k - j - 1);
  return comp[static_cast<std::size_t>(idx)];
}

double ThreeFormValues::max_abs() const {
  double m = 0.0;
  for (double v : comp) m = std::max(m, std::abs(v));
  return m;
}

ThreeFormValues exterior_derivative_2form_at(const TwoFormField &F, const Eigen::VectorXd &p) {
  const int n = F.dim();
  ThreeFormValues out;
  out.n = n;
  if (n <= 2) return out;
  // dF2[k](i,j) = d_k F_ij (full antisymmetric grid in (i,j))
  std::vector<Eigen::MatrixXd> dF(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Jet jet = F.upper(i, j).jet(p, 1);
      for (int k = 0; k < n; ++k) {
        dF[static_cast<std::size_t>(k)](i, j) = jet.grad(k);
        dF[static_cast<std::size_t>(k)](j, i) = -jet.grad(k);
      }
    }
  out.comp.reserve(static_cast<std::size_t>(ThreeFormValues::count(n)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        out.comp.push_back(dF[static_cast<std::size_t>(i)](j, k) +
                           dF[static_cast<std::size_t>(j)](k, i) +
                           dF[static_cast<std::size_t>(k)](i, j));
  return out;
}

Eigen::VectorXd codifferential_2form_at(const TwoFormField &F, const Metric &g,
                                        const Eigen::VectorXd &p) {
  const int n = F.dim();
  const MetricJet mj = metric_jet_at(g, p);
  Eigen::MatrixXd Fv = Eigen::MatrixXd::Zero(n, n);
  std::vector<Eigen::MatrixXd> dFv(static_cast<std::size_t>(n), Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Jet jet = F.upper(i, j).jet(p, 1);
      Fv(i, j) = jet.value;
      Fv(j, i) = -jet.value;
      for (int k = 0; k < n; ++k) {
        dFv[static_cast<std::size_t>(k)](i, j) = jet.grad(k);
        dFv[static_cast<std::size_t>(k)](j, i) = -jet.grad(k);
      }
    }
  const Eigen::MatrixXd Fup = mj.ginv * Fv * mj.ginv; // F^ik
  // D^k = |det|^{-1/2} d_i(|det|^{1/2} F^ik)
  Eigen::VectorXd D = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    const auto &dgi = mj.dginv[static_cast<std::size_t>(i)];
    const Eigen::MatrixXd dFup_i =
        dgi * Fv * mj.ginv + mj.ginv * dFv[static_cast<std::size_t>(i)] * mj.ginv +
        mj.ginv * Fv * dgi;
    for (int k = 0; k < n; ++k) D(k) += dFup_i(i, k) + Fup(i, k) * mj.dlog_sqrt_det(i);
  }
  return -(mj.g * D);
}

Eigen::MatrixXd sym_covariant_derivative_at(const OneFormField &tau, const Metric &g,
                                            const Eigen::VectorXd &p) {
  const int n = tau.dim();
  const MetricJet mj = metric_jet_at(g, p);
  const Christoffel gamma = christoffel(mj);
  const FieldJet tj = eval_field(tau.comp, p);
  Eigen::MatrixXd S(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = 0.5 * (tj.jac(j, i) + tj.jac(i, j));
      for (int k = 0; k < n; ++k) v -= gamma[static_cast<std::size_t>(k)](i, j) * tj.comp(k);
      S(i, j) = v;
    }
  return S;
}

// ---------------------------------------------------------------------------
// Preset catalog

const std::vector<std::string> &preset_metric_names() {
  static const std::vector<std::string> names = {"euclidean", "minkowski", "polar2", "sphere2",
                                                 "hyperbolic2"};
  return names;
}

bool is_preset_metric(const std::string &name) {
  for (const auto &n : preset_metric_names())
    if (n == name) return true;
  return false;
}

std::vector<std::vector<std::string>> preset_metric_components(const std::string &name,
                                                               const Chart &chart) {
  const int n = chart.dim();
  auto diag = [&](const std::vector<std::string> &entries) {
    std::vector<std::vector<std::string>> grid(static_cast<std::size_t>(n),
                                               std::vector<std::string>(static_cast<std::size_t>(n),
                                                                        "0"));
    for (int i = 0; i < n; ++i)
      grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
          entries[static_cast<std::size_t>(i)];
    return grid;
  };
  auto need2 = [&]() {
    if (n != 2) throw Error("preset '" + name + "' requires a 2-dimensional chart");
  };
  if (name == "euclidean")
    return diag(std::vector<std::string>(static_cast<std::size_t>(n), "1"));
  if (name == "minkowski") {
    std::vector<std::string> d(static_cast<std::size_t>(n), "1");
    d[0] = "-1";
    return diag(d);
  }
  if (name == "polar2") {
    need2();
    return diag({"1", chart.coord(0) + "^2"});
  }
  if (name == "sphere2") {
    need2();
    return diag({"1", "sin(" + chart.coord(0) + ")^2"});
  }
  if (name == "hyperbolic2") {
    need2();
    const std::string e = "1/" + chart.coord(1) + "^2";
    return diag({e, e});
  }
  throw Error("unknown preset metric '" + name + "'");
}

Metric preset_metric(const std::string &name, const Chart &chart) {
  return parse_metric(preset_metric_components(name, chart), chart);
}

} // namespace mech
