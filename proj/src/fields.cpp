#include "mech/fields.hpp"

#include <algorithm>
#include <cctype>

namespace mech {

// ---------------------------------------------------------------------------
// Chart

namespace {

std::string trimmed(const std::string &s) {
  auto b = s.begin(), e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
  return std::string(b, e);
}

} // namespace

Chart::Chart(std::vector<std::string> coords, Box bounds)
    : coords_(std::move(coords)), bounds_(std::move(bounds)) {
  if (coords_.empty()) throw Error("chart needs at least one coordinate");
  // parse() enforces identifier validity, distinctness and function-name
  // shadowing; run it once on a trivial source to fail early.
  parse("0", coords_);
  if (!bounds_.empty()) {
    if (bounds_.size() != coords_.size())
      throw Error("chart bounds count does not match coordinate count");
    for (const auto &[lo, hi] : bounds_)
      if (!(lo < hi)) throw Error("chart bounds do not form a nonempty open box");
  }
}

bool Chart::contains(const Eigen::VectorXd &x) const {
  if (static_cast<int>(x.size()) != dim()) return false;
  if (bounds_.empty()) return true;
  for (int i = 0; i < dim(); ++i) {
    const auto &[lo, hi] = bounds_[static_cast<std::size_t>(i)];
    if (!(x(i) > lo && x(i) < hi)) return false;
  }
  return true;
}

Box Chart::sample_box() const {
  Box box(static_cast<std::size_t>(dim()), {-1.0, 1.0});
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    const auto &[lo, hi] = bounds_[i];
    double a = std::max(lo, -1.0), b = std::min(hi, 1.0);
    if (!(a < b)) {
      // Declared box lies outside [-1,1]; take a unit-width window inside it.
      a = std::isfinite(lo) ? lo : hi - 1.0;
      b = std::isfinite(hi) ? hi : lo + 1.0;
      if (b - a > 1.0) b = a + 1.0;
    }
    box[i] = {a, b};
  }
  return box;
}

std::vector<std::string> Chart::phase_coords() const {
  std::vector<std::string> names = coords_;
  names.reserve(coords_.size() * 2);
  for (const auto &c : coords_) names.push_back("d" + c);
  return names;
}

// ---------------------------------------------------------------------------
// Field construction

ScalarField parse_scalar(const std::string &src, const Chart &chart) {
  return ScalarField{parse(src, chart.coords())};
}

OneFormField parse_one_form(const std::vector<std::string> &src, const Chart &chart) {
  if (static_cast<int>(src.size()) != chart.dim())
    throw Error("one-form needs " + std::to_string(chart.dim()) + " components, got " +
                std::to_string(src.size()));
  OneFormField a;
  for (const auto &s : src) a.comp.push_back(parse(s, chart.coords()));
  return a;
}

VectorField parse_vector(const std::vector<std::string> &src, const Chart &chart) {
  if (static_cast<int>(src.size()) != chart.dim())
    throw Error("vector field needs " + std::to_string(chart.dim()) + " components, got " +
                std::to_string(src.size()));
  VectorField u;
  for (const auto &s : src) u.comp.push_back(parse(s, chart.coords()));
  return u;
}

// ---------------------------------------------------------------------------
// TwoFormField

TwoFormField::TwoFormField(int n, std::vector<Expr> upper) : n_(n), upper_(std::move(upper)) {
  if (n_ < 1) throw Error("2-form dimension must be positive");
  const std::size_t want = static_cast<std::size_t>(n_) * (n_ - 1) / 2;
  if (upper_.size() != want)
    throw Error("2-form needs " + std::to_string(want) + " strict upper components, got " +
                std::to_string(upper_.size()));
}

const Expr &TwoFormField::upper(int i, int j) const {
  // Row-major strict upper: row i starts at i*n - i*(i+1)/2 - i ... derive
  // directly: offset = sum_{r<i} (n-1-r) + (j-i-1).
  const int row_start = i * (2 * n_ - i - 1) / 2;
  return upper_[static_cast<std::size_t>(row_start + (j - i - 1))];
}

Eigen::MatrixXd TwoFormField::values_at(const Eigen::VectorXd &p) const {
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      const double v = upper(i, j).value(p);
      F(i, j) = v;
      F(j, i) = -v;
    }
  return F;
}

TwoFormField parse_two_form(const std::vector<std::vector<std::string>> &rows,
                            const Chart &chart) {
  const int n = chart.dim();
  std::vector<Expr> upper;
  for (int i = 0; i < n - 1; ++i) {
    if (i >= static_cast<int>(rows.size()))
      throw Error("2-form row " + std::to_string(i) + " missing");
    const auto &row = rows[static_cast<std::size_t>(i)];
    if (static_cast<int>(row.size()) != n - 1 - i)
      throw Error("2-form row " + std::to_string(i) + " needs " + std::to_string(n - 1 - i) +
                  " entries, got " + std::to_string(row.size()));
    for (const auto &s : row) upper.push_back(parse(s, chart.coords()));
  }
  if (static_cast<int>(rows.size()) > std::max(n - 1, 0)) {
    // a trailing empty row for the last coordinate is tolerated
    for (std::size_t i = static_cast<std::size_t>(std::max(n - 1, 0)); i < rows.size(); ++i)
      if (!rows[i].empty()) throw Error("2-form has too many rows");
  }
  return TwoFormField(n, std::move(upper));
}

// ---------------------------------------------------------------------------
// Metric

Metric::Metric(int n, std::vector<Expr> upper) : n_(n), upper_(std::move(upper)) {
  if (n_ < 1) throw Error("metric dimension must be positive");
  const std::size_t want = static_cast<std::size_t>(n_) * (n_ + 1) / 2;
  if (upper_.size() != want)
    throw Error("metric needs " + std::to_string(want) + " upper components, got " +
                std::to_string(upper_.size()));
}

const Expr &Metric::component(int i, int j) const {
  if (i > j) std::swap(i, j);
  const int row_start = i * (2 * n_ - i + 1) / 2;
  return upper_[static_cast<std::size_t>(row_start + (j - i))];
}

std::vector<std::vector<std::string>> Metric::component_strings() const {
  std::vector<std::vector<std::string>> grid(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    grid[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j)
      grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = component(i, j).str();
  }
  return grid;
}

Metric parse_metric(const std::vector<std::vector<std::string>> &grid, const Chart &chart) {
  const int n = chart.dim();
  if (static_cast<int>(grid.size()) != n)
    throw Error("metric needs " + std::to_string(n) + " rows, got " +
                std::to_string(grid.size()));
  for (const auto &row : grid)
    if (static_cast<int>(row.size()) != n)
      throw Error("metric rows must have " + std::to_string(n) + " entries");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (trimmed(grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) !=
          trimmed(grid[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]))
        throw Error("metric entries (" + std::to_string(i) + "," + std::to_string(j) +
                    ") and transpose differ textually");
  std::vector<Expr> upper;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      upper.push_back(parse(grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                            chart.coords()));
  return Metric(n, std::move(upper));
}

} // namespace mech
