#ifndef MECH_CHART_HPP
#define MECH_CHART_HPP

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mech/errors.hpp"

namespace mech {

using Interval = std::pair<double, double>;
using Box = std::vector<Interval>;

/// A single coordinate chart: ordered coordinate names plus an optional
/// open-box domain (one interval per coordinate, infinities allowed).
class Chart {
public:
  Chart() = default;
  explicit Chart(std::vector<std::string> coords, Box bounds = {});

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<std::string> &coords() const { return coords_; }
  const std::string &coord(int i) const { return coords_[static_cast<std::size_t>(i)]; }
  bool bounded() const { return !bounds_.empty(); }
  const Box &bounds() const { return bounds_; }

  /// Open-box membership; always true for an unbounded chart.
  bool contains(const Eigen::VectorXd &x) const;

  /// Sampling box: declared bounds intersected with [-1, 1] per coordinate,
  /// falling back to a unit-width window when the intersection is empty.
  Box sample_box() const;

  /// Coordinate names for expressions over TM: base names followed by the
  /// velocity names ("d" + name).
  std::vector<std::string> phase_coords() const;

private:
  std::vector<std::string> coords_;
  Box bounds_;
};

} // namespace mech

#endif
