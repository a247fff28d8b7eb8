#ifndef MECH_SAMPLING_HPP
#define MECH_SAMPLING_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mech/chart.hpp"

namespace mech {

/// How to draw evaluation points: an explicit list wins; otherwise `count`
/// low-discrepancy points, with `seed` offsetting the sequence start so
/// distinct seeds give distinct (still deterministic) sample sets.
struct SampleSpec {
  int count = 256;
  std::uint64_t seed = 0;
  std::vector<Eigen::VectorXd> points;
};

/// Halton sequence in (0,1)^dim, one prime base per dimension.
class Halton {
public:
  Halton(int dim, std::uint64_t start_index = 1);
  Eigen::VectorXd next();

private:
  int dim_;
  std::uint64_t index_;
};

/// `count` Halton points mapped into the box.
std::vector<Eigen::VectorXd> halton_in_box(const Box &box, int count,
                                           std::uint64_t seed = 0);

/// Base points in the chart's sample box (or the explicit list).
std::vector<Eigen::VectorXd> sample_points(const Chart &chart, const SampleSpec &spec);

/// Phase points (x, v): x in the chart's sample box, v in [-1,1]^n, drawn
/// from one 2n-dimensional Halton stream.
std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>
sample_states(const Chart &chart, const SampleSpec &spec);

} // namespace mech

#endif
