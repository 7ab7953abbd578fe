#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "calderon/fourier.hpp"

namespace calderon {

// Sample the curve sum_n g_n e^{in s} at grid_size uniform parameter values.
Eigen::VectorXcd evaluate(const Eigen::VectorXcd& g, int grid_size);

// max_j | |gamma'(s_j)| - 1 |, the deviation from unit speed.
double speed_deviation(const Eigen::VectorXcd& g, int grid_size);

struct simplicity_report {
  bool simple = true;
  // Offending parameter pairs (s_i, s_j), proximity hits and segment
  // crossings alike.
  std::vector<std::pair<double, double>> witnesses;
};

// A curve is rejected as non-simple when two non-adjacent polyline segments
// cross, or when two parameter-distant points (more than 10*proximity apart
// along the circle) come closer than proximity in the plane. The second test
// catches tangential overlaps such as multiply traversed circles.
simplicity_report is_simple(const Eigen::VectorXcd& g, int grid_size = 4096,
                            double proximity = 1e-3);

struct alignment {
  cdouble alpha{1.0, 0.0};  // rotation, |alpha| = 1
  cdouble shift{0.0, 0.0};  // translation
  double distance = 0.0;    // L2 distance after alignment (Parseval)
};

// Minimizes sum_{n != 0} |alpha f_n - g_n|^2 over unit alpha and matches the
// means by a shift. alpha = 1 when the cross-correlation vanishes.
alignment align(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

}  // namespace calderon
