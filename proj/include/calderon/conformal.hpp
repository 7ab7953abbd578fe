#pragma once

#include <Eigen/Dense>

#include "calderon/fourier.hpp"

namespace calderon {

// Holomorphic map Phi(z) = scale * sum_k poly[k] z^k, injective on the closed
// unit disk. The image boundary is the curve Phi(e^{i theta}); scale is the
// length normalization making the boundary length 2 pi.
struct conformal_map {
  Eigen::VectorXcd poly;
  double scale = 1.0;
};

cdouble map_eval(const conformal_map& map, cdouble z);
cdouble map_deriv(const conformal_map& map, cdouble z);

// Default forward grid: max(1024, 32*n_max) rounded up to a power of two.
int forward_grid(int n_max);

// |Phi'(e^{i theta_j})| on the uniform grid; throws invalid_input when the
// minimum falls below min_speed (degenerate immersion).
Eigen::VectorXd boundary_speed(const conformal_map& map, int grid_size,
                               double min_speed = 1e-8);

// Returns the map rescaled so the boundary curve has total length 2 pi.
conformal_map normalize_length(const conformal_map& map, int grid_size);

// Arc length as a function of the angle: speed samples and s(theta_j) with
// s(0) = 0, built from the spectral antiderivative of (speed - mean).
struct boundary_parametrization {
  int grid_size = 0;
  Eigen::VectorXd speed;
  Eigen::VectorXd s_of_theta;
};

boundary_parametrization arclength_profile(const conformal_map& map, int grid_size);

// Coefficients of the boundary curve in the angle variable: frequency k
// carries scale * poly[k]. Used for the simple-boundary sanity check.
Eigen::VectorXcd boundary_coeffs(const conformal_map& map);

}  // namespace calderon
