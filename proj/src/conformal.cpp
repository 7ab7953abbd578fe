#include "calderon/conformal.hpp"

#include <cmath>
#include <numbers>

#include "calderon/errors.hpp"
#include "calderon/fourier.hpp"

namespace calderon {

namespace {

Eigen::VectorXcd unit_circle_samples(int grid_size) {
  Eigen::VectorXcd z(grid_size);
  const double step = 2.0 * std::numbers::pi / grid_size;
  for (int j = 0; j < grid_size; ++j) z[j] = std::polar(1.0, j * step);
  return z;
}

}  // namespace

cdouble map_eval(const conformal_map& map, cdouble z) {
  cdouble acc = 0.0;
  for (auto k = map.poly.size() - 1; k >= 0; --k) acc = acc * z + map.poly[k];
  return map.scale * acc;
}

cdouble map_deriv(const conformal_map& map, cdouble z) {
  const auto deg = map.poly.size() - 1;
  cdouble acc = 0.0;
  for (auto k = deg; k >= 1; --k)
    acc = acc * z + static_cast<double>(k) * map.poly[k];
  return map.scale * acc;
}

int forward_grid(int n_max) {
  if (n_max < 1) throw invalid_input("n_max must be >= 1");
  int p = 1;
  while (p < std::max(1024, 32 * n_max)) p *= 2;
  return p;
}

Eigen::VectorXd boundary_speed(const conformal_map& map, int grid_size,
                               double min_speed) {
  if (map.poly.size() < 2) throw invalid_input("polynomial must have degree >= 1");
  const Eigen::VectorXcd z = unit_circle_samples(grid_size);
  Eigen::VectorXd speed(grid_size);
  for (int j = 0; j < grid_size; ++j) {
    speed[j] = std::abs(map_deriv(map, z[j]));
    if (speed[j] < min_speed)
      throw invalid_input("boundary map is not an immersion: |dPhi| vanishes");
  }
  return speed;
}

conformal_map normalize_length(const conformal_map& map, int grid_size) {
  const Eigen::VectorXd speed = boundary_speed(map, grid_size);
  const double length = speed.mean() * 2.0 * std::numbers::pi;
  conformal_map out = map;
  out.scale = map.scale * 2.0 * std::numbers::pi / length;
  return out;
}

boundary_parametrization arclength_profile(const conformal_map& map,
                                           int grid_size) {
  boundary_parametrization param;
  param.grid_size = grid_size;
  param.speed = boundary_speed(map, grid_size);

  // s(theta) = mean(speed) * theta + periodic part, the latter integrated
  // spectrally from the zero-mean remainder of the speed.
  const double mean_speed = param.speed.mean();
  Eigen::VectorXcd dev(grid_size);
  for (int j = 0; j < grid_size; ++j) dev[j] = param.speed[j] - mean_speed;
  Eigen::VectorXcd spec = dft(dev);
  spec[0] = 0.0;
  for (int j = 1; j < grid_size; ++j) {
    const int k = 2 * j < grid_size ? j : j - grid_size;
    spec[j] /= cdouble(0.0, static_cast<double>(k));
  }
  const Eigen::VectorXcd periodic = idft(spec);

  const double step = 2.0 * std::numbers::pi / grid_size;
  param.s_of_theta.resize(grid_size);
  const double offset = periodic[0].real();
  for (int j = 0; j < grid_size; ++j)
    param.s_of_theta[j] = mean_speed * j * step + periodic[j].real() - offset;
  for (int j = 1; j < grid_size; ++j)
    if (param.s_of_theta[j] <= param.s_of_theta[j - 1])
      throw numerical_failure("arc length profile is not increasing");
  return param;
}

Eigen::VectorXcd boundary_coeffs(const conformal_map& map) {
  const auto deg = map.poly.size() - 1;
  const int n = std::max<int>(1, static_cast<int>(deg));
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(2 * n + 1);
  for (Eigen::Index k = 0; k < map.poly.size(); ++k)
    g[n + static_cast<int>(k)] = map.scale * map.poly[k];
  return g;
}

}  // namespace calderon
