#include "calderon/forward.hpp"

#include <cmath>
#include <numbers>

#include "calderon/errors.hpp"
#include "calderon/fourier.hpp"

namespace calderon {

namespace {

// Weighted projection onto e^{ins} with the arc-length measure:
// ghat_n = (1/M) sum_j G_j speed_j e^{-i n s(theta_j)}.
Eigen::VectorXcd project_arclength(const boundary_parametrization& param,
                                   const Eigen::VectorXcd& values, int n_max) {
  const int m = param.grid_size;
  Eigen::VectorXcd weighted(m);
  for (int j = 0; j < m; ++j) weighted[j] = values[j] * param.speed[j];
  Eigen::VectorXcd out(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) {
    cdouble acc = 0.0;
    for (int j = 0; j < m; ++j)
      acc += weighted[j] * std::polar(1.0, -n * param.s_of_theta[j]);
    out[n + n_max] = acc / static_cast<double>(m);
  }
  return out;
}

}  // namespace

Eigen::VectorXcd hilbert_apply(const boundary_parametrization& param,
                               const Eigen::VectorXcd& f) {
  const int n_max = n_max_of(f);
  const int m = param.grid_size;
  if (m < 2 * n_max + 2) throw invalid_input("grid too small for input modes");

  // Pull the boundary function back to the angular grid.
  Eigen::VectorXd s(m);
  for (int j = 0; j < m; ++j) s[j] = param.s_of_theta[j];
  const Eigen::VectorXcd pulled = eval_series(f, s);

  // Flat-domain transform in theta: sign multiplier on the spectrum.
  Eigen::VectorXcd spec = dft(pulled);
  spec[0] = 0.0;
  for (int j = 1; j < m; ++j) {
    const int k = 2 * j < m ? j : j - m;
    spec[j] *= k > 0 ? 1.0 : -1.0;
  }
  Eigen::VectorXcd g = idft(spec);

  // Remove the arc-length mean so the output lands in the zero-mean class.
  cdouble mean = 0.0;
  for (int j = 0; j < m; ++j) mean += g[j] * param.speed[j];
  mean /= static_cast<double>(m);
  const double mean_speed = param.speed.mean();
  for (int j = 0; j < m; ++j) g[j] -= mean / mean_speed;

  return project_arclength(param, g, n_max);
}

Eigen::MatrixXcd build_hilbert_matrix(const conformal_map& map, int n_max,
                                      int grid_size) {
  if (n_max < 1) throw invalid_input("n_max must be >= 1");
  const int m = grid_size > 0 ? grid_size : forward_grid(n_max);
  const boundary_parametrization param = arclength_profile(map, m);

  const int dim = 2 * n_max + 1;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd basis = Eigen::VectorXcd::Zero(dim);
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0) continue;  // constants are annihilated, keep the column exact
    basis[n + n_max] = 1.0;
    h.col(n + n_max) = hilbert_apply(param, basis);
    basis[n + n_max] = 0.0;
  }
  return h;
}

Eigen::MatrixXcd dtn_from_hilbert(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols() || h.rows() % 2 == 0)
    throw invalid_input("matrix must be square with odd dimension");
  const int n_max = static_cast<int>(h.rows() - 1) / 2;
  Eigen::MatrixXcd lambda(h.rows(), h.cols());
  for (int mrow = -n_max; mrow <= n_max; ++mrow)
    lambda.row(mrow + n_max) = static_cast<double>(mrow) * h.row(mrow + n_max);
  return lambda;
}

Eigen::MatrixXcd hilbert_from_dtn(const Eigen::MatrixXcd& lambda) {
  if (lambda.rows() != lambda.cols() || lambda.rows() % 2 == 0)
    throw invalid_input("matrix must be square with odd dimension");
  const int n_max = static_cast<int>(lambda.rows() - 1) / 2;
  Eigen::MatrixXcd h(lambda.rows(), lambda.cols());
  for (int mrow = -n_max; mrow <= n_max; ++mrow) {
    if (mrow == 0)
      h.row(n_max).setZero();
    else
      h.row(mrow + n_max) = lambda.row(mrow + n_max) / static_cast<double>(mrow);
  }
  return h;
}

Eigen::VectorXcd boundary_coeffs_arclength(const conformal_map& map, int n_max,
                                           int grid_size) {
  const int m = grid_size > 0 ? grid_size : forward_grid(n_max);
  const boundary_parametrization param = arclength_profile(map, m);
  Eigen::VectorXcd curve(m);
  const double step = 2.0 * std::numbers::pi / m;
  for (int j = 0; j < m; ++j)
    curve[j] = map_eval(map, std::polar(1.0, j * step));
  return project_arclength(param, curve, n_max);
}

}  // namespace calderon
