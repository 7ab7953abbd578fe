#include <doctest.h>

#include <cmath>
#include <random>

#include "calderon/conformal.hpp"
#include "calderon/errors.hpp"
#include "calderon/forward.hpp"
#include "calderon/solver.hpp"
#include "oracle.hpp"

using calderon::cdouble;

namespace {

Eigen::MatrixXcd build(const calderon::conformal_map& raw, int n_max) {
  const int m = calderon::forward_grid(n_max);
  return calderon::build_hilbert_matrix(calderon::normalize_length(raw, m),
                                        n_max, m);
}

const Eigen::MatrixXcd& disk8() {
  static const Eigen::MatrixXcd h = build(oracle::disk_map(), 8);
  return h;
}

const Eigen::MatrixXcd& dent10() {
  static const Eigen::MatrixXcd h = build(oracle::dent_map(), 10);
  return h;
}

}  // namespace

TEST_CASE("disk subspace is the positive frequency span") {
  const auto basis = calderon::near_fixed_subspace(disk8(), 1e-6);
  REQUIRE(basis.vectors.cols() == 8);
  CHECK_FALSE(basis.degenerate);
  for (int k = 1; k <= 8; ++k) {
    Eigen::VectorXcd want = Eigen::VectorXcd::Zero(17);
    want[8 + k] = 1.0;
    CHECK((basis.vectors.col(k - 1) - want).cwiseAbs().maxCoeff() < 1e-10);
  }

  // The disk directions are exact eigenvectors, so a huge threshold keeps
  // the same eight.
  CHECK(calderon::near_fixed_subspace(disk8(), 0.5).vectors.cols() == 8);
}

TEST_CASE("dent map subspace has full dimension at the default threshold") {
  const auto basis = calderon::near_fixed_subspace(dent10(), 1e-3);
  CHECK(basis.vectors.cols() == 10);
  CHECK_FALSE(basis.degenerate);

  // Canonical pattern and the near-fixed property for every basis vector.
  const Eigen::MatrixXcd& h = dent10();
  for (int k = 1; k <= 10; ++k) {
    const Eigen::VectorXcd e = basis.vectors.col(k - 1);
    for (int n = 1; n <= 10; ++n)
      CHECK(std::abs(e[10 + n] - (n == k ? 1.0 : 0.0)) < 1e-8);
    CHECK((h * e - e).norm() <= 10.0 * 1e-3 * e.norm());
  }
}

TEST_CASE("a matrix without near-fixed directions throws") {
  // H = 0 makes every singular value of H - I equal to one.
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(17, 17);
  CHECK_THROWS_AS(calderon::near_fixed_subspace(zero, 0.5),
                  calderon::numerical_failure);
  CHECK_THROWS_AS(calderon::near_fixed_subspace(disk8(), 0.0),
                  calderon::invalid_input);
}

TEST_CASE("quadratic residual closed forms") {
  Eigen::VectorXcd circle = Eigen::VectorXcd::Zero(17);
  circle[8 + 1] = 1.0;
  CHECK(calderon::quadratic_residual(circle).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::VectorXcd doubled = Eigen::VectorXcd::Zero(17);
  doubled[8 + 2] = 0.5;
  CHECK(calderon::quadratic_residual(doubled).cwiseAbs().maxCoeff() < 1e-15);

  CHECK(calderon::residual_norm(oracle::loop_family(0.3, 40)) < 1e-6);

  Eigen::VectorXcd with_mean = circle;
  with_mean[8] = 0.3;
  CHECK_THROWS_AS(calderon::quadratic_residual(with_mean),
                  calderon::invalid_input);
}

TEST_CASE("negative residual indices are conjugate redundant") {
  std::mt19937 rng(31u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int n = 8;
  Eigen::VectorXcd g(2 * n + 1);
  for (int j = 0; j < 2 * n + 1; ++j) g[j] = cdouble(dist(rng), dist(rng));
  g[n] = 0.0;
  const Eigen::VectorXcd q = calderon::quadratic_residual(g);
  for (int k = 1; k < n; ++k) {
    // Direct evaluation of the k < 0 equation.
    cdouble qneg = 0.0;
    for (int m = -n + k; m <= n; ++m)
      qneg += static_cast<double>(m) * static_cast<double>(m - k) * g[m + n] *
              std::conj(g[m - k + n]);
    CHECK(std::abs(qneg - std::conj(q[k])) < 1e-12);
  }
}

TEST_CASE("residual scale and rotation laws") {
  const Eigen::VectorXcd g = oracle::loop_family(0.45, 10);
  const Eigen::VectorXcd q = calderon::quadratic_residual(g);

  const Eigen::VectorXcd q2 = calderon::quadratic_residual((2.0 * g).eval());
  for (int k = 1; k < 10; ++k) CHECK(std::abs(q2[k] - 4.0 * q[k]) < 1e-12);
  CHECK(std::abs((q2[0] + 1.0) - 4.0 * (q[0] + 1.0)) < 1e-12);

  const Eigen::VectorXcd qrot =
      calderon::quadratic_residual((std::polar(1.0, 0.7) * g).eval());
  CHECK((qrot - q).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("objective and gradient on the disk basis") {
  const auto basis = calderon::near_fixed_subspace(disk8(), 1e-6);

  Eigen::VectorXcd coords = Eigen::VectorXcd::Zero(8);
  coords[0] = 1.0;
  auto [f, grad] = calderon::objective_and_gradient(basis, coords);
  CHECK(f < 1e-14);
  CHECK(grad.cwiseAbs().maxCoeff() < 1e-13);

  for (double t : {0.6, 1.3}) {
    coords.setZero();
    coords[0] = t;
    auto [ft, gradt] = calderon::objective_and_gradient(basis, coords);
    CHECK(ft == doctest::Approx(std::pow(t * t - 1.0, 2)).epsilon(1e-10));
    // Derivative along the real direction of the first coordinate.
    CHECK(2.0 * gradt[0].real() ==
          doctest::Approx(4.0 * t * (t * t - 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("gradient matches central differences") {
  const auto basis = calderon::near_fixed_subspace(disk8(), 1e-6);
  std::mt19937 rng(41u);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double step = 1e-5;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXcd coords(8);
    for (int j = 0; j < 8; ++j) coords[j] = cdouble(dist(rng), dist(rng));
    const auto [f, grad] = calderon::objective_and_gradient(basis, coords);
    for (int j = 0; j < 8; ++j) {
      Eigen::VectorXcd plus = coords, minus = coords;
      plus[j] += step;
      minus[j] -= step;
      const double dre =
          (calderon::objective_and_gradient(basis, plus).first -
           calderon::objective_and_gradient(basis, minus).first) /
          (2 * step);
      plus = coords;
      minus = coords;
      plus[j] += cdouble(0, step);
      minus[j] -= cdouble(0, step);
      const double dim =
          (calderon::objective_and_gradient(basis, plus).first -
           calderon::objective_and_gradient(basis, minus).first) /
          (2 * step);
      const double scale = std::max(1.0, std::abs(dre) + std::abs(dim));
      CHECK(std::abs(dre - 2.0 * grad[j].real()) / scale < 1e-6);
      CHECK(std::abs(dim - 2.0 * grad[j].imag()) / scale < 1e-6);
    }
  }
}

TEST_CASE("descent on the disk returns the circle immediately") {
  calderon::solver_config config;
  const auto result = calderon::descend(disk8(), config);
  CHECK(result.converged);
  CHECK(result.simple);
  CHECK(result.residual_history.size() == 1);
  CHECK(result.residual_history[0] < 1e-14);
  CHECK(std::abs(result.gamma_hat[8 + 1] - 1.0) < 1e-10);
}

TEST_CASE("descent from the second mode finds the doubled circle") {
  calderon::solver_config config;
  config.init_coords = {0.0, 1.0};
  const auto result = calderon::reconstruct(disk8(), config);
  CHECK(result.converged);
  CHECK_FALSE(result.simple);
  CHECK(result.wrong_solution);
  CHECK(std::abs(result.gamma_hat[8 + 2] - 0.5) < 1e-5);
}

TEST_CASE("dent map reconstruction from the circle start") {
  calderon::solver_config config;
  const auto result = calderon::reconstruct(dent10(), config);
  CHECK(result.converged);
  CHECK(result.simple);
  CHECK_FALSE(result.wrong_solution);
  CHECK(result.residual_history.back() <= 1e-8);
  CHECK(result.residual_history.size() - 1 <= 10);

  // Phase normalization of the returned coefficients.
  CHECK(std::abs(result.gamma_hat[10 + 1].imag()) < 1e-10);
  CHECK(result.gamma_hat[10 + 1].real() >= 0.0);
  CHECK(std::abs(result.gamma_hat[10]) == 0.0);

  // Stays in the subspace.
  const auto basis = calderon::near_fixed_subspace(dent10(), config.eps);
  CHECK((basis.vectors * result.coords - result.gamma_hat).norm() < 1e-10);

  // Matches the true boundary after alignment.
  const int m = calderon::forward_grid(10);
  Eigen::VectorXcd truth = oracle::gamma_hat(
      calderon::normalize_length(oracle::dent_map(), m), 10);
  const auto fit = calderon::align(truth, result.gamma_hat);
  CHECK(fit.distance < 1e-2);
}

TEST_CASE("history is monotone and non-converged runs still return data") {
  calderon::solver_config config;
  config.max_iter = 2;
  config.init_coords = {cdouble(0.2, 0.1), cdouble(0.8, -0.3), 0.5};
  const auto result = calderon::descend(dent10(), config);
  CHECK_FALSE(result.residual_history.empty());
  for (size_t j = 1; j < result.residual_history.size(); ++j)
    CHECK(result.residual_history[j] <= result.residual_history[j - 1]);
  CHECK(result.subspace_dim == 10);
}

TEST_CASE("overlong init is rejected") {
  calderon::solver_config config;
  config.init_coords.assign(9, cdouble(0.1, 0.0));
  CHECK_THROWS_AS(calderon::descend(disk8(), config),
                  calderon::invalid_input);
}

TEST_CASE("zero residual points on the disk are the known families") {
  // From single-mode inits the solver lands on multiply traversed circles.
  for (int mode = 2; mode <= 4; ++mode) {
    calderon::solver_config config;
    config.init_coords.assign(mode, cdouble(0.0, 0.0));
    config.init_coords.back() = 1.0;
    const auto result = calderon::reconstruct(disk8(), config);
    REQUIRE(result.converged);
    const Eigen::VectorXcd want = oracle::multi_circle(mode - 1, 8);
    const auto fit = calderon::align(want, result.gamma_hat);
    CHECK(fit.distance < 1e-5);
    CHECK(result.wrong_solution == (mode > 1));
  }
}
