#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "calderon/curve.hpp"
#include "calderon/fourier.hpp"

namespace calderon {

// Canonical basis of the near-fixed subspace W of a Hilbert matrix. Column k
// (k = 1..L) has positive-frequency coordinates (0,...,0,1,0,...,0) with the
// 1 at position k, unless the positive-frequency projection of W was too ill
// conditioned, in which case an orthonormal basis is kept and `degenerate`
// is set.
struct subspace_basis {
  int n_max = 0;
  Eigen::MatrixXcd vectors;        // (2N+1) x L, row n = 0 identically zero
  Eigen::VectorXd singular_values; // all singular values of (H - I)|_{n != 0}
  bool degenerate = false;
};

// Singular vectors of (H - I) restricted to n != 0 with singular value < eps,
// canonicalized against the unit pattern. Throws numerical_failure when no
// direction qualifies.
subspace_basis near_fixed_subspace(const Eigen::MatrixXcd& h, double eps);

// Residual vector (q_0 - 1, q_1, ..., q_{N-1}) of the quadratic system, with
// q_k = sum_m m (m+k) g_m conj(g_{m+k}). Negative k are conjugate-redundant.
// Requires g_0 = 0.
Eigen::VectorXcd quadratic_residual(const Eigen::VectorXcd& g);

// sqrt((q_0 - 1)^2 + 2 sum_{k>=1} |q_k|^2); the factor 2 stands in for the
// suppressed conjugate equations.
double residual_norm(const Eigen::VectorXcd& g);

struct solver_config {
  double eps = 1e-3;      // near-fixed threshold
  double tol = 1e-10;     // stop when the objective falls below this
  int max_iter = 200;
  bool init_e1 = true;                 // default start: first basis vector
  std::vector<cdouble> init_coords;    // when non-empty, overrides init_e1
  double initial_step = 1.0;           // line-search parameters for the
  double shrink = 0.5;                 // gradient fallback
  double sufficient_decrease = 1e-4;
  double min_step = 1e-12;
  int grid_size = 4096;                // curve diagnostics grid
  double proximity = 1e-3;
};

struct reconstruction_result {
  Eigen::VectorXcd gamma_hat;          // g_0 = 0, g_1 real nonnegative
  Eigen::VectorXcd coords;             // final coordinates in W
  std::vector<double> residual_history;
  int subspace_dim = 0;
  bool converged = false;
  bool simple = false;
  bool wrong_solution = false;         // converged but self-intersecting
  bool degenerate_basis = false;
};

// Objective F = (q_0 - 1)^2 + 2 sum |q_k|^2 of g = basis * coords, plus its
// Wirtinger gradient dF/d(conj c): the step c -> c - eta * gradient decreases
// F to first order.
std::pair<double, Eigen::VectorXcd> objective_and_gradient(
    const subspace_basis& basis, const Eigen::VectorXcd& coords);

// Minimize the quadratic residual over W starting from e_1 (or the given
// coordinates). Damped least-squares steps with a backtracking gradient
// fallback; the global phase is rotated after every accepted step so that
// g_1 stays real nonnegative. A stalled search returns a non-converged
// result rather than throwing.
reconstruction_result descend(const Eigen::MatrixXcd& h, const solver_config& config);

// near_fixed_subspace + descend + curve diagnostics; flags converged
// self-intersecting outcomes as wrong solutions.
reconstruction_result reconstruct(const Eigen::MatrixXcd& h, const solver_config& config);

}  // namespace calderon
