#include "calderon/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <string>

#include "calderon/curve.hpp"
#include "calderon/errors.hpp"
#include "calderon/fourier.hpp"

namespace calderon {

namespace {

int matrix_n_max(const Eigen::MatrixXcd& h) {
  if (h.rows() != h.cols() || h.rows() % 2 == 0 || h.rows() < 3)
    throw invalid_input("matrix must be square with odd dimension >= 3");
  return static_cast<int>(h.rows() - 1) / 2;
}

double objective_of(const Eigen::VectorXcd& q) {
  double f = q[0].real() * q[0].real();
  for (Eigen::Index k = 1; k < q.size(); ++k) f += 2.0 * std::norm(q[k]);
  return f;
}

// Multiply the curve by a global unit phase so that g_1 is real nonnegative.
// The quadratic system pairs every coefficient with a conjugate, so this
// leaves the objective unchanged.
void phase_normalize(const subspace_basis& basis, Eigen::VectorXcd& coords) {
  const int n = basis.n_max;
  const cdouble g1 = (basis.vectors.row(n + 1) * coords).value();
  const double mag = std::abs(g1);
  if (mag < 1e-300) return;
  coords *= std::conj(g1) / mag;
}

struct residual_model {
  Eigen::VectorXd r;   // (q_0-1, sqrt2 Re q_k, sqrt2 Im q_k), k = 1..N-1
  Eigen::MatrixXd jac; // rows follow r, columns are (Re c_j, Im c_j) pairs
  double objective;
};

// Real-valued residual and Jacobian of the quadratic system in the
// subspace coordinates, for damped least-squares steps.
residual_model build_model(const subspace_basis& basis,
                           const Eigen::VectorXcd& coords) {
  const int n = basis.n_max;
  const int l = static_cast<int>(coords.size());
  const Eigen::VectorXcd g = basis.vectors * coords;
  const Eigen::VectorXcd q = quadratic_residual(g);

  residual_model model;
  model.objective = objective_of(q);
  model.r.resize(2 * n - 1);
  model.r[0] = q[0].real();
  for (int k = 1; k < n; ++k) {
    model.r[2 * k - 1] = std::numbers::sqrt2 * q[k].real();
    model.r[2 * k] = std::numbers::sqrt2 * q[k].imag();
  }

  // dq_k/dc_j and dq_k/dconj(c_j) through g = B c:
  // dq_k/dg_p = p(p+k) conj(g_{p+k}), dq_k/dconj(g_p) = (p-k) p g_{p-k}.
  model.jac.resize(2 * n - 1, 2 * l);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < l; ++j) {
      cdouble dq_dc = 0.0;
      cdouble dq_dcb = 0.0;
      for (int p = -n; p <= n; ++p) {
        if (p == 0) continue;
        const cdouble bpj = basis.vectors(p + n, j);
        if (p + k <= n)
          dq_dc += static_cast<double>(p) * static_cast<double>(p + k) *
                   std::conj(g[p + k + n]) * bpj;
        if (p - k >= -n)
          dq_dcb += static_cast<double>(p - k) * static_cast<double>(p) *
                    g[p - k + n] * std::conj(bpj);
      }
      const cdouble dq_dx = dq_dc + dq_dcb;
      const cdouble dq_dy = cdouble(0.0, 1.0) * (dq_dc - dq_dcb);
      if (k == 0) {
        model.jac(0, 2 * j) = dq_dx.real();
        model.jac(0, 2 * j + 1) = dq_dy.real();
      } else {
        model.jac(2 * k - 1, 2 * j) = std::numbers::sqrt2 * dq_dx.real();
        model.jac(2 * k - 1, 2 * j + 1) = std::numbers::sqrt2 * dq_dy.real();
        model.jac(2 * k, 2 * j) = std::numbers::sqrt2 * dq_dx.imag();
        model.jac(2 * k, 2 * j + 1) = std::numbers::sqrt2 * dq_dy.imag();
      }
    }
  }
  return model;
}

double objective_at(const subspace_basis& basis,
                    const Eigen::VectorXcd& coords) {
  return objective_of(quadratic_residual(basis.vectors * coords));
}

Eigen::VectorXcd step_to_coords(const Eigen::VectorXcd& coords,
                                const Eigen::VectorXd& dx) {
  Eigen::VectorXcd out = coords;
  for (Eigen::Index j = 0; j < coords.size(); ++j)
    out[j] += cdouble(dx[2 * j], dx[2 * j + 1]);
  return out;
}

}  // namespace

subspace_basis near_fixed_subspace(const Eigen::MatrixXcd& h, double eps) {
  if (eps <= 0.0) throw invalid_input("eps must be positive");
  const int n = matrix_n_max(h);
  const int dim = 2 * n;

  // Drop the n = 0 row and column; constants carry no information.
  Eigen::MatrixXcd a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const int rfull = r < n ? r : r + 1;
    for (int c = 0; c < dim; ++c) {
      const int cfull = c < n ? c : c + 1;
      a(r, c) = h(rfull, cfull);
    }
    a(r, r) -= 1.0;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinV);
  const Eigen::VectorXd sigma = svd.singularValues();
  int keep = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    if (sigma[i] < eps) ++keep;
  if (keep == 0)
    throw numerical_failure(
        "no near-fixed directions: threshold too small or matrix invalid");
  if (keep > n) keep = n;  // cannot exceed the positive-frequency count

  // Smallest singular values sit at the tail; keep those directions.
  Eigen::MatrixXcd raw(2 * n + 1, keep);
  raw.setZero();
  for (int j = 0; j < keep; ++j) {
    const Eigen::VectorXcd col = svd.matrixV().col(dim - 1 - j);
    for (int r = 0; r < dim; ++r) {
      const int rfull = r < n ? r : r + 1;
      raw(rfull, j) = col[r];
    }
  }

  subspace_basis basis;
  basis.n_max = n;
  basis.singular_values.resize(keep);
  for (int j = 0; j < keep; ++j) basis.singular_values[j] = sigma[dim - 1 - j];

  // Canonical form: combination whose positive-frequency coordinates show a
  // 1 at position k and 0 elsewhere, solved in least squares over all
  // positive rows. An ill-conditioned projection keeps the raw orthonormal
  // basis instead.
  const Eigen::MatrixXcd pos = raw.block(n + 1, 0, n, keep);
  Eigen::JacobiSVD<Eigen::MatrixXcd> psvd(
      pos, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd psigma = psvd.singularValues();
  const double smin = psigma[psigma.size() - 1];
  basis.degenerate = !(smin > 0.0) || psigma[0] / smin > 1e8;
  if (basis.degenerate) {
    basis.vectors = raw;
    return basis;
  }

  Eigen::MatrixXcd pattern = Eigen::MatrixXcd::Zero(n, keep);
  for (int k = 0; k < keep; ++k) pattern(k, k) = 1.0;
  basis.vectors = raw * psvd.solve(pattern);
  basis.vectors.row(n).setZero();
  return basis;
}

Eigen::VectorXcd quadratic_residual(const Eigen::VectorXcd& g) {
  const int n = n_max_of(g);
  if (std::abs(g[n]) > 1e-10)
    throw invalid_input("quadratic system requires zero-mean coefficients");
  Eigen::VectorXcd q(n);
  for (int k = 0; k < n; ++k) {
    cdouble acc = 0.0;
    for (int m = -n; m <= n - k; ++m)
      acc += static_cast<double>(m) * static_cast<double>(m + k) * g[m + n] *
             std::conj(g[m + k + n]);
    q[k] = acc;
  }
  q[0] -= 1.0;
  return q;
}

double residual_norm(const Eigen::VectorXcd& g) {
  return std::sqrt(objective_of(quadratic_residual(g)));
}

std::pair<double, Eigen::VectorXcd> objective_and_gradient(
    const subspace_basis& basis, const Eigen::VectorXcd& coords) {
  if (coords.size() != basis.vectors.cols())
    throw invalid_input("coordinate count does not match basis dimension");
  const int n = basis.n_max;
  const Eigen::VectorXcd g = basis.vectors * coords;
  const Eigen::VectorXcd q = quadratic_residual(g);

  // Wirtinger derivative dF/dconj(g_p), then pulled back through g = B c.
  Eigen::VectorXcd grad_g = Eigen::VectorXcd::Zero(2 * n + 1);
  for (int p = -n; p <= n; ++p) {
    if (p == 0) continue;
    cdouble acc = 2.0 * q[0].real() * static_cast<double>(p) *
                  static_cast<double>(p) * g[p + n];
    for (int k = 1; k < n; ++k) {
      if (p + k <= n)
        acc += 2.0 * q[k] * static_cast<double>(p) *
               static_cast<double>(p + k) * g[p + k + n];
      if (p - k >= -n)
        acc += 2.0 * std::conj(q[k]) * static_cast<double>(p) *
               static_cast<double>(p - k) * g[p - k + n];
    }
    grad_g[p + n] = acc;
  }
  return {objective_of(q), basis.vectors.adjoint() * grad_g};
}

reconstruction_result descend(const Eigen::MatrixXcd& h,
                              const solver_config& config) {
  if (config.tol <= 0.0 || config.max_iter < 1)
    throw invalid_input("tol must be positive and max_iter >= 1");
  const subspace_basis basis = near_fixed_subspace(h, config.eps);
  const int l = static_cast<int>(basis.vectors.cols());

  Eigen::VectorXcd coords(l);
  if (!config.init_coords.empty()) {
    // Shorter lists are padded with zeros, so "1,1,1.64" means
    // e_1 + e_2 + 1.64 e_3 at any subspace dimension >= 3.
    if (static_cast<int>(config.init_coords.size()) > l)
      throw invalid_input("init has " +
                          std::to_string(config.init_coords.size()) +
                          " coordinates, subspace dimension is only " +
                          std::to_string(l));
    coords.setZero();
    for (size_t j = 0; j < config.init_coords.size(); ++j)
      coords[static_cast<int>(j)] = config.init_coords[j];
  } else if (!basis.degenerate) {
    coords.setZero();
    coords[0] = 1.0;
  } else {
    // Orthonormal fallback basis: project the unit circle onto the subspace.
    Eigen::VectorXcd circle = Eigen::VectorXcd::Zero(2 * basis.n_max + 1);
    circle[basis.n_max + 1] = 1.0;
    coords = basis.vectors.adjoint() * circle;
  }
  phase_normalize(basis, coords);

  reconstruction_result result;
  result.subspace_dim = l;
  result.degenerate_basis = basis.degenerate;
  result.converged = false;

  // Damped least-squares iteration on the real form of the system, with
  // ratio-controlled damping. A backtracking gradient step is the fallback
  // when no damped step is acceptable.
  double lambda = 1e-3;
  double nu = 2.0;
  residual_model model = build_model(basis, coords);
  double f = model.objective;
  result.residual_history.push_back(f);

  for (int iter = 0; iter < config.max_iter; ++iter) {
    if (f <= config.tol) {
      result.converged = true;
      break;
    }

    const Eigen::MatrixXd a = model.jac.transpose() * model.jac;
    const Eigen::VectorXd b = model.jac.transpose() * model.r;

    bool accepted = false;
    for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
      Eigen::MatrixXd damped = a;
      damped.diagonal().array() += lambda;
      const Eigen::VectorXd dx = damped.ldlt().solve(-b);
      const Eigen::VectorXcd trial = step_to_coords(coords, dx);
      const double f2 = objective_at(basis, trial);
      const double pred = -dx.dot(b) - 0.5 * dx.dot(a * dx);
      if (f2 < f && pred > 0.0) {
        const double rho = (f - f2) / pred;
        lambda *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
        nu = 2.0;
        coords = trial;
        phase_normalize(basis, coords);
        f = f2;
        accepted = true;
      } else {
        lambda *= nu;
        nu *= 2.0;
      }
    }

    if (!accepted) {
      // Gradient fallback with the configured backtracking schedule.
      const auto [f0, grad] = objective_and_gradient(basis, coords);
      Eigen::VectorXd slope(2 * l);
      for (int j = 0; j < l; ++j) {
        slope[2 * j] = 2.0 * grad[j].real();
        slope[2 * j + 1] = 2.0 * grad[j].imag();
      }
      const double slope2 = slope.squaredNorm();
      double t = config.initial_step;
      while (t >= config.min_step) {
        const Eigen::VectorXcd trial = step_to_coords(coords, -t * slope);
        const double f2 = objective_at(basis, trial);
        if (f2 <= f - config.sufficient_decrease * t * slope2) {
          coords = trial;
          phase_normalize(basis, coords);
          f = f2;
          accepted = true;
          break;
        }
        t *= config.shrink;
      }
    }

    if (!accepted) break;  // stalled below the minimum step
    result.residual_history.push_back(f);
    model = build_model(basis, coords);
  }
  if (f <= config.tol) result.converged = true;

  result.coords = coords;
  result.gamma_hat = basis.vectors * coords;
  result.gamma_hat[basis.n_max] = 0.0;
  result.simple =
      is_simple(result.gamma_hat, config.grid_size, config.proximity).simple;
  return result;
}

reconstruction_result reconstruct(const Eigen::MatrixXcd& h,
                                  const solver_config& config) {
  reconstruction_result result = descend(h, config);
  result.wrong_solution = !result.simple;
  return result;
}

}  // namespace calderon
