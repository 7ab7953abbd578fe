#pragma once

#include <Eigen/Dense>
#include <complex>

namespace calderon {

using cdouble = std::complex<double>;

// Coefficient vectors are Eigen::VectorXcd of odd length 2N+1, storing the
// frequencies n = -N..N at positions 0..2N. Functions of arc length s (or of
// the angle theta) are represented as f(s) = sum_n g[n+N] e^{ins}.

// N for a coefficient vector; throws invalid_input on even length.
int n_max_of(const Eigen::VectorXcd& g);

// Default analysis grid: max(256, 16*n_max) rounded up to a power of two.
int default_grid(int n_max);

// ghat_n = (1/M) sum_j f_j e^{-in theta_j}; exact for trigonometric
// polynomials of degree <= M/2 - 1. Requires n_max <= M/2 - 1.
Eigen::VectorXcd coeffs_from_samples(const Eigen::VectorXcd& samples, int n_max);

// f_j = sum_n g_n e^{in theta_j} on the uniform grid theta_j = 2 pi j / M.
// Requires grid_size >= 2*n_max + 2.
Eigen::VectorXcd samples_from_coeffs(const Eigen::VectorXcd& g, int grid_size);

// D = -i d/ds acts as multiplication by n.
Eigen::VectorXcd differentiate(const Eigen::VectorXcd& g);

// D^{-1}: divide by n, zero constant term. The input must have zero mean;
// |g_0| > tol is rejected since constants are outside the domain of D^{-1}.
Eigen::VectorXcd antiderivative(const Eigen::VectorXcd& g, double tol = 1e-8);

// DtN map of the unit disk: multiplication by |n|.
Eigen::VectorXcd disk_dtn(const Eigen::VectorXcd& g);

// Full-spectrum transforms on a uniform grid (FFTW backed). Spectrum entries
// are ordered like FFT output: index k holds frequency k for k < M/2 and
// frequency k - M for k >= M/2. dft returns (1/M) sum_j f_j e^{-ik theta_j}.
Eigen::VectorXcd dft(const Eigen::VectorXcd& samples);
Eigen::VectorXcd idft(const Eigen::VectorXcd& spectrum);

// Evaluate sum_n g_n e^{i n s_j} at arbitrary (non-uniform) sample points.
Eigen::VectorXcd eval_series(const Eigen::VectorXcd& g, const Eigen::VectorXd& s);

}  // namespace calderon
