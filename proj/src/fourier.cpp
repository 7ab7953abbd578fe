#include "calderon/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "calderon/errors.hpp"

namespace calderon {

namespace {

// FFTW planning is not thread safe; execution of ready plans is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

Eigen::VectorXcd fft_transform(const Eigen::VectorXcd& in, int sign) {
  const int m = static_cast<int>(in.size());
  Eigen::VectorXcd out(m);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_1d(
        m,
        reinterpret_cast<fftw_complex*>(const_cast<cdouble*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()), sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

int next_pow2(int v) {
  int p = 1;
  while (p < v) p *= 2;
  return p;
}

}  // namespace

int n_max_of(const Eigen::VectorXcd& g) {
  const auto size = g.size();
  if (size < 3 || size % 2 == 0)
    throw invalid_input("coefficient vector must have odd length >= 3");
  return static_cast<int>((size - 1) / 2);
}

int default_grid(int n_max) {
  if (n_max < 1) throw invalid_input("n_max must be >= 1");
  return next_pow2(std::max(256, 16 * n_max));
}

Eigen::VectorXcd coeffs_from_samples(const Eigen::VectorXcd& samples, int n_max) {
  const int m = static_cast<int>(samples.size());
  if (n_max < 1) throw invalid_input("n_max must be >= 1");
  if (n_max > m / 2 - 1)
    throw invalid_input("grid too small for requested n_max");
  const Eigen::VectorXcd spec = dft(samples);
  Eigen::VectorXcd g(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n)
    g[n + n_max] = spec[n >= 0 ? n : m + n];
  return g;
}

Eigen::VectorXcd samples_from_coeffs(const Eigen::VectorXcd& g, int grid_size) {
  const int n = n_max_of(g);
  const int m = grid_size;
  if (m < 2 * n + 2) throw invalid_input("grid too small for coefficients");
  Eigen::VectorXcd spec = Eigen::VectorXcd::Zero(m);
  for (int k = -n; k <= n; ++k) spec[k >= 0 ? k : m + k] = g[k + n];
  return idft(spec);
}

Eigen::VectorXcd differentiate(const Eigen::VectorXcd& g) {
  const int n = n_max_of(g);
  Eigen::VectorXcd out(g.size());
  for (int k = -n; k <= n; ++k) out[k + n] = static_cast<double>(k) * g[k + n];
  return out;
}

Eigen::VectorXcd antiderivative(const Eigen::VectorXcd& g, double tol) {
  const int n = n_max_of(g);
  if (std::abs(g[n]) > tol)
    throw invalid_input("antiderivative requires zero-mean input");
  Eigen::VectorXcd out(g.size());
  out[n] = 0.0;
  for (int k = -n; k <= n; ++k)
    if (k != 0) out[k + n] = g[k + n] / static_cast<double>(k);
  return out;
}

Eigen::VectorXcd disk_dtn(const Eigen::VectorXcd& g) {
  const int n = n_max_of(g);
  Eigen::VectorXcd out(g.size());
  for (int k = -n; k <= n; ++k)
    out[k + n] = static_cast<double>(std::abs(k)) * g[k + n];
  return out;
}

Eigen::VectorXcd dft(const Eigen::VectorXcd& samples) {
  const int m = static_cast<int>(samples.size());
  if (m < 2) throw invalid_input("grid must have at least 2 samples");
  return fft_transform(samples, FFTW_FORWARD) / static_cast<double>(m);
}

Eigen::VectorXcd idft(const Eigen::VectorXcd& spectrum) {
  if (spectrum.size() < 2) throw invalid_input("spectrum too short");
  return fft_transform(spectrum, FFTW_BACKWARD);
}

Eigen::VectorXcd eval_series(const Eigen::VectorXcd& g, const Eigen::VectorXd& s) {
  const int n = n_max_of(g);
  const auto m = s.size();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    // Horner in w = e^{is}: sum_{k=-n}^{n} g_k w^k = w^{-n} * poly(w).
    const cdouble w = std::polar(1.0, s[j]);
    cdouble acc = 0.0;
    for (int k = 2 * n; k >= 0; --k) acc = acc * w + g[k];
    out[j] = acc * std::polar(1.0, -n * s[j]);
  }
  return out;
}

}  // namespace calderon
