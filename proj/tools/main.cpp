#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "calderon/conformal.hpp"
#include "calderon/curve.hpp"
#include "calderon/errors.hpp"
#include "calderon/forward.hpp"
#include "calderon/fourier.hpp"
#include "calderon/io.hpp"
#include "calderon/solver.hpp"

namespace {

using calderon::cdouble;

constexpr const char* kDefaultsLine =
    "n_modes=10 grid=1024 eps=0.001 tol=1e-10 max_iter=200";

double parse_real(const std::string& text, const std::string& what) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw calderon::invalid_input("cannot parse " + what + ": '" + text + "'");
  }
  if (used != text.size())
    throw calderon::invalid_input("cannot parse " + what + ": '" + text + "'");
  return v;
}

// Complex literals use the form a+bi with no spaces: "1", "-2i", "0.5-0.7i".
cdouble parse_complex(std::string text) {
  const std::string original = text;
  if (text.empty())
    throw calderon::invalid_input("empty complex literal");
  if (text.back() != 'i') return {parse_real(text, "number"), 0.0};

  text.pop_back();
  // Split at the sign that separates real and imaginary parts, skipping
  // leading signs and exponent signs.
  size_t split = std::string::npos;
  for (size_t j = text.size(); j-- > 1;) {
    if ((text[j] == '+' || text[j] == '-') &&
        text[j - 1] != 'e' && text[j - 1] != 'E') {
      split = j;
      break;
    }
  }
  auto imag_value = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part, "complex literal '" + original + "'");
  };
  if (split == std::string::npos) return {0.0, imag_value(text)};
  return {parse_real(text.substr(0, split),
                     "complex literal '" + original + "'"),
          imag_value(text.substr(split))};
}

std::vector<cdouble> parse_complex_list(const std::string& text) {
  std::vector<cdouble> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_complex(item));
  if (out.empty()) throw calderon::invalid_input("empty coefficient list");
  return out;
}

std::string format_complex(cdouble v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

calderon::conformal_map parse_map(const std::string& poly_text) {
  const std::vector<cdouble> coeffs = parse_complex_list(poly_text);
  if (coeffs.size() < 2)
    throw calderon::invalid_input("polynomial needs degree >= 1");
  calderon::conformal_map map;
  map.poly = Eigen::Map<const Eigen::VectorXcd>(coeffs.data(), coeffs.size());
  return map;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

void emit_report(const calderon::report& rep, const std::string& report_path) {
  const std::string text = rep.to_text();
  std::cout << text;
  if (!report_path.empty()) calderon::write_text_file(report_path, text);
}

int run_forward(const std::string& poly_text, int n_modes, int grid,
                const std::string& out_path, const std::string& report_path) {
  const auto start = std::chrono::steady_clock::now();
  if (n_modes < 1) throw calderon::invalid_input("--n-modes must be >= 1");
  const int m = grid > 0 ? grid : calderon::forward_grid(n_modes);
  if (m < 2 * n_modes + 2)
    throw calderon::invalid_input("--grid too small for --n-modes");

  calderon::conformal_map map = parse_map(poly_text);
  map = calderon::normalize_length(map, m);
  const Eigen::VectorXd speed = calderon::boundary_speed(map, m);

  const auto boundary = calderon::boundary_coeffs(map);
  const auto simplicity = calderon::is_simple(boundary);
  if (!simplicity.simple)
    throw calderon::invalid_input(
        "boundary curve is not simple: the map is not injective on the disk");

  const Eigen::MatrixXcd h = calderon::build_hilbert_matrix(map, n_modes, m);
  calderon::write_matrix(out_path, h, "hilbert");

  std::printf("scale_c %.17g\n", map.scale);
  std::printf("min_speed %.17g\n", speed.minCoeff());

  if (!report_path.empty()) {
    calderon::report rep;
    rep.add("command", std::string("forward"));
    rep.add("defaults", std::string(kDefaultsLine));
    rep.add("n_modes", n_modes);
    rep.add("grid", m);
    rep.add("scale_c", map.scale);
    rep.add("min_speed", speed.minCoeff());
    rep.add("matrix_path", out_path);
    rep.add("timing_total_ms", ms_since(start));
    calderon::write_text_file(report_path, rep.to_text());
  }
  return 0;
}

int run_invert(const std::string& matrix_path, double eps, double tol,
               int max_iter, const std::string& init_text, int grid,
               const std::string& reference_text, const std::string& out_path,
               const std::string& report_path) {
  const auto start = std::chrono::steady_clock::now();
  const calderon::matrix_file file = calderon::read_matrix(matrix_path);
  const Eigen::MatrixXcd h = file.kind == "dtn"
                                 ? calderon::hilbert_from_dtn(file.entries)
                                 : file.entries;
  const double load_ms = ms_since(start);

  calderon::solver_config config;
  config.eps = eps;
  config.tol = tol;
  config.max_iter = max_iter;
  if (grid > 0) config.grid_size = grid;
  if (init_text != "e1") config.init_coords = parse_complex_list(init_text);

  const auto solve_start = std::chrono::steady_clock::now();
  const calderon::reconstruction_result result =
      calderon::reconstruct(h, config);
  const double solve_ms = ms_since(solve_start);

  calderon::write_curve(out_path,
                        calderon::evaluate(result.gamma_hat, config.grid_size));

  calderon::report rep;
  rep.add("command", std::string("invert"));
  rep.add("defaults", std::string(kDefaultsLine));
  rep.add("matrix_path", matrix_path);
  rep.add("eps", eps);
  rep.add("tol", tol);
  rep.add("max_iter", max_iter);
  rep.add("init", init_text);
  rep.add("subspace_dim", result.subspace_dim);
  rep.add("degenerate_basis", result.degenerate_basis);
  std::ostringstream hist;
  for (size_t j = 0; j < result.residual_history.size(); ++j) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", result.residual_history[j]);
    hist << (j ? "," : "") << buf;
  }
  rep.add("residual_history", hist.str());
  rep.add("iterations",
          static_cast<int>(result.residual_history.size()) - 1);
  rep.add("final_objective", result.residual_history.back());
  rep.add("converged", result.converged);
  rep.add("is_simple", result.simple);
  rep.add("wrong_solution", result.wrong_solution);

  if (!reference_text.empty()) {
    calderon::conformal_map ref = parse_map(reference_text);
    const int m = calderon::forward_grid(file.n_max);
    ref = calderon::normalize_length(ref, m);
    const Eigen::VectorXcd truth =
        calderon::boundary_coeffs_arclength(ref, file.n_max, m);
    const calderon::alignment fit = calderon::align(truth, result.gamma_hat);
    rep.add("alignment_alpha", format_complex(fit.alpha));
    rep.add("alignment_shift", format_complex(fit.shift));
    rep.add("alignment_distance", fit.distance);
  }

  rep.add("curve_path", out_path);
  rep.add("timing_load_ms", load_ms);
  rep.add("timing_solve_ms", solve_ms);
  rep.add("timing_total_ms", ms_since(start));
  emit_report(rep, report_path);
  return 0;
}

int run_validate(const std::string& matrix_path,
                 const std::string& report_path) {
  const auto start = std::chrono::steady_clock::now();
  const calderon::matrix_file file = calderon::read_matrix(matrix_path, false);
  const int n = file.n_max;
  const int dim = 2 * n + 1;

  const bool is_dtn = file.kind == "dtn";
  const Eigen::MatrixXcd h =
      is_dtn ? calderon::hilbert_from_dtn(file.entries) : file.entries;
  const Eigen::MatrixXcd lambda =
      is_dtn ? file.entries : calderon::dtn_from_hilbert(file.entries);

  const double row0 = file.entries.row(n).cwiseAbs().maxCoeff();
  const double col0 = file.entries.col(n).cwiseAbs().maxCoeff();
  const double self_adjoint =
      (lambda - lambda.adjoint()).cwiseAbs().maxCoeff();

  // Involution on the zero-mean block |n| <= N/2: spectral norm of the
  // corresponding columns of H^2 - I.
  const Eigen::MatrixXcd defect =
      h * h - Eigen::MatrixXcd::Identity(dim, dim);
  const int half = n / 2;
  Eigen::MatrixXcd block(dim, 2 * half);
  int col = 0;
  for (int freq = -half; freq <= half; ++freq) {
    if (freq == 0) continue;
    block.col(col++) = defect.col(freq + n);
  }
  double involution = 0.0;
  if (col > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(block.leftCols(col));
    involution = svd.singularValues()[0];
  }

  int subspace_dim = 0;
  std::string subspace_note = "ok";
  try {
    subspace_dim = static_cast<int>(
        calderon::near_fixed_subspace(h, 1e-3).vectors.cols());
  } catch (const calderon::numerical_failure& e) {
    subspace_note = e.what();
  }

  calderon::report rep;
  rep.add("command", std::string("validate"));
  rep.add("defaults", std::string(kDefaultsLine));
  rep.add("matrix_path", matrix_path);
  rep.add("kind", file.kind);
  rep.add("n_max", n);
  rep.add("max_row0", row0);
  rep.add("max_col0", col0);
  rep.add("self_adjointness_defect", self_adjoint);
  rep.add("involution_defect", involution);
  rep.add("max_imag", file.entries.imag().cwiseAbs().maxCoeff());
  rep.add("subspace_dim", subspace_dim);
  rep.add("subspace_note", subspace_note);
  rep.add("timing_total_ms", ms_since(start));
  emit_report(rep, report_path);
  return 0;
}

int run_plot(const std::string& curve_path, const std::string& mode,
             const std::string& out_path) {
  if (mode != "curve" && mode != "velocity")
    throw calderon::invalid_input("--mode must be 'curve' or 'velocity'");
  const calderon::curve_data data = calderon::read_curve(curve_path);
  Eigen::VectorXcd pts = data.points;
  if (mode == "velocity") {
    // Spectral derivative d gamma / ds on the uniform grid.
    const int m = static_cast<int>(pts.size());
    Eigen::VectorXcd spec = calderon::dft(pts);
    for (int j = 0; j < m; ++j) {
      const int k = 2 * j < m ? j : j - m;
      spec[j] *= cdouble(0.0, static_cast<double>(k));
    }
    pts = calderon::idft(spec);
  }
  calderon::write_svg(out_path, pts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Hilbert transform matrices of planar domains and boundary "
      "reconstruction from them"};
  app.require_subcommand(1);

  std::string poly_text, init_text = "e1", reference_text;
  std::string matrix_path, curve_path, out_path, report_path;
  std::string mode = "curve";
  int n_modes = 10, grid = 0, max_iter = 200;
  double eps = 1e-3, tol = 1e-10;

  CLI::App* fwd = app.add_subcommand(
      "forward", "Build the Hilbert matrix of a polynomial boundary map");
  fwd->add_option("--poly", poly_text,
                  "comma-separated map coefficients, constant first, complex "
                  "entries as a+bi")
      ->required();
  fwd->add_option("--n-modes", n_modes, "frequency cutoff N")
      ->capture_default_str();
  fwd->add_option("--grid", grid, "sample count (0 = automatic)")
      ->capture_default_str();
  fwd->add_option("--out", out_path, "matrix file to write")->required();
  fwd->add_option("--report", report_path, "report file to write");

  CLI::App* inv = app.add_subcommand(
      "invert", "Reconstruct the boundary curve from a matrix file");
  inv->add_option("matrix", matrix_path, "matrix file")->required();
  inv->add_option("--eps", eps, "near-fixed subspace threshold")
      ->capture_default_str();
  inv->add_option("--tol", tol, "objective stopping threshold")
      ->capture_default_str();
  inv->add_option("--max-iter", max_iter, "iteration cap")
      ->capture_default_str();
  inv->add_option("--init", init_text,
                  "'e1' or comma-separated subspace coordinates")
      ->capture_default_str();
  inv->add_option("--grid", grid, "diagnostic/output sample count")
      ->capture_default_str();
  inv->add_option("--reference", reference_text,
                  "true map coefficients for alignment reporting");
  inv->add_option("--out", out_path, "curve file to write")->required();
  inv->add_option("--report", report_path, "report file to write");

  CLI::App* val = app.add_subcommand(
      "validate", "Report operator identities for a matrix file");
  val->add_option("matrix", matrix_path, "matrix file")->required();
  val->add_option("--report", report_path, "report file to write");

  CLI::App* plt =
      app.add_subcommand("plot", "Render a curve file as a standalone SVG");
  plt->add_option("curve", curve_path, "curve file")->required();
  plt->add_option("--mode", mode, "curve | velocity")->capture_default_str();
  plt->add_option("--out", out_path, "svg file to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fwd)
      return run_forward(poly_text, n_modes, grid, out_path, report_path);
    if (*inv)
      return run_invert(matrix_path, eps, tol, max_iter, init_text, grid,
                        reference_text, out_path, report_path);
    if (*val) return run_validate(matrix_path, report_path);
    if (*plt) return run_plot(curve_path, mode, out_path);
  } catch (const calderon::invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const calderon::numerical_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
