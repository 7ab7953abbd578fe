#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "calderon/fourier.hpp"

namespace calderon {

// Matrix files are line-oriented text: a magic line, schema_version, kind
// ("hilbert" or "dtn"), n_max, then the real and imaginary parts as
// (2N+1)-entry rows in row-major order, printed with 17 significant digits
// so a write/read round trip is bit exact.
struct matrix_file {
  int schema_version = 1;
  int n_max = 0;
  std::string kind;  // "hilbert" | "dtn"
  Eigen::MatrixXcd entries;
};

void write_matrix(const std::string& path, const Eigen::MatrixXcd& entries,
                  const std::string& kind);

// strict rechecks the structural invariants (zero row and column at n = 0,
// which hold for both kinds); the validate command loads non-strict since
// reporting defects is its purpose.
matrix_file read_matrix(const std::string& path, bool strict = true);

// Curve files are CSV with header "s,x,y", s uniform in [0, 2 pi).
void write_curve(const std::string& path, const Eigen::VectorXcd& points);

struct curve_data {
  Eigen::VectorXd s;
  Eigen::VectorXcd points;
};

curve_data read_curve(const std::string& path);

// Ordered key/value report, serialized as plain text.
struct report {
  std::vector<std::pair<std::string, std::string>> fields;

  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, int value);
  void add(const std::string& key, bool value);
  std::string to_text() const;
};

void write_text_file(const std::string& path, const std::string& content);

// Standalone SVG: one closed stroke-only polyline, equal-aspect viewBox with
// 10% padding.
std::string svg_polyline(const Eigen::VectorXcd& points);
void write_svg(const std::string& path, const Eigen::VectorXcd& points);

}  // namespace calderon
