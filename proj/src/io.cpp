#include "calderon/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "calderon/errors.hpp"

namespace calderon {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok))
    throw invalid_input(std::string("matrix file truncated, expected ") + what);
  return tok;
}

double next_number(std::istream& in, const char* what) {
  double v;
  if (!(in >> v))
    throw invalid_input(std::string("matrix file: bad number in ") + what);
  return v;
}

void expect(std::istream& in, const std::string& want) {
  const std::string got = next_token(in, want.c_str());
  if (got != want)
    throw invalid_input("matrix file: expected '" + want + "', got '" + got +
                        "'");
}

}  // namespace

void write_matrix(const std::string& path, const Eigen::MatrixXcd& entries,
                  const std::string& kind) {
  if (entries.rows() != entries.cols() || entries.rows() % 2 == 0)
    throw invalid_input("matrix must be square with odd dimension");
  if (kind != "hilbert" && kind != "dtn")
    throw invalid_input("matrix kind must be 'hilbert' or 'dtn'");
  const int dim = static_cast<int>(entries.rows());
  const int n_max = (dim - 1) / 2;

  std::ostringstream out;
  out << "calderon-matrix\n";
  out << "schema_version 1\n";
  out << "kind " << kind << "\n";
  out << "n_max " << n_max << "\n";
  out << "entries_re\n";
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c)
      out << (c ? " " : "") << fmt17(entries(r, c).real());
    out << "\n";
  }
  out << "entries_im\n";
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c)
      out << (c ? " " : "") << fmt17(entries(r, c).imag());
    out << "\n";
  }
  write_text_file(path, out.str());
}

matrix_file read_matrix(const std::string& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open matrix file: " + path);

  expect(in, "calderon-matrix");
  expect(in, "schema_version");
  matrix_file file;
  file.schema_version = static_cast<int>(next_number(in, "schema_version"));
  if (file.schema_version != 1)
    throw invalid_input("unsupported matrix schema_version " +
                        std::to_string(file.schema_version));
  expect(in, "kind");
  file.kind = next_token(in, "kind");
  if (file.kind != "hilbert" && file.kind != "dtn")
    throw invalid_input("matrix kind must be 'hilbert' or 'dtn', got '" +
                        file.kind + "'");
  expect(in, "n_max");
  file.n_max = static_cast<int>(next_number(in, "n_max"));
  if (file.n_max < 1) throw invalid_input("matrix n_max must be >= 1");
  const int dim = 2 * file.n_max + 1;

  expect(in, "entries_re");
  Eigen::MatrixXd re(dim, dim), im(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) re(r, c) = next_number(in, "entries_re");
  expect(in, "entries_im");
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) im(r, c) = next_number(in, "entries_im");
  std::string extra;
  if (in >> extra)
    throw invalid_input("matrix file has trailing content: '" + extra + "'");

  file.entries.resize(dim, dim);
  file.entries.real() = re;
  file.entries.imag() = im;

  if (strict) {
    const int n = file.n_max;
    const double row0 = file.entries.row(n).cwiseAbs().maxCoeff();
    const double col0 = file.entries.col(n).cwiseAbs().maxCoeff();
    if (row0 > 1e-6 || col0 > 1e-6)
      throw invalid_input(
          "matrix violates the zero row/column at n = 0 required of kind '" +
          file.kind + "'");
  }
  return file;
}

void write_curve(const std::string& path, const Eigen::VectorXcd& points) {
  const auto m = points.size();
  if (m < 16) throw invalid_input("curve needs at least 16 samples");
  std::ostringstream out;
  out << "s,x,y\n";
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  for (Eigen::Index j = 0; j < m; ++j)
    out << fmt17(j * step) << "," << fmt17(points[j].real()) << ","
        << fmt17(points[j].imag()) << "\n";
  write_text_file(path, out.str());
}

curve_data read_curve(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open curve file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw invalid_input("empty curve file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "s,x,y")
    throw invalid_input("curve file must start with header 's,x,y'");

  std::vector<double> s;
  std::vector<cdouble> pts;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    double sv, xv, yv;
    char c1, c2;
    if (!(row >> sv >> c1 >> xv >> c2 >> yv) || c1 != ',' || c2 != ',')
      throw invalid_input("curve file: malformed row at line " +
                          std::to_string(lineno));
    s.push_back(sv);
    pts.emplace_back(xv, yv);
  }
  if (s.size() < 16) throw invalid_input("curve file needs at least 16 rows");
  for (size_t j = 1; j < s.size(); ++j)
    if (s[j] <= s[j - 1])
      throw invalid_input("curve file: s must be strictly increasing");
  const double step = 2.0 * std::numbers::pi / static_cast<double>(s.size());
  for (size_t j = 0; j < s.size(); ++j)
    if (std::abs(s[j] - static_cast<double>(j) * step) > 1e-6)
      throw invalid_input(
          "curve file: s must be the uniform grid on [0, 2 pi)");

  curve_data data;
  data.s = Eigen::Map<const Eigen::VectorXd>(s.data(), s.size());
  data.points =
      Eigen::Map<const Eigen::VectorXcd>(pts.data(), pts.size());
  return data;
}

void report::add(const std::string& key, const std::string& value) {
  fields.emplace_back(key, value);
}

void report::add(const std::string& key, double value) {
  fields.emplace_back(key, fmt17(value));
}

void report::add(const std::string& key, int value) {
  fields.emplace_back(key, std::to_string(value));
}

void report::add(const std::string& key, bool value) {
  fields.emplace_back(key, value ? "true" : "false");
}

std::string report::to_text() const {
  std::ostringstream out;
  out << "calderon-report\n";
  for (const auto& [key, value] : fields) out << key << " " << value << "\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot open output file: " + path);
  out << content;
  if (!out) throw invalid_input("failed writing output file: " + path);
}

std::string svg_polyline(const Eigen::VectorXcd& points) {
  if (points.size() < 2) throw invalid_input("svg needs at least 2 points");
  // SVG y grows downward; flip the imaginary axis to keep orientation.
  double xmin = points[0].real(), xmax = xmin;
  double ymin = -points[0].imag(), ymax = ymin;
  for (Eigen::Index j = 1; j < points.size(); ++j) {
    xmin = std::min(xmin, points[j].real());
    xmax = std::max(xmax, points[j].real());
    ymin = std::min(ymin, -points[j].imag());
    ymax = std::max(ymax, -points[j].imag());
  }
  double w = xmax - xmin, h = ymax - ymin;
  if (w <= 0.0) w = 1.0;
  if (h <= 0.0) h = 1.0;
  const double pad = 0.1 * std::max(w, h);
  const double vx = xmin - pad, vy = ymin - pad;
  const double vw = w + 2.0 * pad, vh = h + 2.0 * pad;
  const double stroke = 0.004 * std::max(vw, vh);

  std::ostringstream out;
  out.precision(9);
  const double width = 720.0;
  const double height = width * vh / vw;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"" << vx << " " << vy << " "
      << vw << " " << vh << "\">\n";
  out << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke
      << "\" points=\"";
  for (Eigen::Index j = 0; j < points.size(); ++j)
    out << points[j].real() << "," << -points[j].imag() << " ";
  out << points[0].real() << "," << -points[0].imag();
  out << "\"/>\n</svg>\n";
  return out.str();
}

void write_svg(const std::string& path, const Eigen::VectorXcd& points) {
  write_text_file(path, svg_polyline(points));
}

}  // namespace calderon
