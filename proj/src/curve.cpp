#include "calderon/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <unordered_map>
#include <vector>

#include "calderon/errors.hpp"
#include "calderon/fourier.hpp"

namespace calderon {

namespace {

struct cell_key {
  long long x, y;
  bool operator==(const cell_key& o) const { return x == o.x && y == o.y; }
};

struct cell_hash {
  size_t operator()(const cell_key& k) const {
    return std::hash<long long>()(k.x * 73856093LL ^ k.y * 19349663LL);
  }
};

// Proper crossing test for segments p1p2 and q1q2 that do not share endpoints.
bool segments_cross(cdouble p1, cdouble p2, cdouble q1, cdouble q2) {
  auto orient = [](cdouble a, cdouble b, cdouble c) {
    const double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
                     (b.imag() - a.imag()) * (c.real() - a.real());
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
  };
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

Eigen::VectorXcd evaluate(const Eigen::VectorXcd& g, int grid_size) {
  return samples_from_coeffs(g, grid_size);
}

double speed_deviation(const Eigen::VectorXcd& g, int grid_size) {
  const Eigen::VectorXcd deriv = differentiate(g);
  const Eigen::VectorXcd samples = samples_from_coeffs(deriv, grid_size);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < samples.size(); ++j)
    worst = std::max(worst, std::abs(std::abs(samples[j]) - 1.0));
  return worst;
}

simplicity_report is_simple(const Eigen::VectorXcd& g, int grid_size,
                            double proximity) {
  if (proximity <= 0.0) throw invalid_input("proximity must be positive");
  const Eigen::VectorXcd pts = samples_from_coeffs(g, grid_size);
  const int m = grid_size;
  const double step = 2.0 * std::numbers::pi / m;
  const double cell = proximity;

  simplicity_report report;
  report.simple = true;

  auto cell_of = [cell](double x, double y) {
    return cell_key{static_cast<long long>(std::floor(x / cell)),
                    static_cast<long long>(std::floor(y / cell))};
  };
  auto circular_gap = [m, step](int a, int b) {
    const double d = std::abs(a - b) * step;
    return std::min(d, 2.0 * std::numbers::pi - d);
  };

  // Tangential overlaps: parameter-distant points landing close in the plane.
  {
    std::unordered_map<cell_key, std::vector<int>, cell_hash> buckets;
    buckets.reserve(2 * m);
    for (int j = 0; j < m; ++j)
      buckets[cell_of(pts[j].real(), pts[j].imag())].push_back(j);
    for (int j = 0; j < m; ++j) {
      const cell_key base = cell_of(pts[j].real(), pts[j].imag());
      for (long long dx = -1; dx <= 1; ++dx) {
        for (long long dy = -1; dy <= 1; ++dy) {
          const auto it = buckets.find(cell_key{base.x + dx, base.y + dy});
          if (it == buckets.end()) continue;
          for (int k : it->second) {
            if (k <= j) continue;
            if (circular_gap(j, k) > 10.0 * proximity &&
                std::abs(pts[j] - pts[k]) < proximity) {
              report.simple = false;
              report.witnesses.emplace_back(j * step, k * step);
            }
          }
        }
      }
    }
  }

  // Transversal crossings between non-adjacent polyline segments. Each
  // segment is registered in every cell its bounding box overlaps, so any
  // intersecting pair shares at least the cell containing the crossing.
  {
    std::unordered_map<cell_key, std::vector<int>, cell_hash> buckets;
    buckets.reserve(2 * m);
    for (int j = 0; j < m; ++j) {
      const cdouble a = pts[j];
      const cdouble b = pts[(j + 1) % m];
      const cell_key lo = cell_of(std::min(a.real(), b.real()),
                                  std::min(a.imag(), b.imag()));
      const cell_key hi = cell_of(std::max(a.real(), b.real()),
                                  std::max(a.imag(), b.imag()));
      for (long long cx = lo.x; cx <= hi.x; ++cx)
        for (long long cy = lo.y; cy <= hi.y; ++cy)
          buckets[cell_key{cx, cy}].push_back(j);
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& [key, list] : buckets) {
      for (size_t a = 0; a < list.size(); ++a) {
        for (size_t b = a + 1; b < list.size(); ++b) {
          const int j = std::min(list[a], list[b]);
          const int k = std::max(list[a], list[b]);
          if (k == j) continue;
          if (k == j + 1 || (j == 0 && k == m - 1)) continue;  // adjacent
          if (!seen.insert({j, k}).second) continue;
          if (segments_cross(pts[j], pts[(j + 1) % m], pts[k],
                             pts[(k + 1) % m])) {
            report.simple = false;
            report.witnesses.emplace_back(j * step, k * step);
          }
        }
      }
    }
  }

  std::sort(report.witnesses.begin(), report.witnesses.end());
  report.witnesses.erase(
      std::unique(report.witnesses.begin(), report.witnesses.end()),
      report.witnesses.end());
  return report;
}

alignment align(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
  const int nf = n_max_of(f);
  const int ng = n_max_of(g);
  const int n = std::min(nf, ng);

  alignment out;
  cdouble corr = 0.0;
  for (int k = -n; k <= n; ++k)
    if (k != 0) corr += g[k + ng] * std::conj(f[k + nf]);
  if (std::abs(corr) > 0.0) out.alpha = corr / std::abs(corr);
  out.shift = g[ng] - out.alpha * f[nf];

  double dist2 = 0.0;
  const int big = std::max(nf, ng);
  for (int k = -big; k <= big; ++k) {
    if (k == 0) continue;
    const cdouble fv = std::abs(k) <= nf ? f[k + nf] : cdouble(0.0);
    const cdouble gv = std::abs(k) <= ng ? g[k + ng] : cdouble(0.0);
    dist2 += std::norm(out.alpha * fv - gv);
  }
  out.distance = std::sqrt(dist2);
  return out;
}

}  // namespace calderon
