#include <algorithm>
#include <cmath>
#include <limits>

#include "hypgeom/error.hpp"
#include "hypgeom/hyperboloid.hpp"
#include "hypgeom/models.hpp"
#include "hypgeom/surface.hpp"

namespace hypgeom {

namespace {

double klein_dist(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return dist(from_klein({a[0], a[1], 0.0}), from_klein({b[0], b[1], 0.0}));
}

// Minimizes a unimodal function on [0, 1] by golden-section search.
template <class F>
double golden_min(F f) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0, hi = 1.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-14; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return std::min({f(lo), f(hi), f1, f2});
}

}  // namespace

void H2GridParams::validate() const {
  if (cells < 2 || cells % 2 != 0) throw DomainError("h2-grid: cells must be an even number >= 2");
  if (!(half_width > 0.0 && half_width < std::sqrt(0.5))) {
    throw DomainError("h2-grid: half_width must lie in (0, 1/sqrt(2))");
  }
  if (!(curvature >= -1.0 && curvature < 0.0)) throw DomainError("h2-grid: curvature must lie in [-1, 0)");
}

H2GridOracle::H2GridOracle(const H2GridParams& p) : p_(p) {
  p_.validate();
  const int m = p_.cells;
  const int side = m + 1;
  index_.assign(2 * side * side, -1);
  auto boundary = [m](int i, int j) { return i == 0 || j == 0 || i == m || j == m; };
  for (int sheet = 0; sheet < 2; ++sheet) {
    for (int j = 0; j <= m; ++j) {
      for (int i = 0; i <= m; ++i) {
        int& slot = index_[(sheet * side + j) * side + i];
        if (sheet == 1 && boundary(i, j)) {
          slot = index_[j * side + i];
          continue;
        }
        slot = static_cast<int>(coords_.size());
        const double w = p_.half_width;
        coords_.push_back({-w + 2.0 * w * i / m, -w + 2.0 * w * j / m});
        sheet_.push_back(boundary(i, j) ? -1 : sheet);
      }
    }
  }
  comb_.vertex_count = static_cast<int>(coords_.size());
  for (int sheet = 0; sheet < 2; ++sheet) {
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        const int v00 = vertex_at(sheet, i, j), v10 = vertex_at(sheet, i + 1, j);
        const int v11 = vertex_at(sheet, i + 1, j + 1), v01 = vertex_at(sheet, i, j + 1);
        // Diagonals point away from the centre so no face has three seam vertices.
        const bool main_diag = (2 * i < m) == (2 * j < m);
        Face a, b;
        if (main_diag) {
          a = {v00, v10, v11};
          b = {v00, v11, v01};
        } else {
          a = {v00, v10, v01};
          b = {v10, v11, v01};
        }
        if (sheet == 1) {
          std::swap(a[1], a[2]);
          std::swap(b[1], b[2]);
        }
        comb_.triangles.push_back(a);
        comb_.triangles.push_back(b);
      }
    }
  }
}

int H2GridOracle::vertex_at(int sheet, int i, int j) const {
  const int side = p_.cells + 1;
  if (sheet < 0 || sheet > 1 || i < 0 || j < 0 || i > p_.cells || j > p_.cells) {
    throw InvariantError("h2-grid: grid position out of range");
  }
  return index_[(sheet * side + j) * side + i];
}

std::vector<int> H2GridOracle::interior_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v) {
    if (sheet_[v] >= 0) out.push_back(v);
  }
  return out;
}

double H2GridOracle::distance(int u, int v) const {
  if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
    throw InvariantError("h2-grid: vertex out of range");
  }
  const double scale = 1.0 / std::sqrt(-p_.curvature);
  if (u == v) return 0.0;
  const auto& a = coords_[u];
  const auto& b = coords_[v];
  if (sheet_[u] < 0 || sheet_[v] < 0 || sheet_[u] == sheet_[v]) return scale * klein_dist(a, b);
  // Opposite sheets: the shortest path crosses the seam once.
  const double w = p_.half_width;
  const std::array<std::array<double, 2>, 4> corners = {
      std::array<double, 2>{-w, -w}, {w, -w}, {w, w}, {-w, w}};
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) {
    const auto& c0 = corners[k];
    const auto& c1 = corners[(k + 1) % 4];
    best = std::min(best, golden_min([&](double t) {
                      const std::array<double, 2> x = {c0[0] + t * (c1[0] - c0[0]),
                                                       c0[1] + t * (c1[1] - c0[1])};
                      return klein_dist(a, x) + klein_dist(x, b);
                    }));
  }
  return scale * best;
}

}  // namespace hypgeom
