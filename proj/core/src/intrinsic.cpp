#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "hypgeom/error.hpp"
#include "hypgeom/hyperboloid.hpp"
#include "hypgeom/surface.hpp"
#include "hypgeom/trig.hpp"

namespace hypgeom {

namespace {

struct Arc {
  int u;
  int v;
  double w;
};

// Places the triangle with vertices (p, q, r) in the x3 = 0 plane: p at
// epsilon^0, q on the positive x1 ray, r on the side given by `sign`.
// Lengths are in curvature -1 units.
std::array<HPoint, 3> place(double pq, double qr, double rp, double sign) {
  const TriangleSides t(qr, rp, pq);
  const double angle_p = angle_from_sides(t, Vertex::A);
  const HPoint p = HPoint::origin();
  const HPoint q = HPoint::normalize({std::cosh(pq), std::sinh(pq), 0.0, 0.0});
  const HPoint r = HPoint::normalize(
      {std::cosh(rp), std::sinh(rp) * std::cos(angle_p), sign * std::sinh(rp) * std::sin(angle_p), 0.0});
  return {p, q, r};
}

}  // namespace

IntrinsicMetric::IntrinsicMetric(const PolyhedralSurface& s, int refinement)
    : vertex_count_(s.vertex_count()), refinement_(std::max(refinement, 1)) {
  if (refinement < 0) throw DomainError("intrinsic distance: refinement must be nonnegative");
  scale_ = std::sqrt(-s.face_curvature());
  const int n = refinement_;
  const auto& edges = s.edges();
  const int node_count = vertex_count_ + static_cast<int>(edges.size()) * (n - 1);

  std::map<std::pair<int, int>, int> edge_index;
  for (std::size_t e = 0; e < edges.size(); ++e) edge_index[edges[e]] = static_cast<int>(e);

  // Node j (0..n) along edge (u, v), counted from the smaller endpoint.
  auto node_on = [&](int u, int v, int j) {
    const auto key = edge_key(u, v);
    if (j == 0) return key.first;
    if (j == n) return key.second;
    return vertex_count_ + edge_index[key] * (n - 1) + (j - 1);
  };
  auto len = [&](int u, int v) { return scale_ * s.edge_length(u, v); };

  // Nodes of edge (u, v) with positions, given the placed endpoints.
  struct Placed {
    int id;
    HPoint pos;
  };
  auto edge_nodes = [&](int u, const HPoint& pu, int v, const HPoint& pv, bool with_u, bool with_v,
                        std::vector<Placed>& out) {
    const bool forward = u < v;
    const HPoint& lo = forward ? pu : pv;
    const HPoint& hi = forward ? pv : pu;
    const int lo_id = forward ? u : v;
    const int hi_id = forward ? v : u;
    for (int j = 0; j <= n; ++j) {
      const bool at_u = forward ? j == 0 : j == n;
      const bool at_v = forward ? j == n : j == 0;
      if ((at_u && !with_u) || (at_v && !with_v)) continue;
      const HPoint pos = j == 0 ? lo : j == n ? hi : geodesic_point(lo, hi, static_cast<double>(j) / n);
      out.push_back({node_on(lo_id, hi_id, j), pos});
    }
  };

  std::vector<Arc> arcs;

  // consecutive nodes along every edge
  for (const auto& [u, v] : edges) {
    const double w = len(u, v) / n;
    for (int j = 0; j < n; ++j) arcs.push_back({node_on(u, v, j), node_on(u, v, j + 1), w});
  }

  // chords inside each face between nodes on different sides
  for (const Face& f : s.faces()) {
    const auto pts = place(len(f[0], f[1]), len(f[1], f[2]), len(f[2], f[0]), 1.0);
    std::vector<Placed> side[3];
    for (int k = 0; k < 3; ++k) {
      edge_nodes(f[k], pts[k], f[(k + 1) % 3], pts[(k + 1) % 3], false, false, side[k]);
    }
    std::vector<Placed> all;
    std::vector<int> tag;  // bitmask of sides a node lies on
    for (int k = 0; k < 3; ++k) {
      all.push_back({f[k], pts[k]});
      tag.push_back((1 << k) | (1 << ((k + 2) % 3)));
      for (const Placed& p : side[k]) {
        all.push_back(p);
        tag.push_back(1 << k);
      }
    }
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (tag[i] & tag[j]) continue;
        arcs.push_back({all[i].id, all[j].id, dist(all[i].pos, all[j].pos)});
      }
    }
  }

  // chords across each edge through the two unfolded faces
  for (const auto& [p, q] : edges) {
    const auto& fs = s.faces_of_edge(p, q);
    if (fs.size() != 2) continue;
    std::vector<Placed> wing[2];
    for (int side = 0; side < 2; ++side) {
      const Face& f = s.faces()[fs[side]];
      int r = -1;
      for (int v : f) {
        if (v != p && v != q) r = v;
      }
      const auto pts = place(len(p, q), len(q, r), len(r, p), side == 0 ? 1.0 : -1.0);
      edge_nodes(p, pts[0], r, pts[2], false, true, wing[side]);
      edge_nodes(q, pts[1], r, pts[2], false, false, wing[side]);
    }
    const double edge_klein = std::tanh(len(p, q));
    for (const Placed& a : wing[0]) {
      const double a1 = a.pos[1] / a.pos[0], a2 = a.pos[2] / a.pos[0];
      for (const Placed& b : wing[1]) {
        const double b1 = b.pos[1] / b.pos[0], b2 = b.pos[2] / b.pos[0];
        // Klein lines are geodesics; find where ab crosses the x1 axis.
        const double t = a2 / (a2 - b2);
        const double x = a1 + t * (b1 - a1);
        if (x < -1e-12 || x > edge_klein + 1e-12) continue;
        arcs.push_back({a.id, b.id, dist(a.pos, b.pos)});
      }
    }
  }

  // compressed adjacency, both directions
  std::vector<std::size_t> degree(node_count + 1, 0);
  for (const Arc& a : arcs) {
    ++degree[a.u];
    ++degree[a.v];
  }
  offsets_.assign(node_count + 1, 0);
  for (int i = 0; i < node_count; ++i) offsets_[i + 1] = offsets_[i] + degree[i];
  targets_.resize(offsets_.back());
  weights_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Arc& a : arcs) {
    targets_[fill[a.u]] = a.v;
    weights_[fill[a.u]++] = a.w;
    targets_[fill[a.v]] = a.u;
    weights_[fill[a.v]++] = a.w;
  }
}

std::vector<double> IntrinsicMetric::dijkstra(int source, int stop_at) const {
  const int nodes = node_count();
  std::vector<double> d(nodes, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  d[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    const auto [du, u] = heap.top();
    heap.pop();
    if (du > d[u]) continue;
    if (u == stop_at) break;
    for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
      const double nd = du + weights_[k];
      if (nd < d[targets_[k]]) {
        d[targets_[k]] = nd;
        heap.push({nd, targets_[k]});
      }
    }
  }
  return d;
}

double IntrinsicMetric::distance(int u, int v) const {
  if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) {
    throw InvariantError("intrinsic distance: vertex out of range");
  }
  if (u == v) return 0.0;
  return dijkstra(u, v)[v] / scale_;
}

std::vector<double> IntrinsicMetric::distances_from(int u) const {
  if (u < 0 || u >= vertex_count_) throw InvariantError("intrinsic distance: vertex out of range");
  std::vector<double> d = dijkstra(u, -1);
  d.resize(vertex_count_);
  for (double& x : d) x /= scale_;
  return d;
}

double intrinsic_distance(const PolyhedralSurface& s, int u, int v, int refinement) {
  return IntrinsicMetric(s, refinement).distance(u, v);
}

double diameter_estimate(const PolyhedralSurface& s, int refinement) {
  const IntrinsicMetric m(s, refinement);
  double best = 0.0;
  for (int u = 0; u < s.vertex_count(); ++u) {
    const auto d = m.distances_from(u);
    for (int v = u + 1; v < s.vertex_count(); ++v) best = std::max(best, d[v]);
  }
  return best;
}

SurfaceOracle::SurfaceOracle(const PolyhedralSurface& s, int refinement) : n_(s.vertex_count()) {
  const IntrinsicMetric m(s, refinement);
  table_.reserve(n_);
  for (int u = 0; u < n_; ++u) table_.push_back(m.distances_from(u));
  // Dijkstra from u and from v can differ in the last bit; use one value.
  for (int u = 0; u < n_; ++u)
    for (int v = u + 1; v < n_; ++v) table_[v][u] = table_[u][v];
}

double SurfaceOracle::distance(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvariantError("SurfaceOracle: index out of range");
  return table_[u][v];
}

}  // namespace hypgeom
