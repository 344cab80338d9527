#include "hypgeom/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "hypgeom/error.hpp"
#include "hypgeom/random.hpp"
#include "hypgeom/trig.hpp"

namespace hypgeom {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string face_str(std::size_t f, const Face& t) {
  std::ostringstream os;
  os << "face " << f << " (" << t[0] << ", " << t[1] << ", " << t[2] << ')';
  return os.str();
}

std::string edge_str(int u, int v) {
  std::ostringstream os;
  os << "edge (" << u << ", " << v << ')';
  return os.str();
}

// Angles of a face with curvature k < 0: the triangle with sides scaled by
// sqrt(-k) has curvature -1 and the same angles.
std::array<double, 3> face_angles(double ab, double bc, double ca, double k) {
  const double s = std::sqrt(-k);
  const TriangleSides t(s * bc, s * ca, s * ab);  // a opposite corner 0, ...
  return {angle_from_sides(t, Vertex::A), angle_from_sides(t, Vertex::B),
          angle_from_sides(t, Vertex::C)};
}

}  // namespace

bool ValidationReport::has(const std::string& kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate(const Combinatorics& c) {
  ValidationReport r;
  auto add = [&](std::string kind, std::string where) {
    r.violations.push_back({std::move(kind), std::move(where)});
  };
  if (c.vertex_count <= 0) add("empty", "vertex_count must be positive");
  if (c.triangles.empty()) add("empty", "no triangles");

  std::map<std::pair<int, int>, int> directed;  // directed edge -> count
  std::map<std::pair<int, int>, int> undirected;
  bool indices_ok = true;
  for (std::size_t f = 0; f < c.triangles.size(); ++f) {
    const Face& t = c.triangles[f];
    bool in_range = true;
    for (int v : t) {
      if (v < 0 || v >= c.vertex_count) in_range = false;
    }
    if (!in_range) {
      add("index-range", face_str(f, t));
      indices_ok = false;
      continue;
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
      add("degenerate-face", face_str(f, t));
      indices_ok = false;
      continue;
    }
    for (int k = 0; k < 3; ++k) {
      const int u = t[k], v = t[(k + 1) % 3];
      ++directed[{u, v}];
      ++undirected[edge_key(u, v)];
    }
  }
  if (!indices_ok) return r;

  for (const auto& [e, n] : undirected) {
    if (n != 2) {
      std::ostringstream os;
      os << edge_str(e.first, e.second) << " lies in " << n << " faces";
      add("edge-manifold", os.str());
    }
  }
  for (const auto& [e, n] : directed) {
    if (n > 1) add("orientation", edge_str(e.first, e.second) + " traversed twice in one direction");
  }

  // Link of each vertex: for face (v, a, b) the link contains a -> b.
  std::vector<std::map<int, std::vector<int>>> link(c.vertex_count);
  for (const Face& t : c.triangles) {
    for (int k = 0; k < 3; ++k) link[t[k]][t[(k + 1) % 3]].push_back(t[(k + 2) % 3]);
  }
  for (int v = 0; v < c.vertex_count; ++v) {
    const auto& l = link[v];
    std::ostringstream where;
    where << "vertex " << v;
    if (l.empty()) {
      add("isolated-vertex", where.str());
      continue;
    }
    bool simple = true;
    std::size_t arcs = 0;
    for (const auto& [a, outs] : l) {
      arcs += outs.size();
      if (outs.size() != 1) simple = false;
    }
    if (!simple) {
      add("vertex-link", where.str() + " link is not a cycle");
      continue;
    }
    // follow the cycle from the first link vertex
    const int start = l.begin()->first;
    int cur = start;
    std::size_t steps = 0;
    do {
      auto it = l.find(cur);
      if (it == l.end()) break;
      cur = it->second.front();
      ++steps;
    } while (cur != start && steps <= arcs);
    if (cur != start || steps != arcs) add("vertex-link", where.str() + " link is not a single cycle");
  }
  return r;
}

ValidationReport validate(const Triangulation& t) {
  ValidationReport r = validate(t.combinatorics());
  auto add = [&](std::string kind, std::string where) {
    r.violations.push_back({std::move(kind), std::move(where)});
  };
  if (!(t.face_curvature < 0.0) || !std::isfinite(t.face_curvature)) {
    std::ostringstream os;
    os << "face_curvature " << t.face_curvature << " (only negative curvature is supported)";
    add("unsupported-curvature", os.str());
  }

  std::set<std::pair<int, int>> complex_edges;
  for (const Face& f : t.triangles) {
    for (int k = 0; k < 3; ++k) complex_edges.insert(edge_key(f[k], f[(k + 1) % 3]));
  }

  std::map<std::pair<int, int>, double> lengths;
  for (const EdgeLength& e : t.edge_lengths) {
    if (e.u < 0 || e.v < 0 || e.u >= t.vertex_count || e.v >= t.vertex_count || e.u == e.v) {
      add("index-range", edge_str(e.u, e.v) + " in edge_lengths");
      continue;
    }
    const auto key = edge_key(e.u, e.v);
    if (!complex_edges.count(key)) {
      add("unknown-edge", edge_str(e.u, e.v) + " is not an edge of any face");
      continue;
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      std::ostringstream os;
      os << edge_str(e.u, e.v) << " has length " << e.length;
      add("nonpositive-length", os.str());
      continue;
    }
    auto [it, inserted] = lengths.emplace(key, e.length);
    if (!inserted && it->second != e.length) {
      std::ostringstream os;
      os.precision(17);
      os << edge_str(e.u, e.v) << " given lengths " << it->second << " and " << e.length;
      add("length-mismatch", os.str());
    }
  }
  for (const auto& e : complex_edges) {
    if (!lengths.count(e)) add("missing-length", edge_str(e.first, e.second));
  }
  for (std::size_t f = 0; f < t.triangles.size(); ++f) {
    const Face& tri = t.triangles[f];
    double s[3];
    bool known = true;
    for (int k = 0; k < 3; ++k) {
      auto it = lengths.find(edge_key(tri[k], tri[(k + 1) % 3]));
      if (it == lengths.end()) {
        known = false;
        break;
      }
      s[k] = it->second;
    }
    if (known && !TriangleSides::valid(s[0], s[1], s[2])) {
      add("triangle-inequality", face_str(f, tri));
    }
  }
  return r;
}

// --- PolyhedralSurface ----------------------------------------------------

PolyhedralSurface::PolyhedralSurface(Triangulation t) : tri_(std::move(t)) {
  const ValidationReport r = validate(tri_);
  if (!r.ok()) {
    std::ostringstream os;
    os << "invalid triangulation:";
    for (std::size_t i = 0; i < r.violations.size() && i < 5; ++i) {
      os << ' ' << r.violations[i].kind << " [" << r.violations[i].where << ']';
    }
    if (r.violations.size() > 5) os << " ... (" << r.violations.size() << " total)";
    throw InvariantError(os.str());
  }
  for (const EdgeLength& e : tri_.edge_lengths) lengths_[edge_key(e.u, e.v)] = e.length;
  for (const auto& [e, len] : lengths_) edges_.push_back(e);

  cone_angles_.assign(tri_.vertex_count, 0.0);
  face_angles_.reserve(tri_.triangles.size());
  for (std::size_t f = 0; f < tri_.triangles.size(); ++f) {
    const Face& t = tri_.triangles[f];
    for (int k = 0; k < 3; ++k) edge_faces_[edge_key(t[k], t[(k + 1) % 3])].push_back(static_cast<int>(f));
    const auto a = face_angles(edge_length(t[0], t[1]), edge_length(t[1], t[2]),
                               edge_length(t[2], t[0]), tri_.face_curvature);
    face_angles_.push_back(a);
    for (int k = 0; k < 3; ++k) cone_angles_[t[k]] += a[k];
  }
}

double PolyhedralSurface::edge_length(int u, int v) const {
  auto it = lengths_.find(edge_key(u, v));
  if (it == lengths_.end()) throw InvariantError(edge_str(u, v) + " is not an edge");
  return it->second;
}

bool PolyhedralSurface::has_edge(int u, int v) const { return lengths_.count(edge_key(u, v)) > 0; }

const std::vector<int>& PolyhedralSurface::faces_of_edge(int u, int v) const {
  auto it = edge_faces_.find(edge_key(u, v));
  if (it == edge_faces_.end()) throw InvariantError(edge_str(u, v) + " is not an edge");
  return it->second;
}

double PolyhedralSurface::cone_angle(int v) const {
  if (v < 0 || v >= vertex_count()) throw InvariantError("cone_angle: vertex out of range");
  return cone_angles_[v];
}

int PolyhedralSurface::euler_characteristic() const {
  return vertex_count() - static_cast<int>(edges_.size()) + static_cast<int>(faces().size());
}

double PolyhedralSurface::face_area(int f) const {
  const Face& t = faces().at(f);
  const double s = std::sqrt(-face_curvature());
  const TriangleSides sides(s * edge_length(t[1], t[2]), s * edge_length(t[2], t[0]),
                            s * edge_length(t[0], t[1]));
  return angle_defect_area(sides) / -face_curvature();
}

double PolyhedralSurface::total_area() const {
  double a = 0.0;
  for (std::size_t f = 0; f < faces().size(); ++f) a += face_area(static_cast<int>(f));
  return a;
}

CurvatureReport curvature_class(const PolyhedralSurface& s, double tol) {
  CurvatureReport r;
  r.cone_angles = s.cone_angles();
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (r.cone_angles[v] > kTwoPi + tol) r.offending.push_back(v);
  }
  r.alexandrov = r.offending.empty();
  return r;
}

double gauss_bonnet_residual(const PolyhedralSurface& s) {
  double total = s.face_curvature() * s.total_area();
  for (double a : s.cone_angles()) total += kTwoPi - a;
  return total - kTwoPi * s.euler_characteristic();
}

// --- oracles --------------------------------------------------------------

PairTableOracle::PairTableOracle(int vertex_count, const std::vector<Entry>& entries)
    : n_(vertex_count) {
  if (n_ <= 0) throw InvariantError("PairTableOracle: vertex_count must be positive");
  for (const Entry& e : entries) {
    if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
      throw InvariantError("PairTableOracle: " + edge_str(e.u, e.v) + " out of range");
    }
    if (!(e.d >= 0.0) || !std::isfinite(e.d)) {
      throw InvariantError("PairTableOracle: negative or non-finite distance at " + edge_str(e.u, e.v));
    }
    if (e.u == e.v) {
      if (e.d != 0.0) throw InvariantError("PairTableOracle: nonzero diagonal entry");
      continue;
    }
    auto [it, inserted] = table_.emplace(edge_key(e.u, e.v), e.d);
    if (!inserted && it->second != e.d) {
      throw InvariantError("PairTableOracle: conflicting entries for " + edge_str(e.u, e.v));
    }
  }
}

bool PairTableOracle::has(int u, int v) const { return u == v || table_.count(edge_key(u, v)) > 0; }

double PairTableOracle::distance(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvariantError("PairTableOracle: index out of range");
  if (u == v) return 0.0;
  auto it = table_.find(edge_key(u, v));
  if (it == table_.end()) throw InvariantError("PairTableOracle: no distance for " + edge_str(u, v));
  return it->second;
}

OracleReport check_oracle(const DistanceOracle& oracle, int sample_triples, std::uint64_t seed) {
  OracleReport r;
  const int n = oracle.vertex_count();
  auto get = [&](int u, int v, double& out) {
    try {
      out = oracle.distance(u, v);
      return true;
    } catch (const InvariantError&) {
      return false;
    }
  };
  for (int u = 0; u < n; ++u) {
    double d;
    if (get(u, u, d)) r.max_diagonal = std::max(r.max_diagonal, std::abs(d));
    for (int v = u + 1; v < n; ++v) {
      double a, b;
      if (get(u, v, a) && get(v, u, b)) {
        ++r.checked_pairs;
        r.max_asymmetry = std::max(r.max_asymmetry, std::abs(a - b));
      }
    }
  }
  auto check = [&](int u, int v, int w) {
    double uv, vw, uw;
    if (get(u, v, uv) && get(v, w, vw) && get(u, w, uw)) {
      ++r.checked_triples;
      r.max_triangle_excess = std::max(r.max_triangle_excess, uw - uv - vw);
    }
  };
  const long long all = static_cast<long long>(n) * n * n;
  if (all <= sample_triples) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) check(u, v, w);
  } else {
    Rng rng(seed);
    for (int i = 0; i < sample_triples; ++i) {
      check(static_cast<int>(rng.next() % n), static_cast<int>(rng.next() % n),
            static_cast<int>(rng.next() % n));
    }
  }
  return r;
}

ComparisonResult comparison_polyhedron(const DistanceOracle& oracle, const Combinatorics& c) {
  const ValidationReport cr = validate(c);
  if (!cr.ok()) {
    throw InvariantError("comparison_polyhedron: combinatorics invalid: " + cr.violations.front().kind +
                         " [" + cr.violations.front().where + "]");
  }
  if (oracle.vertex_count() < c.vertex_count) {
    throw InvariantError("comparison_polyhedron: oracle has fewer vertices than the complex");
  }
  std::map<std::pair<int, int>, double> lengths;
  for (const Face& f : c.triangles) {
    for (int k = 0; k < 3; ++k) {
      const auto key = edge_key(f[k], f[(k + 1) % 3]);
      if (!lengths.count(key)) lengths[key] = oracle.distance(key.first, key.second);
    }
  }
  for (std::size_t f = 0; f < c.triangles.size(); ++f) {
    const Face& t = c.triangles[f];
    const double a = lengths[edge_key(t[0], t[1])];
    const double b = lengths[edge_key(t[1], t[2])];
    const double d = lengths[edge_key(t[2], t[0])];
    if (!TriangleSides::valid(a, b, d)) {
      throw DomainError("comparison_polyhedron: unbuildable comparison triangle at " + face_str(f, t));
    }
  }
  Triangulation tri;
  tri.vertex_count = c.vertex_count;
  tri.triangles = c.triangles;
  tri.face_curvature = -1.0;
  for (const auto& [e, len] : lengths) tri.edge_lengths.push_back({e.first, e.second, len});
  PolyhedralSurface s(std::move(tri));
  CurvatureReport k = curvature_class(s);
  return {std::move(s), std::move(k)};
}

double metric_deviation(const DistanceFn& a, const DistanceFn& b,
                        const std::vector<std::pair<int, int>>& pairs) {
  double worst = 0.0;
  for (const auto& [u, v] : pairs) worst = std::max(worst, std::abs(a(u, v) - b(u, v)));
  return worst;
}

double scale_curvature(double k, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("scale_curvature: lambda must be positive");
  return k / lambda;
}

PolyhedralSurface scale_distances(const PolyhedralSurface& s, double lambda) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) throw DomainError("scale_distances: lambda must exceed 1");
  Triangulation t = s.triangulation();
  const double f = std::sqrt(lambda);
  for (EdgeLength& e : t.edge_lengths) e.length *= f;
  t.face_curvature = scale_curvature(t.face_curvature, lambda);
  return PolyhedralSurface(std::move(t));
}

// --- fixtures -------------------------------------------------------------

Triangulation bipyramid(int n, double corner_angle) {
  if (n < 3) throw DomainError("bipyramid: need at least 3 equatorial vertices");
  const double side = equilateral_side_for_angle(corner_angle);
  Triangulation t;
  t.vertex_count = n + 2;
  auto eq = [n](int i) { return 2 + ((i % n) + n) % n; };
  for (int i = 0; i < n; ++i) {
    t.triangles.push_back({0, eq(i), eq(i + 1)});
    t.triangles.push_back({1, eq(i + 1), eq(i)});
  }
  for (int i = 0; i < n; ++i) {
    t.edge_lengths.push_back({0, eq(i), side});
    t.edge_lengths.push_back({1, eq(i), side});
    t.edge_lengths.push_back({eq(i), eq(i + 1), side});
  }
  return t;
}

Triangulation octahedron() { return bipyramid(4, std::numbers::pi / 4); }

Triangulation glued_bigon(double side) {
  Triangulation t;
  t.vertex_count = 3;
  t.triangles = {{0, 1, 2}, {0, 2, 1}};
  t.edge_lengths = {{0, 1, side}, {1, 2, side}, {0, 2, side}};
  return t;
}

}  // namespace hypgeom
