#pragma once

// Closed polyhedral surfaces glued from triangles of constant negative
// curvature, their comparison polyhedra, and intrinsic distances.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hypgeom {

using Face = std::array<int, 3>;

struct EdgeLength {
  int u = 0;
  int v = 0;
  double length = 0.0;
};

/// Combinatorics only.
struct Combinatorics {
  int vertex_count = 0;
  std::vector<Face> triangles;
};

/// Combinatorics plus one length per undirected edge. Lengths are kept as a
/// raw list so that duplicated or conflicting entries can be reported.
struct Triangulation {
  int vertex_count = 0;
  std::vector<Face> triangles;
  std::vector<EdgeLength> edge_lengths;
  double face_curvature = -1.0;

  Combinatorics combinatorics() const { return {vertex_count, triangles}; }
};

struct Violation {
  std::string kind;   // short machine-readable tag, e.g. "triangle-inequality"
  std::string where;  // human-readable location
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& kind) const;
};

/// Checks that the complex is a closed orientable surface: indices in range,
/// no degenerate or repeated faces, every edge in exactly two faces with
/// opposite orientations, and the link of every vertex a single cycle.
ValidationReport validate(const Combinatorics& c);

/// validate(Combinatorics) plus: one positive finite length per edge, no
/// conflicting duplicates, strict triangle inequalities on every face, and a
/// negative face curvature.
ValidationReport validate(const Triangulation& t);

/// Unordered edge key (min, max).
inline std::pair<int, int> edge_key(int u, int v) {
  return u < v ? std::pair{u, v} : std::pair{v, u};
}

class PolyhedralSurface {
 public:
  /// Throws InvariantError with the first violations if validate(t) fails.
  explicit PolyhedralSurface(Triangulation t);

  const Triangulation& triangulation() const { return tri_; }
  int vertex_count() const { return tri_.vertex_count; }
  const std::vector<Face>& faces() const { return tri_.triangles; }
  double face_curvature() const { return tri_.face_curvature; }

  /// Throws InvariantError if (u, v) is not an edge.
  double edge_length(int u, int v) const;
  bool has_edge(int u, int v) const;
  /// Sorted unordered edges.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  /// The one or two faces containing an edge, in face order.
  const std::vector<int>& faces_of_edge(int u, int v) const;

  /// Interior angle of face f at its corner k (the vertex faces()[f][k]).
  double face_angle(int f, int k) const { return face_angles_[f][k]; }
  /// Sum of incident face angles.
  double cone_angle(int v) const;
  const std::vector<double>& cone_angles() const { return cone_angles_; }

  /// V - E + F.
  int euler_characteristic() const;
  /// Sum of face areas, each area = angle defect / (-face_curvature).
  double total_area() const;
  /// Area of face f.
  double face_area(int f) const;

 private:
  Triangulation tri_;
  std::map<std::pair<int, int>, double> lengths_;
  std::map<std::pair<int, int>, std::vector<int>> edge_faces_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::array<double, 3>> face_angles_;
  std::vector<double> cone_angles_;
};

/// Report for the Alexandrov condition K >= -1 at the vertices.
struct CurvatureReport {
  bool alexandrov = true;
  std::vector<int> offending;  // vertices with cone angle > 2 pi + tol
  std::vector<double> cone_angles;
};

CurvatureReport curvature_class(const PolyhedralSurface& s, double tol = 1e-9);

/// Sum over faces of K * area, plus sum over vertices of (2 pi - cone angle),
/// minus 2 pi chi. Zero for a closed surface.
double gauss_bonnet_residual(const PolyhedralSurface& s);

// --- distance oracles ----------------------------------------------------

class DistanceOracle {
 public:
  virtual ~DistanceOracle() = default;
  virtual int vertex_count() const = 0;
  /// Throws InvariantError for indices out of range or undefined pairs.
  virtual double distance(int u, int v) const = 0;
};

/// Explicit table of pair distances. Pairs are unordered; the diagonal is 0.
class PairTableOracle final : public DistanceOracle {
 public:
  struct Entry {
    int u;
    int v;
    double d;
  };
  /// Throws InvariantError on out-of-range indices, negative distances,
  /// nonzero diagonal entries or conflicting duplicates.
  PairTableOracle(int vertex_count, const std::vector<Entry>& entries);

  int vertex_count() const override { return n_; }
  double distance(int u, int v) const override;
  bool has(int u, int v) const;

 private:
  int n_;
  std::map<std::pair<int, int>, double> table_;
};

struct OracleReport {
  int checked_pairs = 0;
  int checked_triples = 0;
  double max_asymmetry = 0.0;
  double max_diagonal = 0.0;
  double max_triangle_excess = 0.0;  // max of d(u,w) - d(u,v) - d(v,w)
  bool ok(double slack) const {
    return max_asymmetry <= slack && max_diagonal <= slack && max_triangle_excess <= slack;
  }
};

/// Checks symmetry and the diagonal on all vertex pairs and the triangle
/// inequality on all triples (or on `sample_triples` random triples drawn with
/// `seed` when the vertex count makes the full check expensive). Pairs the
/// oracle cannot evaluate are skipped.
OracleReport check_oracle(const DistanceOracle& oracle, int sample_triples = 20000,
                          std::uint64_t seed = 1);

/// Result of the comparison-polyhedron construction.
struct ComparisonResult {
  PolyhedralSurface surface;
  CurvatureReport curvature;
};

/// Replaces every face of the complex by the curvature -1 triangle with side
/// lengths given by the oracle and glues them back together. Throws
/// DomainError naming the face if some face violates the triangle inequality,
/// and InvariantError if the complex is not a closed surface.
ComparisonResult comparison_polyhedron(const DistanceOracle& oracle, const Combinatorics& c);

// --- intrinsic distances --------------------------------------------------

/// Shortest-path metric on a polyhedral surface, approximated from above.
///
/// Every edge is cut into `refinement` equal segments (0 and 1 both mean no
/// subdivision). Graph arcs are the geodesic chords between subdivision nodes
/// on the boundary of a face, and chords that cross one shared edge between
/// the two faces unfolded into the plane. Refining along n -> 2n adds nodes
/// and arcs only, so the estimate is non-increasing along such chains.
class IntrinsicMetric {
 public:
  IntrinsicMetric(const PolyhedralSurface& s, int refinement);

  int refinement() const { return refinement_; }
  int node_count() const { return static_cast<int>(offsets_.size()) - 1; }
  std::size_t arc_count() const { return targets_.size(); }

  double distance(int u, int v) const;
  /// Distances from u to every vertex.
  std::vector<double> distances_from(int u) const;

 private:
  std::vector<double> dijkstra(int source, int stop_at) const;

  int vertex_count_;
  int refinement_;
  double scale_;  // converts curvature -1 lengths back to the face curvature
  std::vector<std::size_t> offsets_;
  std::vector<int> targets_;
  std::vector<double> weights_;
};

double intrinsic_distance(const PolyhedralSurface& s, int u, int v, int refinement);

/// Max over vertex pairs of the intrinsic distance.
double diameter_estimate(const PolyhedralSurface& s, int refinement);

/// Oracle backed by the intrinsic metric of a surface.
class SurfaceOracle final : public DistanceOracle {
 public:
  SurfaceOracle(const PolyhedralSurface& s, int refinement);
  int vertex_count() const override { return n_; }
  double distance(int u, int v) const override;

 private:
  int n_;
  std::vector<std::vector<double>> table_;
};

using DistanceFn = std::function<double(int, int)>;

/// max |a(u,v) - b(u,v)| over the pairs.
double metric_deviation(const DistanceFn& a, const DistanceFn& b,
                        const std::vector<std::pair<int, int>>& pairs);

/// k / lambda.
double scale_curvature(double k, double lambda);

/// Multiplies every edge length by sqrt(lambda) and divides the face curvature
/// by lambda. Throws DomainError unless lambda > 1.
PolyhedralSurface scale_distances(const PolyhedralSurface& s, double lambda);

// --- fixtures -------------------------------------------------------------

/// Double pyramid over an n-gon: two apexes (0 and 1) and an equatorial cycle
/// 2..n+1. Every face is the equilateral curvature -1 triangle with corner
/// angle `corner_angle`, so each apex has cone angle n * corner_angle.
Triangulation bipyramid(int n, double corner_angle);

/// The regular octahedron with right-angled vertices (cone angle pi): a
/// 4-gon bipyramid with corner angle pi/4.
Triangulation octahedron();

/// Two copies of the equilateral triangle with the given side glued along
/// their boundary.
Triangulation glued_bigon(double side);

// --- analytic test oracle -------------------------------------------------

/// The double of a square in a plane of constant curvature K in [-1, 0): two
/// copies of the square glued along the boundary (a pillowcase), with the
/// square triangulated as an m x m grid of Klein-model cells. Each cell is
/// split along the diagonal pointing away from the centre of the square.
/// Boundary grid points are shared by both sheets.
struct H2GridParams {
  int cells = 4;             // m, even and at least 2
  double half_width = 0.6;   // Klein half-width of the square, in (0, 1/sqrt 2)
  double curvature = -0.5;   // K

  void validate() const;
};

class H2GridOracle final : public DistanceOracle {
 public:
  explicit H2GridOracle(const H2GridParams& p);

  int vertex_count() const override { return static_cast<int>(coords_.size()); }
  double distance(int u, int v) const override;

  const H2GridParams& params() const { return p_; }
  const Combinatorics& combinatorics() const { return comb_; }

  /// Vertex at grid position (i, j) on sheet 0 (top) or 1 (bottom).
  int vertex_at(int sheet, int i, int j) const;
  /// Vertices not on the seam.
  std::vector<int> interior_vertices() const;
  bool on_seam(int v) const { return sheet_[v] < 0; }

 private:
  H2GridParams p_;
  std::vector<std::array<double, 2>> coords_;  // Klein coordinates
  std::vector<int> sheet_;                     // 0, 1, or -1 on the seam
  std::vector<int> index_;                     // (sheet, i, j) -> vertex
  Combinatorics comb_;
};

}  // namespace hypgeom
