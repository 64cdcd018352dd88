#ifndef SHAPESEP_GRAPH_HPP
#define SHAPESEP_GRAPH_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "shapesep/relations.hpp"

namespace shapesep {

/// Undirected simple graph on dense integer vertex ids with sorted adjacency
/// lists. Immutable once finalized.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n) : adj_(n) {}
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return static_cast<int>(adj_.size()); }
  long m() const;
  const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
  int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }
  bool adjacent(int u, int v) const;
  std::vector<std::pair<int, int>> edge_list() const;

  void add_edge(int u, int v);
  void finalize(); // sort adjacency, drop duplicates

  bool operator==(const Graph& o) const { return adj_ == o.adj_; }

private:
  std::vector<std::vector<int>> adj_;
};

/// An intersection representation: a shared shape table plus, per vertex, a
/// shape index and an exact translation.
struct Representation {
  int dimension = 0;
  std::vector<Shape> shapes;
  std::vector<int> shape_of;
  std::vector<RPoint> translations;

  int n() const { return static_cast<int>(shape_of.size()); }
  PlacedShape placed(int v) const;
  Shape resolved(int v) const;
  void validate() const;
};

enum class CertStatus { Exact, SampledOnly };

struct ThinnessResult {
  int c = 0;
  CertStatus status = CertStatus::Exact;
  std::optional<Point> witness; // a point realizing the maximum depth
};

enum class GraphBuildMode { Auto, SweepBroadphase, Pairwise };

/// Edge uv present iff the placed shapes of u and v intersect (closed sets).
/// Auto uses an axis sweep over exact bounding boxes as broad phase with the
/// precise test as narrow phase; Pairwise is the quadratic oracle.
Graph build_intersection_graph(const Representation& r,
                               GraphBuildMode mode = GraphBuildMode::Auto);

/// Maximum depth of the placed family. Exact (coordinate-compressed sweep)
/// when every shape is a box; sampled over candidate points otherwise.
ThinnessResult thinness(const Representation& r);

struct TamenessCertificate {
  int c = 0;
  Scalar s = Scalar(1);
  bool thinness_ok = false;
  bool convexity_ok = false;
  bool comparability_ok = false;
  CertStatus status = CertStatus::SampledOnly;
  int measured_thinness = 0;
  Scalar measured_s_star = Scalar(1);
  std::optional<Point> thinness_witness;
  std::optional<int> nonconvex_vertex;
  std::optional<std::pair<int, int>> incomparable_pair; // shape-table indices

  bool certified() const { return thinness_ok && convexity_ok && comparability_ok; }
};

/// Certificate that the representation is (c, ⊑_s)-tame: depth at most c,
/// every shape convex, every shape pair ⊑_s-comparable. Failures are payload,
/// not errors.
TamenessCertificate check_tame(const Representation& r, int c, const Scalar& s,
                               const ProbeConfig& cfg = ProbeConfig());

struct DichotomyResult {
  bool disjoint_branch = false;
  int axis = -1;            // valid in the disjoint branch
  std::vector<int> indices; // k disjoint boxes, or the common-point subfamily
  RPoint common_point;      // valid in the common-point branch
};

/// Either k boxes with pairwise disjoint projections on some axis, or a
/// subfamily of size >= n/k^d with a common point. Exact arithmetic; prefers
/// the disjoint branch, scanning axes in ascending order.
DichotomyResult boxes_dichotomy(const std::vector<Box>& family, int k);

/// Exact verification of a dichotomy certificate against its family.
bool verify_dichotomy(const std::vector<Box>& family, int k, const DichotomyResult& res);

Graph strong_product(const Graph& g1, const Graph& g2);

enum class ProductMode { Product, Conjunction };

/// Cartesian-product representation: Product mode represents G1 ⊠ G2 in
/// d1+d2 dimensions; Conjunction mode (same vertex set) represents G1 ∩ G2.
Representation product_representation(const Representation& r1, const Representation& r2,
                                      ProductMode mode);

} // namespace shapesep

#endif
