#ifndef SHAPESEP_COLORING_HPP
#define SHAPESEP_COLORING_HPP

#include <optional>
#include <vector>

#include "shapesep/graph.hpp"

namespace shapesep {

/// A linear ordering of vertex ids with O(1) rank lookup.
struct Ordering {
  std::vector<int> order; // order[pos] = vertex
  std::vector<int> rank;  // rank[v] = pos

  static Ordering identity(int n);
  static Ordering from_order(std::vector<int> order);
  int n() const { return static_cast<int>(order.size()); }
  bool precedes(int u, int v) const { return rank[u] < rank[v]; }
};

/// L_{G,ord,r}(v): vertices x at or before v reachable from v by a path of
/// length at most r whose internal vertices all come after v.
std::vector<int> reach_set(const Graph& g, const Ordering& ord, int r, int v);

struct ColoringProfile {
  struct Row {
    int r = 0;
    int value = 0;
    int argmax = -1;
  };
  std::vector<Row> rows;
  int value_at(int r) const;
};

/// col_{ord,r} for r = 1..r_max with argmax witnesses. Values are
/// non-decreasing in r.
ColoringProfile col_profile(const Graph& g, const Ordering& ord, int r_max);

struct ExactColResult {
  int value = 0;
  Ordering witness;
};

/// Exact strong coloring number col_r(G): exhaustive ordering search with
/// branch-and-bound pruning on prefixes. Hard size cap (default 9 vertices).
ExactColResult strong_coloring_number_exact(const Graph& g, int r, int cap = 9);

/// Vertices in non-increasing volume order; ties broken by vertex id.
Ordering volume_ordering(const Representation& r);

/// 2 c s (2k+1)^d d^d, exact in rational arithmetic when inputs are exact.
Scalar delta_bound(const Scalar& c, const Scalar& s, int d, const Scalar& k);

/// The constants the volume-ordering bound composes for a certified (c, s)
/// representation: k' and s' from the comparability transfer lemmas, and the
/// resulting coefficient delta with col_{ord,r} <= delta r^d.
struct ComposedBound {
  double c = 1, s = 1;
  int d = 1;
  double k_prime = 1; // from sqsubseteq -> le_{k,k} at parameter s'
  double s_prime = 1; // comparability downgraded to the smaller-volume side
  double delta = 1;
  double bound(int r) const;
};
ComposedBound compose_volume_order_bound(double c, double s, int d);

/// Inner/outer shape pair per vertex for the generalized coloring bound.
struct GeneralizedRep {
  int dimension = 0;
  std::vector<PlacedShape> inner;
  std::vector<PlacedShape> outer;
  int n() const { return static_cast<int>(inner.size()); }
};

struct ConditionReport {
  bool containment_ok = false;    // (a) inner(v) inside outer(v), outer convex
  bool thinness_ok = false;       // (b) inner family is c-thin
  bool comparability_ok = false;  // (c) outer(v) <=_k outer(u), outer(v) ⊑_s inner(u) for u < v
  bool meet_ok = false;           // (d) edges uv with u < v have outer(v) ∩ inner(u) nonempty
  CertStatus status = CertStatus::SampledOnly;
  std::optional<int> containment_witness;
  std::optional<Point> thinness_witness;
  std::optional<std::pair<int, int>> comparability_witness;
  std::optional<std::pair<int, int>> meet_witness;

  bool all_ok() const { return containment_ok && thinness_ok && comparability_ok && meet_ok; }
};

ConditionReport verify_generalized_conditions(const GeneralizedRep& gr, const Graph& g,
                                              const Ordering& ord, int c, const Scalar& k,
                                              const Scalar& s,
                                              const ProbeConfig& cfg = ProbeConfig());

} // namespace shapesep

#endif
