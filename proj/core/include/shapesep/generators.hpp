#ifndef SHAPESEP_GENERATORS_HPP
#define SHAPESEP_GENERATORS_HPP

#include <map>
#include <optional>
#include <string>

#include "shapesep/coloring.hpp"
#include "shapesep/graph.hpp"

namespace shapesep {

struct Provenance {
  std::string family;
  std::map<std::string, std::string> params;
  uint64_t seed = 0;
};

/// A generated instance together with the facts the generator asserts about
/// itself. Every generator verifies its expected fields before returning.
struct InstanceBundle {
  Representation representation;
  std::optional<Graph> expected_graph;
  std::optional<int> expected_thinness;
  std::optional<Scalar> expected_comparability_s;
  std::optional<Ordering> ordering;
  Provenance provenance;

  // measured on construction
  int measured_thinness = 0;
  CertStatus thinness_status = CertStatus::SampledOnly;
  std::optional<Scalar> measured_s_star;
  bool s_star_exact = false;
};

/// m horizontal and m vertical thin rectangles realizing K_{m,m} with
/// thinness 2 (the two-direction construction).
InstanceBundle narrow_rectangles_bipartite(int m, const Rational& thickness);

/// Thin boxes around segments plus nested wedge hulls in R^3: a 2-thin
/// K_{m,m} representation with a pairwise <=_1-comparable wedge chain.
InstanceBundle wedge_family(int m);

/// Product of a 2-thin square star representation and a 2-thin unit-interval
/// path representation: boxes in R^3 representing T_r ⊠ P_t, thinness 4,
/// exactly ⊑_1-comparable shapes.
InstanceBundle star_path_boxes(int r, int t);

struct HubStarResult {
  Graph graph;
  Ordering ordering; // base vertices, then per level hubs then path internals
  std::vector<int> level_of;
  std::vector<long> level_sizes; // |V(G_i)| per level, audit trail
};

/// Iterated hub-star tower: start edgeless on N[0] vertices; level i adds
/// N[i] hubs, each joined to every existing vertex by a fresh path of length
/// l[i]. Purely graph-theoretic (the point of the family is that no box
/// representation exists).
HubStarResult hub_star_family(const std::vector<int>& n_levels, const std::vector<int>& lengths);

struct SstarShapes {
  std::vector<Rational> ell;   // ell[h], 1-based semantics at index h-1
  std::vector<Shape> trapezoids;
  std::vector<Shape> squares;
};

/// The trapezoid/square chain with the shrinking side recursion
/// ell_{h+1} = ell_h / (2(h+1)); self-checks T_{h+1} <=_1 S_h <=_1 T_h.
SstarShapes sstar_shapes(int h_max);

/// Randomized planar placement over the chain shapes, jittered per-level
/// grids so that overlaps are deliberate and depth stays small.
InstanceBundle sstar_instance(int h_max, int per_level, uint64_t seed);

/// m translated L-shapes (unions of two boxes) realizing K_m with thinness 2.
/// Deliberately non-convex; tameness certification must reject it.
InstanceBundle lshape_clique(int m);

enum class AspectProfile { Bounded, HeavyTail };

/// n random boxes: extents per profile (bounded in [1,2]; heavy-tail
/// log-uniform over three decades, repaired by per-box extent sorting),
/// centers from a Halton sequence scaled to control expected depth.
InstanceBundle random_box_instance(int n, int d, AspectProfile profile, uint64_t seed,
                                   double target_depth = 1.0);

// small named graph builders used by oracles and experiments
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int rays); // rays + 1 vertices, center = 0
Graph grid_graph(int rows, int cols);

} // namespace shapesep

#endif
