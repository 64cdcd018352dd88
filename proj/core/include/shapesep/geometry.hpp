#ifndef SHAPESEP_GEOMETRY_HPP
#define SHAPESEP_GEOMETRY_HPP

#include <optional>
#include <variant>
#include <vector>

#include "shapesep/hull.hpp"
#include "shapesep/prng.hpp"
#include "shapesep/rational.hpp"

namespace shapesep {

/// Single global tolerance for the float (polytope) backend, applied
/// symmetrically. The exact (box) backend never consults it.
double global_epsilon();
void set_global_epsilon(double eps);

using RPoint = std::vector<Rational>;

/// Axis-aligned box with exact rational corners, non-degenerate (lo < hi on
/// every axis). The exact backend: all predicates on boxes are decidable.
struct Box {
  std::vector<Rational> lo, hi;

  Box() = default;
  Box(std::vector<Rational> lo_, std::vector<Rational> hi_);

  int dim() const { return static_cast<int>(lo.size()); }
  Rational extent(int i) const { return hi[i] - lo[i]; }
  Rational volume() const;
  Rational min_extent() const;
  Box translated(const RPoint& t) const;
  Box scaled(const Rational& k) const; // about the origin, kB = {kx : x in B}
  bool contains(const RPoint& x) const;

  std::vector<Point> corner_points() const; // 2^d corners, doubles
};

/// Convex polytope in dimension 1..3 over the float backend. Vertices are
/// canonicalized to the exact vertex set of their hull; facets are cached as
/// outward unit-normal halfspaces.
struct ConvexPolytope {
  int dimension = 0;
  std::vector<Point> vertices; // d=2: CCW ring from the lex-min vertex
  std::vector<Halfspace> facets;
  std::vector<std::array<int, 3>> faces3; // triangulated boundary, d=3 only

  static ConvexPolytope from_points(int dim, const std::vector<Point>& pts);

  int dim() const { return dimension; }
  double volume() const;
  Point centroid() const;
  ConvexPolytope translated(const Point& t) const;
  ConvexPolytope scaled(double k) const;
  bool contains(const Point& x, double eps) const;
  std::vector<std::pair<int, int>> edges() const; // vertex index pairs
};

/// Union of boxes; deliberately non-convex (the L-shape negative control).
/// Tameness certification must reject it.
struct UnionShape {
  std::vector<Box> parts;

  int dim() const { return parts.empty() ? 0 : parts.front().dim(); }
  Rational volume() const; // inclusion-exclusion, supports two parts
  UnionShape translated(const RPoint& t) const;
};

using Shape = std::variant<Box, ConvexPolytope, UnionShape>;

int shape_dim(const Shape& s);
bool shape_is_convex(const Shape& s);
bool shape_is_box(const Shape& s);

/// A shape placed by a translation vector. Translations are stored exactly
/// (every double is a dyadic rational), so box placements never round.
struct PlacedShape {
  Shape shape;
  RPoint translation;

  PlacedShape() = default;
  PlacedShape(Shape s, RPoint t);
  int dim() const { return shape_dim(shape); }
};

/// Resolve the translation: boxes/unions stay exact, polytopes go to doubles.
Shape resolve_placement(const PlacedShape& p);

/// {center + sum alpha_i * side_i : -1 <= alpha_i <= 1}. Sides must be
/// linearly independent.
struct Parallelepiped {
  Point center;
  std::vector<Point> sides;

  int dim() const { return static_cast<int>(center.size()); }
  double volume() const; // 2^d |det(sides)|
  std::vector<Point> corner_points() const;
  std::vector<Halfspace> facet_halfspaces() const;
  bool contains(const Point& x, double eps) const;
  Parallelepiped scaled_about_center(double k) const;
};

// ---- measures ----------------------------------------------------------

/// kB = {kx : x in B}; componentwise for boxes, vertexwise for polytopes.
Shape scale(const Shape& b, const Scalar& k);

/// Lebesgue measure. Exact for boxes; fan triangulation for polytopes.
Scalar volume(const Shape& b);

/// Minimum width over all directions (distance between the closest pair of
/// parallel supporting hyperplanes).
Scalar height(const Shape& b);

/// Largest distance between two points of the shape.
Scalar diameter(const Shape& b);

/// diameter / height.
double aspect_ratio(const Shape& b);

// ---- envelopes ---------------------------------------------------------

/// Minimum-volume enclosing parallelepiped. Boxes: themselves (exact).
/// Polygons: exact enumeration over edge-direction pairs. 3-d polytopes:
/// best over edge-cross candidate normal triples plus local search; the
/// result is verified against check_envelope_quality by callers that need
/// the guarantee.
Parallelepiped envelope(const Shape& b);

/// Whether some translation of (1/d) T (scaled about T's center) fits inside
/// B. Requires B to be contained in T; throws PreconditionError otherwise.
bool check_envelope_quality(const Shape& b, const Parallelepiped& t);

/// Diameter of the largest inscribed ball found (boxes: min extent, exact;
/// polytopes: Chebyshev center LP).
Scalar inscribed_ball_bound(const Shape& b);

// ---- pairwise predicates ------------------------------------------------

/// Closed-set intersection: touching boundaries count.
bool intersects(const PlacedShape& a, const PlacedShape& b);

/// Measure of the common region. Exact for box pairs.
Scalar intersection_volume(const PlacedShape& a, const PlacedShape& b);

struct TranslateUnionCheck {
  bool ok = true;
  std::optional<Point> witness; // sampled point escaping A + 2B
};

/// Samples translations B' of B meeting A and points of B', and verifies
/// every sampled point lies in A + 2B. Requires B = -B (literal central
/// symmetry); throws PreconditionError otherwise.
TranslateUnionCheck check_translate_union_bound(const Shape& a, const Shape& b, int trials,
                                                Rng& rng);

/// Literal central symmetry: B == -B.
bool is_centrally_symmetric(const Shape& b);

// ---- helpers shared with other modules ----------------------------------

/// Vertex list of a resolved convex shape on the float backend.
std::vector<Point> shape_vertex_points(const Shape& s);

/// Float-backend polytope form of a convex shape (boxes are converted to
/// their corner hulls; requires dimension <= 3).
ConvexPolytope shape_as_polytope(const Shape& s);

/// Largest absolute coordinate of the shape, for tolerance scaling.
double shape_float_scale(const Shape& s);

/// Facet halfspaces of a resolved convex shape on the float backend.
std::vector<Halfspace> shape_facet_halfspaces(const Shape& s);

/// Exact rational bounding box of a placed shape (doubles convert exactly).
std::pair<RPoint, RPoint> placed_bounding_box(const PlacedShape& p);

/// Intersection polytope A ∩ B from two halfspace systems (dims 1..3);
/// nullopt when the intersection has empty interior.
std::optional<ConvexPolytope> clip_polytopes(int dim, const std::vector<Halfspace>& a,
                                             const std::vector<Halfspace>& b);

} // namespace shapesep

#endif
