#ifndef SHAPESEP_HULL_HPP
#define SHAPESEP_HULL_HPP

#include <array>
#include <vector>

#include "shapesep/lp.hpp"

namespace shapesep {

using Point = std::vector<double>;

/// Convex hull of 2-d points as a CCW ring starting at the lexicographically
/// smallest vertex. Collinear interior points are dropped.
std::vector<Point> hull2d(const std::vector<Point>& pts, double eps);

struct Hull3d {
  std::vector<Point> vertices;              // hull vertices, lexicographically sorted
  std::vector<std::array<int, 3>> faces;    // CCW-from-outside triangles into `vertices`
};

/// Incremental 3-d convex hull. Throws InvariantViolationError if the point
/// set is degenerate (affine hull below full dimension) within eps.
Hull3d hull3d(const std::vector<Point>& pts, double eps);

/// Outward-normalized facet halfspaces (a.x <= b with |a| = 1) of the hull of
/// `pts` in dimension 1, 2 or 3. Coplanar duplicates are merged.
std::vector<Halfspace> hull_facets(int dim, const std::vector<Point>& pts, double eps);

/// Largest absolute coordinate, used to scale tolerances.
double coordinate_scale(const std::vector<Point>& pts);

} // namespace shapesep

#endif
