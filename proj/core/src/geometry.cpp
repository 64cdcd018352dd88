#include "shapesep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "shapesep/errors.hpp"

namespace shapesep {

namespace {
double g_eps = 1e-9;

double vec_dot(const Point& a, const Point& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
double vec_norm(const Point& a) { return std::sqrt(vec_dot(a, a)); }

double det2(double a, double b, double c, double d) { return a * d - b * c; }

double det_of(const std::vector<Point>& cols) {
  const int d = static_cast<int>(cols.size());
  if (d == 1) return cols[0][0];
  if (d == 2) return det2(cols[0][0], cols[1][0], cols[0][1], cols[1][1]);
  if (d == 3)
    return cols[0][0] * det2(cols[1][1], cols[2][1], cols[1][2], cols[2][2]) -
           cols[1][0] * det2(cols[0][1], cols[2][1], cols[0][2], cols[2][2]) +
           cols[2][0] * det2(cols[0][1], cols[1][1], cols[0][2], cols[1][2]);
  throw UnsupportedDimensionError("determinant supports d <= 3");
}

// Rows of the inverse of the matrix whose columns are `cols`.
std::vector<Point> inverse_rows(const std::vector<Point>& cols) {
  const int d = static_cast<int>(cols.size());
  const double det = det_of(cols);
  if (std::fabs(det) < 1e-300) throw InvariantViolationError("singular side matrix");
  std::vector<Point> inv(d, Point(d));
  if (d == 1) {
    inv[0][0] = 1.0 / det;
  } else if (d == 2) {
    inv[0][0] = cols[1][1] / det;
    inv[0][1] = -cols[1][0] / det;
    inv[1][0] = -cols[0][1] / det;
    inv[1][1] = cols[0][0] / det;
  } else {
    auto m = [&](int r, int c) { return cols[c][r]; };
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        const int r1 = (c + 1) % 3, r2 = (c + 2) % 3;
        const int c1 = (r + 1) % 3, c2 = (r + 2) % 3;
        inv[r][c] = det2(m(r1, c1), m(r1, c2), m(r2, c1), m(r2, c2)) / det;
      }
  }
  return inv;
}

double points_scale(const std::vector<Point>& pts) {
  return std::max(coordinate_scale(pts), 1e-30);
}
} // namespace

double global_epsilon() { return g_eps; }
void set_global_epsilon(double eps) {
  if (eps <= 0) throw InvalidParameterError("epsilon must be positive");
  g_eps = eps;
}

// ---- Box -----------------------------------------------------------------

Box::Box(std::vector<Rational> lo_, std::vector<Rational> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.empty() || lo.size() != hi.size())
    throw InvariantViolationError("box corner arity mismatch");
  for (size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i]))
      throw InvariantViolationError("degenerate box: lo >= hi on axis " + std::to_string(i));
}

Rational Box::volume() const {
  Rational v(1);
  for (int i = 0; i < dim(); ++i) v *= extent(i);
  return v;
}

Rational Box::min_extent() const {
  Rational m = extent(0);
  for (int i = 1; i < dim(); ++i) m = std::min(m, extent(i));
  return m;
}

Box Box::translated(const RPoint& t) const {
  if (static_cast<int>(t.size()) != dim()) throw DimensionMismatchError("translation arity");
  Box b = *this;
  for (int i = 0; i < dim(); ++i) {
    b.lo[i] += t[i];
    b.hi[i] += t[i];
  }
  return b;
}

Box Box::scaled(const Rational& k) const {
  if (k <= 0) throw InvalidParameterError("scale factor must be positive");
  Box b = *this;
  for (int i = 0; i < dim(); ++i) {
    b.lo[i] *= k;
    b.hi[i] *= k;
  }
  return b;
}

bool Box::contains(const RPoint& x) const {
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

std::vector<Point> Box::corner_points() const {
  const int d = dim();
  if (d > 20) throw UnsupportedDimensionError("corner enumeration capped at d=20");
  std::vector<Point> out;
  out.reserve(size_t(1) << d);
  for (size_t mask = 0; mask < (size_t(1) << d); ++mask) {
    Point p(d);
    for (int i = 0; i < d; ++i)
      p[i] = rat_to_double((mask >> i) & 1 ? hi[i] : lo[i]);
    out.push_back(std::move(p));
  }
  return out;
}

// ---- ConvexPolytope --------------------------------------------------------

ConvexPolytope ConvexPolytope::from_points(int dim, const std::vector<Point>& pts) {
  if (dim < 1 || dim > 3)
    throw UnsupportedDimensionError("polytopes live in dimensions 1..3, got " +
                                    std::to_string(dim));
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != dim) throw DimensionMismatchError("point arity != dim");
  if (pts.empty()) throw InvariantViolationError("empty point set");

  ConvexPolytope poly;
  poly.dimension = dim;
  const double eps = g_eps;
  if (dim == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    if (!(lo < hi)) throw InvariantViolationError("degenerate interval");
    poly.vertices = {{lo}, {hi}};
  } else if (dim == 2) {
    poly.vertices = hull2d(pts, eps);
  } else {
    Hull3d h = hull3d(pts, eps);
    poly.vertices = h.vertices;
    poly.faces3 = h.faces;
  }
  poly.facets = hull_facets(dim, poly.vertices, eps);
  return poly;
}

double ConvexPolytope::volume() const {
  if (dimension == 1) return vertices[1][0] - vertices[0][0];
  if (dimension == 2) {
    double a = 0;
    const int n = static_cast<int>(vertices.size());
    for (int i = 0; i < n; ++i) {
      const Point& u = vertices[i];
      const Point& v = vertices[(i + 1) % n];
      a += u[0] * v[1] - v[0] * u[1];
    }
    return std::fabs(a) / 2.0;
  }
  const Point c = centroid();
  double vol = 0;
  for (const auto& f : faces3) {
    const Point& a = vertices[f[0]];
    const Point& b = vertices[f[1]];
    const Point& d = vertices[f[2]];
    std::vector<Point> cols = {{a[0] - c[0], a[1] - c[1], a[2] - c[2]},
                               {b[0] - c[0], b[1] - c[1], b[2] - c[2]},
                               {d[0] - c[0], d[1] - c[1], d[2] - c[2]}};
    vol += std::fabs(det_of(cols)) / 6.0;
  }
  return vol;
}

Point ConvexPolytope::centroid() const {
  Point c(dimension, 0.0);
  for (const auto& v : vertices)
    for (int i = 0; i < dimension; ++i) c[i] += v[i];
  for (auto& x : c) x /= static_cast<double>(vertices.size());
  return c;
}

ConvexPolytope ConvexPolytope::translated(const Point& t) const {
  ConvexPolytope p = *this;
  for (auto& v : p.vertices)
    for (int i = 0; i < dimension; ++i) v[i] += t[i];
  for (auto& h : p.facets) h.b += vec_dot(h.a, t);
  return p;
}

ConvexPolytope ConvexPolytope::scaled(double k) const {
  if (k <= 0) throw InvalidParameterError("scale factor must be positive");
  ConvexPolytope p = *this;
  for (auto& v : p.vertices)
    for (auto& x : v) x *= k;
  for (auto& h : p.facets) h.b *= k;
  return p;
}

bool ConvexPolytope::contains(const Point& x, double eps) const {
  for (const auto& h : facets)
    if (vec_dot(h.a, x) > h.b + eps) return false;
  return true;
}

std::vector<std::pair<int, int>> ConvexPolytope::edges() const {
  std::set<std::pair<int, int>> es;
  if (dimension == 1) {
    es.insert({0, 1});
  } else if (dimension == 2) {
    const int n = static_cast<int>(vertices.size());
    for (int i = 0; i < n; ++i) es.insert(std::minmax(i, (i + 1) % n));
  } else {
    for (const auto& f : faces3)
      for (int e = 0; e < 3; ++e) es.insert(std::minmax(f[e], f[(e + 1) % 3]));
  }
  return {es.begin(), es.end()};
}

// ---- UnionShape ------------------------------------------------------------

namespace {
std::optional<Box> box_intersection(const Box& a, const Box& b) {
  std::vector<Rational> lo(a.dim()), hi(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    lo[i] = std::max(a.lo[i], b.lo[i]);
    hi[i] = std::min(a.hi[i], b.hi[i]);
    if (!(lo[i] < hi[i])) return std::nullopt;
  }
  return Box(std::move(lo), std::move(hi));
}

Rational boxes_union_volume(const std::vector<Box>& parts) {
  // inclusion-exclusion; fine for the handful of parts an L-shape has
  const size_t m = parts.size();
  if (m > 16) throw InvalidParameterError("union volume capped at 16 parts");
  Rational total(0);
  for (size_t mask = 1; mask < (size_t(1) << m); ++mask) {
    std::optional<Box> cur;
    bool empty = false;
    for (size_t i = 0; i < m && !empty; ++i) {
      if (!((mask >> i) & 1)) continue;
      if (!cur)
        cur = parts[i];
      else {
        cur = box_intersection(*cur, parts[i]);
        if (!cur) empty = true;
      }
    }
    if (empty) continue;
    const int bits = __builtin_popcountll(mask);
    if (bits % 2 == 1)
      total += cur->volume();
    else
      total -= cur->volume();
  }
  return total;
}
} // namespace

Rational UnionShape::volume() const { return boxes_union_volume(parts); }

UnionShape UnionShape::translated(const RPoint& t) const {
  UnionShape u;
  u.parts.reserve(parts.size());
  for (const auto& p : parts) u.parts.push_back(p.translated(t));
  return u;
}

// ---- Shape dispatch --------------------------------------------------------

int shape_dim(const Shape& s) {
  return std::visit([](const auto& v) { return v.dim(); }, s);
}

bool shape_is_convex(const Shape& s) { return !std::holds_alternative<UnionShape>(s); }
bool shape_is_box(const Shape& s) { return std::holds_alternative<Box>(s); }

PlacedShape::PlacedShape(Shape s, RPoint t) : shape(std::move(s)), translation(std::move(t)) {
  if (static_cast<int>(translation.size()) != shape_dim(shape))
    throw DimensionMismatchError("translation arity != shape dimension");
}

Shape resolve_placement(const PlacedShape& p) {
  if (const Box* b = std::get_if<Box>(&p.shape)) return b->translated(p.translation);
  if (const UnionShape* u = std::get_if<UnionShape>(&p.shape)) return u->translated(p.translation);
  const auto& poly = std::get<ConvexPolytope>(p.shape);
  Point t(p.translation.size());
  for (size_t i = 0; i < t.size(); ++i) t[i] = rat_to_double(p.translation[i]);
  return poly.translated(t);
}

// ---- Parallelepiped --------------------------------------------------------

double Parallelepiped::volume() const {
  return std::ldexp(std::fabs(det_of(sides)), dim());
}

std::vector<Point> Parallelepiped::corner_points() const {
  const int d = dim();
  std::vector<Point> out;
  for (size_t mask = 0; mask < (size_t(1) << d); ++mask) {
    Point p = center;
    for (int i = 0; i < d; ++i) {
      const double sign = ((mask >> i) & 1) ? 1.0 : -1.0;
      for (int j = 0; j < d; ++j) p[j] += sign * sides[i][j];
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Halfspace> Parallelepiped::facet_halfspaces() const {
  const int d = dim();
  const auto inv = inverse_rows(sides);
  std::vector<Halfspace> hs;
  for (int i = 0; i < d; ++i) {
    // alpha_i = inv[i] . (x - center), constraint |alpha_i| <= 1
    const double n = vec_norm(inv[i]);
    Halfspace up{inv[i], 1.0 + vec_dot(inv[i], center)};
    Halfspace dn;
    dn.a.resize(d);
    for (int j = 0; j < d; ++j) dn.a[j] = -inv[i][j];
    dn.b = 1.0 - vec_dot(inv[i], center);
    for (auto* h : {&up, &dn}) {
      for (auto& c : h->a) c /= n;
      h->b /= n;
    }
    hs.push_back(std::move(up));
    hs.push_back(std::move(dn));
  }
  return hs;
}

bool Parallelepiped::contains(const Point& x, double eps) const {
  const auto inv = inverse_rows(sides);
  Point diff(dim());
  for (int j = 0; j < dim(); ++j) diff[j] = x[j] - center[j];
  for (int i = 0; i < dim(); ++i) {
    const double alpha = vec_dot(inv[i], diff);
    // a coordinate perturbation of eps moves alpha by at most eps * |inv_i|
    if (std::fabs(alpha) > 1.0 + eps * vec_norm(inv[i])) return false;
  }
  return true;
}

Parallelepiped Parallelepiped::scaled_about_center(double k) const {
  Parallelepiped p = *this;
  for (auto& s : p.sides)
    for (auto& x : s) x *= k;
  return p;
}

// ---- measures ---------------------------------------------------------------

Shape scale(const Shape& b, const Scalar& k) {
  if (k <= Scalar(0)) throw InvalidParameterError("scale factor must be positive");
  if (const Box* box = std::get_if<Box>(&b)) {
    const Rational kk = k.is_exact() ? k.rational() : rat_from_double(k.to_double());
    return box->scaled(kk);
  }
  if (const UnionShape* u = std::get_if<UnionShape>(&b)) {
    const Rational kk = k.is_exact() ? k.rational() : rat_from_double(k.to_double());
    UnionShape out;
    for (const auto& p : u->parts) out.parts.push_back(p.scaled(kk));
    return out;
  }
  return std::get<ConvexPolytope>(b).scaled(k.to_double());
}

Scalar volume(const Shape& b) {
  if (const Box* box = std::get_if<Box>(&b)) return Scalar(box->volume());
  if (const UnionShape* u = std::get_if<UnionShape>(&b)) return Scalar(u->volume());
  return Scalar(std::get<ConvexPolytope>(b).volume());
}

std::vector<Point> shape_vertex_points(const Shape& s) {
  if (const Box* box = std::get_if<Box>(&s)) return box->corner_points();
  if (const ConvexPolytope* p = std::get_if<ConvexPolytope>(&s)) return p->vertices;
  std::vector<Point> out;
  for (const auto& part : std::get<UnionShape>(s).parts)
    for (auto& c : part.corner_points()) out.push_back(std::move(c));
  return out;
}

ConvexPolytope shape_as_polytope(const Shape& s) {
  if (const ConvexPolytope* p = std::get_if<ConvexPolytope>(&s)) return *p;
  if (const Box* box = std::get_if<Box>(&s))
    return ConvexPolytope::from_points(box->dim(), box->corner_points());
  throw InvariantViolationError("non-convex union cannot be viewed as a polytope");
}

double shape_float_scale(const Shape& s) {
  return std::max(coordinate_scale(shape_vertex_points(s)), 1e-30);
}

std::vector<Halfspace> shape_facet_halfspaces(const Shape& s) {
  if (const Box* box = std::get_if<Box>(&s)) {
    std::vector<Halfspace> hs;
    const int d = box->dim();
    for (int i = 0; i < d; ++i) {
      Halfspace up, dn;
      up.a.assign(d, 0.0);
      up.a[i] = 1.0;
      up.b = rat_to_double(box->hi[i]);
      dn.a.assign(d, 0.0);
      dn.a[i] = -1.0;
      dn.b = -rat_to_double(box->lo[i]);
      hs.push_back(std::move(up));
      hs.push_back(std::move(dn));
    }
    return hs;
  }
  if (const ConvexPolytope* p = std::get_if<ConvexPolytope>(&s)) return p->facets;
  throw InvariantViolationError("non-convex union has no facet system");
}

namespace {
// width of the vertex cloud along (not necessarily unit) direction n, divided by |n|
double width_along(const std::vector<Point>& pts, const Point& n) {
  double lo = vec_dot(n, pts[0]), hi = lo;
  for (const auto& p : pts) {
    const double v = vec_dot(n, p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return (hi - lo) / vec_norm(n);
}

// candidate width-extremal directions for a 3-d polytope: facet normals plus
// pairwise edge-direction cross products
std::vector<Point> width_candidates_3d(const ConvexPolytope& poly) {
  std::vector<Point> cands;
  for (const auto& f : poly.facets) cands.push_back(f.a);
  const auto es = poly.edges();
  std::vector<Point> dirs;
  for (const auto& [u, v] : es) {
    Point d(3);
    for (int i = 0; i < 3; ++i) d[i] = poly.vertices[v][i] - poly.vertices[u][i];
    dirs.push_back(std::move(d));
  }
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t j = i + 1; j < dirs.size(); ++j) {
      Point c = {dirs[i][1] * dirs[j][2] - dirs[i][2] * dirs[j][1],
                 dirs[i][2] * dirs[j][0] - dirs[i][0] * dirs[j][2],
                 dirs[i][0] * dirs[j][1] - dirs[i][1] * dirs[j][0]};
      const double n = vec_norm(c);
      if (n < 1e-14 * vec_norm(dirs[i]) * vec_norm(dirs[j])) continue;
      for (auto& x : c) x /= n;
      cands.push_back(std::move(c));
    }
  return cands;
}
} // namespace

Scalar height(const Shape& b) {
  if (const Box* box = std::get_if<Box>(&b)) return Scalar(box->min_extent());
  if (std::holds_alternative<UnionShape>(b)) {
    const auto pts = shape_vertex_points(b);
    const int d = shape_dim(b);
    return height(Shape(ConvexPolytope::from_points(d, pts)));
  }
  const auto& poly = std::get<ConvexPolytope>(b);
  if (poly.dimension == 1) return Scalar(poly.volume());
  if (poly.dimension == 2) {
    // rotating calipers: the minimum width is attained with one side flush
    // with a polygon edge
    const int n = static_cast<int>(poly.vertices.size());
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const Point& u = poly.vertices[i];
      const Point& v = poly.vertices[(i + 1) % n];
      Point normal = {v[1] - u[1], u[0] - v[0]};
      best = std::min(best, width_along(poly.vertices, normal));
    }
    return Scalar(best);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& n : width_candidates_3d(poly))
    best = std::min(best, width_along(poly.vertices, n));
  return Scalar(best);
}

Scalar diameter(const Shape& b) {
  if (const Box* box = std::get_if<Box>(&b)) {
    double s2 = 0;
    for (int i = 0; i < box->dim(); ++i) {
      const double e = rat_to_double(box->extent(i));
      s2 += e * e;
    }
    return Scalar(std::sqrt(s2));
  }
  const auto pts = shape_vertex_points(b);
  double best = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) {
      double s2 = 0;
      for (size_t k = 0; k < pts[i].size(); ++k) {
        const double d = pts[i][k] - pts[j][k];
        s2 += d * d;
      }
      best = std::max(best, s2);
    }
  return Scalar(std::sqrt(best));
}

double aspect_ratio(const Shape& b) { return diameter(b).to_double() / height(b).to_double(); }

// ---- envelope ---------------------------------------------------------------

namespace {
Parallelepiped envelope_of_box(const Box& box) {
  const int d = box.dim();
  Parallelepiped t;
  t.center.resize(d);
  t.sides.assign(d, Point(d, 0.0));
  for (int i = 0; i < d; ++i) {
    t.center[i] = rat_to_double((box.lo[i] + box.hi[i]) / 2);
    t.sides[i][i] = rat_to_double(box.extent(i) / 2);
  }
  return t;
}

Parallelepiped from_direction_frame(const std::vector<Point>& dirs,
                                    const std::vector<Point>& pts) {
  // dirs are linearly independent (not necessarily unit) side directions;
  // the tight enclosing parallelepiped spans coefficient ranges of M^-1 x
  const int d = static_cast<int>(dirs.size());
  const auto inv = inverse_rows(dirs);
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (const auto& p : pts)
    for (int i = 0; i < d; ++i) {
      const double a = vec_dot(inv[i], p);
      lo[i] = std::min(lo[i], a);
      hi[i] = std::max(hi[i], a);
    }
  Parallelepiped t;
  t.center.assign(d, 0.0);
  t.sides.assign(d, Point(d, 0.0));
  for (int i = 0; i < d; ++i) {
    const double mid = (lo[i] + hi[i]) / 2;
    const double half = (hi[i] - lo[i]) / 2;
    for (int j = 0; j < d; ++j) {
      t.center[j] += mid * dirs[i][j];
      t.sides[i][j] = half * dirs[i][j];
    }
  }
  return t;
}

Parallelepiped envelope_polygon(const ConvexPolytope& poly) {
  // A minimum-area enclosing parallelogram has both side directions parallel
  // to polygon edges, so enumerating edge-direction pairs is exact.
  const int n = static_cast<int>(poly.vertices.size());
  std::vector<Point> dirs;
  for (int i = 0; i < n; ++i) {
    const Point& u = poly.vertices[i];
    const Point& v = poly.vertices[(i + 1) % n];
    Point dvec = {v[0] - u[0], v[1] - u[1]};
    const double len = vec_norm(dvec);
    dirs.push_back({dvec[0] / len, dvec[1] / len});
  }
  double best_vol = std::numeric_limits<double>::infinity();
  Parallelepiped best;
  for (size_t i = 0; i < dirs.size(); ++i)
    for (size_t j = i + 1; j < dirs.size(); ++j) {
      const double det = det2(dirs[i][0], dirs[j][0], dirs[i][1], dirs[j][1]);
      if (std::fabs(det) < 1e-12) continue;
      Parallelepiped t = from_direction_frame({dirs[i], dirs[j]}, poly.vertices);
      const double v = t.volume();
      if (v < best_vol) {
        best_vol = v;
        best = std::move(t);
      }
    }
  if (!std::isfinite(best_vol)) throw InvariantViolationError("no valid direction pair");
  return best;
}

struct SlabFrame {
  std::vector<Point> normals; // unit rows
};

Parallelepiped from_slab_frame(const std::vector<Point>& normals, const std::vector<Point>& pts) {
  // slabs l_i <= n_i . x <= u_i; sides are columns of N^-1 scaled by half-widths
  const int d = static_cast<int>(normals.size());
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (const auto& p : pts)
    for (int i = 0; i < d; ++i) {
      const double a = vec_dot(normals[i], p);
      lo[i] = std::min(lo[i], a);
      hi[i] = std::max(hi[i], a);
    }
  // columns of N^-1 = rows of inverse of N^T; N^T has columns = normals
  const auto invT = inverse_rows(normals); // inverse of matrix with columns normals
  // x = (N^T)^-T m ... solve N x = m directly: rows of N are normals, so
  // N = transpose(matrix with columns normals); x = invT^T m
  Parallelepiped t;
  t.center.assign(d, 0.0);
  t.sides.assign(d, Point(d, 0.0));
  for (int i = 0; i < d; ++i) {
    const double mid = (lo[i] + hi[i]) / 2;
    const double half = (hi[i] - lo[i]) / 2;
    for (int j = 0; j < d; ++j) {
      // column i of N^-1 is row i of (N^T)^-1 = invT[i]... careful: invT are
      // rows of inverse of the matrix whose columns are the normals, i.e.
      // rows of (N^T)^-1; columns of N^-1 are rows of (N^-1)^T = (N^T)^-1.
      t.center[j] += mid * invT[i][j];
      t.sides[i][j] = half * invT[i][j];
    }
  }
  return t;
}

std::vector<Point> dedup_directions(std::vector<Point> dirs, size_t cap) {
  std::vector<Point> out;
  for (auto& d : dirs) {
    const double n = vec_norm(d);
    if (n < 1e-14) continue;
    for (auto& x : d) x /= n;
    // canonical orientation
    for (int i = 0; i < static_cast<int>(d.size()); ++i) {
      if (std::fabs(d[i]) > 1e-12) {
        if (d[i] < 0)
          for (auto& x : d) x = -x;
        break;
      }
    }
    bool dup = false;
    for (const auto& e : out) {
      double dot = vec_dot(d, e);
      if (dot > 1.0 - 1e-10) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(d));
  }
  if (out.size() > cap) {
    // deterministic thinning, keep an even spread
    std::vector<Point> kept;
    const double stride = static_cast<double>(out.size()) / static_cast<double>(cap);
    for (size_t i = 0; i < cap; ++i) kept.push_back(out[static_cast<size_t>(i * stride)]);
    out = std::move(kept);
  }
  return out;
}

double slab_volume(const std::vector<Point>& normals, const std::vector<Point>& pts) {
  const double det = std::fabs(det_of(normals));
  if (det < 1e-12) return std::numeric_limits<double>::infinity();
  double v = 1.0;
  for (const auto& n : normals) v *= width_along(pts, n);
  return v / det;
}

Parallelepiped envelope_polytope3(const ConvexPolytope& poly) {
  std::vector<Point> cands;
  for (const auto& f : poly.facets) cands.push_back(f.a);
  for (const auto& c : width_candidates_3d(poly)) cands.push_back(c);
  cands = dedup_directions(std::move(cands), 220);
  const size_t m = cands.size();

  std::vector<double> widths(m);
  for (size_t i = 0; i < m; ++i) widths[i] = width_along(poly.vertices, cands[i]);
  std::vector<std::vector<Point>> crosses(m); // crosses[j][k] for k > j
  for (size_t j = 0; j < m; ++j) {
    crosses[j].resize(m);
    for (size_t k = j + 1; k < m; ++k)
      crosses[j][k] = {cands[j][1] * cands[k][2] - cands[j][2] * cands[k][1],
                       cands[j][2] * cands[k][0] - cands[j][0] * cands[k][2],
                       cands[j][0] * cands[k][1] - cands[j][1] * cands[k][0]};
  }

  double best = std::numeric_limits<double>::infinity();
  std::array<size_t, 3> pick = {0, 1, 2};
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      const double wij = widths[i] * widths[j];
      for (size_t k = j + 1; k < m; ++k) {
        const double det = std::fabs(vec_dot(cands[i], crosses[j][k]));
        if (det < 1e-12) continue;
        const double v = wij * widths[k] / det;
        if (v < best) {
          best = v;
          pick = {i, j, k};
        }
      }
    }
  if (!std::isfinite(best)) throw InvariantViolationError("no independent normal triple");

  // local search: rotate each slab normal by shrinking tangent steps
  std::vector<Point> frame = {cands[pick[0]], cands[pick[1]], cands[pick[2]]};
  for (double step : {0.05, 0.01, 0.002, 0.0004}) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int axis = 0; axis < 3; ++axis) {
        for (int t = 0; t < 4; ++t) {
          Point dir = frame[axis];
          // tangent basis by permuting coordinates
          Point tang(3, 0.0);
          tang[(axis + 1 + (t % 2)) % 3] = (t < 2) ? step : -step;
          Point cand = {dir[0] + tang[0], dir[1] + tang[1], dir[2] + tang[2]};
          const double n = vec_norm(cand);
          for (auto& x : cand) x /= n;
          std::vector<Point> trial = frame;
          trial[axis] = cand;
          const double v = slab_volume(trial, poly.vertices);
          if (v < best - 1e-15 * best) {
            best = v;
            frame = std::move(trial);
            improved = true;
          }
        }
      }
    }
  }
  return from_slab_frame(frame, poly.vertices);
}
} // namespace

Parallelepiped envelope(const Shape& b) {
  if (const Box* box = std::get_if<Box>(&b)) return envelope_of_box(*box);
  if (std::holds_alternative<UnionShape>(b)) {
    const auto pts = shape_vertex_points(b);
    return envelope(Shape(ConvexPolytope::from_points(shape_dim(b), pts)));
  }
  const auto& poly = std::get<ConvexPolytope>(b);
  if (poly.dimension == 1) {
    Parallelepiped t;
    t.center = {(poly.vertices[0][0] + poly.vertices[1][0]) / 2};
    t.sides = {{(poly.vertices[1][0] - poly.vertices[0][0]) / 2}};
    return t;
  }
  if (poly.dimension == 2) return envelope_polygon(poly);
  return envelope_polytope3(poly);
}

bool check_envelope_quality(const Shape& b, const Parallelepiped& t) {
  const auto pts = shape_vertex_points(b);
  const int d = shape_dim(b);
  if (d != t.dim()) throw DimensionMismatchError("shape vs parallelepiped dimension");
  const double scale = std::max(points_scale(pts), points_scale(t.corner_points()));
  const double tol = g_eps * std::max(scale, 1e-12);
  for (const auto& p : pts)
    if (!t.contains(p, tol))
      throw PreconditionError("shape is not contained in the candidate parallelepiped");

  // does some translate of (1/d) T fit inside B?
  const Parallelepiped small = t.scaled_about_center(1.0 / d);
  const auto small_corners = small.corner_points();
  const auto facets = shape_facet_halfspaces(b);
  std::vector<Halfspace> cons;
  for (const auto& w : small_corners)
    for (const auto& h : facets) {
      Halfspace c;
      c.a = h.a;
      c.b = h.b - vec_dot(h.a, w);
      cons.push_back(std::move(c));
    }
  const auto res = feasibility_margin(std::move(cons), d, scale * 8 + 8, g_eps);
  return res.solved && res.margin <= tol;
}

Scalar inscribed_ball_bound(const Shape& b) {
  if (const Box* box = std::get_if<Box>(&b)) return Scalar(box->min_extent());
  if (const UnionShape* u = std::get_if<UnionShape>(&b)) {
    Rational best(0);
    for (const auto& p : u->parts) best = std::max(best, p.min_extent());
    return Scalar(best);
  }
  const auto& poly = std::get<ConvexPolytope>(b);
  const double scale = points_scale(poly.vertices);
  const auto res = chebyshev_center(poly.facets, poly.dimension, scale * 8 + 8, g_eps);
  if (!res.solved) throw InvariantViolationError("Chebyshev LP failed on a valid polytope");
  return Scalar(2.0 * res.radius);
}

} // namespace shapesep
