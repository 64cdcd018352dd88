#include <algorithm>
#include <cmath>

#include "shapesep/errors.hpp"
#include "shapesep/geometry.hpp"

namespace shapesep {

namespace {
double vec_dot(const Point& a, const Point& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool boxes_intersect(const Box& a, const Box& b) {
  for (int i = 0; i < a.dim(); ++i)
    if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false; // closed: touching intersects
  return true;
}

Rational boxes_overlap_volume(const Box& a, const Box& b) {
  Rational v(1);
  for (int i = 0; i < a.dim(); ++i) {
    const Rational lo = std::max(a.lo[i], b.lo[i]);
    const Rational hi = std::min(a.hi[i], b.hi[i]);
    if (hi <= lo) return Rational(0);
    v *= hi - lo;
  }
  return v;
}

double float_scale_of(const Shape& s) {
  return std::max(coordinate_scale(shape_vertex_points(s)), 1e-30);
}

bool convex_float_intersect(const Shape& a, const Shape& b) {
  const int d = shape_dim(a);
  auto cons = shape_facet_halfspaces(a);
  for (auto& h : shape_facet_halfspaces(b)) cons.push_back(std::move(h));
  const double scale = std::max(float_scale_of(a), float_scale_of(b));
  const auto res = feasibility_margin(std::move(cons), d, scale * 4 + 4, global_epsilon());
  // closed-set semantics: margins within the global tolerance count as
  // touching. The tolerance is absolute; margins are true distances here
  // since the constraint gradients are normalized.
  return res.solved && res.margin <= global_epsilon();
}

std::vector<const Box*> union_parts(const Shape& s, const Box*& single) {
  std::vector<const Box*> parts;
  if (const UnionShape* u = std::get_if<UnionShape>(&s)) {
    for (const auto& p : u->parts) parts.push_back(&p);
  } else if ((single = std::get_if<Box>(&s))) {
    parts.push_back(single);
  }
  return parts;
}
} // namespace

bool intersects(const PlacedShape& a, const PlacedShape& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("intersects: dimension mismatch");
  const Shape sa = resolve_placement(a);
  const Shape sb = resolve_placement(b);

  const bool box_like_a = !std::holds_alternative<ConvexPolytope>(sa);
  const bool box_like_b = !std::holds_alternative<ConvexPolytope>(sb);
  if (box_like_a && box_like_b) {
    const Box* s1 = nullptr;
    const Box* s2 = nullptr;
    const auto pa = union_parts(sa, s1);
    const auto pb = union_parts(sb, s2);
    for (const Box* x : pa)
      for (const Box* y : pb)
        if (boxes_intersect(*x, *y)) return true;
    return false;
  }
  if (std::holds_alternative<UnionShape>(sa) || std::holds_alternative<UnionShape>(sb)) {
    // union vs polytope: test each part
    const Shape& u = std::holds_alternative<UnionShape>(sa) ? sa : sb;
    const Shape& other = std::holds_alternative<UnionShape>(sa) ? sb : sa;
    for (const auto& part : std::get<UnionShape>(u).parts)
      if (convex_float_intersect(Shape(part), other)) return true;
    return false;
  }
  return convex_float_intersect(sa, sb);
}

std::optional<ConvexPolytope> clip_polytopes(int dim, const std::vector<Halfspace>& a,
                                             const std::vector<Halfspace>& b) {
  std::vector<Halfspace> hs = a;
  hs.insert(hs.end(), b.begin(), b.end());
  double scale = 1e-30;
  for (const auto& h : hs) scale = std::max(scale, std::fabs(h.b));
  const double tol = global_epsilon() * std::max(scale, 1e-12);

  std::vector<Point> candidates;
  const size_t m = hs.size();
  auto satisfied = [&](const Point& x) {
    for (const auto& h : hs)
      if (vec_dot(h.a, x) > h.b + tol) return false;
    return true;
  };

  if (dim == 1) {
    double lo = -1e300, hi = 1e300;
    for (const auto& h : hs) {
      if (h.a[0] > 0.5)
        hi = std::min(hi, h.b / h.a[0]);
      else if (h.a[0] < -0.5)
        lo = std::max(lo, h.b / h.a[0]);
    }
    if (hi - lo <= tol) return std::nullopt;
    ConvexPolytope p;
    p.dimension = 1;
    p.vertices = {{lo}, {hi}};
    p.facets = {{{1.0}, hi}, {{-1.0}, -lo}};
    return p;
  }
  if (dim == 2) {
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j) {
        const double det = hs[i].a[0] * hs[j].a[1] - hs[i].a[1] * hs[j].a[0];
        if (std::fabs(det) < 1e-12) continue;
        Point x = {(hs[i].b * hs[j].a[1] - hs[j].b * hs[i].a[1]) / det,
                   (hs[i].a[0] * hs[j].b - hs[j].a[0] * hs[i].b) / det};
        if (satisfied(x)) candidates.push_back(std::move(x));
      }
  } else if (dim == 3) {
    for (size_t i = 0; i < m; ++i)
      for (size_t j = i + 1; j < m; ++j)
        for (size_t k = j + 1; k < m; ++k) {
          // solve the 3x3 system from planes i, j, k by Cramer's rule
          const auto& A = hs[i].a;
          const auto& B = hs[j].a;
          const auto& C = hs[k].a;
          const double det = A[0] * (B[1] * C[2] - B[2] * C[1]) -
                             A[1] * (B[0] * C[2] - B[2] * C[0]) +
                             A[2] * (B[0] * C[1] - B[1] * C[0]);
          if (std::fabs(det) < 1e-10) continue;
          const double b0 = hs[i].b, b1 = hs[j].b, b2 = hs[k].b;
          Point x(3);
          x[0] = (b0 * (B[1] * C[2] - B[2] * C[1]) - A[1] * (b1 * C[2] - B[2] * b2) +
                  A[2] * (b1 * C[1] - B[1] * b2)) /
                 det;
          x[1] = (A[0] * (b1 * C[2] - B[2] * b2) - b0 * (B[0] * C[2] - B[2] * C[0]) +
                  A[2] * (B[0] * b2 - b1 * C[0])) /
                 det;
          x[2] = (A[0] * (B[1] * b2 - b1 * C[1]) - A[1] * (B[0] * b2 - b1 * C[0]) +
                  b0 * (B[0] * C[1] - B[1] * C[0])) /
                 det;
          if (satisfied(x)) candidates.push_back(std::move(x));
        }
  } else {
    throw UnsupportedDimensionError("clip_polytopes supports dimensions 1..3");
  }

  if (candidates.size() < static_cast<size_t>(dim) + 1) return std::nullopt;
  try {
    return ConvexPolytope::from_points(dim, candidates);
  } catch (const InvariantViolationError&) {
    return std::nullopt; // measure-zero contact
  }
}

Scalar intersection_volume(const PlacedShape& a, const PlacedShape& b) {
  if (a.dim() != b.dim()) throw DimensionMismatchError("intersection_volume: dimension mismatch");
  const Shape sa = resolve_placement(a);
  const Shape sb = resolve_placement(b);

  const Box* s1 = nullptr;
  const Box* s2 = nullptr;
  if (!std::holds_alternative<ConvexPolytope>(sa) && !std::holds_alternative<ConvexPolytope>(sb)) {
    const auto pa = union_parts(sa, s1);
    const auto pb = union_parts(sb, s2);
    // measure of the union of pairwise box overlaps (exact)
    std::vector<Box> pieces;
    for (const Box* x : pa)
      for (const Box* y : pb) {
        bool ok = true;
        std::vector<Rational> lo(x->dim()), hi(x->dim());
        for (int i = 0; i < x->dim() && ok; ++i) {
          lo[i] = std::max(x->lo[i], y->lo[i]);
          hi[i] = std::min(x->hi[i], y->hi[i]);
          if (!(lo[i] < hi[i])) ok = false;
        }
        if (ok) pieces.emplace_back(std::move(lo), std::move(hi));
      }
    if (pieces.empty()) return Scalar(Rational(0));
    if (pieces.size() == 1) return Scalar(pieces[0].volume());
    UnionShape u;
    u.parts = std::move(pieces);
    return Scalar(u.volume());
  }
  if (std::holds_alternative<UnionShape>(sa) || std::holds_alternative<UnionShape>(sb))
    throw InvalidParameterError("intersection_volume of union vs polytope is unsupported");

  const int d = shape_dim(sa);
  auto clipped = clip_polytopes(d, shape_facet_halfspaces(sa), shape_facet_halfspaces(sb));
  if (!clipped) return Scalar(0.0);
  return Scalar(clipped->volume());
}

bool is_centrally_symmetric(const Shape& b) {
  if (const Box* box = std::get_if<Box>(&b)) {
    for (int i = 0; i < box->dim(); ++i)
      if (box->lo[i] != -box->hi[i]) return false;
    return true;
  }
  if (const ConvexPolytope* p = std::get_if<ConvexPolytope>(&b)) {
    const double tol = global_epsilon() * std::max(coordinate_scale(p->vertices), 1e-12);
    for (const auto& v : p->vertices) {
      bool matched = false;
      for (const auto& w : p->vertices) {
        bool ok = true;
        for (int i = 0; i < p->dimension && ok; ++i)
          if (std::fabs(v[i] + w[i]) > tol) ok = false;
        if (ok) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
    return true;
  }
  return false;
}

std::pair<RPoint, RPoint> placed_bounding_box(const PlacedShape& p) {
  const Shape s = resolve_placement(p);
  const int d = shape_dim(s);
  if (const Box* box = std::get_if<Box>(&s)) return {box->lo, box->hi};
  if (const UnionShape* u = std::get_if<UnionShape>(&s)) {
    RPoint lo = u->parts[0].lo, hi = u->parts[0].hi;
    for (const auto& part : u->parts)
      for (int i = 0; i < d; ++i) {
        lo[i] = std::min(lo[i], part.lo[i]);
        hi[i] = std::max(hi[i], part.hi[i]);
      }
    return {lo, hi};
  }
  const auto& poly = std::get<ConvexPolytope>(s);
  RPoint lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    double mn = poly.vertices[0][i], mx = mn;
    for (const auto& v : poly.vertices) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = rat_from_double(mn);
    hi[i] = rat_from_double(mx);
  }
  return {lo, hi};
}

TranslateUnionCheck check_translate_union_bound(const Shape& a, const Shape& b, int trials,
                                                Rng& rng) {
  if (shape_dim(a) != shape_dim(b))
    throw DimensionMismatchError("translate-union check: dimension mismatch");
  if (!shape_is_convex(b)) throw PreconditionError("B must be convex");
  if (!is_centrally_symmetric(b))
    throw PreconditionError("B must be centrally symmetric (B == -B)");
  const int d = shape_dim(a);

  TranslateUnionCheck out;
  if (shape_is_box(a) && shape_is_box(b)) {
    const Box& A = std::get<Box>(a);
    const Box& B = std::get<Box>(b);
    // translations t meeting A form the box A + (-B) = A + B; membership in
    // A + 2B is the box [loA + 2loB, hiA + 2hiB]; all exact
    for (int trial = 0; trial < trials; ++trial) {
      RPoint t(d), y(d);
      for (int i = 0; i < d; ++i)
        t[i] = rng.next_dyadic(A.lo[i] - B.hi[i], A.hi[i] - B.lo[i]);
      for (int i = 0; i < d; ++i) y[i] = t[i] + rng.next_dyadic(B.lo[i], B.hi[i]);
      bool inside = true;
      for (int i = 0; i < d; ++i)
        if (y[i] < A.lo[i] + 2 * B.lo[i] || y[i] > A.hi[i] + 2 * B.hi[i]) inside = false;
      if (!inside) {
        out.ok = false;
        Point w(d);
        for (int i = 0; i < d; ++i) w[i] = rat_to_double(y[i]);
        out.witness = std::move(w);
        return out;
      }
    }
    return out;
  }

  // float path: rejection-sample translations from the bounding Minkowski box
  const auto fa = shape_facet_halfspaces(a);
  const auto fb = shape_facet_halfspaces(b);
  const Shape b2 = scale(b, Scalar(2.0));
  const auto fb2 = shape_facet_halfspaces(b2);
  const auto bba = placed_bounding_box(PlacedShape(a, RPoint(d, Rational(0))));
  const auto bbb = placed_bounding_box(PlacedShape(b, RPoint(d, Rational(0))));
  const double scale_all = std::max(float_scale_of(a), float_scale_of(b));
  const double tol = global_epsilon(); // absolute, as membership is closed-set

  int produced = 0;
  int attempts = 0;
  const int attempt_cap = trials * 64 + 64;
  while (produced < trials && attempts < attempt_cap) {
    ++attempts;
    Point t(d);
    for (int i = 0; i < d; ++i)
      t[i] = rng.next_double(rat_to_double(bba.first[i] - bbb.second[i]),
                             rat_to_double(bba.second[i] - bbb.first[i]));
    // accept iff (B + t) meets A
    std::vector<Halfspace> meet = fa;
    for (const auto& h : fb) {
      Halfspace s{h.a, h.b + vec_dot(h.a, t)};
      meet.push_back(std::move(s));
    }
    const auto m = feasibility_margin(std::move(meet), d, scale_all * 8 + 8, global_epsilon());
    if (!m.solved || m.margin > tol) continue;
    ++produced;
    // sample a point of B + t by rejection inside its bounding box
    Point y(d);
    bool got = false;
    for (int k = 0; k < 256 && !got; ++k) {
      for (int i = 0; i < d; ++i)
        y[i] = t[i] + rng.next_double(rat_to_double(bbb.first[i]), rat_to_double(bbb.second[i]));
      got = true;
      for (const auto& h : fb)
        if (vec_dot(h.a, y) - vec_dot(h.a, t) > h.b + tol) {
          got = false;
          break;
        }
    }
    if (!got) continue;
    // y must lie in A + 2B: exists u in A with y - u in 2B
    std::vector<Halfspace> member = fa;
    for (const auto& h : fb2) {
      Halfspace s;
      s.a.resize(d);
      for (int i = 0; i < d; ++i) s.a[i] = -h.a[i];
      s.b = h.b - vec_dot(h.a, y);
      member.push_back(std::move(s));
    }
    const auto mm = feasibility_margin(std::move(member), d, scale_all * 16 + 16, global_epsilon());
    if (!mm.solved || mm.margin > tol) {
      out.ok = false;
      out.witness = y;
      return out;
    }
  }
  return out;
}

} // namespace shapesep
