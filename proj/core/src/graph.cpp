#include "shapesep/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "shapesep/errors.hpp"

namespace shapesep {

// ---- Graph -----------------------------------------------------------------

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  g.finalize();
  return g;
}

long Graph::m() const {
  long s = 0;
  for (const auto& a : adj_) s += static_cast<long>(a.size());
  return s / 2;
}

bool Graph::adjacent(int u, int v) const {
  const auto& a = adj_.at(u);
  return std::binary_search(a.begin(), a.end(), v);
}

std::vector<std::pair<int, int>> Graph::edge_list() const {
  std::vector<std::pair<int, int>> es;
  for (int u = 0; u < n(); ++u)
    for (int v : adj_[u])
      if (u < v) es.emplace_back(u, v);
  return es;
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw InvariantViolationError("self-loop rejected");
  if (u < 0 || v < 0 || u >= n() || v >= n())
    throw InvariantViolationError("edge endpoint out of range");
  adj_[u].push_back(v);
  adj_[v].push_back(u);
}

void Graph::finalize() {
  for (auto& a : adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

// ---- Representation ----------------------------------------------------------

PlacedShape Representation::placed(int v) const {
  return PlacedShape(shapes.at(shape_of.at(v)), translations.at(v));
}

Shape Representation::resolved(int v) const { return resolve_placement(placed(v)); }

void Representation::validate() const {
  if (shape_of.size() != translations.size())
    throw InvariantViolationError("representation: placement arity mismatch");
  for (size_t v = 0; v < shape_of.size(); ++v) {
    if (shape_of[v] < 0 || shape_of[v] >= static_cast<int>(shapes.size()))
      throw InvariantViolationError("representation: shape index out of range");
    if (shape_dim(shapes[shape_of[v]]) != dimension ||
        static_cast<int>(translations[v].size()) != dimension)
      throw DimensionMismatchError("representation: vertex " + std::to_string(v) +
                                   " dimension mismatch");
  }
}

// ---- intersection graph -------------------------------------------------------

namespace {

bool plain_box(const Shape& s) { return std::holds_alternative<Box>(s); }

struct BBox {
  RPoint lo, hi;
};

Graph build_sweep(const Representation& r) {
  const int n = r.n();
  Graph g(n);
  if (n == 0) return g;
  std::vector<BBox> bb(n);
  std::vector<Shape> resolved(n);
  std::vector<bool> is_box(n);
  for (int v = 0; v < n; ++v) {
    resolved[v] = r.resolved(v);
    is_box[v] = plain_box(resolved[v]);
    auto [lo, hi] = placed_bounding_box(r.placed(v));
    bb[v] = {std::move(lo), std::move(hi)};
  }

  struct Event {
    Rational x;
    int type; // 0 = activate (lo), 1 = deactivate (hi)
    int idx;
  };
  std::vector<Event> events;
  events.reserve(2 * n);
  for (int v = 0; v < n; ++v) {
    events.push_back({bb[v].lo[0], 0, v});
    events.push_back({bb[v].hi[0], 1, v});
  }
  // activations first at equal coordinates so touching boxes are co-active
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.type != b.type) return a.type < b.type;
    return a.idx < b.idx;
  });

  const int d = r.dimension;
  std::vector<int> active;
  for (const auto& e : events) {
    if (e.type == 1) {
      active.erase(std::find(active.begin(), active.end(), e.idx));
      continue;
    }
    const int i = e.idx;
    for (int j : active) {
      bool overlap = true;
      for (int ax = 1; ax < d && overlap; ++ax)
        if (bb[i].hi[ax] < bb[j].lo[ax] || bb[j].hi[ax] < bb[i].lo[ax]) overlap = false;
      if (!overlap) continue;
      bool edge;
      if (is_box[i] && is_box[j])
        edge = true; // bounding box is the shape itself
      else
        edge = intersects(r.placed(i), r.placed(j));
      if (edge) g.add_edge(i, j);
    }
    active.push_back(i);
  }
  g.finalize();
  return g;
}

Graph build_pairwise(const Representation& r) {
  const int n = r.n();
  Graph g(n);
  std::vector<PlacedShape> ps;
  ps.reserve(n);
  for (int v = 0; v < n; ++v) ps.push_back(r.placed(v));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (intersects(ps[u], ps[v])) g.add_edge(u, v);
  g.finalize();
  return g;
}

} // namespace

Graph build_intersection_graph(const Representation& r, GraphBuildMode mode) {
  r.validate();
  if (mode == GraphBuildMode::Pairwise) return build_pairwise(r);
  return build_sweep(r);
}

// ---- exact thinness (box backend) ----------------------------------------------

namespace {

// max-cover segment tree with lazy range add over cell indices
class CoverTree {
public:
  explicit CoverTree(int cells) : n_(cells), maxv_(4 * cells, 0), lazy_(4 * cells, 0) {}
  void add(int lo, int hi, int delta) { add(1, 0, n_ - 1, lo, hi, delta); }
  int max() const { return maxv_[1]; }
  int argmax_cell() const {
    int node = 1, lo = 0, hi = n_ - 1;
    while (lo != hi) {
      const int mid = (lo + hi) / 2;
      const int want = maxv_[node] - lazy_[node];
      if (maxv_[2 * node] == want) {
        node = 2 * node;
        hi = mid;
      } else {
        node = 2 * node + 1;
        lo = mid + 1;
      }
    }
    return lo;
  }

private:
  void add(int node, int lo, int hi, int a, int b, int delta) {
    if (b < lo || hi < a) return;
    if (a <= lo && hi <= b) {
      maxv_[node] += delta;
      lazy_[node] += delta;
      return;
    }
    const int mid = (lo + hi) / 2;
    add(2 * node, lo, mid, a, b, delta);
    add(2 * node + 1, mid + 1, hi, a, b, delta);
    maxv_[node] = std::max(maxv_[2 * node], maxv_[2 * node + 1]) + lazy_[node];
  }
  int n_;
  std::vector<int> maxv_, lazy_;
};

struct BoxSpan {
  std::vector<Rational> lo, hi;
};

struct DepthResult {
  int depth = 0;
  RPoint witness;
};

DepthResult max_depth_1d(const std::vector<BoxSpan>& boxes, int axis) {
  std::vector<Rational> coords;
  coords.reserve(2 * boxes.size());
  for (const auto& b : boxes) {
    coords.push_back(b.lo[axis]);
    coords.push_back(b.hi[axis]);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  DepthResult best;
  // depth is maximized at endpoint values (point cells dominate open slabs)
  for (const auto& x : coords) {
    int depth = 0;
    for (const auto& b : boxes)
      if (b.lo[axis] <= x && x <= b.hi[axis]) ++depth;
    if (depth > best.depth) {
      best.depth = depth;
      best.witness = {x};
    }
  }
  return best;
}

// exact 2-d depth over the two given axes via an x sweep and a y cover tree
DepthResult max_depth_2d(const std::vector<BoxSpan>& boxes, int ax, int ay) {
  std::vector<Rational> ys;
  for (const auto& b : boxes) {
    ys.push_back(b.lo[ay]);
    ys.push_back(b.hi[ay]);
  }
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const int m = static_cast<int>(ys.size());
  auto y_index = [&](const Rational& y) {
    return static_cast<int>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin());
  };
  // cells: 2i = point ys[i], 2i+1 = open slab (ys[i], ys[i+1])
  CoverTree tree(2 * m - 1);

  std::vector<Rational> xs;
  for (const auto& b : boxes) {
    xs.push_back(b.lo[ax]);
    xs.push_back(b.hi[ax]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::vector<int>> starts(xs.size()), ends(xs.size());
  auto x_index = [&](const Rational& x) {
    return static_cast<int>(std::lower_bound(xs.begin(), xs.end(), x) - xs.begin());
  };
  for (size_t i = 0; i < boxes.size(); ++i) {
    starts[x_index(boxes[i].lo[ax])].push_back(static_cast<int>(i));
    ends[x_index(boxes[i].hi[ax])].push_back(static_cast<int>(i));
  }

  DepthResult best;
  for (size_t xi = 0; xi < xs.size(); ++xi) {
    for (int i : starts[xi]) tree.add(2 * y_index(boxes[i].lo[ay]), 2 * y_index(boxes[i].hi[ay]), 1);
    // column x = xs[xi] holds the maximum among neighbouring x slabs
    if (tree.max() > best.depth) {
      best.depth = tree.max();
      const int cell = tree.argmax_cell();
      Rational y = (cell % 2 == 0) ? ys[cell / 2] : (ys[cell / 2] + ys[cell / 2 + 1]) / 2;
      best.witness = {xs[xi], y};
    }
    for (int i : ends[xi]) tree.add(2 * y_index(boxes[i].lo[ay]), 2 * y_index(boxes[i].hi[ay]), -1);
  }
  return best;
}

DepthResult max_depth_rec(const std::vector<BoxSpan>& boxes, std::vector<int> axes);

DepthResult sweep_first_axis(const std::vector<BoxSpan>& boxes, std::vector<int> axes) {
  const int axis = axes.front();
  std::vector<int> rest(axes.begin() + 1, axes.end());
  std::vector<Rational> xs;
  for (const auto& b : boxes) {
    xs.push_back(b.lo[axis]);
    xs.push_back(b.hi[axis]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  DepthResult best;
  for (const auto& x : xs) {
    std::vector<BoxSpan> active;
    for (const auto& b : boxes)
      if (b.lo[axis] <= x && x <= b.hi[axis]) active.push_back(b);
    if (static_cast<int>(active.size()) <= best.depth) continue;
    DepthResult sub = max_depth_rec(active, rest);
    if (sub.depth > best.depth) {
      best.depth = sub.depth;
      best.witness = sub.witness;
      best.witness.insert(best.witness.begin(), x);
    }
  }
  return best;
}

DepthResult max_depth_rec(const std::vector<BoxSpan>& boxes, std::vector<int> axes) {
  if (boxes.empty()) return {};
  if (axes.size() == 1) return max_depth_1d(boxes, axes[0]);
  if (axes.size() == 2) return max_depth_2d(boxes, axes[0], axes[1]);
  return sweep_first_axis(boxes, axes);
}

ThinnessResult thinness_exact_boxes(const Representation& r) {
  std::vector<BoxSpan> spans;
  spans.reserve(r.n());
  for (int v = 0; v < r.n(); ++v) {
    const Box b = std::get<Box>(r.resolved(v));
    spans.push_back({b.lo, b.hi});
  }
  std::vector<int> axes(r.dimension);
  for (int i = 0; i < r.dimension; ++i) axes[i] = i;
  DepthResult res = max_depth_rec(spans, axes);
  ThinnessResult out;
  out.c = res.depth;
  out.status = CertStatus::Exact;
  if (!res.witness.empty()) {
    Point w(res.witness.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = rat_to_double(res.witness[i]);
    out.witness = std::move(w);
  }
  return out;
}

// sampled depth for representations with polytopes or unions
ThinnessResult thinness_sampled(const Representation& r) {
  const int n = r.n();
  const int d = r.dimension;
  std::vector<Shape> resolved(n);
  std::vector<BBox> bb(n);
  for (int v = 0; v < n; ++v) {
    resolved[v] = r.resolved(v);
    auto [lo, hi] = placed_bounding_box(r.placed(v));
    bb[v] = {std::move(lo), std::move(hi)};
  }
  double scene_scale = 1e-30;
  std::vector<Point> candidates;
  for (int v = 0; v < n; ++v) {
    auto pts = shape_vertex_points(resolved[v]);
    scene_scale = std::max(scene_scale, coordinate_scale(pts));
    for (auto& p : pts) candidates.push_back(std::move(p));
  }
  const double tol = global_epsilon(); // closed-set membership, absolute tolerance

  // one deep point per bbox-overlapping pair; unions contribute per convex part
  auto convex_pieces = [](const Shape& s) {
    std::vector<Shape> pieces;
    if (const UnionShape* u = std::get_if<UnionShape>(&s))
      for (const auto& part : u->parts) pieces.push_back(part);
    else
      pieces.push_back(s);
    return pieces;
  };
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      bool overlap = true;
      for (int ax = 0; ax < d && overlap; ++ax)
        if (bb[u].hi[ax] < bb[v].lo[ax] || bb[v].hi[ax] < bb[u].lo[ax]) overlap = false;
      if (!overlap) continue;
      for (const Shape& pu : convex_pieces(resolved[u]))
        for (const Shape& pv : convex_pieces(resolved[v])) {
          auto cons = shape_facet_halfspaces(pu);
          for (auto& h : shape_facet_halfspaces(pv)) cons.push_back(std::move(h));
          auto m = feasibility_margin(std::move(cons), d, scene_scale * 4 + 4, global_epsilon());
          if (m.solved && m.margin <= tol) candidates.push_back(m.x);
        }
    }

  // deterministic interior samples
  Rng rng(stable_hash("thinness-sampler"));
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < 8; ++k) {
      Point p(d);
      for (int ax = 0; ax < d; ++ax)
        p[ax] = rng.next_double(rat_to_double(bb[v].lo[ax]), rat_to_double(bb[v].hi[ax]));
      candidates.push_back(std::move(p));
    }

  // the sampled path uses the float backend's symmetric tolerance even for
  // boxes; LP-produced candidate points sit on boundaries within tol
  const Rational rtol = rat_from_double(tol);
  auto box_contains_tol = [&](const Box& box, const Point& x) {
    for (int i = 0; i < box.dim(); ++i) {
      const Rational xi = rat_from_double(x[i]);
      if (xi < box.lo[i] - rtol || xi > box.hi[i] + rtol) return false;
    }
    return true;
  };
  auto contains_point = [&](const Shape& s, const Point& x) {
    if (const Box* box = std::get_if<Box>(&s)) return box_contains_tol(*box, x);
    if (const ConvexPolytope* p = std::get_if<ConvexPolytope>(&s)) return p->contains(x, tol);
    for (const auto& part : std::get<UnionShape>(s).parts)
      if (box_contains_tol(part, x)) return true;
    return false;
  };

  ThinnessResult out;
  out.status = CertStatus::SampledOnly;
  for (const auto& x : candidates) {
    int depth = 0;
    for (int v = 0; v < n; ++v) {
      bool in_bb = true;
      for (int ax = 0; ax < d && in_bb; ++ax) {
        const double lo = rat_to_double(bb[v].lo[ax]) - tol;
        const double hi = rat_to_double(bb[v].hi[ax]) + tol;
        if (x[ax] < lo || x[ax] > hi) in_bb = false;
      }
      if (in_bb && contains_point(resolved[v], x)) ++depth;
    }
    if (depth > out.c) {
      out.c = depth;
      out.witness = x;
    }
  }
  return out;
}

} // namespace

ThinnessResult thinness(const Representation& r) {
  r.validate();
  if (r.n() == 0) return {};
  bool all_boxes = true;
  for (const auto& s : r.shapes)
    if (!plain_box(s)) all_boxes = false;
  return all_boxes ? thinness_exact_boxes(r) : thinness_sampled(r);
}

// ---- tameness -------------------------------------------------------------------

TamenessCertificate check_tame(const Representation& r, int c, const Scalar& s,
                               const ProbeConfig& cfg) {
  r.validate();
  TamenessCertificate cert;
  cert.c = c;
  cert.s = s;

  cert.convexity_ok = true;
  for (int v = 0; v < r.n(); ++v)
    if (!shape_is_convex(r.shapes[r.shape_of[v]])) {
      cert.convexity_ok = false;
      cert.nonconvex_vertex = v;
      break;
    }

  ThinnessResult thin = thinness(r);
  cert.measured_thinness = thin.c;
  cert.thinness_ok = thin.c <= c;
  if (!cert.thinness_ok) cert.thinness_witness = thin.witness;

  bool scan_exact = true;
  if (cert.convexity_ok && !r.shapes.empty()) {
    ComparabilityScan scan = comparability_scan(r.shapes, s, cfg);
    cert.measured_s_star = scan.s_star;
    scan_exact = scan.exact;
    cert.comparability_ok = scan.all_comparable && !(s < scan.s_star);
    if (!cert.comparability_ok)
      for (const auto& rep : scan.pairs) {
        const bool comparable_at_s = rep.direction != ComparabilityReport::Direction::Neither;
        if (!comparable_at_s) {
          cert.incomparable_pair = std::make_pair(rep.i, rep.j);
          break;
        }
      }
  } else {
    cert.comparability_ok = false;
    cert.measured_s_star = scalar_infinity();
  }

  cert.status = (thin.status == CertStatus::Exact && scan_exact && cert.convexity_ok)
                    ? CertStatus::Exact
                    : CertStatus::SampledOnly;
  return cert;
}

// ---- box dichotomy -----------------------------------------------------------------

DichotomyResult boxes_dichotomy(const std::vector<Box>& family, int k) {
  if (family.empty()) throw InvalidParameterError("boxes_dichotomy: empty family");
  if (k < 1) throw InvalidParameterError("boxes_dichotomy: k >= 1 required");
  const int d = family.front().dim();
  for (const auto& b : family)
    if (b.dim() != d) throw DimensionMismatchError("boxes_dichotomy: mixed dimensions");

  std::vector<int> current(family.size());
  for (size_t i = 0; i < family.size(); ++i) current[i] = static_cast<int>(i);

  DichotomyResult res;
  for (int axis = 0; axis < d; ++axis) {
    // greedy max disjoint intervals by right endpoint
    std::vector<int> order = current;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (family[a].hi[axis] != family[b].hi[axis]) return family[a].hi[axis] < family[b].hi[axis];
      if (family[a].lo[axis] != family[b].lo[axis]) return family[a].lo[axis] < family[b].lo[axis];
      return a < b;
    });
    std::vector<int> picked;
    for (int idx : order) {
      if (picked.empty() || family[idx].lo[axis] > family[picked.back()].hi[axis])
        picked.push_back(idx);
    }
    if (static_cast<int>(picked.size()) >= k) {
      res.disjoint_branch = true;
      res.axis = axis;
      res.indices.assign(picked.begin(), picked.begin() + k);
      std::sort(res.indices.begin(), res.indices.end());
      return res;
    }
    // the right endpoints of the greedy picks pierce every interval
    int best_count = -1;
    Rational best_point;
    for (int p : picked) {
      const Rational& x = family[p].hi[axis];
      int count = 0;
      for (int idx : current)
        if (family[idx].lo[axis] <= x && x <= family[idx].hi[axis]) ++count;
      if (count > best_count) {
        best_count = count;
        best_point = x;
      }
    }
    std::vector<int> next;
    for (int idx : current)
      if (family[idx].lo[axis] <= best_point && best_point <= family[idx].hi[axis])
        next.push_back(idx);
    current = std::move(next);
    res.common_point.push_back(best_point);
  }
  res.disjoint_branch = false;
  res.indices = current;
  return res;
}

bool verify_dichotomy(const std::vector<Box>& family, int k, const DichotomyResult& res) {
  if (res.disjoint_branch) {
    if (static_cast<int>(res.indices.size()) != k) return false;
    for (size_t a = 0; a < res.indices.size(); ++a)
      for (size_t b = a + 1; b < res.indices.size(); ++b) {
        const Box& x = family[res.indices[a]];
        const Box& y = family[res.indices[b]];
        const int i = res.axis;
        if (!(x.hi[i] < y.lo[i] || y.hi[i] < x.lo[i])) return false;
      }
    return true;
  }
  const int d = family.front().dim();
  if (static_cast<int>(res.common_point.size()) != d) return false;
  for (int idx : res.indices)
    if (!family[idx].contains(res.common_point)) return false;
  Rational kd(1);
  for (int i = 0; i < d; ++i) kd *= k;
  return Rational(static_cast<long>(res.indices.size())) * kd >=
         Rational(static_cast<long>(family.size()));
}

// ---- products -------------------------------------------------------------------------

Graph strong_product(const Graph& g1, const Graph& g2) {
  const int n1 = g1.n(), n2 = g2.n();
  Graph g(n1 * n2);
  auto id = [&](int a, int b) { return a * n2 + b; };
  for (int u1 = 0; u1 < n1; ++u1) {
    std::vector<int> c1 = g1.neighbors(u1);
    c1.push_back(u1);
    for (int u2 = 0; u2 < n2; ++u2) {
      std::vector<int> c2 = g2.neighbors(u2);
      c2.push_back(u2);
      for (int v1 : c1)
        for (int v2 : c2) {
          if (v1 == u1 && v2 == u2) continue;
          if (id(u1, u2) < id(v1, v2)) g.add_edge(id(u1, u2), id(v1, v2));
        }
    }
  }
  g.finalize();
  return g;
}

namespace {
Shape product_shape(const Shape& a, const Shape& b) {
  if (shape_is_box(a) && shape_is_box(b)) {
    const Box& x = std::get<Box>(a);
    const Box& y = std::get<Box>(b);
    std::vector<Rational> lo = x.lo, hi = x.hi;
    lo.insert(lo.end(), y.lo.begin(), y.lo.end());
    hi.insert(hi.end(), y.hi.begin(), y.hi.end());
    return Box(std::move(lo), std::move(hi));
  }
  if (!shape_is_convex(a) || !shape_is_convex(b))
    throw InvalidParameterError("product of non-convex shapes is unsupported");
  const int d = shape_dim(a) + shape_dim(b);
  if (d > 3)
    throw UnsupportedDimensionError("polytope product would exceed dimension 3");
  std::vector<Point> pts;
  for (const auto& u : shape_vertex_points(a))
    for (const auto& v : shape_vertex_points(b)) {
      Point p = u;
      p.insert(p.end(), v.begin(), v.end());
      pts.push_back(std::move(p));
    }
  return ConvexPolytope::from_points(d, pts);
}
} // namespace

Representation product_representation(const Representation& r1, const Representation& r2,
                                      ProductMode mode) {
  r1.validate();
  r2.validate();
  Representation out;
  out.dimension = r1.dimension + r2.dimension;
  std::map<std::pair<int, int>, int> combo;
  auto shape_idx = [&](int a, int b) {
    auto it = combo.find({a, b});
    if (it != combo.end()) return it->second;
    out.shapes.push_back(product_shape(r1.shapes[a], r2.shapes[b]));
    const int idx = static_cast<int>(out.shapes.size()) - 1;
    combo.emplace(std::make_pair(a, b), idx);
    return idx;
  };
  auto concat = [](const RPoint& a, const RPoint& b) {
    RPoint t = a;
    t.insert(t.end(), b.begin(), b.end());
    return t;
  };

  if (mode == ProductMode::Product) {
    for (int v1 = 0; v1 < r1.n(); ++v1)
      for (int v2 = 0; v2 < r2.n(); ++v2) {
        out.shape_of.push_back(shape_idx(r1.shape_of[v1], r2.shape_of[v2]));
        out.translations.push_back(concat(r1.translations[v1], r2.translations[v2]));
      }
    return out;
  }
  if (r1.n() != r2.n())
    throw DimensionMismatchError("conjunction mode needs identical vertex sets");
  for (int v = 0; v < r1.n(); ++v) {
    out.shape_of.push_back(shape_idx(r1.shape_of[v], r2.shape_of[v]));
    out.translations.push_back(concat(r1.translations[v], r2.translations[v]));
  }
  return out;
}

} // namespace shapesep
