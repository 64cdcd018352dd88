#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace shapesep::oracles {

namespace {
double vdot(const Point& a, const Point& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool inside(const Shape& s, const Point& x, double tol) {
  if (const Box* box = std::get_if<Box>(&s)) {
    for (int i = 0; i < box->dim(); ++i)
      if (x[i] < rat_to_double(box->lo[i]) - tol || x[i] > rat_to_double(box->hi[i]) + tol)
        return false;
    return true;
  }
  if (const ConvexPolytope* p = std::get_if<ConvexPolytope>(&s)) return p->contains(x, tol);
  for (const auto& part : std::get<UnionShape>(s).parts) {
    bool in = true;
    for (int i = 0; i < part.dim(); ++i)
      if (x[i] < rat_to_double(part.lo[i]) - tol || x[i] > rat_to_double(part.hi[i]) + tol)
        in = false;
    if (in) return true;
  }
  return false;
}
} // namespace

McEstimate mc_volume(const Shape& s, long samples, Rng& rng) {
  const auto [lo, hi] = placed_bounding_box(PlacedShape(s, RPoint(shape_dim(s), Rational(0))));
  const int d = shape_dim(s);
  double box_vol = 1;
  std::vector<double> lod(d), hid(d);
  for (int i = 0; i < d; ++i) {
    lod[i] = rat_to_double(lo[i]);
    hid[i] = rat_to_double(hi[i]);
    box_vol *= hid[i] - lod[i];
  }
  long hits = 0;
  Point x(d);
  for (long k = 0; k < samples; ++k) {
    for (int i = 0; i < d; ++i) x[i] = rng.next_double(lod[i], hid[i]);
    if (inside(s, x, 0.0)) ++hits;
  }
  const double p = static_cast<double>(hits) / samples;
  McEstimate e;
  e.mean = p * box_vol;
  e.sigma = box_vol * std::sqrt(std::max(p * (1 - p), 1e-12) / samples);
  return e;
}

McEstimate mc_intersection_volume(const PlacedShape& a, const PlacedShape& b, long samples,
                                  Rng& rng) {
  const Shape sa = resolve_placement(a);
  const Shape sb = resolve_placement(b);
  const auto [loa, hia] = placed_bounding_box(a);
  const auto [lob, hib] = placed_bounding_box(b);
  const int d = a.dim();
  std::vector<double> lo(d), hi(d);
  double box_vol = 1;
  for (int i = 0; i < d; ++i) {
    lo[i] = std::max(rat_to_double(loa[i]), rat_to_double(lob[i]));
    hi[i] = std::min(rat_to_double(hia[i]), rat_to_double(hib[i]));
    if (hi[i] <= lo[i]) return {};
    box_vol *= hi[i] - lo[i];
  }
  long hits = 0;
  Point x(d);
  for (long k = 0; k < samples; ++k) {
    for (int i = 0; i < d; ++i) x[i] = rng.next_double(lo[i], hi[i]);
    if (inside(sa, x, 0.0) && inside(sb, x, 0.0)) ++hits;
  }
  const double p = static_cast<double>(hits) / samples;
  McEstimate e;
  e.mean = p * box_vol;
  e.sigma = box_vol * std::sqrt(std::max(p * (1 - p), 1e-12) / samples);
  return e;
}

namespace {
double width_in_direction(const std::vector<Point>& vs, const Point& n) {
  double lo = vdot(n, vs[0]), hi = lo;
  for (const auto& v : vs) {
    const double x = vdot(n, v);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return hi - lo;
}
} // namespace

double sweep_height_2d(const ConvexPolytope& poly, int angles) {
  double best = 1e300;
  for (int a = 0; a < angles; ++a) {
    const double t = M_PI * a / angles;
    best = std::min(best, width_in_direction(poly.vertices, {std::cos(t), std::sin(t)}));
  }
  return best;
}

double sampled_height_3d(const ConvexPolytope& poly, int samples, Rng& rng) {
  double best = 1e300;
  Point best_n;
  for (int k = 0; k < samples; ++k) {
    Point n = {rng.next_double(-1, 1), rng.next_double(-1, 1), rng.next_double(-1, 1)};
    const double len = std::sqrt(vdot(n, n));
    if (len < 1e-6) continue;
    for (auto& x : n) x /= len;
    const double w = width_in_direction(poly.vertices, n);
    if (w < best) {
      best = w;
      best_n = n;
    }
  }
  // local refinement
  double step = 0.1;
  while (step > 1e-6) {
    bool improved = false;
    for (int axis = 0; axis < 3; ++axis)
      for (double dir : {step, -step}) {
        Point n = best_n;
        n[axis] += dir;
        const double len = std::sqrt(vdot(n, n));
        for (auto& x : n) x /= len;
        const double w = width_in_direction(poly.vertices, n);
        if (w < best) {
          best = w;
          best_n = n;
          improved = true;
        }
      }
    if (!improved) step /= 2;
  }
  return best;
}

double sweep_envelope_area_2d(const ConvexPolytope& poly, int angle_pairs) {
  const int steps = static_cast<int>(std::sqrt(static_cast<double>(angle_pairs)));
  double best = 1e300;
  for (int a = 0; a < steps; ++a)
    for (int b = a + 1; b < steps; ++b) {
      const double ta = M_PI * a / steps;
      const double tb = M_PI * b / steps;
      const Point u = {std::cos(ta), std::sin(ta)};
      const Point v = {std::cos(tb), std::sin(tb)};
      const double det = u[0] * v[1] - u[1] * v[0];
      if (std::fabs(det) < 1e-9) continue;
      // widths along the dual normals give the strip extents
      const Point nu = {-u[1], u[0]};
      const Point nv = {-v[1], v[0]};
      const double area =
          width_in_direction(poly.vertices, nu) * width_in_direction(poly.vertices, nv) /
          std::fabs(det);
      best = std::min(best, area);
    }
  return best;
}

double gamma2_oracle(int angles) {
  // longest chord of [0,1]^2 over line directions: for direction d the best
  // chord is attained through the square's center
  const std::vector<Point> corners = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  double best = 0;
  for (int a = 0; a < angles; ++a) {
    const double t = M_PI * a / angles;
    const Point dir = {std::cos(t), std::sin(t)};
    // clip the center line {c + s dir} against the square
    double smin = -1e300, smax = 1e300;
    const Point c = {0.5, 0.5};
    for (int axis = 0; axis < 2; ++axis) {
      if (std::fabs(dir[axis]) < 1e-15) continue;
      const double s1 = (0.0 - c[axis]) / dir[axis];
      const double s2 = (1.0 - c[axis]) / dir[axis];
      smin = std::max(smin, std::min(s1, s2));
      smax = std::min(smax, std::max(s1, s2));
    }
    if (smax > smin) best = std::max(best, smax - smin);
  }
  return best;
}

namespace {
double cube_section_area(const Point& n, double offset) {
  // polygon cut of [0,1]^3 by plane n.x = offset: clip cube edges
  static const int edges[12][2][3] = {
      {{0, 0, 0}, {1, 0, 0}}, {{0, 0, 0}, {0, 1, 0}}, {{0, 0, 0}, {0, 0, 1}},
      {{1, 1, 0}, {0, 1, 0}}, {{1, 1, 0}, {1, 0, 0}}, {{1, 1, 0}, {1, 1, 1}},
      {{1, 0, 1}, {0, 0, 1}}, {{1, 0, 1}, {1, 1, 1}}, {{1, 0, 1}, {1, 0, 0}},
      {{0, 1, 1}, {1, 1, 1}}, {{0, 1, 1}, {0, 0, 1}}, {{0, 1, 1}, {0, 1, 0}}};
  std::vector<Point> pts;
  for (const auto& e : edges) {
    const Point a = {double(e[0][0]), double(e[0][1]), double(e[0][2])};
    const Point b = {double(e[1][0]), double(e[1][1]), double(e[1][2])};
    const double da = vdot(n, a) - offset;
    const double db = vdot(n, b) - offset;
    if ((da > 0) == (db > 0)) continue;
    const double t = da / (da - db);
    pts.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])});
  }
  if (pts.size() < 3) return 0;
  // polygon area via the cross-product fan around the centroid
  Point c(3, 0);
  for (const auto& p : pts)
    for (int i = 0; i < 3; ++i) c[i] += p[i] / pts.size();
  // order by angle in the plane basis
  Point u = {pts[0][0] - c[0], pts[0][1] - c[1], pts[0][2] - c[2]};
  const double ul = std::sqrt(vdot(u, u));
  for (auto& x : u) x /= ul;
  Point w = {n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]};
  std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
    const Point da = {a[0] - c[0], a[1] - c[1], a[2] - c[2]};
    const Point db = {b[0] - c[0], b[1] - c[1], b[2] - c[2]};
    return std::atan2(vdot(da, w), vdot(da, u)) < std::atan2(vdot(db, w), vdot(db, u));
  });
  double area = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const Point& a = pts[i];
    const Point& b = pts[(i + 1) % pts.size()];
    const Point da = {a[0] - c[0], a[1] - c[1], a[2] - c[2]};
    const Point db = {b[0] - c[0], b[1] - c[1], b[2] - c[2]};
    const Point cr = {da[1] * db[2] - da[2] * db[1], da[2] * db[0] - da[0] * db[2],
                      da[0] * db[1] - da[1] * db[0]};
    area += std::sqrt(vdot(cr, cr)) / 2;
  }
  return area;
}

double best_section_for_normal(const Point& n) {
  // Brunn-Minkowski: section area is unimodal in the offset; ternary search
  double lo = std::min({vdot(n, Point{0, 0, 0}), vdot(n, Point{1, 0, 0}), vdot(n, Point{0, 1, 0}),
                        vdot(n, Point{0, 0, 1}), vdot(n, Point{1, 1, 0}), vdot(n, Point{1, 0, 1}),
                        vdot(n, Point{0, 1, 1}), vdot(n, Point{1, 1, 1})});
  double hi = std::max({vdot(n, Point{0, 0, 0}), vdot(n, Point{1, 0, 0}), vdot(n, Point{0, 1, 0}),
                        vdot(n, Point{0, 0, 1}), vdot(n, Point{1, 1, 0}), vdot(n, Point{1, 0, 1}),
                        vdot(n, Point{0, 1, 1}), vdot(n, Point{1, 1, 1})});
  for (int it = 0; it < 80; ++it) {
    const double m1 = lo + (hi - lo) / 3;
    const double m2 = hi - (hi - lo) / 3;
    if (cube_section_area(n, m1) < cube_section_area(n, m2))
      lo = m1;
    else
      hi = m2;
  }
  return cube_section_area(n, (lo + hi) / 2);
}
} // namespace

double gamma3_oracle(int normal_samples, Rng& rng) {
  double best = 0;
  Point best_n;
  for (int k = 0; k < normal_samples; ++k) {
    Point n = {rng.next_double(-1, 1), rng.next_double(-1, 1), rng.next_double(-1, 1)};
    const double len = std::sqrt(vdot(n, n));
    if (len < 1e-6) continue;
    for (auto& x : n) x /= len;
    const double a = best_section_for_normal(n);
    if (a > best) {
      best = a;
      best_n = n;
    }
  }
  double step = 0.05;
  while (step > 1e-7) {
    bool improved = false;
    for (int axis = 0; axis < 3; ++axis)
      for (double dir : {step, -step}) {
        Point n = best_n;
        n[axis] += dir;
        const double len = std::sqrt(vdot(n, n));
        for (auto& x : n) x /= len;
        const double a = best_section_for_normal(n);
        if (a > best) {
          best = a;
          best_n = n;
          improved = true;
        }
      }
    if (!improved) step /= 2;
  }
  return best;
}

double mc_min_best_overlap(const Box& b1, const Box& b2, int probes, int grid, Rng& rng) {
  const int d = b1.dim();
  std::vector<double> a(d), b(d), lo2(d);
  for (int i = 0; i < d; ++i) {
    a[i] = rat_to_double(b1.extent(i));
    b[i] = rat_to_double(b2.extent(i));
    lo2[i] = rat_to_double(b2.lo[i]);
  }
  // probe set: uniform interior points plus every corner of B2
  std::vector<Point> xs;
  for (size_t mask = 0; mask < (size_t(1) << d); ++mask) {
    Point x(d);
    for (int i = 0; i < d; ++i) x[i] = lo2[i] + (((mask >> i) & 1) ? b[i] : 0.0);
    xs.push_back(std::move(x));
  }
  while (static_cast<int>(xs.size()) < probes) {
    Point x(d);
    for (int i = 0; i < d; ++i) x[i] = lo2[i] + rng.next_double() * b[i];
    xs.push_back(std::move(x));
  }

  double worst = 1e300;
  std::vector<double> cands;
  for (const auto& x : xs) {
    // per axis: overlap of [t, t+a_i] with [lo2, lo2+b_i], x_i in [t, t+a_i];
    // scan a translation grid (box overlap factorizes over axes). The overlap
    // is piecewise linear in t, so the grid is augmented with the
    // edge-alignment breakpoints clamped into the feasible slab.
    double best = 1;
    for (int i = 0; i < d; ++i) {
      cands.clear();
      for (int gidx = 0; gidx <= grid; ++gidx)
        cands.push_back(x[i] - a[i] + (a[i] * gidx) / grid);
      for (double align : {lo2[i], lo2[i] + b[i] - a[i]})
        cands.push_back(std::clamp(align, x[i] - a[i], x[i]));
      double axis_best = 0;
      for (double t : cands) {
        const double overlap =
            std::max(0.0, std::min(t + a[i], lo2[i] + b[i]) - std::max(t, lo2[i]));
        axis_best = std::max(axis_best, overlap);
      }
      best *= axis_best;
    }
    worst = std::min(worst, best);
  }
  return worst;
}

std::vector<int> reach_set_by_paths(const Graph& g, const Ordering& ord, int r, int v) {
  std::vector<int> out = {v};
  std::vector<bool> found(g.n(), false);
  std::vector<bool> on_path(g.n(), false);
  std::vector<int> path = {v};
  on_path[v] = true;

  // DFS over simple paths from v of length <= r
  std::function<void()> dfs = [&]() {
    const int u = path.back();
    if (static_cast<int>(path.size()) - 1 >= r) return;
    for (int w : g.neighbors(u)) {
      if (on_path[w]) continue;
      if (ord.rank[w] <= ord.rank[v]) {
        if (w != v) found[w] = true; // endpoint at or before v
        continue;                    // cannot be internal
      }
      path.push_back(w);
      on_path[w] = true;
      dfs();
      on_path[w] = false;
      path.pop_back();
    }
  };
  dfs();
  for (int x = 0; x < g.n(); ++x)
    if (found[x]) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

int naive_box_depth(const std::vector<Box>& boxes) {
  if (boxes.empty()) return 0;
  const int d = boxes.front().dim();
  std::vector<std::vector<Rational>> axis_coords(d);
  for (const auto& b : boxes)
    for (int i = 0; i < d; ++i) {
      axis_coords[i].push_back(b.lo[i]);
      axis_coords[i].push_back(b.hi[i]);
    }
  for (auto& v : axis_coords) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  int best = 0;
  std::vector<size_t> idx(d, 0);
  while (true) {
    RPoint x(d);
    for (int i = 0; i < d; ++i) x[i] = axis_coords[i][idx[i]];
    int depth = 0;
    for (const auto& b : boxes)
      if (b.contains(x)) ++depth;
    best = std::max(best, depth);
    int axis = 0;
    while (axis < d && ++idx[axis] == axis_coords[axis].size()) idx[axis++] = 0;
    if (axis == d) break;
  }
  return best;
}

bool grid_le_k_boxes(const Box& b1, const Box& b2, const Rational& k, int grid) {
  const int d = b1.dim();
  const Box target = b2.scaled(k);
  // candidate translations: per-axis grid plus exact corner alignments
  std::vector<std::vector<Rational>> cands(d);
  for (int i = 0; i < d; ++i) {
    const Rational lo = target.lo[i] - b1.lo[i];                 // align left edges
    const Rational hi = target.hi[i] - b1.hi[i];                 // align right edges
    cands[i].push_back(lo);
    cands[i].push_back(hi);
    for (int gidx = 1; gidx < grid; ++gidx)
      cands[i].push_back(lo + (hi - lo) * gidx / grid);
  }
  std::vector<size_t> idx(d, 0);
  while (true) {
    bool fits = true;
    for (int i = 0; i < d && fits; ++i) {
      const Rational t = cands[i][idx[i]];
      if (b1.lo[i] + t < target.lo[i] || b1.hi[i] + t > target.hi[i]) fits = false;
    }
    if (fits) return true;
    int axis = 0;
    while (axis < d && ++idx[axis] == cands[axis].size()) idx[axis++] = 0;
    if (axis == d) break;
  }
  return false;
}

} // namespace shapesep::oracles
