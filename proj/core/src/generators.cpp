#include "shapesep/generators.hpp"

#include <algorithm>
#include <cmath>

#include "shapesep/errors.hpp"

namespace shapesep {

namespace {

Rational rat_i(long v) { return Rational(v); }

void require_expected_graph(InstanceBundle& b, const char* family) {
  const Graph got = build_intersection_graph(b.representation);
  if (!(got == *b.expected_graph))
    throw GeneratorError(std::string(family) + ": intersection graph differs from the expected graph");
}

void measure_thinness(InstanceBundle& b, const char* family) {
  const ThinnessResult t = thinness(b.representation);
  b.measured_thinness = t.c;
  b.thinness_status = t.status;
  if (b.expected_thinness && t.c != *b.expected_thinness)
    throw GeneratorError(std::string(family) + ": thinness " + std::to_string(t.c) +
                         " != expected " + std::to_string(*b.expected_thinness));
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  g.finalize();
  return g;
}

// double halton in (0,1)
double halton(uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  uint64_t i = index + 1;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

} // namespace

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  g.finalize();
  return g;
}

Graph cycle_graph(int n) {
  if (n < 3) throw InvalidParameterError("cycle needs n >= 3");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  g.finalize();
  return g;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  g.finalize();
  return g;
}

Graph star_graph(int rays) {
  Graph g(rays + 1);
  for (int i = 1; i <= rays; ++i) g.add_edge(0, i);
  g.finalize();
  return g;
}

Graph grid_graph(int rows, int cols) {
  Graph g(rows * cols);
  auto id = [&](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c));
      if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1));
    }
  g.finalize();
  return g;
}

// ---- Fig. 2: two rectangle directions -> K_{m,m} ---------------------------

InstanceBundle narrow_rectangles_bipartite(int m, const Rational& thickness) {
  if (m < 1) throw InvalidParameterError("narrow_rectangles_bipartite: m >= 1");
  if (thickness <= 0 || thickness > Rational(1, 10 * m))
    throw InvalidParameterError(
        "narrow_rectangles_bipartite: thickness must lie in (0, 1/(10m)] or same-side "
        "rectangles would collide");

  const Rational t2 = thickness / 2;
  const Rational span_lo = 1 - thickness;
  const Rational span_hi = m + thickness;
  InstanceBundle b;
  Representation& rep = b.representation;
  rep.dimension = 2;
  // shape 0: horizontal bar, shape 1: vertical bar (anchored at the origin)
  rep.shapes.push_back(Box({Rational(0), Rational(0)}, {span_hi - span_lo, thickness}));
  rep.shapes.push_back(Box({Rational(0), Rational(0)}, {thickness, span_hi - span_lo}));
  for (int i = 1; i <= m; ++i) { // horizontals
    rep.shape_of.push_back(0);
    rep.translations.push_back({span_lo, rat_i(i) - t2});
  }
  for (int j = 1; j <= m; ++j) { // verticals
    rep.shape_of.push_back(1);
    rep.translations.push_back({rat_i(j) - t2, span_lo});
  }
  b.expected_graph = complete_bipartite(m, m);
  b.expected_thinness = m >= 1 ? 2 : 1;
  b.provenance = {"narrow-rect", {{"m", std::to_string(m)}, {"thickness", rat_to_string(thickness)}}, 0};

  require_expected_graph(b, "narrow_rectangles_bipartite");
  measure_thinness(b, "narrow_rectangles_bipartite");
  const auto scan = comparability_scan(rep.shapes, Scalar(1));
  b.measured_s_star = scan.s_star;
  b.s_star_exact = scan.exact;
  return b;
}

// ---- Example 1: wedges in R^3 -> K_{m,m} ------------------------------------

InstanceBundle wedge_family(int m) {
  if (m < 1) throw InvalidParameterError("wedge_family: m >= 1");
  const Rational w(1, 1000);
  InstanceBundle b;
  Representation& rep = b.representation;
  rep.dimension = 3;

  // L_i: thin box around the segment {(i, y, 0) : 1 <= y <= m}
  const Box l_shape({-w, Rational(1) - w, -w}, {w, rat_i(m) + w, w});
  rep.shapes.push_back(l_shape);
  for (int i = 1; i <= m; ++i) {
    rep.shape_of.push_back(0);
    rep.translations.push_back({rat_i(i), Rational(0), Rational(0)});
  }

  // R_i: convex hull of the segment {(x, i, 0) : 1 <= x <= m} and the lifted
  // previous wedge R_{i-1} + (0, y_i, 1); y_i found by doubling until R_i
  // misses R_1 ... R_{i-1}
  std::vector<ConvexPolytope> wedges;
  std::vector<Point> prev_points; // R_0 = L_1
  for (const auto& c : l_shape.translated({Rational(1), Rational(0), Rational(0)}).corner_points())
    prev_points.push_back(c);

  for (int i = 1; i <= m; ++i) {
    const double eps_w = rat_to_double(w);
    std::vector<Point> base = {{1.0 - eps_w, double(i), 0.0}, {double(m) + eps_w, double(i), 0.0}};
    double y_shift = 1.0;
    ConvexPolytope candidate;
    bool separated = false;
    for (int attempt = 0; attempt < 60 && !separated; ++attempt, y_shift *= 2) {
      std::vector<Point> pts = base;
      for (const auto& p : prev_points) pts.push_back({p[0], p[1] + y_shift, p[2] + 1.0});
      candidate = ConvexPolytope::from_points(3, pts);
      separated = true;
      for (const auto& other : wedges) {
        PlacedShape a(Shape(candidate), RPoint(3, Rational(0)));
        PlacedShape c(Shape(other), RPoint(3, Rational(0)));
        if (intersects(a, c)) {
          separated = false;
          break;
        }
      }
    }
    if (!separated)
      throw GeneratorError("wedge_family: could not separate wedge " + std::to_string(i) +
                           " from its predecessors");
    wedges.push_back(candidate);
    rep.shapes.push_back(candidate);
    rep.shape_of.push_back(static_cast<int>(rep.shapes.size()) - 1);
    rep.translations.push_back(RPoint(3, Rational(0)));
    prev_points = candidate.vertices;
  }

  b.expected_graph = complete_bipartite(m, m);
  b.expected_thinness = 2;
  b.provenance = {"wedge", {{"m", std::to_string(m)}}, 0};
  require_expected_graph(b, "wedge_family");
  measure_thinness(b, "wedge_family");

  // chain self-check: R_{i-1} <=_1 R_i (a translated copy sits inside by
  // construction), and L <=_1 R_1
  ProbeConfig light;
  light.grid_per_axis = 4;
  if (!le_k(Shape(l_shape), Shape(wedges[0]), Scalar(1), light).holds())
    throw GeneratorError("wedge_family: L <=_1 R_1 self-check failed");
  for (size_t i = 1; i < wedges.size(); ++i)
    if (!le_k(Shape(wedges[i - 1]), Shape(wedges[i]), Scalar(1), light).holds())
      throw GeneratorError("wedge_family: wedge chain <=_1 self-check failed at " +
                           std::to_string(i));
  return b;
}

// ---- star x path boxes -> T_r ⊠ P_t in R^3 ---------------------------------

InstanceBundle star_path_boxes(int r, int t) {
  if (r < 1 || t < 1) throw InvalidParameterError("star_path_boxes: r, t >= 1");
  // leaves sit along the bottom edge of the center square, unit squares at
  // pitch 11/10 (gap 1/10), overlapping the center square by 1/10
  const Rational pitch(11, 10);
  const Rational overlap(1, 10);
  if (Rational(r - 1) * pitch + 1 > Rational(2) * r)
    throw InvalidParameterError("star_path_boxes: leaf squares exceed the boundary capacity");

  Representation star;
  star.dimension = 2;
  star.shapes.push_back(Box({Rational(0), Rational(0)}, {rat_i(2 * r), rat_i(2 * r)}));
  star.shapes.push_back(Box({Rational(0), Rational(0)}, {Rational(1), Rational(1)}));
  star.shape_of.push_back(0); // center first: vertex ids match star_graph
  star.translations.push_back({Rational(0), Rational(0)});
  for (int i = 0; i < r; ++i) {
    star.shape_of.push_back(1);
    star.translations.push_back({pitch * i, overlap - 1});
  }

  Representation path;
  path.dimension = 1;
  path.shapes.push_back(Box({Rational(0)}, {Rational(1)}));
  const Rational step = 1 - overlap;
  for (int j = 0; j < t; ++j) {
    path.shape_of.push_back(0);
    path.translations.push_back({step * j});
  }

  InstanceBundle b;
  b.representation = product_representation(star, path, ProductMode::Product);
  b.expected_graph = strong_product(star_graph(r), path_graph(t));
  b.expected_thinness = (t >= 2) ? 4 : 2;
  b.expected_comparability_s = Scalar(Rational(1));
  b.provenance = {"star-path", {{"r", std::to_string(r)}, {"t", std::to_string(t)}}, 0};

  require_expected_graph(b, "star_path_boxes");
  measure_thinness(b, "star_path_boxes");
  const auto scan = comparability_scan(b.representation.shapes, Scalar(1));
  b.measured_s_star = scan.s_star;
  b.s_star_exact = scan.exact;
  if (!scan.all_comparable || Scalar(1) < scan.s_star)
    throw GeneratorError("star_path_boxes: shapes are not ⊑_1-comparable");
  return b;
}

// ---- hub-star tower ----------------------------------------------------------

HubStarResult hub_star_family(const std::vector<int>& n_levels, const std::vector<int>& lengths) {
  if (n_levels.empty() || lengths.size() + 1 != n_levels.size())
    throw InvalidParameterError("hub_star_family: need N = (N_0..N_d) and l = (l_1..l_d)");
  for (int n : n_levels)
    if (n < 1) throw InvalidParameterError("hub_star_family: all N_i >= 1");
  for (int l : lengths)
    if (l < 1) throw InvalidParameterError("hub_star_family: all l_i >= 1");

  HubStarResult out;
  std::vector<std::pair<int, int>> edges;
  int n = n_levels[0];
  std::vector<int> level(n, 0);
  out.level_sizes.push_back(n);

  for (size_t lev = 0; lev + 1 < n_levels.size(); ++lev) {
    const int hubs = n_levels[lev + 1];
    const int len = lengths[lev];
    const int old_n = n;
    std::vector<int> hub_ids;
    for (int h = 0; h < hubs; ++h) {
      hub_ids.push_back(n++);
      level.push_back(static_cast<int>(lev) + 1);
    }
    for (int h : hub_ids)
      for (int u = 0; u < old_n; ++u) {
        int prev = h;
        for (int step = 0; step < len - 1; ++step) {
          const int mid = n++;
          level.push_back(static_cast<int>(lev) + 1);
          edges.emplace_back(prev, mid);
          prev = mid;
        }
        edges.emplace_back(prev, u);
      }
    out.level_sizes.push_back(n);
    // audit: |V(G_i)| = |V(G_{i-1})| + N_i (1 + |V(G_{i-1})| (l_i - 1))
    const long expect = static_cast<long>(old_n) +
                        static_cast<long>(hubs) * (1 + static_cast<long>(old_n) * (len - 1));
    if (expect != n)
      throw GeneratorError("hub_star_family: vertex-count audit failed at level " +
                           std::to_string(lev + 1));
  }
  out.graph = Graph::from_edges(n, edges);
  out.level_of = std::move(level);
  // vertices are appended base-first, hubs before their level's internals, so
  // the construction order is the ordering the tower's coloring bound wants
  out.ordering = Ordering::identity(n);
  return out;
}

// ---- trapezoid/square chain ----------------------------------------------------

SstarShapes sstar_shapes(int h_max) {
  if (h_max < 1) throw InvalidParameterError("sstar_shapes: h_max >= 1");
  SstarShapes out;
  Rational ell(1);
  for (int h = 1; h <= h_max; ++h) {
    if (rat_to_double(ell) < 1e-280)
      throw InvalidParameterError("sstar_shapes: ell underflows the float backend at h = " +
                                  std::to_string(h));
    out.ell.push_back(ell);
    const double l = rat_to_double(ell);
    out.trapezoids.push_back(ConvexPolytope::from_points(
        2, {{0, 0}, {l, 0}, {l, h * l}, {0, 2.0 * h * l}}));
    out.squares.push_back(Box({Rational(0), Rational(0)}, {ell, ell}));
    ell = ell / (2 * (h + 1));
  }
  // chain self-check: T_{h+1} <=_1 S_h <=_1 T_h
  ProbeConfig light;
  light.grid_per_axis = 4;
  for (int h = 0; h < h_max; ++h) {
    if (!le_k(out.squares[h], out.trapezoids[h], Scalar(1), light).holds())
      throw GeneratorError("sstar_shapes: S_h <=_1 T_h failed at h = " + std::to_string(h + 1));
    if (h + 1 < h_max &&
        !le_k(out.trapezoids[h + 1], out.squares[h], Scalar(1), light).holds())
      throw GeneratorError("sstar_shapes: T_{h+1} <=_1 S_h failed at h = " + std::to_string(h + 1));
  }
  return out;
}

InstanceBundle sstar_instance(int h_max, int per_level, uint64_t seed) {
  if (per_level < 1) throw InvalidParameterError("sstar_instance: per_level >= 1");
  SstarShapes shapes = sstar_shapes(h_max);
  InstanceBundle b;
  Representation& rep = b.representation;
  rep.dimension = 2;
  for (int h = 0; h < h_max; ++h) {
    rep.shapes.push_back(shapes.trapezoids[h]);
    rep.shapes.push_back(shapes.squares[h]);
  }

  // per level: jittered grid over [0, 4]^2 with pitch ~ 1.2 * ell_h, so that
  // neighbours overlap deliberately and depth stays small per level
  const double region = 4.0;
  Rng rng(seed);
  for (int h = 0; h < h_max; ++h) {
    const double ell = rat_to_double(shapes.ell[h]);
    const double pitch = 1.2 * ell;
    const int cells = std::max(1, static_cast<int>(region / pitch));
    Rng level_rng = rng.child(h, "sstar-level");
    int placed = 0;
    for (int gy = 0; gy < cells && placed < 2 * per_level; ++gy)
      for (int gx = 0; gx < cells && placed < 2 * per_level; ++gx) {
        const double jx = level_rng.next_double(-0.15, 0.15) * ell;
        const double jy = level_rng.next_double(-0.15, 0.15) * ell;
        const int which = placed % 2; // alternate trapezoid / square
        rep.shape_of.push_back(2 * h + which);
        rep.translations.push_back(
            {rat_from_double(gx * pitch + jx), rat_from_double(gy * pitch + jy)});
        ++placed;
      }
  }
  b.provenance = {"sstar",
                  {{"h_max", std::to_string(h_max)}, {"per_level", std::to_string(per_level)}},
                  seed};
  const ThinnessResult t = thinness(rep);
  b.measured_thinness = t.c;
  b.thinness_status = t.status;
  return b;
}

// ---- L-shape clique (non-convex control) -----------------------------------------

InstanceBundle lshape_clique(int m) {
  if (m < 1) throw InvalidParameterError("lshape_clique: m >= 1");
  const Rational delta(1, 2 * m);
  const Rational arm(1, 4 * m); // arm width, below the diagonal step
  InstanceBundle b;
  Representation& rep = b.representation;
  rep.dimension = 2;

  UnionShape l;
  l.parts.push_back(Box({Rational(0), Rational(0)}, {arm, Rational(1)}));      // vertical arm
  l.parts.push_back(Box({Rational(0), Rational(0)}, {Rational(1), arm}));      // horizontal arm
  rep.shapes.push_back(l);
  for (int i = 0; i < m; ++i) {
    rep.shape_of.push_back(0);
    rep.translations.push_back({delta * i, -delta * i});
  }
  b.expected_graph = complete_graph(m);
  b.expected_thinness = m >= 2 ? 2 : 1;
  b.provenance = {"lshape", {{"m", std::to_string(m)}}, 0};
  require_expected_graph(b, "lshape_clique");
  measure_thinness(b, "lshape_clique");
  return b;
}

// ---- random boxes ------------------------------------------------------------------

InstanceBundle random_box_instance(int n, int d, AspectProfile profile, uint64_t seed,
                                   double target_depth) {
  if (n < 1 || d < 1) throw InvalidParameterError("random_box_instance: n, d >= 1");
  if (target_depth <= 0) throw InvalidParameterError("random_box_instance: target depth > 0");
  InstanceBundle b;
  Representation& rep = b.representation;
  rep.dimension = d;

  Rng rng(seed);
  Rng ext_rng = rng.child(1, "extents");
  std::vector<std::vector<Rational>> extents(n, std::vector<Rational>(d));
  Rational total_volume(0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> e(d);
    for (int ax = 0; ax < d; ++ax) {
      if (profile == AspectProfile::Bounded)
        e[ax] = ext_rng.next_double(1.0, 2.0);
      else
        e[ax] = std::pow(10.0, ext_rng.next_double(-1.5, 1.5));
    }
    // heavy tails are repaired by sorting extents so that every pair of boxes
    // is comparable at a moderate measured s*
    std::sort(e.begin(), e.end(), std::greater<double>());
    Rational vol(1);
    for (int ax = 0; ax < d; ++ax) {
      extents[i][ax] = rat_from_double(e[ax]);
      vol *= extents[i][ax];
    }
    total_volume += vol;
  }

  const double region = std::pow(rat_to_double(total_volume) / target_depth, 1.0 / d);
  const int bases[3] = {2, 3, 5};
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> lo(d), hi(d);
    for (int ax = 0; ax < d; ++ax) {
      const double center = halton(static_cast<uint64_t>(i), bases[ax % 3]) * region;
      lo[ax] = rat_from_double(center) - extents[i][ax] / 2;
      hi[ax] = lo[ax] + extents[i][ax];
    }
    rep.shapes.push_back(Box(std::move(lo), std::move(hi)));
    rep.shape_of.push_back(i);
    rep.translations.push_back(RPoint(d, Rational(0)));
  }
  b.provenance = {"random-box",
                  {{"n", std::to_string(n)},
                   {"d", std::to_string(d)},
                   {"profile", profile == AspectProfile::Bounded ? "bounded" : "heavy_tail"},
                   {"target_depth", std::to_string(target_depth)}},
                  seed};

  const ThinnessResult t = thinness(rep);
  b.measured_thinness = t.c;
  b.thinness_status = t.status;

  if (n <= 1024) {
    const auto scan = comparability_scan(rep.shapes, Scalar(1));
    b.measured_s_star = scan.s_star;
    b.s_star_exact = scan.exact;
  } else {
    // double-precision estimate of max over pairs of min-direction s*
    double worst = 1.0;
    std::vector<std::vector<double>> de(n, std::vector<double>(d));
    std::vector<double> dvol(n, 1.0);
    for (int i = 0; i < n; ++i)
      for (int ax = 0; ax < d; ++ax) {
        de[i][ax] = rat_to_double(extents[i][ax]);
        dvol[i] *= de[i][ax];
      }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double overlap = 1.0;
        for (int ax = 0; ax < d; ++ax) overlap *= std::min(de[i][ax], de[j][ax]);
        const double pair_s = std::min(dvol[i], dvol[j]) / overlap;
        worst = std::max(worst, pair_s);
      }
    b.measured_s_star = Scalar(worst);
    b.s_star_exact = false;
  }
  return b;
}

} // namespace shapesep
