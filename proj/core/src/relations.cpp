#include "shapesep/relations.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "shapesep/errors.hpp"

namespace shapesep {

namespace {

std::atomic<long> g_unknown_count{0};

double vec_dot(const Point& a, const Point& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational rat_pow(Rational base, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

Rational scalar_to_rational(const Scalar& s) {
  return s.is_exact() ? s.rational() : rat_from_double(s.to_double());
}

bool pair_of_boxes(const Shape& a, const Shape& b) {
  return shape_is_box(a) && shape_is_box(b);
}

// ---- exact box backend ----------------------------------------------------

TriBool le_k_boxes(const Box& b1, const Box& b2, const Rational& k) {
  // translations are free, so containment in kB2 is a per-axis extent test
  for (int i = 0; i < b1.dim(); ++i)
    if (b1.extent(i) > k * b2.extent(i))
      return TriBool::no(std::nullopt, "extent exceeds k times target on axis " + std::to_string(i));
  return TriBool::yes();
}

Rational box_min_overlap_product(const Box& b1, const Box& b2) {
  // worst probe point is a corner of B2; the optimal translation overlaps
  // min(a_i, b_i) per axis there
  Rational prod(1);
  for (int i = 0; i < b1.dim(); ++i) prod *= std::min(b1.extent(i), b2.extent(i));
  return prod;
}

TriBool sqsubseteq_boxes(const Box& b1, const Box& b2, const Rational& s) {
  const Rational lhs = box_min_overlap_product(b1, b2) * s;
  const Rational rhs = b1.volume();
  if (lhs >= rhs) return TriBool::yes();
  Point corner(b2.dim());
  for (int i = 0; i < b2.dim(); ++i) corner[i] = rat_to_double(b2.hi[i]);
  return TriBool::no(corner, "corner of B2 cannot collect vol(B1)/s overlap");
}

// ---- float backend ---------------------------------------------------------

struct FloatPair {
  ConvexPolytope b1, b2;
  std::vector<double> axis_scale; // original units per normalized unit, per axis
  Point center2;                  // bbox center b2 was translated by
};

// The comparability relations are invariant under a shared invertible linear
// map and under independent translations of either argument, so each shape is
// centered at its bounding-box midpoint and the pair is rescaled per axis.
// This keeps sliver shapes (wedge chains, the shrinking trapezoids) well
// conditioned for the LP and hull machinery, and keeps all coordinates O(1).
FloatPair normalize_pair(const Shape& a, const Shape& b) {
  const int d = shape_dim(a);
  const auto va = shape_vertex_points(a);
  const auto vb = shape_vertex_points(b);
  FloatPair fp;
  fp.axis_scale.assign(d, 1e-300);
  Point c1(d, 0.0), c2(d, 0.0);
  for (const auto* vs : {&va, &vb})
    for (int ax = 0; ax < d; ++ax) {
      double lo = 1e300, hi = -1e300;
      for (const auto& p : *vs) {
        lo = std::min(lo, p[ax]);
        hi = std::max(hi, p[ax]);
      }
      (vs == &va ? c1 : c2)[ax] = (lo + hi) / 2;
      fp.axis_scale[ax] = std::max(fp.axis_scale[ax], hi - lo);
    }
  fp.center2 = c2;
  auto remap = [&](const std::vector<Point>& vs, const Point& c) {
    std::vector<Point> out = vs;
    for (auto& p : out)
      for (int ax = 0; ax < d; ++ax) p[ax] = (p[ax] - c[ax]) / fp.axis_scale[ax];
    return out;
  };
  fp.b1 = ConvexPolytope::from_points(d, remap(va, c1));
  fp.b2 = ConvexPolytope::from_points(d, remap(vb, c2));
  return fp;
}

// maps a point of the normalized (k * b2) back into original coordinates
Point denormalize(const FloatPair& fp, Point x, double k_mult = 1.0) {
  for (size_t ax = 0; ax < fp.axis_scale.size(); ++ax)
    x[ax] = x[ax] * fp.axis_scale[ax] + k_mult * fp.center2[ax];
  return x;
}

std::vector<Point> probe_points(const ConvexPolytope& p, const ProbeConfig& cfg) {
  std::vector<Point> pts = p.vertices;
  const int d = p.dimension;
  Point lo(d, 1e300), hi(d, -1e300);
  for (const auto& v : p.vertices)
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], v[i]);
      hi[i] = std::max(hi[i], v[i]);
    }
  const double tol = global_epsilon() * std::max(coordinate_scale(p.vertices), 1e-12);
  const int n = std::max(cfg.grid_per_axis, 1);
  std::vector<int> idx(d, 0);
  std::vector<Point> grid;
  while (true) {
    Point x(d);
    for (int i = 0; i < d; ++i)
      x[i] = lo[i] + (hi[i] - lo[i]) * (idx[i] + 1) / (n + 1);
    if (p.contains(x, tol)) grid.push_back(std::move(x));
    int axis = 0;
    while (axis < d && ++idx[axis] == n) idx[axis++] = 0;
    if (axis == d) break;
  }
  if (cfg.max_grid_probes > 0 && static_cast<int>(grid.size()) > cfg.max_grid_probes) {
    std::vector<Point> thin;
    const double stride = static_cast<double>(grid.size()) / cfg.max_grid_probes;
    for (int i = 0; i < cfg.max_grid_probes; ++i)
      thin.push_back(grid[static_cast<size_t>(i * stride)]);
    grid = std::move(thin);
  }
  pts.insert(pts.end(), grid.begin(), grid.end());
  return pts;
}

TriBool le_k_float(const Shape& a, const Shape& b, double k) {
  FloatPair fp = normalize_pair(a, b);
  const ConvexPolytope target = fp.b2.scaled(k);
  const int d = fp.b1.dimension;
  std::vector<Halfspace> cons;
  for (const auto& w : fp.b1.vertices)
    for (const auto& h : target.facets) cons.push_back({h.a, h.b - vec_dot(h.a, w)});
  const double bound = 4 * (k + 2);
  const auto m = feasibility_margin(std::move(cons), d, bound, global_epsilon());
  const double tol = global_epsilon() * std::max(1.0, k);
  if (m.solved && m.margin <= tol) return TriBool::yes();
  return TriBool::no(std::nullopt, "no translation of B1 fits inside kB2");
}

// feasibility of the two-translation system at probe x (normalized units)
bool le_ks_probe_feasible(const ConvexPolytope& b1, const ConvexPolytope& sb1,
                          const ConvexPolytope& kb2, const Point& x, double k, double s) {
  const int d = b1.dimension;
  std::vector<Halfspace> cons;
  // variables (t1, t2): B1+t1 must sit inside (sB1+t2) ∩ kB2, and x in sB1+t2
  for (const auto& h : sb1.facets) {
    Halfspace c;
    c.a.assign(2 * d, 0.0);
    for (int i = 0; i < d; ++i) c.a[d + i] = -h.a[i];
    c.b = h.b - vec_dot(h.a, x);
    cons.push_back(std::move(c)); // x - t2 in sB1
  }
  for (const auto& w : b1.vertices) {
    for (const auto& h : sb1.facets) {
      Halfspace c;
      c.a.assign(2 * d, 0.0);
      for (int i = 0; i < d; ++i) {
        c.a[i] = h.a[i];
        c.a[d + i] = -h.a[i];
      }
      c.b = h.b - vec_dot(h.a, w);
      cons.push_back(std::move(c)); // w + t1 - t2 in sB1
    }
    for (const auto& h : kb2.facets) {
      Halfspace c;
      c.a.assign(2 * d, 0.0);
      for (int i = 0; i < d; ++i) c.a[i] = h.a[i];
      c.b = h.b - vec_dot(h.a, w);
      cons.push_back(std::move(c)); // w + t1 in kB2
    }
  }
  const double bound = 8 * (k + s + 2);
  const auto m = feasibility_margin(std::move(cons), 2 * d, bound, global_epsilon());
  return m.solved && m.margin <= global_epsilon() * std::max(1.0, k + s);
}

TriBool le_ks_float(const Shape& a, const Shape& b, double k, double s, const ProbeConfig& cfg) {
  FloatPair fp = normalize_pair(a, b);
  const ConvexPolytope kb2 = fp.b2.scaled(k);
  const ConvexPolytope sb1 = fp.b1.scaled(s);
  for (const auto& x : probe_points(kb2, cfg)) {
    if (!le_ks_probe_feasible(fp.b1, sb1, kb2, x, k, s))
      return TriBool::no(denormalize(fp, x), "probe point of kB2 not coverable");
  }
  return TriBool::yes();
}

// overlap volume of (B1 + t) ∩ B2
double overlap_at(const ConvexPolytope& b1, const ConvexPolytope& b2, const Point& t) {
  std::vector<Halfspace> moved = b1.facets;
  for (auto& h : moved) h.b += vec_dot(h.a, t);
  auto clipped = clip_polytopes(b1.dimension, moved, b2.facets);
  return clipped ? clipped->volume() : 0.0;
}

// best overlap of a translated B1 containing probe x with B2
double best_overlap_containing(const ConvexPolytope& b1, const ConvexPolytope& b2, const Point& x,
                               const ProbeConfig& cfg) {
  const int d = b1.dimension;
  Point lo1(d, 1e300), hi1(d, -1e300);
  for (const auto& v : b1.vertices)
    for (int i = 0; i < d; ++i) {
      lo1[i] = std::min(lo1[i], v[i]);
      hi1[i] = std::max(hi1[i], v[i]);
    }
  const double tol = global_epsilon();
  auto feasible = [&](const Point& t) {
    Point y(d);
    for (int i = 0; i < d; ++i) y[i] = x[i] - t[i];
    return b1.contains(y, tol);
  };

  double best = -1.0;
  Point best_t(d, 0.0);
  const int g = std::max(cfg.translation_grid, 2);
  std::vector<int> idx(d, 0);
  double pitch = 0;
  while (true) {
    Point t(d);
    for (int i = 0; i < d; ++i) {
      const double span = hi1[i] - lo1[i];
      pitch = std::max(pitch, span / g);
      t[i] = (x[i] - hi1[i]) + span * (2 * idx[i] + 1) / (2.0 * g);
    }
    if (feasible(t)) {
      const double v = overlap_at(b1, b2, t);
      if (v > best) {
        best = v;
        best_t = t;
      }
    }
    int axis = 0;
    while (axis < d && ++idx[axis] == g) idx[axis++] = 0;
    if (axis == d) break;
  }
  if (best < 0) {
    // fall back to centering B1 on x
    Point c = b1.centroid();
    Point t(d);
    for (int i = 0; i < d; ++i) t[i] = x[i] - c[i];
    best = overlap_at(b1, b2, t);
    best_t = t;
  }
  double step = pitch / 2;
  for (int round = 0; round < cfg.refine_rounds && step > 1e-12; ++round) {
    bool improved = false;
    for (int i = 0; i < d; ++i)
      for (double dir : {step, -step}) {
        Point t = best_t;
        t[i] += dir;
        if (!feasible(t)) continue;
        const double v = overlap_at(b1, b2, t);
        if (v > best + 1e-15) {
          best = v;
          best_t = t;
          improved = true;
        }
      }
    if (!improved) step /= 2;
  }
  return best;
}

// facets of the difference body B1 + (-B1), the reach of translated copies
// of B1 through a common point
std::vector<Halfspace> difference_body_facets(const ConvexPolytope& b1) {
  std::vector<Point> diffs;
  for (const auto& v : b1.vertices)
    for (const auto& w : b1.vertices) {
      Point p(b1.dimension);
      for (int i = 0; i < b1.dimension; ++i) p[i] = v[i] - w[i];
      diffs.push_back(std::move(p));
    }
  return ConvexPolytope::from_points(b1.dimension, diffs).facets;
}

struct SqsubFloatResult {
  TriBool verdict;
  double min_best_overlap = 0; // over probes, in normalized units
  double vol_b1 = 0;
};

SqsubFloatResult sqsubseteq_float(const Shape& a, const Shape& b, double s,
                                  const ProbeConfig& cfg) {
  FloatPair fp = normalize_pair(a, b);
  const int d = fp.b1.dimension;
  SqsubFloatResult out;
  out.vol_b1 = fp.b1.volume();
  const double threshold = out.vol_b1 / s;
  const auto diff_facets = difference_body_facets(fp.b1);

  bool any_unknown = false;
  double min_best = 1e300;
  for (const auto& x : probe_points(fp.b2, cfg)) {
    // provable upper bound: any translate of B1 through x stays in x + (B1 - B1)
    std::vector<Halfspace> shifted = diff_facets;
    for (auto& h : shifted) h.b += vec_dot(h.a, x);
    auto reach = clip_polytopes(d, shifted, fp.b2.facets);
    const double ub = reach ? reach->volume() : 0.0;
    if (ub < threshold * (1 - 1e-9)) {
      out.verdict =
          TriBool::no(denormalize(fp, x), "no translate through the probe can reach vol(B1)/s");
      out.min_best_overlap = ub;
      return out;
    }
    const double best = best_overlap_containing(fp.b1, fp.b2, x, cfg);
    min_best = std::min(min_best, best);
    if (best < threshold * (1 - 1e-9)) any_unknown = true;
  }
  out.min_best_overlap = min_best;
  out.verdict = any_unknown
                    ? TriBool::maybe("translation search below threshold but not provably infeasible")
                    : TriBool::yes();
  return out;
}

} // namespace

// ---- public relation entry points ------------------------------------------

TriBool le_k(const Shape& b1, const Shape& b2, const Scalar& k, const ProbeConfig& cfg) {
  (void)cfg;
  if (shape_dim(b1) != shape_dim(b2)) throw DimensionMismatchError("le_k: dimension mismatch");
  if (k < Scalar(1)) throw InvalidParameterError("le_k requires k >= 1");
  if (pair_of_boxes(b1, b2))
    return le_k_boxes(std::get<Box>(b1), std::get<Box>(b2), scalar_to_rational(k));
  return le_k_float(b1, b2, k.to_double());
}

TriBool le_ks(const Shape& b1, const Shape& b2, const Scalar& k, const Scalar& s,
              const ProbeConfig& cfg) {
  if (shape_dim(b1) != shape_dim(b2)) throw DimensionMismatchError("le_ks: dimension mismatch");
  if (k < Scalar(1) || s < Scalar(1)) throw InvalidParameterError("le_ks requires k, s >= 1");
  if (pair_of_boxes(b1, b2)) {
    // For boxes the two-translation condition collapses to the extent test:
    // B1 can always be slid against the probe inside kB2 whenever it fits at
    // all, and s >= 1 gives the outer copy room to cover the probe.
    return le_k_boxes(std::get<Box>(b1), std::get<Box>(b2), scalar_to_rational(k));
  }
  return le_ks_float(b1, b2, k.to_double(), s.to_double(), cfg);
}

TriBool sqsubseteq_s(const Shape& b1, const Shape& b2, const Scalar& s, const ProbeConfig& cfg) {
  if (shape_dim(b1) != shape_dim(b2))
    throw DimensionMismatchError("sqsubseteq_s: dimension mismatch");
  if (s < Scalar(1)) throw InvalidParameterError("sqsubseteq_s requires s >= 1");
  if (pair_of_boxes(b1, b2))
    return sqsubseteq_boxes(std::get<Box>(b1), std::get<Box>(b2), scalar_to_rational(s));
  return sqsubseteq_float(b1, b2, s.to_double(), cfg).verdict;
}

Scalar min_sqsubseteq_parameter(const Shape& b1, const Shape& b2, const ProbeConfig& cfg) {
  if (shape_dim(b1) != shape_dim(b2))
    throw DimensionMismatchError("min_sqsubseteq_parameter: dimension mismatch");
  if (pair_of_boxes(b1, b2)) {
    const Box& x = std::get<Box>(b1);
    const Box& y = std::get<Box>(b2);
    Rational s = x.volume() / box_min_overlap_product(x, y);
    return Scalar(std::max(s, Rational(1)));
  }
  const auto r = sqsubseteq_float(b1, b2, 1.0, cfg);
  if (r.min_best_overlap <= 0) return scalar_infinity();
  return Scalar(std::max(1.0, r.vol_b1 / r.min_best_overlap));
}

ComparabilityScan comparability_scan(const std::vector<Shape>& shapes, const Scalar& s,
                                     const ProbeConfig& cfg) {
  if (shapes.empty()) throw InvalidParameterError("comparability_scan: empty family");
  ComparabilityScan scan;
  Scalar worst(1);
  for (size_t i = 0; i < shapes.size(); ++i)
    for (size_t j = i + 1; j < shapes.size(); ++j) {
      ComparabilityReport rep;
      rep.i = static_cast<int>(i);
      rep.j = static_cast<int>(j);
      rep.s = s;
      rep.exact = pair_of_boxes(shapes[i], shapes[j]);
      rep.min_s_forward = min_sqsubseteq_parameter(shapes[i], shapes[j], cfg);
      rep.min_s_backward = min_sqsubseteq_parameter(shapes[j], shapes[i], cfg);
      const bool fwd = !scalar_is_infinite(rep.min_s_forward) && rep.min_s_forward <= s;
      const bool bwd = !scalar_is_infinite(rep.min_s_backward) && rep.min_s_backward <= s;
      rep.direction = fwd && bwd   ? ComparabilityReport::Direction::Both
                      : fwd        ? ComparabilityReport::Direction::Forward
                      : bwd        ? ComparabilityReport::Direction::Backward
                                   : ComparabilityReport::Direction::Neither;
      if (!rep.exact) scan.exact = false;
      Scalar pair_min = std::min(rep.min_s_forward, rep.min_s_backward,
                                 [](const Scalar& a, const Scalar& b) { return a < b; });
      if (scalar_is_infinite(pair_min)) scan.all_comparable = false;
      if (worst < pair_min) worst = pair_min;
      scan.pairs.push_back(std::move(rep));
    }
  scan.s_star = scan.all_comparable ? worst : scalar_infinity();
  return scan;
}

// ---- gamma_d ----------------------------------------------------------------

namespace {
struct GammaEntry {
  Scalar value;
  const char* provenance;
};
const GammaEntry& gamma_entry(int d) {
  static const GammaEntry table[3] = {
      {Scalar(Rational(1)),
       "exact: a hyperplane meets a unit segment in a point; 0-dimensional measure 1"},
      {Scalar(1.414213562373),
       "chord-sweep oracle: 10^6 line angles x ternary search over offsets, local refinement;"
       " maximum is the unit-square diagonal, value stored to 12 digits"},
      {Scalar(1.414213562373),
       "section-area oracle: 2*10^5 Fibonacci-sphere normals x ternary search over offsets,"
       " local refinement; maximum is the 1 x sqrt(2) rectangle through opposite edges,"
       " value stored to 12 digits"}};
  if (d < 1 || d > 3)
    throw UnsupportedDimensionError("gamma_d is tabulated for d in {1,2,3}, got " +
                                    std::to_string(d));
  return table[d - 1];
}
} // namespace

Scalar cube_section_constant(int d) { return gamma_entry(d).value; }
std::string cube_section_provenance(int d) { return gamma_entry(d).provenance; }

double rel2_k(double s, int d) {
  return s * std::pow(static_cast<double>(d), d + 1.5) * cube_section_constant(d).to_double();
}

// ---- lemma verifiers ----------------------------------------------------------

long relations_unknown_count() { return g_unknown_count.load(); }

bool verify_rel1(const Shape& b1, const Shape& b2, const Scalar& k, const Scalar& s,
                 const ProbeConfig& cfg) {
  const TriBool ante = le_ks(b1, b2, k, s, cfg);
  if (ante.unknown()) {
    ++g_unknown_count;
    return true;
  }
  if (ante.fails()) return true; // vacuous
  const int d = shape_dim(b1);
  Scalar m;
  if (k.is_exact() && s.is_exact())
    m = Scalar(rat_pow(std::max(k.rational(), s.rational()), d));
  else
    m = Scalar(std::pow(std::max(k.to_double(), s.to_double()), d));
  const TriBool cons = sqsubseteq_s(b1, b2, m, cfg);
  if (cons.unknown()) {
    ++g_unknown_count;
    return true;
  }
  return cons.holds();
}

bool verify_rel2(const Shape& b1, const Shape& b2, const Scalar& s, const ProbeConfig& cfg) {
  const int d = shape_dim(b1);
  if (d > 3) throw UnsupportedDimensionError("verify_rel2 needs gamma_d, d <= 3");
  const TriBool ante = sqsubseteq_s(b1, b2, s, cfg);
  if (ante.unknown()) {
    ++g_unknown_count;
    return true;
  }
  if (ante.fails()) return true;
  Scalar k;
  if (d == 1)
    k = s; // d^(d+3/2) = 1 and gamma_1 = 1, exact
  else
    k = Scalar(rel2_k(s.to_double(), d));
  const TriBool cons = le_ks(b1, b2, k, k, cfg);
  if (cons.unknown()) {
    ++g_unknown_count;
    return true;
  }
  return cons.holds();
}

bool verify_cmp(const Shape& b1, const Shape& b2, const Scalar& s, const ProbeConfig& cfg) {
  const Scalar v1 = volume(b1);
  const Scalar v2 = volume(b2);
  if (v2 < v1)
    throw PreconditionError("verify_cmp requires vol(B1) <= vol(B2); got vol(B1)=" + v1.str() +
                            ", vol(B2)=" + v2.str());
  const TriBool fwd = sqsubseteq_s(b1, b2, s, cfg);
  const TriBool bwd = sqsubseteq_s(b2, b1, s, cfg);
  if (fwd.fails() && bwd.fails())
    throw PreconditionError("verify_cmp requires a ⊑_s-comparable pair (vol(B1)=" + v1.str() +
                            ", vol(B2)=" + v2.str() + ")");
  if (fwd.unknown() || bwd.unknown()) ++g_unknown_count;

  const int d = shape_dim(b1);
  const double k = rel2_k(s.to_double(), d);
  Scalar s_prime;
  if (s.is_exact() && d == 1)
    s_prime = Scalar(std::max(s.rational(), scalar_to_rational(Scalar(k))));
  else
    s_prime = Scalar(std::max(s.to_double(), std::pow(k, d)));
  const TriBool res = sqsubseteq_s(b1, b2, s_prime, cfg);
  if (res.unknown()) {
    ++g_unknown_count;
    return true;
  }
  return res.holds();
}

// ---- interval families ---------------------------------------------------------

void IntervalFamily::validate() const {
  for (size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].half_length <= 0)
      throw InvariantViolationError("interval " + std::to_string(i) + " has non-positive length");
    for (size_t j = i + 1; j < intervals.size(); ++j) {
      const auto& a = intervals[i];
      const auto& b = intervals[j];
      if (!(a.hi() < b.lo() || b.hi() < a.lo()))
        throw InvariantViolationError("intervals " + std::to_string(i) + " and " +
                                      std::to_string(j) + " are not disjoint");
    }
  }
}

CombipResult combip_check(const IntervalFamily& u, const IntervalFamily& v, long l, long s_prime) {
  if (l < 1 || s_prime < 1) throw InvalidParameterError("combip_check needs l, s' >= 1");
  u.validate();
  v.validate();
  for (size_t i = 0; i < u.intervals.size(); ++i)
    for (size_t j = 0; j < v.intervals.size(); ++j) {
      const auto& I = u.intervals[i];
      const auto& J = v.intervals[j];
      const Rational jlo = J.center - l * J.half_length;
      const Rational jhi = J.center + l * J.half_length;
      if (I.hi() < jlo || jhi < I.lo())
        throw PreconditionError("premise I ∩ (l*J) != {} fails for U[" + std::to_string(i) +
                                "], V[" + std::to_string(j) + "]");
      if (J.length() > s_prime * I.length())
        throw PreconditionError("premise |J| <= s'|I| fails for U[" + std::to_string(i) + "], V[" +
                                std::to_string(j) + "]");
    }

  CombipResult out;
  out.bound = 2 * s_prime * l * l;
  if (static_cast<long>(u.intervals.size()) < s_prime + 6) {
    out.status = CombipResult::Status::PremiseUnmet;
    out.detail = "|U| = " + std::to_string(u.intervals.size()) + " < s'+6 = " +
                 std::to_string(s_prime + 6);
    return out;
  }
  out.status = static_cast<long>(v.intervals.size()) <= out.bound
                   ? CombipResult::Status::ConclusionHolds
                   : CombipResult::Status::ConclusionFails;
  out.detail = "|V| = " + std::to_string(v.intervals.size()) + ", bound = " +
               std::to_string(out.bound);
  return out;
}

} // namespace shapesep
