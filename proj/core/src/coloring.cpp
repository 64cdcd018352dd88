#include "shapesep/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "shapesep/errors.hpp"

namespace shapesep {

Ordering Ordering::identity(int n) {
  Ordering o;
  o.order.resize(n);
  std::iota(o.order.begin(), o.order.end(), 0);
  o.rank = o.order;
  return o;
}

Ordering Ordering::from_order(std::vector<int> order) {
  Ordering o;
  o.order = std::move(order);
  o.rank.assign(o.order.size(), -1);
  for (size_t pos = 0; pos < o.order.size(); ++pos) {
    const int v = o.order[pos];
    if (v < 0 || v >= static_cast<int>(o.order.size()) || o.rank[v] != -1)
      throw InvariantViolationError("ordering is not a permutation of the vertex ids");
    o.rank[v] = static_cast<int>(pos);
  }
  return o;
}

namespace {

// first-reach distances from v to the vertices at or before v, walking only
// through vertices after v; dist[x] = length of the shortest respecting path
std::vector<int> respecting_distances(const Graph& g, const std::vector<int>& rank, int v,
                                      int r_cap) {
  const int n = g.n();
  std::vector<int> dist_internal(n, -1); // over {v} ∪ {z : z after v}
  std::vector<int> reach(n, -1);         // over {x : x at or before v}, x != v
  std::deque<int> queue;
  dist_internal[v] = 0;
  queue.push_back(v);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    const int du = dist_internal[u];
    if (du >= r_cap) continue;
    for (int w : g.neighbors(u)) {
      if (rank[w] > rank[v]) {
        if (dist_internal[w] == -1) {
          dist_internal[w] = du + 1;
          queue.push_back(w);
        }
      } else if (w != v) {
        if (reach[w] == -1 || reach[w] > du + 1) reach[w] = du + 1;
      }
    }
  }
  return reach;
}

} // namespace

std::vector<int> reach_set(const Graph& g, const Ordering& ord, int r, int v) {
  if (v < 0 || v >= g.n()) throw InvalidParameterError("reach_set: unknown vertex");
  if (r < 0) throw InvalidParameterError("reach_set: r >= 0 required");
  std::vector<int> out = {v};
  if (r == 0) return out;
  const auto reach = respecting_distances(g, ord.rank, v, r);
  for (int x = 0; x < g.n(); ++x)
    if (reach[x] != -1 && reach[x] <= r) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

int ColoringProfile::value_at(int r) const {
  for (const auto& row : rows)
    if (row.r == r) return row.value;
  throw InvalidParameterError("profile has no row for r = " + std::to_string(r));
}

ColoringProfile col_profile(const Graph& g, const Ordering& ord, int r_max) {
  if (r_max < 1) throw InvalidParameterError("col_profile: r_max >= 1 required");
  if (ord.n() != g.n()) throw InvariantViolationError("ordering size != graph size");
  ColoringProfile profile;
  profile.rows.resize(r_max);
  for (int r = 1; r <= r_max; ++r)
    profile.rows[r - 1] = {r, g.n() > 0 ? 1 : 0, g.n() > 0 ? 0 : -1};
  for (int v = 0; v < g.n(); ++v) {
    const auto reach = respecting_distances(g, ord.rank, v, r_max);
    std::vector<int> count_at(r_max + 1, 0);
    for (int x = 0; x < g.n(); ++x)
      if (reach[x] != -1 && reach[x] <= r_max) ++count_at[reach[x]];
    int cumulative = 1; // v itself
    for (int r = 1; r <= r_max; ++r) {
      cumulative += count_at[r];
      if (cumulative > profile.rows[r - 1].value) {
        profile.rows[r - 1].value = cumulative;
        profile.rows[r - 1].argmax = v;
      }
    }
  }
  return profile;
}

namespace {

// |L(v)| when v is appended to the prefix: the vertices at or before v are
// exactly the placed ones, the internal vertices are the unplaced ones
int reach_count_for_placement(const Graph& g, const std::vector<bool>& placed, int v, int r) {
  const int n = g.n();
  std::vector<int> dist(n, -1);
  std::vector<bool> counted(n, false);
  std::deque<int> queue;
  dist[v] = 0;
  queue.push_back(v);
  int count = 1; // v
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (dist[u] >= r) continue;
    for (int w : g.neighbors(u)) {
      if (!placed[w]) {
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      } else if (w != v && !counted[w]) {
        counted[w] = true;
        ++count;
      }
    }
  }
  return count;
}

struct ExactSearch {
  const Graph& g;
  int r;
  int best;
  std::vector<int> best_order;
  std::vector<int> prefix;
  std::vector<bool> placed;

  void run(int current_max) {
    const int n = g.n();
    if (static_cast<int>(prefix.size()) == n) {
      if (current_max < best) {
        best = current_max;
        best_order = prefix;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (placed[v]) continue;
      placed[v] = true;
      prefix.push_back(v);
      const int val = reach_count_for_placement(g, placed, v, r);
      const int mx = std::max(current_max, val);
      if (mx < best) run(mx);
      prefix.pop_back();
      placed[v] = false;
    }
  }
};

} // namespace

ExactColResult strong_coloring_number_exact(const Graph& g, int r, int cap) {
  if (g.n() > cap)
    throw SizeCapError("strong_coloring_number_exact is capped at " + std::to_string(cap) +
                       " vertices (got " + std::to_string(g.n()) + ")");
  if (r < 1) throw InvalidParameterError("strong coloring number needs r >= 1");
  ExactColResult res;
  if (g.n() == 0) {
    res.value = 0;
    res.witness = Ordering::identity(0);
    return res;
  }
  ExactSearch search{g, r, g.n() + 1, {}, {}, std::vector<bool>(g.n(), false)};
  search.run(0);
  res.value = search.best;
  res.witness = Ordering::from_order(search.best_order);
  return res;
}

Ordering volume_ordering(const Representation& r) {
  r.validate();
  std::vector<Scalar> vols(r.n());
  for (int v = 0; v < r.n(); ++v) vols[v] = volume(r.shapes[r.shape_of[v]]);
  std::vector<int> order(r.n());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (vols[a] != vols[b]) return vols[b] < vols[a]; // non-increasing volume
    return a < b;                                     // tie: vertex id ascending
  });
  return Ordering::from_order(std::move(order));
}

Scalar delta_bound(const Scalar& c, const Scalar& s, int d, const Scalar& k) {
  if (c < Scalar(1) || s < Scalar(1) || k < Scalar(1))
    throw InvalidParameterError("delta_bound requires c, s, k >= 1");
  if (d < 1) throw InvalidParameterError("delta_bound requires d >= 1");
  if (c.is_exact() && s.is_exact() && k.is_exact()) {
    Rational two_k_plus_1 = 2 * k.rational() + 1;
    Rational pow1(1), pow2(1);
    for (int i = 0; i < d; ++i) {
      pow1 *= two_k_plus_1;
      pow2 *= d;
    }
    return Scalar(Rational(2 * c.rational() * s.rational() * pow1 * pow2));
  }
  const double kd = 2 * k.to_double() + 1;
  return Scalar(2 * c.to_double() * s.to_double() * std::pow(kd, d) * std::pow(double(d), d));
}

double ComposedBound::bound(int r) const { return delta * std::pow(static_cast<double>(r), d); }

ComposedBound compose_volume_order_bound(double c, double s, int d) {
  ComposedBound out;
  out.c = c;
  out.s = s;
  out.d = d;
  // volume order gives vol(v) <= vol(u) for u before v; the smaller shape is
  // ⊑_{s'}-below the larger with s' = max(s, k^d), k at parameter s, and then
  // the containment transfer at parameter s' gives the <=_{k'} half
  const double k_at_s = rel2_k(s, d);
  out.s_prime = std::max(s, std::pow(k_at_s, d));
  out.k_prime = rel2_k(out.s_prime, d);
  out.delta = delta_bound(Scalar(c), Scalar(out.s_prime), d, Scalar(out.k_prime)).to_double();
  return out;
}

ConditionReport verify_generalized_conditions(const GeneralizedRep& gr, const Graph& g,
                                              const Ordering& ord, int c, const Scalar& k,
                                              const Scalar& s, const ProbeConfig& cfg) {
  if (gr.n() != g.n() || static_cast<int>(gr.outer.size()) != g.n())
    throw InvariantViolationError("generalized representation does not cover the graph");
  ConditionReport rep;
  const int n = gr.n();
  bool exact = true;

  // (a) outer convex, inner placed inside outer
  rep.containment_ok = true;
  for (int v = 0; v < n && rep.containment_ok; ++v) {
    const Shape in = resolve_placement(gr.inner[v]);
    const Shape out = resolve_placement(gr.outer[v]);
    if (!shape_is_convex(out)) {
      rep.containment_ok = false;
      rep.containment_witness = v;
      break;
    }
    bool inside = true;
    if (shape_is_box(in) && shape_is_box(out)) {
      const Box& bi = std::get<Box>(in);
      const Box& bo = std::get<Box>(out);
      for (int i = 0; i < bi.dim(); ++i)
        if (bi.lo[i] < bo.lo[i] || bi.hi[i] > bo.hi[i]) inside = false;
    } else {
      exact = false;
      const auto facets = shape_facet_halfspaces(out);
      const double tol = global_epsilon() * std::max(shape_float_scale(out), 1e-12);
      for (const auto& p : shape_vertex_points(in)) {
        for (const auto& h : facets) {
          double dot = 0;
          for (size_t i = 0; i < p.size(); ++i) dot += h.a[i] * p[i];
          if (dot > h.b + tol) inside = false;
        }
      }
    }
    if (!inside) {
      rep.containment_ok = false;
      rep.containment_witness = v;
    }
  }

  // (b) inner family is c-thin
  Representation inner_rep;
  inner_rep.dimension = gr.dimension;
  for (int v = 0; v < n; ++v) {
    inner_rep.shapes.push_back(gr.inner[v].shape);
    inner_rep.shape_of.push_back(v);
    inner_rep.translations.push_back(gr.inner[v].translation);
  }
  const ThinnessResult thin = thinness(inner_rep);
  if (thin.status != CertStatus::Exact) exact = false;
  rep.thinness_ok = thin.c <= c;
  if (!rep.thinness_ok) rep.thinness_witness = thin.witness;

  // (c) pairwise relations along the ordering, on the unplaced shapes
  rep.comparability_ok = true;
  for (int pu = 0; pu < n && rep.comparability_ok; ++pu)
    for (int pv = pu + 1; pv < n; ++pv) {
      const int u = ord.order[pu];
      const int v = ord.order[pv];
      const TriBool lek = le_k(gr.outer[v].shape, gr.outer[u].shape, k, cfg);
      const TriBool sqs = sqsubseteq_s(gr.outer[v].shape, gr.inner[u].shape, s, cfg);
      if (lek.unknown() || sqs.unknown()) exact = false;
      if (lek.fails() || sqs.fails()) {
        rep.comparability_ok = false;
        rep.comparability_witness = std::make_pair(u, v);
        break;
      }
    }

  // (d) every edge meets across the ordering
  rep.meet_ok = true;
  for (const auto& [a, b] : g.edge_list()) {
    const int u = ord.precedes(a, b) ? a : b;
    const int v = ord.precedes(a, b) ? b : a;
    if (!intersects(gr.outer[v], gr.inner[u])) {
      rep.meet_ok = false;
      rep.meet_witness = std::make_pair(u, v);
      break;
    }
  }

  rep.status = exact ? CertStatus::Exact : CertStatus::SampledOnly;
  return rep;
}

} // namespace shapesep
