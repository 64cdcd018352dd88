#include "shapesep/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shapesep/prng.hpp"

namespace shapesep {

namespace {

struct Problem {
  std::vector<Halfspace> cons;
  std::vector<double> c;
  double lo, hi;
  double eps;
};

bool solve_rec(const Problem& p, int d, std::vector<double>& out);

// Eliminate variable `k` from (a,b) using the pivot equality ap . x = bp.
Halfspace reduce_halfspace(const Halfspace& h, const Halfspace& pivot, int k) {
  const double f = h.a[k] / pivot.a[k];
  Halfspace r;
  r.a.reserve(h.a.size() - 1);
  for (size_t j = 0; j < h.a.size(); ++j) {
    if (static_cast<int>(j) == k) continue;
    r.a.push_back(h.a[j] - f * pivot.a[j]);
  }
  r.b = h.b - f * pivot.b;
  return r;
}

bool solve_1d(const Problem& p, std::vector<double>& out) {
  double lo = p.lo, hi = p.hi;
  for (const auto& h : p.cons) {
    const double a = h.a[0];
    if (std::fabs(a) <= p.eps) {
      if (h.b < -p.eps) return false;
      continue;
    }
    if (a > 0)
      hi = std::min(hi, h.b / a);
    else
      lo = std::max(lo, h.b / a);
  }
  if (lo > hi + p.eps) return false;
  double x;
  const double c = p.c[0];
  if (c > p.eps)
    x = lo;
  else if (c < -p.eps)
    x = hi;
  else
    x = std::clamp(0.0, lo, hi);
  out.assign(1, x);
  return true;
}

bool violated(const Halfspace& h, const std::vector<double>& x, double eps) {
  double v = -h.b;
  for (size_t j = 0; j < h.a.size(); ++j) v += h.a[j] * x[j];
  return v > eps;
}

bool solve_rec(const Problem& p, int d, std::vector<double>& out) {
  if (d == 1) return solve_1d(p, out);

  std::vector<double> x(d);
  for (int i = 0; i < d; ++i) {
    if (p.c[i] > p.eps)
      x[i] = p.lo;
    else if (p.c[i] < -p.eps)
      x[i] = p.hi;
    else
      x[i] = std::clamp(0.0, p.lo, p.hi);
  }

  for (size_t i = 0; i < p.cons.size(); ++i) {
    const Halfspace& h = p.cons[i];
    if (!violated(h, x, p.eps)) continue;

    int k = 0;
    for (int j = 1; j < d; ++j)
      if (std::fabs(h.a[j]) > std::fabs(h.a[k])) k = j;
    if (std::fabs(h.a[k]) <= p.eps) {
      if (h.b < -p.eps) return false;
      continue;
    }

    // Optimum lies on h's boundary; recurse in d-1 dims.
    Problem sub;
    sub.lo = p.lo;
    sub.hi = p.hi;
    sub.eps = p.eps;
    sub.cons.reserve(i + 2);
    for (size_t j = 0; j < i; ++j) sub.cons.push_back(reduce_halfspace(p.cons[j], h, k));
    {
      // box bounds of the eliminated variable: lo <= (b - sum a_j x_j)/a_k <= hi
      Halfspace upper, lower;
      upper.a.assign(static_cast<size_t>(d), 0.0);
      upper.a[static_cast<size_t>(k)] = 1.0;
      upper.b = p.hi;
      lower.a.assign(static_cast<size_t>(d), 0.0);
      lower.a[static_cast<size_t>(k)] = -1.0;
      lower.b = -p.lo;
      sub.cons.push_back(reduce_halfspace(upper, h, k));
      sub.cons.push_back(reduce_halfspace(lower, h, k));
    }
    sub.c.reserve(d - 1);
    const double cf = p.c[k] / h.a[k];
    for (int j = 0; j < d; ++j) {
      if (j == k) continue;
      sub.c.push_back(p.c[j] - cf * h.a[j]);
    }

    std::vector<double> y;
    if (!solve_rec(sub, d - 1, y)) return false;

    // lift
    double acc = h.b;
    int yi = 0;
    for (int j = 0; j < d; ++j) {
      if (j == k) continue;
      x[j] = y[yi++];
      acc -= h.a[j] * x[j];
    }
    x[k] = acc / h.a[k];
  }
  out = x;
  return true;
}

void normalize(std::vector<Halfspace>& cons) {
  for (auto& h : cons) {
    double n2 = 0;
    for (double a : h.a) n2 += a * a;
    const double n = std::sqrt(n2);
    if (n > 0) {
      for (double& a : h.a) a /= n;
      h.b /= n;
    }
  }
}

} // namespace

LpResult solve_lp(std::vector<Halfspace> constraints, const std::vector<double>& objective,
                  double bound, double eps) {
  const int d = static_cast<int>(objective.size());
  for (const auto& h : constraints)
    if (static_cast<int>(h.a.size()) != d)
      throw DimensionMismatchError("LP constraint arity != objective arity");

  // Deterministic shuffle; Seidel's expected-time argument wants a random
  // insertion order, and a fixed seed keeps reruns identical.
  Rng rng(stable_mix(0x5e1de1u, constraints.size()));
  for (size_t i = constraints.size(); i > 1; --i)
    std::swap(constraints[i - 1], constraints[rng.next_below(i)]);

  Problem p{std::move(constraints), objective, -bound, bound, eps};
  LpResult res;
  std::vector<double> x;
  if (!solve_rec(p, d, x)) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  res.status = LpResult::Status::Optimal;
  res.x = std::move(x);
  res.value = std::inner_product(res.x.begin(), res.x.end(), objective.begin(), 0.0);
  return res;
}

MarginResult feasibility_margin(std::vector<Halfspace> constraints, int dim, double bound,
                                double eps) {
  normalize(constraints);
  // variables (x, s): minimize s subject to a.x - s <= b
  for (auto& h : constraints) h.a.push_back(-1.0);
  std::vector<double> c(static_cast<size_t>(dim) + 1, 0.0);
  c.back() = 1.0;
  LpResult lp = solve_lp(std::move(constraints), c, std::max(bound, 1.0) * 4, eps);
  MarginResult r;
  if (!lp.ok()) return r; // cannot happen: s large enough always feasible within bound
  r.solved = true;
  r.margin = lp.x.back();
  r.x.assign(lp.x.begin(), lp.x.end() - 1);
  return r;
}

ChebyshevResult chebyshev_center(std::vector<Halfspace> constraints, int dim, double bound,
                                 double eps) {
  normalize(constraints);
  // variables (x, r): maximize r subject to a.x + r <= b, r >= 0
  for (auto& h : constraints) h.a.push_back(1.0);
  {
    Halfspace nonneg;
    nonneg.a.assign(static_cast<size_t>(dim) + 1, 0.0);
    nonneg.a.back() = -1.0;
    nonneg.b = 0.0;
    constraints.push_back(nonneg);
  }
  std::vector<double> c(static_cast<size_t>(dim) + 1, 0.0);
  c.back() = -1.0;
  LpResult lp = solve_lp(std::move(constraints), c, std::max(bound, 1.0) * 4, eps);
  ChebyshevResult r;
  if (!lp.ok()) return r;
  r.solved = true;
  r.center.assign(lp.x.begin(), lp.x.end() - 1);
  r.radius = lp.x.back();
  return r;
}

} // namespace shapesep
