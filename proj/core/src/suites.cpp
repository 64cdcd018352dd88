#include "shapesep/suites.hpp"

#include <algorithm>

#include "shapesep/errors.hpp"
#include "shapesep/graph.hpp"

namespace shapesep {

Box random_box(int d, Rng& rng) {
  std::vector<Rational> lo(d, Rational(0)), hi(d);
  for (int i = 0; i < d; ++i) hi[i] = rng.next_dyadic(Rational(1, 4), Rational(4), 12);
  return Box(std::move(lo), std::move(hi));
}

namespace {

Scalar pick_parameter(Rng& rng) {
  static const Rational choices[4] = {Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  return Scalar(choices[rng.next_below(4)]);
}

// scale B1 so that it fits extentwise inside k*B2 (makes the antecedent of
// the transfer lemmas hold on a useful fraction of cases)
Box shrink_into(const Box& b1, const Box& b2, const Rational& k, Rng& rng) {
  std::vector<Rational> lo(b1.dim(), Rational(0)), hi(b1.dim());
  for (int i = 0; i < b1.dim(); ++i) {
    const Rational cap = k * b2.extent(i);
    const Rational u = rng.next_dyadic(Rational(1, 8), Rational(1), 10);
    hi[i] = std::min(b1.extent(i), Rational(cap * u));
    if (hi[i] <= 0) hi[i] = cap / 2;
  }
  return Box(std::move(lo), std::move(hi));
}

} // namespace

SuiteResult run_rel1_suite(int pairs_per_dim, const std::vector<int>& dims, uint64_t seed) {
  SuiteResult res{"rel1", 0, 0, 0};
  for (int d : dims) {
    Rng rng = Rng(seed).child(d, "rel1");
    for (int i = 0; i < pairs_per_dim; ++i) {
      const Scalar k = pick_parameter(rng);
      const Scalar s = pick_parameter(rng);
      Box b2 = random_box(d, rng);
      Box b1 = random_box(d, rng);
      if (rng.next_below(2) == 0) b1 = shrink_into(b1, b2, k.rational(), rng);
      ++res.cases;
      if (!verify_rel1(Shape(b1), Shape(b2), k, s)) ++res.violations;
    }
  }
  return res;
}

SuiteResult run_rel2_suite(int pairs_per_dim, const std::vector<int>& dims, uint64_t seed) {
  SuiteResult res{"rel2", 0, 0, 0};
  for (int d : dims) {
    Rng rng = Rng(seed).child(d, "rel2");
    for (int i = 0; i < pairs_per_dim; ++i) {
      const Scalar s = pick_parameter(rng);
      Box b2 = random_box(d, rng);
      Box b1 = random_box(d, rng);
      if (rng.next_below(2) == 0) b1 = shrink_into(b1, b2, Rational(1), rng);
      ++res.cases;
      if (!verify_rel2(Shape(b1), Shape(b2), s)) ++res.violations;
    }
  }
  return res;
}

SuiteResult run_cmp_suite(int pairs_per_dim, const std::vector<int>& dims, uint64_t seed) {
  SuiteResult res{"cmp", 0, 0, 0};
  for (int d : dims) {
    Rng rng = Rng(seed).child(d, "cmp");
    for (int i = 0; i < pairs_per_dim; ++i) {
      const Scalar s = pick_parameter(rng);
      // rejection-sample a ⊑_s-comparable pair ordered by volume
      bool produced = false;
      for (int attempt = 0; attempt < 64 && !produced; ++attempt) {
        Box a = random_box(d, rng);
        Box b = random_box(d, rng);
        if (b.volume() < a.volume()) std::swap(a, b);
        const bool fwd = sqsubseteq_s(Shape(a), Shape(b), s).holds();
        const bool bwd = sqsubseteq_s(Shape(b), Shape(a), s).holds();
        if (!fwd && !bwd) continue;
        produced = true;
        ++res.cases;
        if (!verify_cmp(Shape(a), Shape(b), s)) ++res.violations;
      }
      if (!produced) ++res.skipped;
    }
  }
  return res;
}

SuiteResult run_dichotomy_suite(int families, int max_n, int max_k, uint64_t seed) {
  SuiteResult res{"boxes-dichotomy", 0, 0, 0};
  Rng root(seed);
  for (int f = 0; f < families; ++f) {
    Rng rng = root.child(f, "dichotomy");
    const int d = static_cast<int>(rng.next_int(1, 3));
    const int n = static_cast<int>(rng.next_int(4, max_n));
    const int k = static_cast<int>(rng.next_int(1, max_k));
    std::vector<Box> family;
    family.reserve(n);
    const Rational span = Rational(static_cast<long>(n)) / 2;
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> lo(d), hi(d);
      for (int ax = 0; ax < d; ++ax) {
        lo[ax] = rng.next_dyadic(Rational(0), span, 10);
        hi[ax] = lo[ax] + rng.next_dyadic(Rational(1, 4), Rational(4), 10);
      }
      family.emplace_back(std::move(lo), std::move(hi));
    }
    ++res.cases;
    const DichotomyResult out = boxes_dichotomy(family, k);
    if (!verify_dichotomy(family, k, out)) ++res.violations;
  }
  return res;
}

CombipCase random_combip_case(Rng& rng) {
  CombipCase c;
  c.s_prime = rng.next_int(1, 5);
  const long n_u = c.s_prime + 6 + rng.next_int(0, 4);

  // U: disjoint intervals marching right with dyadic lengths and gaps
  Rational cursor(0);
  Rational min_len(-1);
  for (long i = 0; i < n_u; ++i) {
    const Rational half = rng.next_dyadic(Rational(1, 8), Rational(1, 2), 8);
    const Rational gap = rng.next_dyadic(Rational(1, 8), Rational(1, 2), 8);
    cursor += gap + half;
    c.u.intervals.push_back({cursor, half});
    cursor += half;
    if (min_len < 0 || 2 * half < min_len) min_len = 2 * half;
  }
  const Rational left_hi = c.u.intervals.front().hi();
  const Rational right_lo = c.u.intervals.back().lo();
  const Rational inner_span = right_lo - left_hi; // what l*J must bridge

  // l large enough that a V interval of the longest admissible length can
  // bridge the inner span: l * (s' * min_len) >= inner_span
  const Rational need = inner_span / (Rational(c.s_prime) * min_len);
  long l = 1;
  while (Rational(l) < need) ++l;
  c.l = l + 1 + rng.next_int(0, 2);

  // V: centers must lie in [right_lo - l*halfJ*2 ... ]; with half-length hJ,
  // feasibility needs center in [right_lo - l*2hJ/2, left_hi + l*2hJ/2]
  const Rational max_half = Rational(c.s_prime) * min_len / 2;
  const Rational min_half = inner_span / (2 * c.l);
  const Rational half_j =
      min_half >= max_half ? max_half
                           : std::max(min_half, rng.next_dyadic(min_half, max_half, 8));
  const Rational band_lo = right_lo - Rational(c.l) * half_j;
  const Rational band_hi = left_hi + Rational(c.l) * half_j;
  const long requested = rng.next_int(1, 2 * c.s_prime * c.l * c.l);
  Rational center = band_lo;
  for (long j = 0; j < requested; ++j) {
    if (center > band_hi) break;
    c.v.intervals.push_back({center, half_j});
    center += 2 * half_j + half_j / 4; // disjoint with a gap
  }
  if (c.v.intervals.empty()) c.v.intervals.push_back({band_lo, half_j});
  return c;
}

SuiteResult run_combip_suite(int cases, uint64_t seed) {
  SuiteResult res{"combip", 0, 0, 0};
  Rng root(seed);
  for (int i = 0; i < cases; ++i) {
    Rng rng = root.child(i, "combip");
    const CombipCase c = random_combip_case(rng);
    const CombipResult out = combip_check(c.u, c.v, c.l, c.s_prime);
    if (out.premise_unmet()) {
      ++res.skipped;
      continue;
    }
    ++res.cases;
    if (!out.conclusion_holds()) ++res.violations;
  }
  return res;
}

} // namespace shapesep
