#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shapesep/errors.hpp"
#include "shapesep/generators.hpp"
#include "shapesep/relations.hpp"
#include "shapesep/suites.hpp"

using namespace shapesep;

namespace {
Box boxe(std::vector<double> extents) {
  std::vector<Rational> lo(extents.size(), Rational(0)), hi;
  for (double e : extents) hi.push_back(rat_from_double(e));
  return Box(std::move(lo), std::move(hi));
}
const Shape usq = boxe({1, 1});
} // namespace

TEST_CASE("le_k: identity, elongated box, triangle into its envelope") {
  CHECK(le_k(usq, usq, Scalar(Rational(1))).holds());

  const Shape wide = boxe({2, 1});
  CHECK(le_k(wide, usq, Scalar(Rational(1))).fails());
  CHECK(le_k(wide, usq, Scalar(Rational(2))).holds());
  // cross-check against exhaustive translation grid
  CHECK_FALSE(oracles::grid_le_k_boxes(std::get<Box>(wide), std::get<Box>(usq), Rational(1), 16));
  CHECK(oracles::grid_le_k_boxes(std::get<Box>(wide), std::get<Box>(usq), Rational(2), 16));

  const ConvexPolytope tri = ConvexPolytope::from_points(2, {{0, 0}, {1, 0}, {0, 1}});
  const Parallelepiped env = envelope(Shape(tri));
  const ConvexPolytope env_poly = ConvexPolytope::from_points(2, env.corner_points());
  CHECK(le_k(Shape(tri), Shape(env_poly), Scalar(Rational(1))).holds());

  CHECK_THROWS_AS(le_k(usq, usq, Scalar(Rational(1, 2))), InvalidParameterError);
}

TEST_CASE("le_k closed form agrees with the translation-grid oracle on random boxes") {
  Rng rng(101);
  for (int trial = 0; trial < 120; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(3));
    Rng r1 = rng.child(trial, "a");
    Rng r2 = rng.child(trial, "b");
    const Box a = random_box(d, r1);
    const Box b = random_box(d, r2);
    const Rational k = rng.next_dyadic(Rational(1), Rational(3), 4);
    CHECK(le_k(Shape(a), Shape(b), Scalar(k)).holds() ==
          oracles::grid_le_k_boxes(a, b, k, 8));
  }
}

TEST_CASE("le_ks: reflexivity, sliding containment, oversized failure") {
  CHECK(le_ks(usq, usq, Scalar(Rational(1)), Scalar(Rational(1))).holds());
  CHECK(le_ks(usq, boxe({2, 2}), Scalar(Rational(1)), Scalar(Rational(1))).holds());
  const TriBool fail = le_ks(boxe({2, 2}), usq, Scalar(Rational(1)), Scalar(Rational(1)));
  CHECK(fail.fails());
}

TEST_CASE("le_ks float backend matches the box closed form on box pairs") {
  // the polytope probe machinery must agree with the exact rational path
  ProbeConfig light;
  light.grid_per_axis = 6;
  Rng rng(103);
  for (int trial = 0; trial < 12; ++trial) {
    Rng r1 = rng.child(trial, "a");
    Rng r2 = rng.child(trial, "b");
    const Box a = random_box(2, r1);
    const Box b = random_box(2, r2);
    const Scalar k(Rational(1 + static_cast<long>(trial % 3)));
    const Scalar s(Rational(1 + static_cast<long>(trial % 2)));
    const TriBool exact = le_ks(Shape(a), Shape(b), k, s);
    const TriBool sampled =
        le_ks(Shape(ConvexPolytope::from_points(2, a.corner_points())),
              Shape(ConvexPolytope::from_points(2, b.corner_points())), k, s, light);
    CHECK(exact.holds() == sampled.holds());
  }
}

TEST_CASE("sqsubseteq_s: spec instances and corner witness") {
  CHECK(sqsubseteq_s(usq, boxe({2, 2}), Scalar(Rational(1))).holds());

  const TriBool at4 = sqsubseteq_s(boxe({2, 2}), usq, Scalar(Rational(4)));
  CHECK(at4.holds());
  const TriBool at3 = sqsubseteq_s(boxe({2, 2}), usq, Scalar(Rational(3)));
  CHECK(at3.fails());
  REQUIRE(at3.witness.has_value());
  // the witness is a corner of B2
  for (double c : *at3.witness) CHECK((c == doctest::Approx(0.0) || c == doctest::Approx(1.0)));

  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Rng r = rng.child(trial);
    const Box b = random_box(1 + trial % 3, r);
    CHECK(sqsubseteq_s(Shape(b), Shape(b), Scalar(Rational(1))).holds());
  }
}

TEST_CASE("box sqsubseteq closed form agrees with the quantifier oracle at margin") {
  Rng rng(211);
  int decided = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(3));
    Rng r1 = rng.child(trial, "a");
    Rng r2 = rng.child(trial, "b");
    const Box a = random_box(d, r1);
    const Box b = random_box(d, r2);
    const Rational s = rng.next_dyadic(Rational(1), Rational(4), 4);
    const double threshold = rat_to_double(a.volume()) / rat_to_double(s);
    Rng mc = rng.child(trial, "mc");
    const double oracle_min = oracles::mc_min_best_overlap(a, b, 2000, 24, mc);
    if (std::fabs(oracle_min - threshold) <= 1e-6) continue; // margin too small to decide
    ++decided;
    CHECK(sqsubseteq_s(Shape(a), Shape(b), Scalar(s)).holds() == (oracle_min >= threshold));
  }
  CHECK(decided > 100);
}

TEST_CASE("sqsubseteq on polytopes: square pairs via the float backend") {
  ProbeConfig light;
  light.grid_per_axis = 6;
  const ConvexPolytope small = ConvexPolytope::from_points(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const ConvexPolytope big = ConvexPolytope::from_points(2, {{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  CHECK(sqsubseteq_s(Shape(small), Shape(big), Scalar(Rational(1)), light).holds());
  // the 2x2 square cannot put a quarter of its volume behind every corner of
  // the unit square: provably fails at s = 3
  const TriBool big_into_small = sqsubseteq_s(Shape(big), Shape(small), Scalar(Rational(3)), light);
  CHECK(big_into_small.fails());
  CHECK(sqsubseteq_s(Shape(big), Shape(small), Scalar(Rational(4)), light).verdict !=
        TriBool::Verdict::Fails);
}

TEST_CASE("comparability_scan: squares, singleton, and the trapezoid chain prefix") {
  const ComparabilityScan two = comparability_scan({usq, boxe({2, 2})}, Scalar(Rational(1)));
  CHECK(two.all_comparable);
  CHECK(two.s_star == Scalar(Rational(1)));
  CHECK(two.exact);

  const ComparabilityScan single = comparability_scan({usq}, Scalar(Rational(1)));
  CHECK(single.all_comparable);
  CHECK(single.s_star == Scalar(Rational(1)));

  // S* prefix {T_1, S_1}: measured pair parameter at least (3/2) h = 3/2
  SstarShapes chain = sstar_shapes(2);
  ProbeConfig cfg;
  cfg.grid_per_axis = 8;
  cfg.translation_grid = 6;
  const ComparabilityScan scan =
      comparability_scan({chain.trapezoids[0], chain.squares[0]}, Scalar(Rational(1)), cfg);
  REQUIRE(scan.pairs.size() == 1);
  const Scalar pair_s = std::min(scan.pairs[0].min_s_forward, scan.pairs[0].min_s_backward);
  CHECK(pair_s.to_double() >= 1.5 - 1e-6);
}

TEST_CASE("gamma_d: stored table against the sweep oracles") {
  CHECK(cube_section_constant(1).rational() == Rational(1));
  CHECK(cube_section_constant(2).to_double() ==
        doctest::Approx(oracles::gamma2_oracle(1000000)).epsilon(1e-6));
  Rng rng(31);
  CHECK(cube_section_constant(3).to_double() ==
        doctest::Approx(oracles::gamma3_oracle(20000, rng)).epsilon(1e-4));
  CHECK_THROWS_AS(cube_section_constant(4), UnsupportedDimensionError);
  CHECK_FALSE(cube_section_provenance(2).empty());
}

TEST_CASE("verify_rel1: forced example, vacuous case, reflexive case") {
  // le_ks holds at k = s = 2 for this pair, so sqsubseteq at 16 must hold
  const Shape b1 = boxe({2, 1});
  const Shape b2 = boxe({1, 1});
  REQUIRE(le_ks(b1, b2, Scalar(Rational(2)), Scalar(Rational(2))).holds());
  CHECK(verify_rel1(b1, b2, Scalar(Rational(2)), Scalar(Rational(2))));

  const Shape b3 = boxe({8, 8});
  REQUIRE(le_ks(b3, b2, Scalar(Rational(2)), Scalar(Rational(2))).fails());
  CHECK(verify_rel1(b3, b2, Scalar(Rational(2)), Scalar(Rational(2)))); // vacuous

  CHECK(verify_rel1(usq, usq, Scalar(Rational(1)), Scalar(Rational(1))));
}

TEST_CASE("verify_rel2: forced k = 16 at d = 2, s = 1") {
  CHECK(rel2_k(1.0, 2) == doctest::Approx(16.0).epsilon(1e-12));
  const Shape big = boxe({2, 2});
  REQUIRE(sqsubseteq_s(usq, big, Scalar(Rational(1))).holds());
  CHECK(le_ks(usq, big, Scalar(16.0), Scalar(16.0)).holds());
  CHECK(verify_rel2(usq, big, Scalar(Rational(1))));
  CHECK(verify_rel2(big, usq, Scalar(Rational(1)))); // antecedent fails, vacuous
  CHECK(verify_rel2(usq, usq, Scalar(Rational(1))));
}

TEST_CASE("verify_cmp: inclusion pair, identical, precondition error") {
  CHECK(verify_cmp(usq, boxe({2, 2}), Scalar(Rational(1))));
  CHECK(verify_cmp(usq, usq, Scalar(Rational(1))));
  CHECK_THROWS_AS(verify_cmp(boxe({2, 2}), usq, Scalar(Rational(1))), PreconditionError);
}

TEST_CASE("relation property suites: no violations on seeded random boxes") {
  const std::vector<int> dims = {1, 2, 3};
  const SuiteResult rel1 = run_rel1_suite(250, dims, 12345);
  CHECK(rel1.violations == 0);
  CHECK(rel1.cases == 750);
  const SuiteResult rel2 = run_rel2_suite(250, dims, 12345);
  CHECK(rel2.violations == 0);
  const SuiteResult cmp = run_cmp_suite(150, dims, 12345);
  CHECK(cmp.violations == 0);
  CHECK(cmp.cases > 300);
}

TEST_CASE("monotonicity and transitivity of the box relations") {
  Rng rng(401);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(3));
    Rng r1 = rng.child(trial, "m1");
    Rng r2 = rng.child(trial, "m2");
    const Box a = random_box(d, r1);
    const Box b = random_box(d, r2);
    const Rational s = rng.next_dyadic(Rational(1), Rational(3), 4);
    const Rational s2 = s + rng.next_dyadic(Rational(0), Rational(2), 4);
    if (sqsubseteq_s(Shape(a), Shape(b), Scalar(s)).holds())
      CHECK(sqsubseteq_s(Shape(a), Shape(b), Scalar(s2)).holds());
    const Rational k = rng.next_dyadic(Rational(1), Rational(3), 4);
    const Rational k2 = k + rng.next_dyadic(Rational(0), Rational(2), 4);
    if (le_k(Shape(a), Shape(b), Scalar(k)).holds())
      CHECK(le_k(Shape(a), Shape(b), Scalar(k2)).holds());
  }
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(3));
    Rng r1 = rng.child(trial, "t1");
    Rng r2 = rng.child(trial, "t2");
    Rng r3 = rng.child(trial, "t3");
    const Box a = random_box(d, r1);
    const Box b = random_box(d, r2);
    const Box c = random_box(d, r3);
    if (le_k(Shape(a), Shape(b), Scalar(Rational(1))).holds() &&
        le_k(Shape(b), Shape(c), Scalar(Rational(1))).holds())
      CHECK(le_k(Shape(a), Shape(c), Scalar(Rational(1))).holds());
  }
}

TEST_CASE("combip_check: clustered family, premise-unmet guard, random suite") {
  // U: 10 disjoint unit-ish intervals near the origin
  IntervalFamily u, v;
  for (int i = 0; i < 10; ++i) u.intervals.push_back({Rational(3 * i), Rational(1)});
  v.intervals.push_back({Rational(-199, 2), Rational(1, 2)}); // [-100, -99]
  // premises: every l*J must meet every I, so l*J must reach the rightmost interval at 28
  const long l = 260;
  const CombipResult ok = combip_check(u, v, l, 4);
  CHECK(ok.conclusion_holds());
  CHECK(ok.bound == 2 * 4 * l * l);

  IntervalFamily small_u = u;
  small_u.intervals.resize(9); // s' + 5 with s' = 4
  const CombipResult unmet = combip_check(small_u, v, l, 4);
  CHECK(unmet.premise_unmet());

  IntervalFamily bad_v = v;
  bad_v.intervals.push_back({Rational(-199, 2), Rational(1, 2)}); // overlapping
  CHECK_THROWS_AS(combip_check(u, bad_v, l, 4), InvariantViolationError);

  IntervalFamily far_v;
  far_v.intervals.push_back({Rational(-1000), Rational(1, 100)});
  CHECK_THROWS_AS(combip_check(u, far_v, 2, 4), PreconditionError);

  const SuiteResult suite = run_combip_suite(250, 777);
  CHECK(suite.violations == 0);
  CHECK(suite.cases > 200);
}
