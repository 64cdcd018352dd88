#include <doctest.h>

#include "oracles.hpp"
#include "shapesep/errors.hpp"
#include "shapesep/generators.hpp"
#include "shapesep/graph.hpp"
#include "shapesep/suites.hpp"

using namespace shapesep;

namespace {
Representation two_disjoint_squares() {
  Representation r;
  r.dimension = 2;
  r.shapes.push_back(Box({Rational(0), Rational(0)}, {Rational(1), Rational(1)}));
  r.shape_of = {0, 0};
  r.translations = {{Rational(0), Rational(0)}, {Rational(5), Rational(5)}};
  return r;
}
} // namespace

TEST_CASE("intersection graph: wedges give K_{3,3}, disjoint squares edgeless") {
  const InstanceBundle w = wedge_family(3);
  const Graph g = build_intersection_graph(w.representation);
  CHECK(g == *w.expected_graph);
  CHECK(g.m() == 9);

  const Graph empty2 = build_intersection_graph(two_disjoint_squares());
  CHECK(empty2.n() == 2);
  CHECK(empty2.m() == 0);
}

TEST_CASE("intersection graph: star-path boxes realize the strong product") {
  const InstanceBundle sp = star_path_boxes(3, 4);
  const Graph g = build_intersection_graph(sp.representation);
  CHECK(g == strong_product(star_graph(3), path_graph(4)));
  CHECK(g.n() == 16);
}

TEST_CASE("sweep graph equals the pairwise oracle on random instances") {
  for (int trial = 0; trial < 100; ++trial) {
    const InstanceBundle b =
        random_box_instance(40, 1 + trial % 3, AspectProfile::Bounded, 9000 + trial);
    const Graph sweep = build_intersection_graph(b.representation, GraphBuildMode::Auto);
    const Graph pairwise = build_intersection_graph(b.representation, GraphBuildMode::Pairwise);
    CHECK(sweep == pairwise);
  }
}

TEST_CASE("thinness: single shape, wedges, star-path boxes") {
  Representation solo;
  solo.dimension = 2;
  solo.shapes.push_back(Box({Rational(0), Rational(0)}, {Rational(1), Rational(1)}));
  solo.shape_of = {0};
  solo.translations = {{Rational(0), Rational(0)}};
  CHECK(thinness(solo).c == 1);
  CHECK(thinness(solo).status == CertStatus::Exact);

  const InstanceBundle w = wedge_family(4);
  CHECK(w.measured_thinness == 2);
  CHECK(w.thinness_status == CertStatus::SampledOnly);

  const InstanceBundle sp = star_path_boxes(3, 4);
  CHECK(sp.measured_thinness == 4);
  CHECK(sp.thinness_status == CertStatus::Exact);
}

TEST_CASE("exact thinness equals the naive cell oracle on small families") {
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + static_cast<int>(rng.next_below(3));
    const int n = 3 + static_cast<int>(rng.next_below(d == 3 ? 8 : 12));
    Representation r;
    r.dimension = d;
    std::vector<Box> boxes;
    for (int i = 0; i < n; ++i) {
      std::vector<Rational> lo(d), hi(d);
      for (int ax = 0; ax < d; ++ax) {
        lo[ax] = rng.next_dyadic(Rational(0), Rational(4), 4);
        hi[ax] = lo[ax] + rng.next_dyadic(Rational(1, 2), Rational(3), 4);
      }
      boxes.emplace_back(lo, hi);
      r.shapes.push_back(boxes.back());
      r.shape_of.push_back(i);
      r.translations.push_back(RPoint(d, Rational(0)));
    }
    const ThinnessResult t = thinness(r);
    CHECK(t.status == CertStatus::Exact);
    CHECK(t.c == oracles::naive_box_depth(boxes));
  }
}

TEST_CASE("check_tame: star-path certifies exactly, coincident squares fail with witness") {
  const InstanceBundle sp = star_path_boxes(5, 5);
  const TamenessCertificate cert = check_tame(sp.representation, 4, Scalar(Rational(1)));
  CHECK(cert.certified());
  CHECK(cert.status == CertStatus::Exact);
  CHECK(cert.measured_thinness == 4);
  CHECK(cert.measured_s_star == Scalar(Rational(1)));

  Representation triple;
  triple.dimension = 2;
  triple.shapes.push_back(Box({Rational(0), Rational(0)}, {Rational(1), Rational(1)}));
  triple.shape_of = {0, 0, 0};
  triple.translations.assign(3, {Rational(0), Rational(0)});
  const TamenessCertificate bad = check_tame(triple, 2, Scalar(Rational(1)));
  CHECK_FALSE(bad.certified());
  CHECK_FALSE(bad.thinness_ok);
  CHECK(bad.measured_thinness == 3);
  REQUIRE(bad.thinness_witness.has_value());
  // the witness point really is covered three times
  for (double x : *bad.thinness_witness) {
    CHECK(x >= -1e-9);
    CHECK(x <= 1 + 1e-9);
  }
}

TEST_CASE("check_tame: wedge family reports measured comparability") {
  const InstanceBundle w = wedge_family(3);
  ProbeConfig light;
  light.grid_per_axis = 3;
  light.max_grid_probes = 12;
  light.translation_grid = 4;
  light.refine_rounds = 10;
  const TamenessCertificate cert = check_tame(w.representation, 2, Scalar(Rational(100)), light);
  CHECK(cert.thinness_ok);
  CHECK(cert.status == CertStatus::SampledOnly);
}

TEST_CASE("boxes_dichotomy: disjoint intervals, identical boxes, random certificates") {
  std::vector<Box> intervals;
  for (int i = 0; i < 4; ++i)
    intervals.push_back(Box({Rational(3 * i)}, {Rational(3 * i + 1)}));
  const DichotomyResult disjoint = boxes_dichotomy(intervals, 2);
  CHECK(disjoint.disjoint_branch);
  CHECK(disjoint.axis == 0);
  CHECK(disjoint.indices.size() == 2);
  CHECK(verify_dichotomy(intervals, 2, disjoint));

  std::vector<Box> identical(6, Box({Rational(0), Rational(0)}, {Rational(1), Rational(1)}));
  const DichotomyResult common = boxes_dichotomy(identical, 3);
  CHECK_FALSE(common.disjoint_branch);
  CHECK(common.indices.size() == 6);
  CHECK(verify_dichotomy(identical, 3, common));

  const SuiteResult suite = run_dichotomy_suite(100, 100, 4, 321);
  CHECK(suite.violations == 0);
}

TEST_CASE("strong product: P2 x P2 = K4, K2 x K1 = K2, star-path equality") {
  CHECK(strong_product(path_graph(2), path_graph(2)) == complete_graph(4));
  CHECK(strong_product(star_graph(1), path_graph(1)) == complete_graph(2));

  const InstanceBundle sp = star_path_boxes(3, 4);
  CHECK(build_intersection_graph(sp.representation) ==
        strong_product(star_graph(3), path_graph(4)));
}

TEST_CASE("product representation: product realizes the strong product; thinness multiplies") {
  Representation path2;
  path2.dimension = 1;
  path2.shapes.push_back(Box({Rational(0)}, {Rational(1)}));
  for (int j = 0; j < 4; ++j) {
    path2.shape_of.push_back(0);
    path2.translations.push_back({Rational(9, 10) * j});
  }
  const Representation prod = product_representation(path2, path2, ProductMode::Product);
  CHECK(shape_dim(prod.shapes[0]) == 2);
  const Graph expected = strong_product(build_intersection_graph(path2),
                                        build_intersection_graph(path2));
  CHECK(build_intersection_graph(prod) == expected);
  CHECK(thinness(prod).c == thinness(path2).c * thinness(path2).c);

  // single-vertex product is one box in d1 + d2
  Representation solo;
  solo.dimension = 1;
  solo.shapes.push_back(Box({Rational(0)}, {Rational(1)}));
  solo.shape_of = {0};
  solo.translations = {{Rational(0)}};
  const Representation one = product_representation(solo, solo, ProductMode::Product);
  CHECK(one.n() == 1);
  CHECK(shape_dim(one.shapes[0]) == 2);
}

TEST_CASE("product representation: conjunction of a path with itself is the path") {
  Representation path2;
  path2.dimension = 1;
  path2.shapes.push_back(Box({Rational(0)}, {Rational(1)}));
  for (int j = 0; j < 5; ++j) {
    path2.shape_of.push_back(0);
    path2.translations.push_back({Rational(9, 10) * j});
  }
  const Representation conj = product_representation(path2, path2, ProductMode::Conjunction);
  CHECK(conj.dimension == 2);
  CHECK(conj.n() == 5);
  CHECK(build_intersection_graph(conj) == build_intersection_graph(path2));
  CHECK(thinness(conj).c == thinness(path2).c);
}

TEST_CASE("thinness is at least the largest common-point clique") {
  // three boxes stabbed by one point plus scattered others
  Representation r;
  r.dimension = 2;
  r.shapes.push_back(Box({Rational(0), Rational(0)}, {Rational(2), Rational(2)}));
  r.shape_of = {0, 0, 0, 0};
  r.translations = {{Rational(0), Rational(0)},
                    {Rational(1), Rational(1)},
                    {Rational(3, 2), Rational(3, 2)},
                    {Rational(10), Rational(10)}};
  CHECK(thinness(r).c == 3);
}
