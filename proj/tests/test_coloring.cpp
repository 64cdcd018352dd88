#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shapesep/coloring.hpp"
#include "shapesep/errors.hpp"
#include "shapesep/generators.hpp"

using namespace shapesep;

TEST_CASE("reach_set: path exclusion rule, zero radius, clique") {
  const Graph p3 = path_graph(3);
  const Ordering nat = Ordering::identity(3);
  CHECK(reach_set(p3, nat, 2, 2) == std::vector<int>{1, 2});
  CHECK(reach_set(p3, nat, 0, 2) == std::vector<int>{2});

  const Graph k4 = complete_graph(4);
  CHECK(reach_set(k4, Ordering::identity(4), 1, 3) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("reach_set equals exhaustive path enumeration on small graphs") {
  Rng rng(61);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(7));
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.next_double() < 0.35) g.add_edge(u, v);
    g.finalize();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);
    const Ordering ord = Ordering::from_order(perm);
    const int r = 1 + static_cast<int>(rng.next_below(6));
    for (int v = 0; v < n; ++v)
      CHECK(reach_set(g, ord, r, v) == oracles::reach_set_by_paths(g, ord, r, v));
  }
}

TEST_CASE("col_profile: paths, cliques, monotone in r") {
  const Graph p10 = path_graph(10);
  const ColoringProfile pp = col_profile(p10, Ordering::identity(10), 6);
  for (const auto& row : pp.rows) CHECK(row.value == 2);

  const Graph k6 = complete_graph(6);
  const ColoringProfile kp = col_profile(k6, Ordering::identity(6), 3);
  for (const auto& row : kp.rows) CHECK(row.value == 6);

  Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 5 + static_cast<int>(rng.next_below(10));
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.next_double() < 0.3) g.add_edge(u, v);
    g.finalize();
    const ColoringProfile prof = col_profile(g, Ordering::identity(n), 6);
    for (size_t i = 1; i < prof.rows.size(); ++i)
      CHECK(prof.rows[i].value >= prof.rows[i - 1].value);
  }
}

TEST_CASE("strong_coloring_number_exact: K3, P3, C5, size cap") {
  CHECK(strong_coloring_number_exact(complete_graph(3), 1).value == 3);
  for (int r = 1; r <= 4; ++r) CHECK(strong_coloring_number_exact(path_graph(3), r).value == 2);
  CHECK(strong_coloring_number_exact(cycle_graph(5), 2).value == 3);
  CHECK_THROWS_AS(strong_coloring_number_exact(path_graph(10), 2), SizeCapError);
}

TEST_CASE("exact col is a lower bound for every ordering's profile") {
  Rng rng(71);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(5)); // n <= 8
    Graph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.next_double() < 0.4) g.add_edge(u, v);
    g.finalize();
    for (int r = 1; r <= 3; ++r) {
      const ExactColResult exact = strong_coloring_number_exact(g, r);
      // the witness ordering achieves the optimum
      CHECK(col_profile(g, exact.witness, r).value_at(r) == exact.value);
      for (int o = 0; o < 4; ++o) {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.next_below(i)]);
        CHECK(exact.value <= col_profile(g, Ordering::from_order(perm), r).value_at(r));
      }
    }
  }
}

TEST_CASE("volume_ordering: sort by volume descending, ties by id, wedges") {
  Representation r;
  r.dimension = 1;
  r.shapes.push_back(Box({Rational(0)}, {Rational(4)}));
  r.shapes.push_back(Box({Rational(0)}, {Rational(1)}));
  r.shapes.push_back(Box({Rational(0)}, {Rational(2)}));
  r.shape_of = {1, 2, 0}; // volumes: v0 = 1, v1 = 2, v2 = 4
  r.translations.assign(3, {Rational(0)});
  const Ordering ord = volume_ordering(r);
  CHECK(ord.order == std::vector<int>{2, 1, 0});

  Representation ties;
  ties.dimension = 1;
  ties.shapes.push_back(Box({Rational(0)}, {Rational(1)}));
  ties.shape_of = {0, 0, 0};
  ties.translations = {{Rational(0)}, {Rational(5)}, {Rational(10)}};
  CHECK(volume_ordering(ties).order == std::vector<int>{0, 1, 2});

  // wedges dominate the thin boxes around segments
  const InstanceBundle w = wedge_family(3);
  const Ordering word = volume_ordering(w.representation);
  for (int pos = 0; pos < 3; ++pos) CHECK(word.order[pos] >= 3); // R's first
}

TEST_CASE("delta_bound: forced arithmetic, exact rationals") {
  CHECK(delta_bound(Scalar(Rational(1)), Scalar(Rational(1)), 1, Scalar(Rational(1))).rational() ==
        Rational(6));
  CHECK(delta_bound(Scalar(Rational(4)), Scalar(Rational(1)), 3, Scalar(Rational(1))).rational() ==
        Rational(5832));
  CHECK(delta_bound(Scalar(Rational(1)), Scalar(Rational(1)), 2, Scalar(Rational(2))).rational() ==
        Rational(200));
  CHECK_THROWS_AS(delta_bound(Scalar(Rational(0)), Scalar(Rational(1)), 1, Scalar(Rational(1))),
                  InvalidParameterError);
}

TEST_CASE("volume-order bound holds on star-path instances") {
  const InstanceBundle sp = star_path_boxes(4, 6);
  const Graph g = build_intersection_graph(sp.representation);
  const Ordering ord = volume_ordering(sp.representation);
  const TamenessCertificate cert = check_tame(sp.representation, 4, Scalar(Rational(1)));
  REQUIRE(cert.certified());
  const ComposedBound bound =
      compose_volume_order_bound(cert.measured_thinness, cert.measured_s_star.to_double(), 3);
  const ColoringProfile prof = col_profile(g, ord, 8);
  for (const auto& row : prof.rows) CHECK(row.value <= bound.bound(row.r));
}

TEST_CASE("verify_generalized_conditions: tame boxes pass via iota = omega = phi") {
  const InstanceBundle sp = star_path_boxes(3, 3);
  const Graph g = build_intersection_graph(sp.representation);
  const Ordering ord = volume_ordering(sp.representation);
  GeneralizedRep gr;
  gr.dimension = 3;
  for (int v = 0; v < g.n(); ++v) {
    gr.inner.push_back(sp.representation.placed(v));
    gr.outer.push_back(sp.representation.placed(v));
  }
  const ComposedBound cb = compose_volume_order_bound(4, 1, 3);
  const ConditionReport rep = verify_generalized_conditions(
      gr, g, ord, 4, Scalar(cb.k_prime), Scalar(cb.s_prime));
  CHECK(rep.containment_ok);
  CHECK(rep.thinness_ok);
  CHECK(rep.comparability_ok);
  CHECK(rep.meet_ok);
  CHECK(rep.all_ok());
  CHECK(rep.status == CertStatus::Exact);
}

TEST_CASE("verify_generalized_conditions: constructed violations are caught") {
  // two overlapping unit squares, K_2
  Representation r;
  r.dimension = 2;
  r.shapes.push_back(Box({Rational(0), Rational(0)}, {Rational(1), Rational(1)}));
  r.shape_of = {0, 0};
  r.translations = {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)}};
  const Graph g = build_intersection_graph(r);
  REQUIRE(g.m() == 1);
  const Ordering ord = Ordering::identity(2);

  GeneralizedRep gr;
  gr.dimension = 2;
  for (int v = 0; v < 2; ++v) {
    gr.inner.push_back(r.placed(v));
    gr.outer.push_back(r.placed(v));
  }
  // (a) violated: inner strictly larger than outer for vertex 0
  GeneralizedRep bad_a = gr;
  bad_a.inner[0] = PlacedShape(Box({Rational(-1), Rational(-1)}, {Rational(2), Rational(2)}),
                               {Rational(0), Rational(0)});
  const ConditionReport rep_a = verify_generalized_conditions(
      bad_a, g, ord, 2, Scalar(Rational(4)), Scalar(Rational(4)));
  CHECK_FALSE(rep_a.containment_ok);
  CHECK(rep_a.containment_witness == 0);

  // (d) violated: the edge's shapes pulled apart
  GeneralizedRep bad_d = gr;
  bad_d.inner[0] = PlacedShape(r.shapes[0], {Rational(-10), Rational(0)});
  bad_d.outer[0] = PlacedShape(r.shapes[0], {Rational(-10), Rational(0)});
  const ConditionReport rep_d = verify_generalized_conditions(
      bad_d, g, ord, 2, Scalar(Rational(4)), Scalar(Rational(4)));
  CHECK_FALSE(rep_d.meet_ok);
  REQUIRE(rep_d.meet_witness.has_value());
  CHECK(rep_d.meet_witness->first == 0);
  CHECK(rep_d.meet_witness->second == 1);
}
