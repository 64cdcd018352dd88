#ifndef SHAPESEP_SUITES_HPP
#define SHAPESEP_SUITES_HPP

#include <string>
#include <vector>

#include "shapesep/relations.hpp"

namespace shapesep {

struct SuiteResult {
  std::string name;
  long cases = 0;
  long violations = 0;
  long skipped = 0;

  bool clean() const { return violations == 0; }
};

/// Seeded random box with dyadic extents in [1/4, 4] (anchored at the origin;
/// the comparability relations are translation invariant).
Box random_box(int d, Rng& rng);

/// Premise-satisfying interval family pair for the combinatorial lemma:
/// |U| >= s'+6 disjoint intervals, V intervals short enough and long enough
/// that every l-scaled copy of a V interval meets every U interval.
struct CombipCase {
  IntervalFamily u, v;
  long l = 1;
  long s_prime = 1;
};
CombipCase random_combip_case(Rng& rng);

SuiteResult run_rel1_suite(int pairs_per_dim, const std::vector<int>& dims, uint64_t seed);
SuiteResult run_rel2_suite(int pairs_per_dim, const std::vector<int>& dims, uint64_t seed);
SuiteResult run_cmp_suite(int pairs_per_dim, const std::vector<int>& dims, uint64_t seed);

/// Random box families through boxes_dichotomy with exact certificate
/// verification.
SuiteResult run_dichotomy_suite(int families, int max_n, int max_k, uint64_t seed);

/// Random premise-satisfying interval families through combip_check.
SuiteResult run_combip_suite(int cases, uint64_t seed);

} // namespace shapesep

#endif
