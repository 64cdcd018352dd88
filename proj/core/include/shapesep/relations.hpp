#ifndef SHAPESEP_RELATIONS_HPP
#define SHAPESEP_RELATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "shapesep/geometry.hpp"

namespace shapesep {

/// Verdict of a (possibly sampling-backed) relation query. Box-backend
/// queries never return Unknown; polytope-backend queries return Unknown
/// only when the sampled search was inconclusive within its budget.
struct TriBool {
  enum class Verdict { Holds, Fails, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::optional<Point> witness; // failing probe point, when available
  std::string note;

  bool holds() const { return verdict == Verdict::Holds; }
  bool fails() const { return verdict == Verdict::Fails; }
  bool unknown() const { return verdict == Verdict::Unknown; }

  static TriBool yes() { return {Verdict::Holds, std::nullopt, {}}; }
  static TriBool no(std::optional<Point> w = std::nullopt, std::string n = {}) {
    return {Verdict::Fails, std::move(w), std::move(n)};
  }
  static TriBool maybe(std::string n = {}) { return {Verdict::Unknown, std::nullopt, std::move(n)}; }
};

/// Search budget for the polytope backend. The defaults implement the probe
/// strategy of the design notes: probe points are the vertices of the outer
/// shape plus a 16^d interior grid (grid pitch 1/8 of the smallest extent).
struct ProbeConfig {
  int grid_per_axis = 16;
  int max_grid_probes = 0;   // 0 = no cap; callers on a budget may cap
  int translation_grid = 5;  // initial per-axis grid for the overlap search
  int refine_rounds = 20;
};

// ---- the comparability relations ----------------------------------------

/// B1 <=_k B2: some translation of B1 is a subset of kB2.
TriBool le_k(const Shape& b1, const Shape& b2, const Scalar& k,
             const ProbeConfig& cfg = ProbeConfig());

/// B1 <=_{k,s} B2: every point x of kB2 admits translations B1' of B1 and
/// B1'' of sB1 with x in B1'' and B1' contained in B1'' ∩ kB2.
TriBool le_ks(const Shape& b1, const Shape& b2, const Scalar& k, const Scalar& s,
              const ProbeConfig& cfg = ProbeConfig());

/// B1 ⊑_s B2: every point x of B2 lies in a translation B1' of B1 with
/// vol(B1' ∩ B2) >= vol(B1)/s.
TriBool sqsubseteq_s(const Shape& b1, const Shape& b2, const Scalar& s,
                     const ProbeConfig& cfg = ProbeConfig());

/// Minimal s with B1 ⊑_s B2, clamped from below at 1. Exact for box pairs;
/// an upper estimate (best-found overlaps) on the float backend.
Scalar min_sqsubseteq_parameter(const Shape& b1, const Shape& b2,
                                const ProbeConfig& cfg = ProbeConfig());

struct ComparabilityReport {
  int i = 0, j = 0;
  std::string relation = "sqsubseteq_s";
  Scalar s = Scalar(1);
  enum class Direction { Forward, Backward, Both, Neither } direction = Direction::Neither;
  Scalar min_s_forward = Scalar(1);  // minimal s for shape_i ⊑ shape_j
  Scalar min_s_backward = Scalar(1); // minimal s for shape_j ⊑ shape_i
  bool exact = true;
  std::optional<Point> witness;
};

struct ComparabilityScan {
  std::vector<ComparabilityReport> pairs;
  Scalar s_star = Scalar(1); // minimal s making every pair comparable, or infinity
  bool exact = true;
  bool all_comparable = true;
};

/// Pairwise ⊑_s comparability over a shape family, with the minimal
/// witnessing parameter s*.
ComparabilityScan comparability_scan(const std::vector<Shape>& shapes, const Scalar& s,
                                     const ProbeConfig& cfg = ProbeConfig());

/// gamma_d: maximum (d-1)-volume of a hyperplane section of the unit cube,
/// from a stored table (d <= 3) with recorded oracle provenance.
Scalar cube_section_constant(int d);
std::string cube_section_provenance(int d);

/// k = s * d^(d+3/2) * gamma_d.
double rel2_k(double s, int d);

// ---- executable lemma verifiers -------------------------------------------

/// (B1 <=_{k,s} B2) implies (B1 ⊑_{max(k,s)^d} B2); true when the implication
/// is confirmed on this pair (vacuous on a failed antecedent).
bool verify_rel1(const Shape& b1, const Shape& b2, const Scalar& k, const Scalar& s,
                 const ProbeConfig& cfg = ProbeConfig());

/// (B1 ⊑_s B2) implies (B1 <=_{k,k} B2) with k = s d^(d+3/2) gamma_d.
bool verify_rel2(const Shape& b1, const Shape& b2, const Scalar& s,
                 const ProbeConfig& cfg = ProbeConfig());

/// Under vol(B1) <= vol(B2) and ⊑_s-comparability, B1 ⊑_{s'} B2 with
/// s' = max(s, k^d).
bool verify_cmp(const Shape& b1, const Shape& b2, const Scalar& s,
                const ProbeConfig& cfg = ProbeConfig());

/// Count of Unknown sub-verdicts treated as vacuous-true by the verifiers
/// since process start (monotone; the harness reports it).
long relations_unknown_count();

// ---- interval families (the combinatorial lemma) ---------------------------

/// Closed intervals [a - b, a + b] with positive half-lengths.
struct IntervalFamily {
  struct Interval {
    Rational center;
    Rational half_length;
    Rational lo() const { return center - half_length; }
    Rational hi() const { return center + half_length; }
    Rational length() const { return 2 * half_length; }
  };
  std::vector<Interval> intervals;

  void validate() const; // positive lengths, pairwise disjoint
};

struct CombipResult {
  enum class Status { ConclusionHolds, ConclusionFails, PremiseUnmet } status;
  long bound = 0; // 2 s' l^2
  std::string detail;

  bool conclusion_holds() const { return status == Status::ConclusionHolds; }
  bool premise_unmet() const { return status == Status::PremiseUnmet; }
};

/// Checks |V| <= 2 s' l^2 under the interval-family premises (families
/// pairwise disjoint; I ∩ (l*J) nonempty and |J| <= s'|I| for all I in U,
/// J in V, with l*J scaled about J's center). Premise violations raise
/// PreconditionError naming the offending pair; |U| < s'+6 yields
/// PremiseUnmet.
CombipResult combip_check(const IntervalFamily& u, const IntervalFamily& v, long l, long s_prime);

} // namespace shapesep

#endif
