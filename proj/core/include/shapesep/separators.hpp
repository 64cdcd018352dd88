#ifndef SHAPESEP_SEPARATORS_HPP
#define SHAPESEP_SEPARATORS_HPP

#include <string>
#include <vector>

#include "shapesep/coloring.hpp"
#include "shapesep/graph.hpp"

namespace shapesep {

struct SeparatorResult {
  std::vector<int> separator;
  std::vector<int> component_sizes; // components of G - X, in discovery order
  int n = 0;
  bool balanced = false; // every component at most (2/3) n, checked as 3*size <= 2n
  std::string method;

  int size() const { return static_cast<int>(separator.size()); }
  double balance_ratio() const;
};

/// Exact component decomposition of G - X with the balance verdict.
SeparatorResult is_balanced_separator(const Graph& g, const std::vector<int>& x);

/// Minimum-cardinality balanced separator by subset enumeration, smallest
/// sets first, ties to the lexicographically least vertex set. Capped.
SeparatorResult exact_min_balanced_separator(const Graph& g, int cap = 16);

/// BFS layering heuristic: tries single layers and layer pairs as cuts,
/// recursing on the largest piece; falls back to greedy max-degree removal
/// when layering degenerates (cliques).
SeparatorResult bfs_layer_separator(const Graph& g, const std::vector<int>& starts = {});

/// Ball growing along an ordering: from the least unprocessed vertex of the
/// biggest piece, grow a BFS ball and cut at a layer that is small relative
/// to the ball (target fraction 1/r), repeating until balanced.
SeparatorResult ordering_separator(const Graph& g, const Ordering& ord, int r);

struct ScalingFit {
  std::string family;
  std::string method;
  int dimension = 2;
  std::vector<long> sizes;           // n per rung
  std::vector<long> separator_sizes; // measured |X| per rung
  double exponent_fit = 0;           // least-squares slope of log|X| vs log n
  double coeff_fit = 0;              // exp(intercept)
  double exponent_target = 0;        // 1 - 1/(2d+4)
  bool conclusive = false;           // >= 4 sizes spanning at least a decade
};

/// Least-squares log-log fit of separator size against instance size.
ScalingFit fit_scaling(const std::string& family, const std::string& method, int dimension,
                       const std::vector<long>& sizes, const std::vector<long>& separator_sizes);

/// 1 - 1/(2d+4).
double separator_exponent_target(int d);

} // namespace shapesep

#endif
