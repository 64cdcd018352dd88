#ifndef SHAPESEP_LP_HPP
#define SHAPESEP_LP_HPP

#include <vector>

#include "shapesep/errors.hpp"

namespace shapesep {

/// One linear constraint  a . x <= b.
struct Halfspace {
  std::vector<double> a;
  double b = 0.0;
};

struct LpResult {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  std::vector<double> x;
  double value = 0.0;

  bool ok() const { return status == Status::Optimal; }
};

/// Minimize c . x subject to the halfspaces and |x_i| <= bound. Seidel's
/// randomized incremental algorithm; exact enough for the dimensions used
/// here (<= 7). The box bound keeps every instance bounded; callers pick it
/// larger than any coordinate the geometry can produce.
LpResult solve_lp(std::vector<Halfspace> constraints, const std::vector<double>& objective,
                  double bound, double eps = 1e-9);

/// Minimum over x of max_i (a_i . x - b_i), i.e. how far inside (negative) or
/// outside (positive) of the intersection the best point lies. Constraints
/// are normalized to unit gradients first so the margin is a distance.
struct MarginResult {
  bool solved = false;
  double margin = 0.0;
  std::vector<double> x;
};
MarginResult feasibility_margin(std::vector<Halfspace> constraints, int dim, double bound,
                                double eps = 1e-9);

/// Chebyshev center: the deepest point of the halfspace intersection and the
/// radius of the largest inscribed ball.
struct ChebyshevResult {
  bool solved = false;
  std::vector<double> center;
  double radius = 0.0;
};
ChebyshevResult chebyshev_center(std::vector<Halfspace> constraints, int dim, double bound,
                                 double eps = 1e-9);

} // namespace shapesep

#endif
