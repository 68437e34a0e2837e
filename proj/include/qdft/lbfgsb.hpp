#pragma once

#include <qdft/linalg.hpp>

#include <functional>
#include <string>

namespace qdft {

/// Box-constrained limited-memory BFGS (compact representation, generalized
/// Cauchy point, primal subspace minimisation, backtracking line search).
struct LbfgsbOptions {
  int memory = 10;
  int max_iterations = 50;
  double f_tolerance = 1e-6;   ///< stop when |f_k - f_{k-1}| < f_tolerance
  double pg_tolerance = 1e-8;  ///< stop when the projected gradient inf-norm is below this
  int max_line_search = 25;
};

struct LbfgsbResult {
  Vector x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
};

/// Objective returns f(x) and writes the gradient into `g`.
using Objective = std::function<double(const Vector& x, Vector& g)>;
/// Called with each accepted iterate (iteration 0 is the start point).
using IterateCallback = std::function<void(int iteration, const Vector& x, double f)>;

LbfgsbResult lbfgsb_minimize(const Objective& objective, Vector x0, const Vector& lower, const Vector& upper,
                             const LbfgsbOptions& options = {}, const IterateCallback& on_iterate = {});

/// Inf-norm of P(x - g) - x, the first-order optimality measure on a box.
double projected_gradient_norm(const Vector& x, const Vector& g, const Vector& lower, const Vector& upper);

}  // namespace qdft
