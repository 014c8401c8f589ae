#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace extremal::nlp {

/// Smooth (or piecewise smooth) problem
///   minimize f(x)  subject to  c_i(x) = 0 (i < n_eq),  c_i(x) <= 0 (i >= n_eq).
struct Problem {
  std::size_t dim = 0;
  std::size_t n_eq = 0;
  std::size_t n_ineq = 0;
  /// Returns f(x) and writes its gradient.
  std::function<double(std::span<const double> x, std::span<double> grad)> objective;
  /// Writes all constraint values and the dense row-major Jacobian
  /// ((n_eq + n_ineq) x dim).
  std::function<void(std::span<const double> x, std::span<double> values, std::span<double> jacobian)> constraints;
};

struct Options {
  int outer_rounds = 14;
  double initial_penalty = 10.0;
  double penalty_growth = 10.0;
  double max_penalty = 1e9;
  int inner_iterations = 2000;
  double gradient_tol = 1e-11;
  double feasibility_tol = 1e-12;
};

struct Result {
  std::vector<double> x;
  double objective = 0.0;
  double max_violation = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Augmented Lagrangian with a quadratic penalty and multiplier updates;
/// each subproblem is solved by BFGS with a backtracking Armijo search.
Result minimize(const Problem& problem, std::vector<double> x0, const Options& options = {});

/// Central finite-difference gradient, used to check analytic gradients.
std::vector<double> numeric_gradient(const std::function<double(std::span<const double>)>& f,
                                     std::span<const double> x, double rel_step = 1e-6);

}  // namespace extremal::nlp
