#include "extremal/augmented_lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace extremal::nlp {

namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

class Lagrangian {
 public:
  Lagrangian(const Problem& p, std::vector<double>& lambda, double& mu)
      : p_(p), lambda_(lambda), mu_(mu), nc_(p.n_eq + p.n_ineq),
        c_(nc_), jac_(nc_ * p.dim), fgrad_(p.dim) {}

  double operator()(std::span<const double> x, std::span<double> grad) {
    const std::size_t dim = p_.dim;
    double value = p_.objective(x, fgrad_);
    std::copy(fgrad_.begin(), fgrad_.end(), grad.begin());
    if (nc_ == 0) return value;
    p_.constraints(x, c_, jac_);
    for (std::size_t i = 0; i < nc_; ++i) {
      double weight;
      if (i < p_.n_eq) {
        value += lambda_[i] * c_[i] + 0.5 * mu_ * c_[i] * c_[i];
        weight = lambda_[i] + mu_ * c_[i];
      } else {
        const double t = std::max(0.0, c_[i] + lambda_[i] / mu_);
        value += 0.5 * mu_ * t * t - 0.5 * lambda_[i] * lambda_[i] / mu_;
        weight = mu_ * t;
      }
      if (weight == 0.0) continue;
      const double* row = &jac_[i * dim];
      for (std::size_t k = 0; k < dim; ++k) grad[k] += weight * row[k];
    }
    return value;
  }

  // Multiplier update; returns the max violation at x.
  double update(std::span<const double> x) {
    const double viol = violation(x);
    for (std::size_t i = 0; i < nc_; ++i) {
      if (i < p_.n_eq) {
        lambda_[i] += mu_ * c_[i];
      } else {
        lambda_[i] = std::max(0.0, lambda_[i] + mu_ * c_[i]);
      }
    }
    return viol;
  }

  double violation(std::span<const double> x) {
    if (nc_ == 0) return 0.0;
    p_.constraints(x, c_, jac_);
    double v = 0.0;
    for (std::size_t i = 0; i < nc_; ++i) v = std::max(v, i < p_.n_eq ? std::abs(c_[i]) : std::max(0.0, c_[i]));
    return v;
  }

 private:
  const Problem& p_;
  std::vector<double>& lambda_;
  double& mu_;
  std::size_t nc_;
  std::vector<double> c_;
  std::vector<double> jac_;
  std::vector<double> fgrad_;
};

struct InnerResult {
  int iterations = 0;
  bool stationary = false;
};

// BFGS on the inverse Hessian with an Armijo backtracking line search.
template <class F>
InnerResult bfgs(F& f, std::vector<double>& x, int max_iterations, double gradient_tol) {
  const std::size_t n = x.size();
  std::vector<double> h(n * n, 0.0);
  auto reset = [&] {
    std::fill(h.begin(), h.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) h[i * n + i] = 1.0;
  };
  reset();
  std::vector<double> g(n), g_new(n), d(n), x_new(n), s(n), y(n), hy(n);
  double fx = f(x, g);
  bool scaled = false;
  int stall = 0;
  InnerResult out;
  for (; out.iterations < max_iterations; ++out.iterations) {
    if (inf_norm(g) < gradient_tol) {
      out.stationary = true;
      break;
    }
    double slope = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc -= h[i * n + j] * g[j];
      d[i] = acc;
      slope += acc * g[i];
    }
    if (!(slope < 0.0)) {
      reset();
      scaled = false;
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    }
    double alpha = 1.0;
    double f_new = fx;
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + alpha * d[i];
      f_new = f(x_new, g_new);
      if (std::isfinite(f_new) && f_new <= fx + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (scaled) {
        reset();
        scaled = false;
        continue;
      }
      break;
    }
    double sy = 0.0, yy = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - x[i];
      y[i] = g_new[i] - g[i];
      sy += s[i] * y[i];
      yy += y[i] * y[i];
      ss += s[i] * s[i];
    }
    const double decrease = fx - f_new;
    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;
    if (decrease <= 1e-16 * (1.0 + std::abs(fx))) {
      if (++stall >= 8) break;
    } else {
      stall = 0;
    }
    if (sy <= 1e-14 * std::sqrt(ss * yy)) continue;
    if (!scaled) {
      const double gamma = sy / yy;
      for (auto& v : h) v *= gamma;
      scaled = true;
    }
    // H+ = (I - r s y^T) H (I - r y s^T) + r s s^T, r = 1 / (s^T y)
    const double r = 1.0 / sy;
    double yhy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += h[i * n + j] * y[j];
      hy[i] = acc;
      yhy += y[i] * acc;
    }
    const double coef = (1.0 + r * yhy) * r;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        h[i * n + j] += coef * s[i] * s[j] - r * (hy[i] * s[j] + s[i] * hy[j]);
      }
    }
  }
  if (inf_norm(g) < gradient_tol) out.stationary = true;
  return out;
}

}  // namespace

Result minimize(const Problem& problem, std::vector<double> x0, const Options& options) {
  if (x0.size() != problem.dim) throw std::invalid_argument("starting point has the wrong dimension");
  const std::size_t nc = problem.n_eq + problem.n_ineq;
  std::vector<double> lambda(nc, 0.0);
  double mu = options.initial_penalty;
  Lagrangian lag(problem, lambda, mu);

  Result out;
  out.x = std::move(x0);
  double prev_violation = std::numeric_limits<double>::infinity();
  bool stationary = false;
  double step = std::numeric_limits<double>::infinity();
  for (int round = 0; round < options.outer_rounds; ++round) {
    const std::vector<double> before = out.x;
    const InnerResult inner = bfgs(lag, out.x, options.inner_iterations, options.gradient_tol);
    out.iterations += inner.iterations;
    stationary = inner.stationary;
    const double viol = lag.update(out.x);
    step = 0.0;
    for (std::size_t i = 0; i < before.size(); ++i) step = std::max(step, std::abs(out.x[i] - before[i]));
    if (nc == 0) break;
    if (viol <= options.feasibility_tol && round >= 1 && step < 1e-12) break;
    if (viol > 0.25 * prev_violation) mu = std::min(mu * options.penalty_growth, options.max_penalty);
    prev_violation = viol;
  }
  std::vector<double> grad(problem.dim);
  out.objective = problem.objective(out.x, grad);
  out.max_violation = lag.violation(out.x);
  // Converged: feasible, and either the last subproblem reached a stationary
  // point or the outer iterates stopped moving.
  out.converged = out.max_violation <= 1e-9 && (stationary || step < 1e-9);
  return out;
}

std::vector<double> numeric_gradient(const std::function<double(std::span<const double>)>& f,
                                     std::span<const double> x, double rel_step) {
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double h = rel_step * std::max(1.0, std::abs(x[i]));
    const double orig = xs[i];
    xs[i] = orig + h;
    const double fp = f(xs);
    xs[i] = orig - h;
    const double fm = f(xs);
    xs[i] = orig;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

}  // namespace extremal::nlp
