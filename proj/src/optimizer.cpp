#include "extremal/optimizer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <thread>

#include "extremal/augmented_lagrangian.hpp"
#include "extremal/bounds.hpp"
#include "extremal/errors.hpp"
#include "extremal/random.hpp"

namespace extremal::optimizer {

namespace {

using std::numbers::pi;

Point unit(double a) { return {std::cos(a), std::sin(a)}; }
Point perp_unit(double a) { return {-std::sin(a), std::cos(a)}; }

// Maps the search vector to polygon vertices in counterclockwise boundary
// order. jac is (2 * vertices) x dim, row 2k for x_k and 2k+1 for y_k.
struct Layout {
  std::size_t vertices = 0;
  std::size_t dim = 0;
  std::size_t n_eq = 0;
  std::size_t n_ineq = 0;
  bool identity = false;
  bool convexity_rows = true;
  // Last variable is a height cap tau rather than a length scale; see
  // Model::objective.
  bool height_cap = false;
  std::vector<std::pair<std::size_t, std::size_t>> distance_pairs;
  std::function<void(std::span<const double>, std::vector<Point>&, std::vector<double>&)> map;
  // Layout-owned constraints (equalities first); jacobian rows have `stride`
  // columns, of which the first dim belong to the layout.
  std::function<void(std::span<const double>, std::span<double>, std::span<double>, std::size_t)> own;
  std::function<std::vector<double>(Rng&)> start;
  std::function<std::vector<Point>(std::span<const double>)> finalize;
};

struct VertexGrad {
  std::size_t vertex;
  Point g;
};

// Distance from vertex j to the line through edge (i, i+1), with gradient.
double edge_height(const std::vector<Point>& v, std::size_t i, std::size_t j, std::array<VertexGrad, 3>& out) {
  const std::size_t n = v.size();
  const std::size_t ib = (i + 1) % n;
  const Point a = v[i];
  const Point e = v[ib] - a;
  const Point q = v[j] - a;
  const double len = norm(e);
  const double g = cross(e, q);
  const Point dg_dp{-e.y, e.x};
  const Point dg_db{q.y, -q.x};
  const Point dg_da = -1.0 * (dg_db + dg_dp);
  const Point dl_db = (1.0 / len) * e;
  const double h = g / len;
  const double r = g / (len * len);
  out[0] = {i, (1.0 / len) * dg_da + r * dl_db};
  out[1] = {ib, (1.0 / len) * dg_db - r * dl_db};
  out[2] = {j, (1.0 / len) * dg_dp};
  return h;
}

double max_edge_height(const std::vector<Point>& v, std::size_t i, std::array<VertexGrad, 3>& out) {
  const std::size_t n = v.size();
  double best = -std::numeric_limits<double>::infinity();
  std::array<VertexGrad, 3> tmp;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i || j == (i + 1) % n) continue;
    const double h = edge_height(v, i, j, tmp);
    if (h > best) {
      best = h;
      out = tmp;
    }
  }
  return best;
}

class Model {
 public:
  Model(const Layout& layout, const OptimizationProblem& problem)
      : l_(layout), p_(problem), epi_(problem.objective == Objective::MaximizeWidth),
        dim_(layout.dim + (epi_ ? 1 : 0)), pts_(layout.vertices), jac_(2 * layout.vertices * layout.dim),
        vgrad_(layout.vertices) {}

  std::size_t dim() const { return dim_; }

  std::size_t constraint_rows() const {
    const std::size_t n = l_.vertices;
    std::size_t rows = 0;
    switch (p_.constraint) {
      case ConstraintKind::DiameterAtMost: rows = l_.distance_pairs.size(); break;
      case ConstraintKind::PerimeterAtMost: rows = 1; break;
      case ConstraintKind::WidthAtLeast: rows = n - 2; break;
    }
    if (l_.convexity_rows) rows += n;
    if (epi_) rows += n;
    return rows;
  }

  nlp::Problem problem() {
    nlp::Problem out;
    out.dim = dim_;
    out.n_eq = l_.n_eq;
    out.n_ineq = l_.n_ineq + constraint_rows();
    out.objective = [this](std::span<const double> x, std::span<double> g) { return objective(x, g); };
    out.constraints = [this](std::span<const double> x, std::span<double> c, std::span<double> j) {
      constraints(x, c, j);
    };
    return out;
  }

  std::vector<double> initial(Rng& rng) {
    std::vector<double> x = l_.start(rng);
    if (epi_) {
      std::vector<double> j(2 * l_.vertices * l_.dim);
      l_.map(x, pts_, j);
      double w = std::numeric_limits<double>::infinity();
      std::array<VertexGrad, 3> tmp;
      for (std::size_t i = 0; i < l_.vertices; ++i) w = std::min(w, max_edge_height(pts_, i, tmp));
      x.push_back(w);
    }
    return x;
  }

 private:
  void eval_map(std::span<const double> x) { l_.map(x.first(l_.dim), pts_, jac_); }

  // Pulls a sparse vertex gradient back to the search vector.
  void pull_back(std::span<const VertexGrad> grads, std::span<double> row) const {
    for (const auto& vg : grads) {
      if (l_.identity) {
        row[2 * vg.vertex] += vg.g.x;
        row[2 * vg.vertex + 1] += vg.g.y;
        continue;
      }
      const double* jx = &jac_[2 * vg.vertex * l_.dim];
      const double* jy = jx + l_.dim;
      for (std::size_t k = 0; k < l_.dim; ++k) row[k] += vg.g.x * jx[k] + vg.g.y * jy[k];
    }
  }

  double objective(std::span<const double> x, std::span<double> grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    if (epi_) {
      grad[dim_ - 1] = -1.0;
      return -x[dim_ - 1];
    }
    eval_map(x);
    const std::size_t n = pts_.size();
    double value = 0.0;
    if (p_.objective == Objective::MaximizeArea) {
      for (std::size_t i = 0; i < n; ++i) {
        const Point a = pts_[(i + n - 1) % n];
        const Point c = pts_[(i + 1) % n];
        value += cross(pts_[i], c);
        vgrad_[i] = {i, {-0.5 * (c.y - a.y), -0.5 * (a.x - c.x)}};
      }
      value *= -0.5;
    } else {
      for (std::size_t i = 0; i < n; ++i) vgrad_[i] = {i, {0.0, 0.0}};
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ib = (i + 1) % n;
        const Point e = pts_[ib] - pts_[i];
        const double len = norm(e);
        value -= len;
        vgrad_[ib].g = vgrad_[ib].g - (1.0 / len) * e;
        vgrad_[i].g = vgrad_[i].g + (1.0 / len) * e;
      }
    }
    pull_back(vgrad_, grad);
    if (!l_.height_cap) return value;
    // Scale-free ratio f / tau^k with k the degree of f: minimize
    // -log f + k log tau. Logs keep the penalized subproblem bounded below.
    const double f = -value;
    const double tau = x[l_.dim - 1];
    if (!(f > 0.0) || !(tau > 0.0)) return std::numeric_limits<double>::infinity();
    const double k = p_.objective == Objective::MaximizeArea ? 2.0 : 1.0;
    for (auto& g : grad) g /= f;
    grad[l_.dim - 1] += k / tau;
    return -std::log(f) + k * std::log(tau);
  }

  void constraints(std::span<const double> x, std::span<double> c, std::span<double> jac) {
    std::fill(jac.begin(), jac.end(), 0.0);
    eval_map(x);
    const std::size_t n = pts_.size();
    std::size_t r = 0;
    if (l_.own) {
      l_.own(x.first(l_.dim), c.first(l_.n_eq + l_.n_ineq), jac.first((l_.n_eq + l_.n_ineq) * dim_), dim_);
      r = l_.n_eq + l_.n_ineq;
    }
    auto row = [&](std::size_t i) { return jac.subspan(i * dim_, dim_); };
    std::array<VertexGrad, 3> hg;

    switch (p_.constraint) {
      case ConstraintKind::DiameterAtMost:
        for (const auto& [i, j] : l_.distance_pairs) {
          const Point d = pts_[i] - pts_[j];
          c[r] = dot(d, d) - 1.0;
          const std::array<VertexGrad, 2> g{VertexGrad{i, 2.0 * d}, VertexGrad{j, -2.0 * d}};
          pull_back(g, row(r));
          ++r;
        }
        break;
      case ConstraintKind::PerimeterAtMost: {
        double per = 0.0;
        for (std::size_t i = 0; i < n; ++i) vgrad_[i] = {i, {0.0, 0.0}};
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t ib = (i + 1) % n;
          const Point e = pts_[ib] - pts_[i];
          const double len = norm(e);
          per += len;
          vgrad_[ib].g = vgrad_[ib].g + (1.0 / len) * e;
          vgrad_[i].g = vgrad_[i].g - (1.0 / len) * e;
        }
        c[r] = per - 1.0;
        pull_back(vgrad_, row(r));
        ++r;
        break;
      }
      case ConstraintKind::WidthAtLeast:
        // Caps the heights over edge 0 by tau. The equilateral layout is
        // cyclically symmetric, so max f / h_0^k over it equals max f / w^k.
        for (std::size_t j = 2; j < n; ++j) {
          c[r] = edge_height(pts_, 0, j, hg) - x[l_.dim - 1];
          pull_back(hg, row(r));
          row(r)[l_.dim - 1] -= 1.0;
          ++r;
        }
        break;
    }
    if (l_.convexity_rows) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ia = (i + n - 1) % n;
        const std::size_t ic = (i + 1) % n;
        const Point u = pts_[i] - pts_[ia];
        const Point w = pts_[ic] - pts_[i];
        c[r] = -cross(u, w);
        const std::array<VertexGrad, 3> g{VertexGrad{ia, {w.y, -w.x}},
                                          VertexGrad{i, {-w.y - u.y, w.x + u.x}},
                                          VertexGrad{ic, {u.y, -u.x}}};
        pull_back(g, row(r));
        ++r;
      }
    }
    if (epi_) {
      for (std::size_t i = 0; i < n; ++i) {
        c[r] = x[dim_ - 1] - max_edge_height(pts_, i, hg);
        for (auto& g : hg) g.g = -1.0 * g.g;
        auto rr = row(r);
        pull_back(hg, rr);
        rr[dim_ - 1] = 1.0;
        ++r;
      }
    }
  }

  const Layout& l_;
  const OptimizationProblem& p_;
  bool epi_;
  std::size_t dim_;
  std::vector<Point> pts_;
  std::vector<double> jac_;
  std::vector<VertexGrad> vgrad_;
};

std::vector<std::pair<std::size_t, std::size_t>> all_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

double normalizer(const ConvexPolygon& p, ConstraintKind kind) {
  const Metrics m = metrics(p);
  switch (kind) {
    case ConstraintKind::DiameterAtMost: return m.diameter;
    case ConstraintKind::PerimeterAtMost: return m.perimeter;
    case ConstraintKind::WidthAtLeast: return m.width;
  }
  return 1.0;
}

// Random convex start: points on a circle with spread-out angles, or a
// uniformly random convex polygon, alternating.
std::vector<Point> random_start(std::size_t n, Rng& rng, bool circle) {
  if (!circle) return random_convex_vertices(n, rng);
  std::vector<double> ang(n);
  for (int attempt = 0;; ++attempt) {
    for (auto& a : ang) a = rng.uniform(0.0, 2.0 * pi);
    std::sort(ang.begin(), ang.end());
    double gap = ang.front() + 2.0 * pi - ang.back();
    for (std::size_t i = 1; i < n; ++i) gap = std::min(gap, ang[i] - ang[i - 1]);
    if (gap > 0.25 * 2.0 * pi / static_cast<double>(n) || attempt > 200) break;
  }
  std::vector<Point> pts;
  for (double a : ang) pts.push_back(0.5 * unit(a));
  return pts;
}

Layout general_layout(const OptimizationProblem& problem) {
  const std::size_t n = static_cast<std::size_t>(problem.n);
  Layout l;
  l.vertices = n;
  l.dim = 2 * n;
  l.identity = true;
  l.distance_pairs = all_pairs(n);
  l.map = [n](std::span<const double> x, std::vector<Point>& v, std::vector<double>&) {
    for (std::size_t i = 0; i < n; ++i) v[i] = {x[2 * i], x[2 * i + 1]};
  };
  const ConstraintKind kind = problem.constraint;
  l.start = [n, kind](Rng& rng) {
    const bool circle = rng.uniform() < 0.5;
    ConvexPolygon p(random_start(n, rng, circle));
    p = scaled(p, 1.0 / normalizer(p, kind));
    std::vector<double> x;
    for (const auto& v : p.vertices()) {
      x.push_back(v.x);
      x.push_back(v.y);
    }
    return x;
  };
  l.finalize = [n](std::span<const double> x) {
    std::vector<Point> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = {x[2 * i], x[2 * i + 1]};
    return v;
  };
  return l;
}

// Solves the k x k system a y = b in place (k <= 3), partial pivoting.
bool solve_small(std::array<std::array<double, 3>, 3> a, std::array<double, 3>& b, std::size_t k) {
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-300) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < k; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t col = k; col-- > 0;) {
    for (std::size_t c = col + 1; c < k; ++c) b[col] -= a[col][c] * b[c];
    b[col] /= a[col][col];
  }
  return true;
}

// Equilateral n-gon from turning angles t_0..t_{n-1} (sum 2 pi), side s.
std::vector<Point> equilateral_vertices(const std::vector<double>& t, double s) {
  const std::size_t n = t.size();
  std::vector<Point> v(n);
  double phi = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    v[k] = v[k - 1] + s * unit(phi);
    phi += t[k - 1];
  }
  return v;
}

// Clamps near-zero turning angles to straight angles and restores closure
// and total turning 2 pi by minimum-norm Newton steps on the others.
std::vector<double> polish_turning(std::vector<double> t) {
  const std::size_t n = t.size();
  std::vector<bool> fixed(n);
  for (std::size_t k = 0; k < n; ++k) {
    fixed[k] = t[k] < 1e-8;
    if (fixed[k]) t[k] = 0.0;
  }
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<double> phi(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) phi[i] = phi[i - 1] + t[i - 1];
    Point close{0.0, 0.0};
    for (double a : phi) close = close + unit(a);
    const double total = std::accumulate(t.begin(), t.end(), 0.0) - 2.0 * pi;
    std::array<double, 3> res{close.x, close.y, total};
    if (std::max({std::abs(res[0]), std::abs(res[1]), std::abs(res[2])}) < 1e-15) break;
    // Row r of the Jacobian restricted to free angles.
    std::vector<std::array<double, 3>> cols;
    std::vector<std::size_t> idx;
    std::vector<Point> suffix(n + 1, Point{0.0, 0.0});
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + perp_unit(phi[i]);
    for (std::size_t k = 0; k < n; ++k) {
      if (fixed[k]) continue;
      const Point d = suffix[k + 1];
      cols.push_back({d.x, d.y, 1.0});
      idx.push_back(k);
    }
    if (cols.size() < 3) break;
    std::array<std::array<double, 3>, 3> jj{};
    for (const auto& c : cols) {
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) jj[a][b] += c[a] * c[b];
      }
    }
    std::array<double, 3> y = res;
    if (!solve_small(jj, y, 3)) break;
    for (std::size_t q = 0; q < cols.size(); ++q) {
      t[idx[q]] -= cols[q][0] * y[0] + cols[q][1] * y[1] + cols[q][2] * y[2];
    }
  }
  return t;
}

Layout equilateral_layout(const OptimizationProblem& problem) {
  const std::size_t n = static_cast<std::size_t>(problem.n);
  Layout l;
  l.vertices = n;
  l.dim = n;  // t_0..t_{n-2}, s
  l.n_eq = 2;
  l.n_ineq = n;
  l.convexity_rows = false;
  l.distance_pairs = all_pairs(n);
  // Under a width bound the side is fixed to 1 and x[n-1] is the height cap.
  const bool cap = problem.constraint == ConstraintKind::WidthAtLeast;
  l.height_cap = cap;
  l.map = [n, cap](std::span<const double> x, std::vector<Point>& v, std::vector<double>& jac) {
    const double s = cap ? 1.0 : x[n - 1];
    std::vector<double> phi(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) phi[i] = phi[i - 1] + x[i - 1];
    // prefix[k] = sum_{i<k} u(phi_i), pprefix[k] = sum_{i<k} perp(phi_i)
    std::vector<Point> prefix(n + 1), pprefix(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      prefix[i + 1] = prefix[i] + unit(phi[i]);
      pprefix[i + 1] = pprefix[i] + perp_unit(phi[i]);
    }
    std::fill(jac.begin(), jac.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      v[k] = s * prefix[k];
      double* jx = &jac[2 * k * n];
      double* jy = jx + n;
      jx[n - 1] = cap ? 0.0 : prefix[k].x;
      jy[n - 1] = cap ? 0.0 : prefix[k].y;
      for (std::size_t j = 0; j + 1 < k && j + 1 < n; ++j) {
        const Point d = s * (pprefix[k] - pprefix[j + 1]);
        jx[j] = d.x;
        jy[j] = d.y;
      }
    }
  };
  l.own = [n](std::span<const double> x, std::span<double> c, std::span<double> jac, std::size_t stride) {
    std::vector<double> phi(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) phi[i] = phi[i - 1] + x[i - 1];
    Point close{0.0, 0.0};
    std::vector<Point> suffix(n + 1);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + perp_unit(phi[i]);
    for (double a : phi) close = close + unit(a);
    c[0] = close.x;
    c[1] = close.y;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      jac[0 * stride + j] = suffix[j + 1].x;
      jac[1 * stride + j] = suffix[j + 1].y;
    }
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      c[2 + j] = -x[j];
      jac[(2 + j) * stride + j] = -1.0;
      sum += x[j];
    }
    c[n + 1] = sum - 2.0 * pi;
    for (std::size_t j = 0; j + 1 < n; ++j) jac[(n + 1) * stride + j] = 1.0;
  };
  const ConstraintKind kind = problem.constraint;
  l.start = [n, kind](Rng& rng) {
    std::vector<double> w(n);
    for (auto& a : w) a = 1.0 + rng.uniform(-0.35, 0.35);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = 2.0 * pi * w[k] / total;
    const auto pts = equilateral_vertices(t, 1.0);
    double scale = 1.0;
    if (kind == ConstraintKind::WidthAtLeast) {
      // Height cap over edge 0, which lies on the x axis.
      scale = 0.0;
      for (const auto& p : pts) scale = std::max(scale, p.y);
    } else if (kind == ConstraintKind::PerimeterAtMost) {
      scale = 1.0 / static_cast<double>(n);
    } else {
      const auto hull = convex_hull(pts);
      scale = 1.0 / normalizer(ConvexPolygon(hull), kind);
    }
    std::vector<double> x(t.begin(), t.end() - 1);
    x.push_back(scale);
    return x;
  };
  l.finalize = [n, cap](std::span<const double> x) {
    std::vector<double> t(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n - 1));
    t.push_back(2.0 * pi - std::accumulate(t.begin(), t.end(), 0.0));
    return equilateral_vertices(polish_turning(std::move(t)), cap ? 1.0 : x[n - 1]);
  };
  return l;
}

// Star walk of m = n - 1 unit diameters with a pendant unit diameter at
// star vertex 0. Star vertex k sits at boundary position k (m-1)/2 mod m;
// the pendant lies between star vertices 1 and m-1.
Layout graham_layout(int n_int) {
  const std::size_t n = static_cast<std::size_t>(n_int);
  const std::size_t m = n - 1;
  const std::size_t half = (m - 1) / 2;
  // order[pos] = star index, or m for the pendant
  std::vector<std::size_t> order;
  for (std::size_t pos = 0; pos < m; ++pos) {
    order.push_back((pos * (m - 2)) % m);
    if (pos == half) order.push_back(m);
  }
  Layout l;
  l.vertices = n;
  l.dim = n;  // psi_0..psi_{m-1}, psi_pendant
  l.n_eq = 2;
  l.n_ineq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t a = order[i];
      const std::size_t b = order[j];
      const bool star_edge = a < m && b < m && ((a + 1) % m == b || (b + 1) % m == a);
      const bool pendant_edge = (a == m && b == 0) || (b == m && a == 0);
      if (!star_edge && !pendant_edge) l.distance_pairs.emplace_back(i, j);
    }
  }
  l.map = [n, m, order](std::span<const double> x, std::vector<Point>& v, std::vector<double>& jac) {
    std::vector<Point> w(m);
    for (std::size_t k = 0; k + 1 < m; ++k) w[k + 1] = w[k] + unit(x[k]);
    std::fill(jac.begin(), jac.end(), 0.0);
    for (std::size_t pos = 0; pos < n; ++pos) {
      const std::size_t s = order[pos];
      double* jx = &jac[2 * pos * n];
      double* jy = jx + n;
      if (s == m) {
        v[pos] = w[0] + unit(x[m]);
        const Point d = perp_unit(x[m]);
        jx[m] = d.x;
        jy[m] = d.y;
        continue;
      }
      v[pos] = w[s];
      for (std::size_t j = 0; j < s; ++j) {
        const Point d = perp_unit(x[j]);
        jx[j] = d.x;
        jy[j] = d.y;
      }
    }
  };
  l.own = [m](std::span<const double> x, std::span<double> c, std::span<double> jac, std::size_t stride) {
    Point close{0.0, 0.0};
    for (std::size_t k = 0; k < m; ++k) {
      close = close + unit(x[k]);
      const Point d = perp_unit(x[k]);
      jac[k] = d.x;
      jac[stride + k] = d.y;
    }
    c[0] = close.x;
    c[1] = close.y;
  };
  l.start = [m](Rng& rng) {
    const double turn = pi - pi / static_cast<double>(m);
    const double base = rng.uniform(0.0, 2.0 * pi);
    std::vector<double> x(m + 1);
    for (std::size_t k = 0; k < m; ++k) x[k] = base + static_cast<double>(k) * turn + rng.uniform(-0.06, 0.06);
    std::vector<Point> w(m);
    for (std::size_t k = 0; k + 1 < m; ++k) w[k + 1] = w[k] + unit(x[k]);
    const Point mid = 0.5 * (w[1] + w[m - 1]) - w[0];
    x[m] = std::atan2(mid.y, mid.x) + rng.uniform(-0.1, 0.1);
    return x;
  };
  l.finalize = [n, l_map = l.map](std::span<const double> x) {
    std::vector<Point> v(n);
    std::vector<double> jac(2 * n * n);
    l_map(x, v, jac);
    return v;
  };
  return l;
}

struct Candidate {
  ConvexPolygon polygon;
  double value;
  double violation;
  bool converged;
};

double objective_value(const Metrics& m, Objective o) {
  switch (o) {
    case Objective::MaximizeArea: return m.area;
    case Objective::MaximizePerimeter: return m.perimeter;
    case Objective::MaximizeWidth: return m.width;
  }
  return 0.0;
}

std::optional<Candidate> make_candidate(std::vector<Point> pts, const OptimizationProblem& problem, bool converged) {
  const std::size_t n = static_cast<std::size_t>(problem.n);
  std::optional<ConvexPolygon> poly;
  try {
    poly.emplace(pts);
  } catch (const InvalidPolygon&) {
    auto hull = convex_hull(std::move(pts));
    if (hull.size() < 3) return std::nullopt;
    try {
      poly.emplace(subdivide_to(std::move(hull), n));
    } catch (const InvalidPolygon&) {
      return std::nullopt;
    }
  }
  if (poly->size() != n) return std::nullopt;
  const double factor = problem.value / normalizer(*poly, problem.constraint);
  if (!std::isfinite(factor) || !(factor > 0.0)) return std::nullopt;
  std::vector<Point> scaled_pts;
  for (const auto& v : poly->vertices()) scaled_pts.push_back(factor * v);
  std::optional<ConvexPolygon> scaled_poly;
  try {
    scaled_poly.emplace(std::move(scaled_pts));
  } catch (const InvalidPolygon&) {
    return std::nullopt;
  }
  ConvexPolygon p = std::move(*scaled_poly);
  if (problem.equilateral) {
    const auto sides = side_lengths(p);
    const auto [lo, hi] = std::minmax_element(sides.begin(), sides.end());
    if (*hi - *lo > 1e-9 * *hi) return std::nullopt;
  }
  const Metrics m = metrics(p);
  double violation = 0.0;
  switch (problem.constraint) {
    case ConstraintKind::DiameterAtMost: violation = std::max(0.0, m.diameter / problem.value - 1.0); break;
    case ConstraintKind::PerimeterAtMost: violation = std::max(0.0, m.perimeter / problem.value - 1.0); break;
    case ConstraintKind::WidthAtLeast: violation = std::max(0.0, 1.0 - m.width / problem.value); break;
  }
  if (violation > 1e-7 || !is_convex(p.vertices())) return std::nullopt;
  return Candidate{std::move(p), objective_value(m, problem.objective), violation, converged};
}

bool lex_less(const ConvexPolygon& a, const ConvexPolygon& b) {
  return std::lexicographical_compare(a.vertices().begin(), a.vertices().end(), b.vertices().begin(),
                                      b.vertices().end(), [](Point p, Point q) {
                                        return p.x < q.x || (p.x == q.x && p.y < q.y);
                                      });
}

OptimizationResult multistart(const Layout& layout, const OptimizationProblem& problem, const SolveConfig& config,
                              double bound, const std::function<bool(const ConvexPolygon&)>& accept) {
  if (config.starts < 1) throw InvalidArgument("starts must be positive");
  OptimizationProblem unit_problem = problem;
  unit_problem.value = 1.0;
  nlp::Options opts;
  opts.inner_iterations = config.max_iterations;
  opts.outer_rounds = config.outer_rounds;

  const std::size_t starts = static_cast<std::size_t>(config.starts);
  std::vector<std::optional<Candidate>> results(starts);
  auto run_one = [&](std::size_t i) {
    Model model(layout, unit_problem);
    Rng rng = Rng::stream(config.seed, i);
    const nlp::Result r = nlp::minimize(model.problem(), model.initial(rng), opts);
    auto cand = make_candidate(layout.finalize(std::span<const double>(r.x).first(layout.dim)), problem,
                               r.converged);
    if (cand && accept && !accept(cand->polygon)) cand.reset();
    results[i] = std::move(cand);
  };

  unsigned threads = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : config.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(starts));
  if (threads <= 1) {
    for (std::size_t i = 0; i < starts; ++i) {
      run_one(i);
      if (config.progress) config.progress(static_cast<int>(i), results[i] ? results[i]->value : std::nan(""));
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < starts; i = next++) run_one(i);
      });
    }
    for (auto& th : pool) th.join();
    if (config.progress) {
      for (std::size_t i = 0; i < starts; ++i) {
        config.progress(static_cast<int>(i), results[i] ? results[i]->value : std::nan(""));
      }
    }
  }

  // Reduction in start order: higher value wins, near-ties go to the
  // lexicographically smaller vertex list.
  std::optional<Candidate> best;
  OptimizationResult out{ConvexPolygon({{0, 0}, {1, 0}, {0, 1}}), 0.0, 0.0, 0.0, 0, 0, false, 0.0, {}};
  double running = -std::numeric_limits<double>::infinity();
  for (auto& c : results) {
    if (c) {
      running = std::max(running, c->value);
      if (!best) {
        best = std::move(c);
      } else {
        const double tie = 1e-12 * std::max(1.0, std::abs(best->value));
        if (c->value > best->value + tie ||
            (std::abs(c->value - best->value) <= tie && lex_less(c->polygon, best->polygon))) {
          best = std::move(c);
        }
      }
    }
    out.history.push_back(running);
  }
  if (!best) throw Infeasible("no start produced a feasible convex polygon");
  out.best = best->polygon;
  out.value = best->value;
  out.bound = bound;
  out.gap = bound - best->value;
  out.starts = config.starts;
  out.seed = config.seed;
  out.converged = best->converged;
  out.violation = best->violation;
  return out;
}

}  // namespace

std::string_view name(Objective o) {
  switch (o) {
    case Objective::MaximizeArea: return "area";
    case Objective::MaximizePerimeter: return "perimeter";
    case Objective::MaximizeWidth: return "width";
  }
  return "";
}

std::string_view name(ConstraintKind c) {
  switch (c) {
    case ConstraintKind::DiameterAtMost: return "diameter";
    case ConstraintKind::WidthAtLeast: return "width";
    case ConstraintKind::PerimeterAtMost: return "perimeter";
  }
  return "";
}

void validate(const OptimizationProblem& problem, int max_n) {
  if (problem.n < 3) throw InvalidArgument("n must be at least 3");
  if (problem.n > max_n) {
    throw InvalidArgument("n = " + std::to_string(problem.n) + " exceeds the search limit of " + std::to_string(max_n));
  }
  if (!std::isfinite(problem.value) || !(problem.value > 0.0)) throw InvalidArgument("constraint value must be positive");
  if ((problem.objective == Objective::MaximizePerimeter && problem.constraint == ConstraintKind::PerimeterAtMost) ||
      (problem.objective == Objective::MaximizeWidth && problem.constraint == ConstraintKind::WidthAtLeast)) {
    throw InvalidArgument("objective and constraint measure the same quantity");
  }
  if (problem.constraint == ConstraintKind::WidthAtLeast && (!problem.equilateral || problem.n % 2 == 0)) {
    throw InvalidArgument("a width lower bound leaves the objective unbounded unless the polygon is equilateral "
                          "with an odd number of sides");
  }
}

double problem_bound(const OptimizationProblem& problem) {
  const int n = problem.n;
  const double v = problem.value;
  switch (problem.constraint) {
    case ConstraintKind::DiameterAtMost:
      switch (problem.objective) {
        case Objective::MaximizeArea:
          return problem.equilateral ? equilateral_max_area_reference(n, v) : bounds::max_area_given_diameter(n, v);
        case Objective::MaximizePerimeter: return bounds::max_perimeter_given_diameter(n, v);
        case Objective::MaximizeWidth: return bounds::max_width_given_diameter(n, v);
      }
      break;
    case ConstraintKind::PerimeterAtMost:
      switch (problem.objective) {
        case Objective::MaximizeArea: return bounds::max_area_given_perimeter(n, v);
        case Objective::MaximizeWidth: return v / (2.0 * n * std::tan(pi / (2.0 * n)));
        case Objective::MaximizePerimeter: break;
      }
      break;
    case ConstraintKind::WidthAtLeast: {
      const Metrics m = metrics(audet_ninin_polygon(n, v));
      if (problem.objective == Objective::MaximizeArea) return m.area;
      if (problem.objective == Objective::MaximizePerimeter) return m.perimeter;
      break;
    }
  }
  throw InvalidArgument("no bound for this objective and constraint");
}

OptimizationResult solve(const OptimizationProblem& problem, const SolveConfig& config) {
  validate(problem, config.max_n);
  const Layout layout = problem.equilateral ? equilateral_layout(problem) : general_layout(problem);
  return multistart(layout, problem, config, problem_bound(problem), {});
}

OptimizationResult graham_solve(int n, const SolveConfig& config) {
  if (n < 6 || n > 12 || n % 2 != 0) throw InvalidArgument("graham_solve needs even n with 6 <= n <= 12");
  OptimizationProblem problem{Objective::MaximizeArea, ConstraintKind::DiameterAtMost, 1.0, n, false};
  const Layout layout = graham_layout(n);
  return multistart(layout, problem, config, bounds::max_area_given_diameter(n, 1.0), [](const ConvexPolygon& p) {
    return is_cycle_plus_pendant(diameter_graph(p, 1e-6));
  });
}

ConvexPolygon regular_polygon(int n, RegularSpec spec) {
  if (n < 3) throw InvalidArgument("regular polygon needs n >= 3");
  if (!std::isfinite(spec.value) || !(spec.value > 0.0)) throw InvalidArgument("regular polygon size must be positive");
  const double a = pi / n;
  double r = 0.0;
  switch (spec.kind) {
    case RegularSpec::Kind::Side: r = spec.value / (2.0 * std::sin(a)); break;
    case RegularSpec::Kind::Diameter:
      r = n % 2 == 0 ? spec.value / 2.0 : spec.value / (2.0 * std::cos(a / 2.0));
      break;
    case RegularSpec::Kind::Width:
      r = n % 2 == 0 ? spec.value / (2.0 * std::cos(a)) : spec.value / (1.0 + std::cos(a));
      break;
  }
  std::vector<Point> v;
  for (int k = 0; k < n; ++k) v.push_back(r * unit(-pi / 2.0 - a + 2.0 * a * k));
  return ConvexPolygon(std::move(v));
}

double equilateral_max_area_reference(int n, double d) {
  if (n < 3) throw InvalidArgument("n must be at least 3");
  if (!(d > 0.0)) throw InvalidArgument("diameter must be positive");
  if (n % 2 == 1) return bounds::max_area_given_diameter(n, d);
  return n / 8.0 * d * d * std::sin(2.0 * pi / n);
}

ConvexPolygon audet_ninin_polygon(int n, double w) {
  if (n < 3 || n % 2 == 0) {
    throw InvalidArgument("the unit-width equilateral family exists only for odd n >= 3; even n is unbounded");
  }
  if (!std::isfinite(w) || !(w > 0.0)) throw InvalidArgument("width must be positive");
  const double s = 2.0 * w / std::sqrt(3.0);
  const int m = (n - 1) / 2;
  std::vector<Point> v;
  for (int k = 0; k <= m; ++k) v.push_back({k * s, 0.0});
  for (int k = 0; k < m; ++k) v.push_back({m * s - s / 2.0 - k * s, w});
  return ConvexPolygon(std::move(v));
}

bool is_cycle_plus_pendant(const DiameterGraph& g) {
  const std::size_t n = g.n;
  if (n < 4 || g.edges.size() != n) return false;
  const auto deg = g.degrees();
  std::size_t pendant = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (deg[i] == 1) {
      if (pendant != n) return false;
      pendant = i;
    } else if (deg[i] != 2 && deg[i] != 3) {
      return false;
    }
  }
  if (pendant == n) return false;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : g.edges) {
    if (a == pendant || b == pendant) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Without the pendant, every other vertex must have degree 2 and the
  // vertices must form one connected cycle.
  for (std::size_t i = 0; i < n; ++i) {
    if (i != pendant && adj[i].size() != 2) return false;
  }
  const std::size_t start = pendant == 0 ? 1 : 0;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  std::size_t count = 0;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    ++count;
    for (std::size_t w : adj[u]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return count == n - 1;
}

detail::Probe detail::probe(const OptimizationProblem& problem, bool graham, std::uint64_t seed,
                            std::size_t start) {
  struct Owned {
    Layout layout;
    OptimizationProblem unit;
    std::optional<Model> model;
  };
  auto owned = std::make_shared<Owned>();
  owned->unit = problem;
  owned->unit.value = 1.0;
  owned->layout = graham ? graham_layout(problem.n)
                         : problem.equilateral ? equilateral_layout(owned->unit) : general_layout(owned->unit);
  owned->model.emplace(owned->layout, owned->unit);
  Rng rng = Rng::stream(seed, start);
  Probe out;
  out.x0 = owned->model->initial(rng);
  const nlp::Problem inner = owned->model->problem();
  out.problem = inner;
  out.problem.objective = [owned, f = inner.objective](std::span<const double> x, std::span<double> g) {
    return f(x, g);
  };
  out.problem.constraints = [owned, c = inner.constraints](std::span<const double> x, std::span<double> v,
                                                           std::span<double> j) { c(x, v, j); };
  return out;
}

}  // namespace extremal::optimizer
