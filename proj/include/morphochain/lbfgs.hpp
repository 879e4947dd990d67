#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <type_traits>
#include <vector>

// Limited-memory BFGS with a strong-Wolfe line search. The objective is
// unconstrained, so no bound handling is needed.
namespace morphochain::lbfgs {

struct Options {
  std::size_t memory = 10;
  std::size_t max_iterations = 1000;
  /// Stop when the gradient infinity norm drops below this value.
  double gradient_tolerance = 1e-5;
  double c1 = 1e-4;
  double c2 = 0.9;
  std::size_t max_line_search = 40;
  /// Called with (iteration, value) after every accepted step.
  std::function<void(std::size_t, double)> on_iteration;
};

enum class Status { Converged, MaxIterations, LineSearchFailed };

struct Result {
  Status status = Status::MaxIterations;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  double value = 0.0;
  double gradient_inf_norm = 0.0;
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

struct Point {
  double step = 0.0;
  double value = 0.0;
  double slope = 0.0;
  std::vector<double> x;
  std::vector<double> grad;
};

/// Minimiser of the cubic through (a, fa, da) and (b, fb, db), or NaN.
inline double cubic_min(double a, double fa, double da, double b, double fb, double db) {
  double d1 = da + db - 3.0 * (fa - fb) / (a - b);
  double disc = d1 * d1 - da * db;
  if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
  double d2 = std::copysign(std::sqrt(disc), b - a);
  double denom = db - da + 2.0 * d2;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return b - (b - a) * (db + d2 - d1) / denom;
}

template <typename F>
class LineSearch {
 public:
  LineSearch(F& f, const std::vector<double>& x0, const std::vector<double>& dir, double f0, double slope0,
             const Options& opts, std::size_t& evaluations)
      : f_(f), x0_(x0), dir_(dir), f0_(f0), slope0_(slope0), opts_(opts), evals_(evaluations) {}

  /// Returns true and fills `out` when a point satisfying the strong Wolfe
  /// conditions (or at least sufficient decrease) was found.
  bool run(double initial_step, Point& out) {
    Point prev{0.0, f0_, slope0_, x0_, {}};
    double step = initial_step;
    for (std::size_t i = 0; i < opts_.max_line_search; ++i) {
      Point cur = evaluate(step);
      if (!std::isfinite(cur.value)) {
        step = 0.5 * (prev.step + step);
        continue;
      }
      if (cur.value > f0_ + opts_.c1 * step * slope0_ || (i > 0 && cur.value >= prev.value))
        return zoom(prev, cur, out);
      if (std::abs(cur.slope) <= -opts_.c2 * slope0_) {
        out = std::move(cur);
        return true;
      }
      if (cur.slope >= 0.0) return zoom(cur, prev, out);
      prev = std::move(cur);
      step *= 2.0;
    }
    return accept_if_decreased(prev, out);
  }

 private:
  Point evaluate(double step) {
    Point p;
    p.step = step;
    p.x.resize(x0_.size());
    for (std::size_t i = 0; i < x0_.size(); ++i) p.x[i] = x0_[i] + step * dir_[i];
    p.grad.assign(x0_.size(), 0.0);
    p.value = f_(p.x, p.grad);
    p.slope = dot(p.grad, dir_);
    ++evals_;
    return p;
  }

  bool accept_if_decreased(Point& lo, Point& out) {
    if (lo.step > 0.0 && lo.value < f0_) {
      out = std::move(lo);
      return true;
    }
    return false;
  }

  bool zoom(Point lo, Point hi, Point& out) {
    for (std::size_t i = 0; i < opts_.max_line_search; ++i) {
      double a = lo.step, b = hi.step;
      double width = std::abs(b - a);
      if (width <= 1e-16 * std::max(1.0, std::abs(a))) break;
      double lo_end = std::min(a, b) + 0.1 * width, hi_end = std::max(a, b) - 0.1 * width;
      double step = cubic_min(a, lo.value, lo.slope, b, hi.value, hi.slope);
      if (!std::isfinite(step) || step < lo_end || step > hi_end) step = 0.5 * (a + b);
      Point cur = evaluate(step);
      if (!std::isfinite(cur.value) || cur.value > f0_ + opts_.c1 * step * slope0_ || cur.value >= lo.value) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.slope) <= -opts_.c2 * slope0_) {
          out = std::move(cur);
          return true;
        }
        if (cur.slope * (hi.step - lo.step) >= 0.0) hi = std::move(lo);
        lo = std::move(cur);
      }
    }
    return accept_if_decreased(lo, out);
  }

  F& f_;
  const std::vector<double>& x0_;
  const std::vector<double>& dir_;
  double f0_;
  double slope0_;
  const Options& opts_;
  std::size_t& evals_;
};

}  // namespace detail

/// Minimises f starting from x (updated in place). `f(x, grad)` returns the
/// value and writes the gradient. Every accepted iterate strictly lowers f.
template <typename F>
Result minimize(F&& f, std::vector<double>& x, const Options& opts = {}) {
  using detail::dot;
  const std::size_t d = x.size();
  Result res;
  std::vector<double> g(d, 0.0);
  double fx = f(x, g);
  res.evaluations = 1;
  res.value = fx;
  res.gradient_inf_norm = detail::inf_norm(g);
  if (res.gradient_inf_norm < opts.gradient_tolerance) {
    res.status = Status::Converged;
    return res;
  }
  if (!std::isfinite(fx)) {
    res.status = Status::LineSearchFailed;
    return res;
  }

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> history;
  std::vector<double> dir(d), q(d), alpha(opts.memory);

  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    // two-loop recursion
    q = g;
    for (std::size_t k = history.size(); k-- > 0;) {
      alpha[k] = history[k].rho * dot(history[k].s, q);
      for (std::size_t i = 0; i < d; ++i) q[i] -= alpha[k] * history[k].y[i];
    }
    if (!history.empty()) {
      const auto& last = history.back();
      double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (double& v : q) v *= gamma;
    }
    for (std::size_t k = 0; k < history.size(); ++k) {
      double beta = history[k].rho * dot(history[k].y, q);
      for (std::size_t i = 0; i < d; ++i) q[i] += history[k].s[i] * (alpha[k] - beta);
    }
    for (std::size_t i = 0; i < d; ++i) dir[i] = -q[i];
    double slope = dot(g, dir);
    if (!(slope < 0.0)) {
      history.clear();
      for (std::size_t i = 0; i < d; ++i) dir[i] = -g[i];
      slope = dot(g, dir);
    }

    double step = history.empty() ? 1.0 / std::sqrt(dot(g, g)) : 1.0;
    detail::Point next;
    detail::LineSearch<std::remove_reference_t<F>> search(f, x, dir, fx, slope, opts, res.evaluations);
    bool ok = search.run(step, next);
    if (!ok && !history.empty()) {
      // retry once along steepest descent with fresh curvature memory
      history.clear();
      for (std::size_t i = 0; i < d; ++i) dir[i] = -g[i];
      slope = dot(g, dir);
      detail::LineSearch<std::remove_reference_t<F>> retry(f, x, dir, fx, slope, opts, res.evaluations);
      ok = retry.run(1.0 / std::sqrt(dot(g, g)), next);
    }
    if (!ok) {
      res.status = Status::LineSearchFailed;
      return res;
    }

    Pair p{std::vector<double>(d), std::vector<double>(d), 0.0};
    for (std::size_t i = 0; i < d; ++i) {
      p.s[i] = next.x[i] - x[i];
      p.y[i] = next.grad[i] - g[i];
    }
    double sy = dot(p.s, p.y);
    x = std::move(next.x);
    g = std::move(next.grad);
    fx = next.value;
    res.iterations = iter + 1;
    res.value = fx;
    res.gradient_inf_norm = detail::inf_norm(g);
    if (opts.on_iteration) opts.on_iteration(res.iterations, fx);
    if (sy > 1e-12 * std::sqrt(dot(p.s, p.s) * dot(p.y, p.y))) {
      p.rho = 1.0 / sy;
      history.push_back(std::move(p));
      if (history.size() > opts.memory) history.pop_front();
    }
    if (res.gradient_inf_norm < opts.gradient_tolerance) {
      res.status = Status::Converged;
      return res;
    }
  }
  res.status = Status::MaxIterations;
  return res;
}

}  // namespace morphochain::lbfgs
