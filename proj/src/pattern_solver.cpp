#include <cmath>
#include <deque>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "dmin/pattern.hpp"

namespace dmin {

using Eigen::VectorXd;

namespace {

VectorXd project(const VectorXd& v) { return (v.array() - v.mean()).matrix(); }

struct Point {
  VectorXd x;     // on the hyperplane sum = 0
  double f = 0;   // reduced functional
  double t = 0;   // maximizer along 1
  VectorXd grad;  // full gradient of S at x + t 1
};

Point evaluate(const SphericalFunctional& fn, const VectorXd& x) {
  Point p;
  p.x = x;
  const ReducedValue r = fn.reduced(x);
  p.f = r.value;
  p.t = r.t;
  p.grad = fn.gradient((x.array() + r.t).matrix());
  if (!std::isfinite(p.f) || !p.grad.allFinite()) throw PatternError("non-finite value during pattern solve");
  return p;
}

double residual_of(const Point& p) { return p.grad.cwiseAbs().maxCoeff(); }

// Newton step for the reduced functional restricted to sum = 0.
VectorXd newton_direction(const SphericalFunctional& fn, const Point& p) {
  const int n = fn.size();
  const Eigen::MatrixXd h = fn.hessian((p.x.array() + p.t).matrix());
  const VectorXd h1 = h * VectorXd::Ones(n);
  const double c = h1.sum();
  Eigen::MatrixXd reduced = h - h1 * h1.transpose() / c;
  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  reduced = proj * reduced * proj;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced);
  const VectorXd& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  const VectorXd g = project(p.grad);
  VectorXd coeff = es.eigenvectors().transpose() * g;
  for (int i = 0; i < n; ++i) coeff[i] = std::fabs(ev[i]) > 1e-10 * scale ? coeff[i] / ev[i] : 0.0;
  return -project(es.eigenvectors() * coeff);
}

}  // namespace

SolveResult solve_pattern(const SphericalFunctional& fn, const VectorXd& init, const SolveOptions& opt) {
  if (init.size() != fn.size()) throw PatternError("initial radius vector has the wrong size");
  SolveResult out;
  Point cur = evaluate(fn, project(init));
  double best = residual_of(cur);

  std::deque<std::pair<VectorXd, VectorXd>> history;  // (s, y)
  const double switch_level = std::max(opt.tol, 1e-6);
  while (residual_of(cur) > switch_level && out.iterations < opt.max_iterations) {
    ++out.iterations;
    const VectorXd g = project(cur.grad);
    // Two-loop recursion.
    VectorXd q = g;
    std::vector<double> alpha(history.size());
    for (int i = static_cast<int>(history.size()) - 1; i >= 0; --i) {
      const auto& [s, y] = history[i];
      alpha[i] = s.dot(q) / y.dot(s);
      q -= alpha[i] * y;
    }
    if (!history.empty()) {
      const auto& [s, y] = history.back();
      q *= s.dot(y) / y.dot(y);
    } else {
      q /= std::max(1.0, g.cwiseAbs().maxCoeff());
    }
    for (size_t i = 0; i < history.size(); ++i) {
      const auto& [s, y] = history[i];
      const double beta = y.dot(q) / y.dot(s);
      q += (alpha[i] - beta) * s;
    }
    VectorXd dir = -project(q);
    if (dir.dot(g) >= 0) {
      history.clear();
      dir = -g / std::max(1.0, g.cwiseAbs().maxCoeff());
    }

    double step = 1.0;
    bool accepted = false;
    Point next;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      next = evaluate(fn, cur.x + step * dir);
      if (next.f <= cur.f + 1e-4 * step * dir.dot(g)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;  // round-off floor of the reduced functional: polish below
    VectorXd s = next.x - cur.x, y = project(next.grad) - g;
    if (s.dot(y) > 1e-16 * s.norm() * y.norm()) {
      history.emplace_back(std::move(s), std::move(y));
      if (static_cast<int>(history.size()) > opt.memory) history.pop_front();
    }
    cur = std::move(next);
    best = std::min(best, residual_of(cur));
  }

  // Newton polishing on the closure equations.
  for (int it = 0; it < 100 && residual_of(cur) > opt.tol; ++it) {
    ++out.newton_steps;
    const VectorXd dir = newton_direction(fn, cur);
    const double r0 = project(cur.grad).norm();
    bool improved = false;
    double step = 1.0;
    for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
      Point next = evaluate(fn, cur.x + step * dir);
      if (project(next.grad).norm() < r0) {
        cur = std::move(next);
        improved = true;
        break;
      }
    }
    best = std::min(best, residual_of(cur));
    if (!improved) break;
  }

  out.residual_max = residual_of(cur);
  if (out.residual_max > opt.tol) {
    std::ostringstream msg;
    msg << "pattern solve did not reach tolerance " << opt.tol << " (best closure residual " << best << " after "
        << out.iterations << " quasi-Newton and " << out.newton_steps << " Newton steps)";
    throw PatternError(msg.str());
  }
  out.rho = (cur.x.array() + cur.t).matrix();
  return out;
}

}  // namespace dmin
