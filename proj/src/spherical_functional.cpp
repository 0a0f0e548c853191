#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "dmin/dilog.hpp"
#include "dmin/kernels.hpp"
#include "dmin/pattern.hpp"

namespace dmin {

using Eigen::VectorXd;

CircleAdjacency CircleAdjacency::from_graph(const SQuadGraph& g) {
  CircleAdjacency adj;
  adj.circle_of_vertex.assign(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.is_white(v)) {
      adj.circle_of_vertex[v] = adj.size();
      adj.vertex_of_circle.push_back(v);
    }
  std::set<std::pair<int, int>> seen;
  for (const Face& f : g.faces()) {
    int whites[2], n = 0;
    for (int v : f)
      if (g.is_white(v) && n < 2) whites[n++] = adj.circle_of_vertex[v];
    if (n != 2 || whites[0] == whites[1]) continue;
    const auto key = std::minmax(whites[0], whites[1]);
    if (seen.insert(key).second) adj.pairs.push_back({key.first, key.second});
  }
  return adj;
}

VectorXd default_targets(const SQuadGraph& g, const CircleAdjacency& adj, double branch_factor) {
  VectorXd phi(adj.size());
  for (int c = 0; c < adj.size(); ++c)
    phi[c] = 2 * std::numbers::pi * (g.has_flag(adj.vertex_of_circle[c], kFlagBranch) ? branch_factor : 1.0);
  return phi;
}

double napier_half_angle(double rho_j, double rho_k) {
  return std::atan(std::exp(rho_k - rho_j)) + std::atan(std::exp(rho_k + rho_j));
}

double radius_from_rho(double rho) { return 2.0 * std::atan(std::exp(rho)); }
double rho_from_radius(double r) { return std::log(std::tan(0.5 * r)); }

SphericalFunctional::SphericalFunctional(const SQuadGraph& g, VectorXd targets)
    : SphericalFunctional(CircleAdjacency::from_graph(g), std::move(targets)) {}

SphericalFunctional::SphericalFunctional(CircleAdjacency adj, VectorXd targets)
    : adj_(std::move(adj)), targets_(std::move(targets)) {
  if (targets_.size() != adj_.size()) throw PatternError("target vector size does not match the circle count");
}

void SphericalFunctional::pair_arrays(const VectorXd& rho, std::vector<double>& d, std::vector<double>& s) const {
  if (rho.size() != size()) throw PatternError("radius vector size does not match the circle count");
  d.resize(adj_.pairs.size());
  s.resize(adj_.pairs.size());
  for (size_t p = 0; p < adj_.pairs.size(); ++p) {
    const auto [j, k] = adj_.pairs[p];
    d[p] = rho[k] - rho[j];
    s[p] = rho[j] + rho[k];
  }
}

double SphericalFunctional::value(const VectorXd& rho) const {
  std::vector<double> d, s;
  pair_arrays(rho, d, s);
  double sum = targets_.dot(rho);
  for (size_t p = 0; p < d.size(); ++p)
    sum += dilog_F(d[p]) + dilog_F(-d[p]) - dilog_F(s[p]) - dilog_F(-s[p]) - std::numbers::pi * s[p];
  return sum;
}

VectorXd SphericalFunctional::gradient(const VectorXd& rho) const {
  std::vector<double> d, s;
  pair_arrays(rho, d, s);
  std::vector<double> a(d.size()), b(d.size());
  kernels::pair_terms(d.data(), s.data(), a.data(), b.data(), d.size());
  VectorXd g = targets_;
  for (size_t p = 0; p < d.size(); ++p) {
    const auto [j, k] = adj_.pairs[p];
    g[j] -= 2.0 * (a[p] + b[p]);
    g[k] -= 2.0 * ((std::numbers::pi / 2 - a[p]) + b[p]);
  }
  return g;
}

double SphericalFunctional::hessian_quadform(const VectorXd& rho, const VectorXd& dir) const {
  std::vector<double> d, s;
  pair_arrays(rho, d, s);
  std::vector<double> wd(d.size()), ws(d.size());
  kernels::pair_sech(d.data(), wd.data(), d.size());
  kernels::pair_sech(s.data(), ws.data(), s.size());
  double q = 0.0;
  for (size_t p = 0; p < d.size(); ++p) {
    const auto [j, k] = adj_.pairs[p];
    const double dd = dir[k] - dir[j], ds = dir[k] + dir[j];
    q += dd * dd * wd[p] - ds * ds * ws[p];
  }
  return q;
}

Eigen::MatrixXd SphericalFunctional::hessian(const VectorXd& rho) const {
  std::vector<double> d, s;
  pair_arrays(rho, d, s);
  std::vector<double> wd(d.size()), ws(d.size());
  kernels::pair_sech(d.data(), wd.data(), d.size());
  kernels::pair_sech(s.data(), ws.data(), s.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(size(), size());
  for (size_t p = 0; p < d.size(); ++p) {
    const auto [j, k] = adj_.pairs[p];
    h(j, j) += wd[p] - ws[p];
    h(k, k) += wd[p] - ws[p];
    h(j, k) -= wd[p] + ws[p];
    h(k, j) -= wd[p] + ws[p];
  }
  return h;
}

ReducedValue SphericalFunctional::reduced(const VectorXd& rho) const {
  std::vector<double> d, s;
  pair_arrays(rho, d, s);
  const double pairs = static_cast<double>(d.size());
  const double budget = targets_.sum();
  if (!(budget > pairs * std::numbers::pi && budget < 3 * pairs * std::numbers::pi)) {
    std::ostringstream msg;
    msg << "no interior maximum along the all-ones direction: angle budget sum(Phi) = " << budget
        << " must lie strictly between " << pairs * std::numbers::pi << " and " << 3 * pairs * std::numbers::pi
        << " (pi and 3 pi per neighbor pair)";
    throw PatternError(msg.str());
  }

  // g(t) = d/dt S(rho + t 1), strictly decreasing.
  std::vector<double> shifted(s.size()), a(s.size()), w(s.size());
  auto eval = [&](double t, double& g, double& dg) {
    for (size_t p = 0; p < s.size(); ++p) shifted[p] = s[p] + 2 * t;
    kernels::pair_terms(shifted.data(), shifted.data(), a.data(), w.data(), s.size());
    g = budget - pairs * std::numbers::pi;
    for (double x : a) g -= 4 * x;
    kernels::pair_sech(shifted.data(), w.data(), s.size());
    dg = 0.0;
    for (double x : w) dg -= 4 * x;
  };

  double lo = -1.0, hi = 1.0, g = 0.0, dg = 0.0;
  for (eval(lo, g, dg); g < 0; eval(lo, g, dg)) lo *= 2;
  for (eval(hi, g, dg); g > 0; eval(hi, g, dg)) hi *= 2;

  ReducedValue out;
  double t = 0.0;
  for (int it = 0; it < 200; ++it) {
    eval(t, g, dg);
    ++out.newton_steps;
    if (std::fabs(g) <= 1e-11) break;
    if (g > 0) lo = t; else hi = t;
    double next = t - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo < 1e-15 * std::max(1.0, std::fabs(t))) break;
    t = next;
  }
  out.t = t;
  out.value = value((rho.array() + t).matrix());
  return out;
}

}  // namespace dmin
