#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "dmin/geometry.hpp"
#include "dmin/mobius.hpp"
#include "dmin/quadgraph.hpp"

namespace dmin {

class PatternError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// White vertices of a quad-graph indexed as circles, with the orthogonal
/// neighbor pairs (the two white vertices of each face).
struct CircleAdjacency {
  std::vector<int> circle_of_vertex;  // -1 for black vertices
  std::vector<int> vertex_of_circle;
  std::vector<std::array<int, 2>> pairs;  // circle indices, one per unordered pair

  static CircleAdjacency from_graph(const SQuadGraph& g);
  int size() const { return static_cast<int>(vertex_of_circle.size()); }
};

/// Nominal angles 2*pi for every circle; `branch_factor` multiplies it at
/// circles flagged as branch points (pass 2 for the cover itself).
Eigen::VectorXd default_targets(const SQuadGraph& g, const CircleAdjacency& adj, double branch_factor = 1.0);

/// Half the angle covered by neighbor circle k as seen from circle j.
double napier_half_angle(double rho_j, double rho_k);

/// r = 2 arctan(e^rho) and its inverse.
double radius_from_rho(double rho);
double rho_from_radius(double r);

struct ReducedValue {
  double value = 0.0;
  double t = 0.0;  // maximizer of S(rho + t*1)
  int newton_steps = 0;
};

/// The spherical functional S(rho) of an orthogonal circle pattern.
///
/// Gradient convention: gradient_j = Phi_j - 2 sum_k phi_jk, and the closure
/// residual is its negative. The per-pair arctan/sech terms go through the
/// dispatched kernels.
class SphericalFunctional {
 public:
  SphericalFunctional(const SQuadGraph& g, Eigen::VectorXd targets);
  SphericalFunctional(CircleAdjacency adj, Eigen::VectorXd targets);

  const CircleAdjacency& adjacency() const { return adj_; }
  const Eigen::VectorXd& targets() const { return targets_; }
  int size() const { return adj_.size(); }

  double value(const Eigen::VectorXd& rho) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& rho) const;
  Eigen::VectorXd closure_residual(const Eigen::VectorXd& rho) const { return -gradient(rho); }
  double hessian_quadform(const Eigen::VectorXd& rho, const Eigen::VectorXd& dir) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& rho) const;

  /// max_t S(rho + t*1). Throws PatternError when no interior maximum exists.
  ReducedValue reduced(const Eigen::VectorXd& rho) const;

 private:
  void pair_arrays(const Eigen::VectorXd& rho, std::vector<double>& d, std::vector<double>& s) const;

  CircleAdjacency adj_;
  Eigen::VectorXd targets_;
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iterations = 10000;
  int memory = 12;
};

struct SolveResult {
  Eigen::VectorXd rho;
  double residual_max = 0.0;
  int iterations = 0;      // quasi-Newton steps
  int newton_steps = 0;    // polishing steps
};

/// Minimizes the reduced functional on sum(rho) = 0 and returns rho + t*1,
/// which satisfies the closure equations to `tol`.
SolveResult solve_pattern(const SphericalFunctional& fn, const Eigen::VectorXd& init, const SolveOptions& opt = {});

/// Realized circle pattern on the unit sphere.
struct SphericalPattern {
  std::shared_ptr<const SQuadGraph> graph;
  CircleAdjacency adj;
  /// Unit vectors: spherical centers of white vertices, contact points of black ones.
  std::vector<Vec3> point;
  /// Spherical radius of white vertices; 0 for black ones.
  std::vector<double> radius;
  double layout_mismatch = 0.0;

  Circle3D circle(int v) const;
  Eigen::VectorXd rho() const;
};

struct PatternResiduals {
  double orthogonality = 0.0;  // |u_j.u_k - cos r_j cos r_k| over face pairs
  double incidence = 0.0;      // |u.b - cos r| over white/black incidences
  double tangent_angle = 0.0;  // |cos| of the angle between circle tangents at contacts
};

PatternResiduals pattern_residuals(const SphericalPattern& p);

/// Lays out circles from radii by propagation from the first white vertex
/// (center at the south pole, first contact at azimuth 0).
SphericalPattern layout_pattern(const SQuadGraph& g, const Eigen::VectorXd& rho, double tol = 1e-7);

SphericalPattern apply_mobius(const SphericalPattern& p, const SphereMobius& m);

/// Möbius-normalizes so that the contact points have vanishing vector sum.
SphericalPattern normalize_pattern(const SphericalPattern& p, MobiusNormalization* info = nullptr);

}  // namespace dmin
