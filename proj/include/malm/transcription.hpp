#pragma once

#include <functional>
#include <memory>

#include "malm/problem.hpp"
#include "malm/quadrature.hpp"

namespace malm {

/// Value and partial derivatives (up to second order) of a scalar function
/// of (t, y, u) at one point.
struct PointDerivatives {
  double value = 0.0;
  double dy = 0.0, du = 0.0;
  double dyy = 0.0, dyu = 0.0, duu = 0.0;
};

using Integrand = std::function<PointDerivatives(double t, double y, double u)>;

/// Scalar-state, scalar-control optimal control problem on [0, horizon]
/// with fixed initial state. The dynamics residual is -y' + dynamics_rhs.
struct OcpDefinition {
  double horizon;
  double initial_state;
  Integrand running_cost;   // L(t, y, u)
  Integrand dynamics_rhs;   // g(t, y, u)
};

/// Uniform mesh of num_elements elements on [0, horizon].
struct Mesh {
  int num_elements;
  double horizon;

  double width() const { return horizon / num_elements; }
  double node(int i) const { return horizon * i / num_elements; }
};

struct BasisSample {
  double value;
  double slope;  // constant on each element
};

/// Continuous piecewise-linear interpolant of the N+1 nodal values at time t.
BasisSample eval_basis(const Mesh& mesh, const Vector& nodal_values, double t);

enum class AssemblyMode { kSerial, kParallel };

/// Integral-penalty finite-element transcription: continuous piecewise
/// linear state and control on a uniform mesh, per-element Gauss-Legendre
/// quadrature. The coefficient vector is
///   x = [y(h), ..., y(N h), u(0), ..., u(N h)],  n = 2N + 1,
/// with y(0) fixed to the initial state and removed.
class Transcription {
 public:
  Transcription(OcpDefinition ocp, int num_elements, int quad_points = 8);

  int dim() const { return 2 * mesh_.num_elements + 1; }
  int residual_dim() const { return mesh_.num_elements * reference_rule_.size(); }

  const Mesh& mesh() const { return mesh_; }
  const OcpDefinition& ocp() const { return ocp_; }
  const QuadratureRule& reference_rule() const { return reference_rule_; }

  /// Mapped global abscissa / weight of quadrature point j, j = 0..Nq-1.
  double global_node(int j) const;
  double global_weight(int j) const;

  /// State nodal values including the fixed initial node (length N+1).
  Vector state_nodals(const Vector& x) const;
  /// Control nodal values (length N+1).
  Vector control_nodals(const Vector& x) const;

  /// Builds the PenaltyProblem of the discretization:
  ///   f(x) = sum_j alpha_j L(tau_j, y(tau_j), u(tau_j))
  ///   c_j(x) = sqrt(alpha_j) (-y'(tau_j) + g(tau_j, y(tau_j), u(tau_j)))
  /// so |c(x)|_2 is the quadrature approximation of the L2 dynamics
  /// residual norm. kParallel assembles element contributions with OpenMP;
  /// both modes produce bitwise-identical results.
  std::shared_ptr<PenaltyProblem> assemble(AssemblyMode mode = AssemblyMode::kParallel) const;

 private:
  OcpDefinition ocp_;
  Mesh mesh_;
  QuadratureRule reference_rule_;
};

}  // namespace malm
