#pragma once

#include <memory>

#include "malm/problem.hpp"
#include "malm/transcription.hpp"

namespace malm {

/// Two nearly coincident circles of radius sqrt(2), centered at (-eps, 0)
/// and (eps, 0), with the linear objective -x1 - x2. For eps = 0 both
/// residual components coincide and the Jacobian has rank 1.
class CircleProblem final : public PenaltyProblem {
 public:
  explicit CircleProblem(double eps);

  int dim() const override { return 2; }
  int residual_dim() const override { return 2; }
  double objective(const Vector& x) const override;
  Vector objective_gradient(const Vector& x) const override;
  Matrix objective_hessian(const Vector& x) const override;
  Vector residual(const Vector& x) const override;
  Matrix residual_jacobian(const Vector& x) const override;
  Matrix weighted_residual_hessian(const Vector& x, const Vector& w) const override;

  double eps() const { return eps_; }

 private:
  double eps_;
};

std::shared_ptr<PenaltyProblem> make_circle(double eps);

/// Reference points and initial guesses of the circle instance.
struct CircleReference {
  static Vector x_a();      // [0, sqrt(2)]
  static Vector x_b();      // [1, 1]
  static Vector x0();       // sqrt(2) [cos(3 pi / 8), sin(3 pi / 8)]
  static Vector lambda0();  // 0.4619 [1, 1]
};

struct CircleMetrics {
  double e_a;  // |x - x_a|_2
  double e_b;  // |x - x_b|_2
};

CircleMetrics metrics_circle(const Vector& x);

/// The benchmark control problem on [0, pi/2]:
///   minimize  int y^2 + cos(t) u dt   s.t.  y(0) = 0,  y' = y^2 / 2 + u.
OcpDefinition make_ocp_instance();

/// Analytic solution of the control problem.
double ocp_reference_state(double t);    // y*(t) = sin(t) / (cos(t) - 2)
double ocp_reference_control(double t);  // u*(t) = y*'(t) - y*(t)^2 / 2
inline constexpr double kOcpReferenceObjective = -0.2569969625;

struct OcpMetrics {
  double delta_j;  // f(x) - J*
  double r;        // |c(x)|_2, the L2 dynamics residual norm
};

OcpMetrics metrics_ocp(const Transcription& trans, const Vector& x);

}  // namespace malm
