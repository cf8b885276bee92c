#include "malm/problems.hpp"

#include <cmath>

namespace malm {

CircleProblem::CircleProblem(double eps) : eps_(eps) {
  if (eps < 0.0) throw std::invalid_argument("CircleProblem: eps must be nonnegative");
}

double CircleProblem::objective(const Vector& x) const { return -x[0] - x[1]; }

Vector CircleProblem::objective_gradient(const Vector&) const {
  return Vector::Constant(2, -1.0);
}

Matrix CircleProblem::objective_hessian(const Vector&) const { return Matrix::Zero(2, 2); }

Vector CircleProblem::residual(const Vector& x) const {
  Vector c(2);
  c[0] = (x[0] + eps_) * (x[0] + eps_) + x[1] * x[1] - 2.0;
  c[1] = (x[0] - eps_) * (x[0] - eps_) + x[1] * x[1] - 2.0;
  return c;
}

Matrix CircleProblem::residual_jacobian(const Vector& x) const {
  Matrix jac(2, 2);
  jac << 2.0 * (x[0] + eps_), 2.0 * x[1], 2.0 * (x[0] - eps_), 2.0 * x[1];
  return jac;
}

Matrix CircleProblem::weighted_residual_hessian(const Vector&, const Vector& w) const {
  return 2.0 * (w[0] + w[1]) * Matrix::Identity(2, 2);
}

std::shared_ptr<PenaltyProblem> make_circle(double eps) {
  return std::make_shared<CircleProblem>(eps);
}

Vector CircleReference::x_a() {
  Vector v(2);
  v << 0.0, std::sqrt(2.0);
  return v;
}

Vector CircleReference::x_b() {
  Vector v(2);
  v << 1.0, 1.0;
  return v;
}

Vector CircleReference::x0() {
  Vector v(2);
  v << std::sqrt(2.0) * std::cos(3.0 * M_PI / 8.0), std::sqrt(2.0) * std::sin(3.0 * M_PI / 8.0);
  return v;
}

Vector CircleReference::lambda0() { return Vector::Constant(2, 0.4619); }

CircleMetrics metrics_circle(const Vector& x) {
  return {(x - CircleReference::x_a()).norm(), (x - CircleReference::x_b()).norm()};
}

OcpDefinition make_ocp_instance() {
  OcpDefinition ocp;
  ocp.horizon = M_PI / 2.0;
  ocp.initial_state = 0.0;
  ocp.running_cost = [](double t, double y, double u) {
    PointDerivatives d;
    d.value = y * y + std::cos(t) * u;
    d.dy = 2.0 * y;
    d.du = std::cos(t);
    d.dyy = 2.0;
    return d;
  };
  ocp.dynamics_rhs = [](double, double y, double u) {
    PointDerivatives d;
    d.value = 0.5 * y * y + u;
    d.dy = y;
    d.du = 1.0;
    d.dyy = 1.0;
    return d;
  };
  return ocp;
}

double ocp_reference_state(double t) { return std::sin(t) / (std::cos(t) - 2.0); }

double ocp_reference_control(double t) {
  const double denom = std::cos(t) - 2.0;
  const double ydot = (1.0 - 2.0 * std::cos(t)) / (denom * denom);
  const double y = ocp_reference_state(t);
  return ydot - 0.5 * y * y;
}

OcpMetrics metrics_ocp(const Transcription& trans, const Vector& x) {
  const auto problem = trans.assemble();
  return {problem->objective(x) - kOcpReferenceObjective, problem->residual(x).norm()};
}

}  // namespace malm
