#include "malm/problem.hpp"

#include <algorithm>
#include <cmath>

namespace malm {

namespace {

void require_finite_scalar(double v, const char* who) {
  if (!std::isfinite(v)) throw EvaluationError(std::string("non-finite value from ") + who);
}

void require_finite(const Vector& v, const char* who) {
  if (!v.allFinite()) throw EvaluationError(std::string("non-finite value from ") + who);
}

}  // namespace

PenaltyObjective::PenaltyObjective(const PenaltyProblem& problem, double omega)
    : problem_(problem), omega_(omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("PenaltyObjective: omega must be positive");
}

double PenaltyObjective::value(const Vector& x) const {
  const double f = problem_.objective(x);
  require_finite_scalar(f, "objective f");
  const Vector c = problem_.residual(x);
  require_finite(c, "residual c");
  return f + c.squaredNorm() / (2.0 * omega_);
}

Vector PenaltyObjective::gradient(const Vector& x) const {
  const Vector c = problem_.residual(x);
  require_finite(c, "residual c");
  const Matrix jac = problem_.residual_jacobian(x);
  return problem_.objective_gradient(x) + jac.transpose() * c / omega_;
}

Matrix PenaltyObjective::hessian(const Vector& x) const {
  const Vector c = problem_.residual(x);
  require_finite(c, "residual c");
  const Matrix jac = problem_.residual_jacobian(x);
  return problem_.objective_hessian(x) +
         (jac.transpose() * jac + problem_.weighted_residual_hessian(x, c)) / omega_;
}

AugLagObjective::AugLagObjective(const PenaltyProblem& problem, double omega, double rho,
                                 Vector lambda)
    : problem_(problem), omega_(omega), rho_(rho), lambda_(std::move(lambda)) {
  if (!(omega_ + rho_ > 0.0)) throw std::invalid_argument("AugLagObjective: omega + rho must be positive");
  if (!lambda_.allFinite()) throw std::invalid_argument("AugLagObjective: lambda must be finite");
}

Vector AugLagObjective::shifted_multiplier(const Vector& c) const {
  return lambda_ - (c + omega_ * lambda_) / (omega_ + rho_);
}

double AugLagObjective::value(const Vector& x) const {
  const double f = problem_.objective(x);
  require_finite_scalar(f, "objective f");
  const Vector c = problem_.residual(x);
  require_finite(c, "residual c");
  return f - lambda_.dot(c) + (c + omega_ * lambda_).squaredNorm() / (2.0 * (omega_ + rho_));
}

Vector AugLagObjective::gradient(const Vector& x) const {
  const Vector c = problem_.residual(x);
  require_finite(c, "residual c");
  const Matrix jac = problem_.residual_jacobian(x);
  return problem_.objective_gradient(x) - jac.transpose() * shifted_multiplier(c);
}

Matrix AugLagObjective::hessian(const Vector& x) const {
  const Vector c = problem_.residual(x);
  require_finite(c, "residual c");
  const Matrix jac = problem_.residual_jacobian(x);
  return problem_.objective_hessian(x) -
         problem_.weighted_residual_hessian(x, shifted_multiplier(c)) +
         jac.transpose() * jac / (omega_ + rho_);
}

double DerivativeCheckReport::max_error() const {
  return std::max({objective_gradient_error, jacobian_error, objective_hessian_error,
                   weighted_hessian_error});
}

DerivativeCheckReport check_derivatives(const PenaltyProblem& problem, const Vector& x,
                                        double step) {
  if (!(step > 0.0)) throw std::invalid_argument("check_derivatives: step must be positive");
  const int n = problem.dim();
  const int m = problem.residual_dim();

  auto rel = [](double err, double scale) { return err / std::max(1.0, scale); };

  Vector grad_fd(n);
  Matrix jac_fd(m, n);
  Matrix hess_fd(n, n);
  Matrix whess_fd(n, n);
  const Vector w = Vector::Ones(m);

  for (int i = 0; i < n; ++i) {
    Vector xp = x, xm = x;
    xp[i] += step;
    xm[i] -= step;
    grad_fd[i] = (problem.objective(xp) - problem.objective(xm)) / (2.0 * step);
    jac_fd.col(i) = (problem.residual(xp) - problem.residual(xm)) / (2.0 * step);
    hess_fd.col(i) =
        (problem.objective_gradient(xp) - problem.objective_gradient(xm)) / (2.0 * step);
    whess_fd.col(i) = ((problem.residual_jacobian(xp) - problem.residual_jacobian(xm)).transpose() * w) /
                      (2.0 * step);
  }

  const Vector grad = problem.objective_gradient(x);
  const Matrix jac = problem.residual_jacobian(x);
  const Matrix hess = problem.objective_hessian(x);
  const Matrix whess = problem.weighted_residual_hessian(x, w);

  DerivativeCheckReport report;
  report.objective_gradient_error =
      rel((grad - grad_fd).lpNorm<Eigen::Infinity>(), grad.lpNorm<Eigen::Infinity>());
  report.jacobian_error =
      rel((jac - jac_fd).lpNorm<Eigen::Infinity>(), jac.lpNorm<Eigen::Infinity>());
  report.objective_hessian_error =
      rel((hess - hess_fd).lpNorm<Eigen::Infinity>(), hess.lpNorm<Eigen::Infinity>());
  report.weighted_hessian_error =
      rel((whess - whess_fd).lpNorm<Eigen::Infinity>(), whess.lpNorm<Eigen::Infinity>());
  return report;
}

}  // namespace malm
