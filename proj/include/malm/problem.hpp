#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace malm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when a user-supplied evaluator produces NaN/Inf. The message
/// names the offending evaluator so solves abort with a diagnostic
/// instead of silently propagating non-finite values.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// Smooth problem data (f, c) with first and second derivatives.
///
/// Instances are immutable after construction and safe to evaluate from
/// multiple threads. All evaluators must be deterministic for a fixed
/// instance.
class PenaltyProblem {
 public:
  virtual ~PenaltyProblem() = default;

  virtual int dim() const = 0;           // n, primal dimension
  virtual int residual_dim() const = 0;  // m, residual dimension

  virtual double objective(const Vector& x) const = 0;          // f(x)
  virtual Vector objective_gradient(const Vector& x) const = 0; // ∇f(x)
  virtual Matrix objective_hessian(const Vector& x) const = 0;  // ∇²f(x)

  virtual Vector residual(const Vector& x) const = 0;           // c(x), m-vector
  virtual Matrix residual_jacobian(const Vector& x) const = 0;  // m x n

  /// Weighted sum of residual Hessians, sum_i w_i ∇²c_i(x). Linear in w.
  virtual Matrix weighted_residual_hessian(const Vector& x, const Vector& w) const = 0;
};

/// Scalar objective with value, gradient and Hessian; the surface the
/// inner minimizer sees.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;
  virtual int dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual Matrix hessian(const Vector& x) const = 0;
};

/// Quadratic penalty objective  Phi_omega(x) = f(x) + |c(x)|^2 / (2 omega).
class PenaltyObjective final : public SmoothFunction {
 public:
  PenaltyObjective(const PenaltyProblem& problem, double omega);

  int dim() const override { return problem_.dim(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;

  double omega() const { return omega_; }
  const PenaltyProblem& problem() const { return problem_; }

 private:
  const PenaltyProblem& problem_;
  double omega_;
};

/// Augmented Lagrangian subproblem objective
///   Psi(x) = f(x) - lambda' c(x) + |c(x) + omega lambda|^2 / (2 (omega + rho)).
/// With omega = 0 this is the classical augmented Lagrangian with penalty rho.
class AugLagObjective final : public SmoothFunction {
 public:
  AugLagObjective(const PenaltyProblem& problem, double omega, double rho, Vector lambda);

  int dim() const override { return problem_.dim(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  Matrix hessian(const Vector& x) const override;

  /// Shifted multiplier estimate lambda - (c(x) + omega lambda) / (omega + rho);
  /// the gradient is ∇f - J' lambda_tilde.
  Vector shifted_multiplier(const Vector& c) const;

  double omega() const { return omega_; }
  double rho() const { return rho_; }
  const Vector& lambda() const { return lambda_; }

 private:
  const PenaltyProblem& problem_;
  double omega_;
  double rho_;
  Vector lambda_;
};

struct DerivativeCheckReport {
  double objective_gradient_error;
  double jacobian_error;
  double objective_hessian_error;
  double weighted_hessian_error;

  double max_error() const;
};

/// Compares analytic derivatives against central finite differences with
/// the given step. Relative errors, scaled by max(1, |analytic|).
DerivativeCheckReport check_derivatives(const PenaltyProblem& problem, const Vector& x,
                                        double step);

}  // namespace malm
