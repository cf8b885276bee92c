#pragma once

#include "malm/problem.hpp"

namespace malm {

/// Thrown by shifted_solve when the factorization of H + sigma*I breaks
/// down; the caller grows sigma and retries.
class SingularSystemError : public std::runtime_error {
 public:
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

struct TrmConfig {
  double tol = 1e-8;          // infinity-norm gradient tolerance
  double sigma0 = 1e-11;      // shift seed; first attempted shift is sigma_growth * sigma0
  double sigma_growth = 10.0;
  double sigma_max = 1e30;    // overflow guard
  int max_iters = 10000;
};

/// kStalled: the shift ladder only produced trial values equal to the current
/// one, i.e. the objective is flat to machine precision around the iterate.
/// The gradient test may still be unmet; grad_norm tells by how much.
enum class TrmStatus { kConverged, kStalled, kMaxIters, kShiftOverflow, kLinearSolveFailure };

const char* to_string(TrmStatus status);

struct TrmReport {
  Vector x;
  int iters = 0;              // accepted outer steps
  int linear_solves = 0;
  TrmStatus status = TrmStatus::kMaxIters;
  double grad_norm = 0.0;     // |grad(x)|_inf at exit
};

/// Solves (H + sigma*I) d = -g with a dense symmetric indefinite
/// (Bunch-Kaufman) factorization.
Vector shifted_solve(const Matrix& hess, const Vector& grad, double sigma);

/// Regularized Newton descent: per outer step the diagonal shift grows by
/// sigma_growth until the step strictly decreases the objective; stops when
/// the gradient infinity norm drops to cfg.tol.
TrmReport trm_minimize(const SmoothFunction& phi, const Vector& x0, const TrmConfig& cfg);

}  // namespace malm
