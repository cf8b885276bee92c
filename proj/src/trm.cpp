#include "malm/trm.hpp"

#include <lapacke.h>

#include <cmath>
#include <vector>

namespace malm {

const char* to_string(TrmStatus status) {
  switch (status) {
    case TrmStatus::kConverged: return "converged";
    case TrmStatus::kStalled: return "stalled";
    case TrmStatus::kMaxIters: return "max_iters";
    case TrmStatus::kShiftOverflow: return "shift_overflow";
    case TrmStatus::kLinearSolveFailure: return "linear_solve_failure";
  }
  return "unknown";
}

Vector shifted_solve(const Matrix& hess, const Vector& grad, double sigma) {
  const lapack_int n = static_cast<lapack_int>(hess.rows());
  Matrix a = hess;
  a.diagonal().array() += sigma;
  Vector d = -grad;
  std::vector<lapack_int> ipiv(static_cast<size_t>(n));
  const lapack_int info = LAPACKE_dsysv(LAPACK_COL_MAJOR, 'L', n, 1, a.data(), n, ipiv.data(),
                                        d.data(), n);
  if (info != 0 || !d.allFinite()) {
    throw SingularSystemError("shifted_solve: singular factorization at sigma=" +
                              std::to_string(sigma));
  }
  return d;
}

TrmReport trm_minimize(const SmoothFunction& phi, const Vector& x0, const TrmConfig& cfg) {
  TrmReport report;
  report.x = x0;

  double fx = phi.value(report.x);
  if (!std::isfinite(fx)) throw EvaluationError("trm_minimize: objective non-finite at x0");
  Vector grad = phi.gradient(report.x);
  report.grad_norm = grad.lpNorm<Eigen::Infinity>();

  while (report.grad_norm > cfg.tol) {
    if (report.iters >= cfg.max_iters) {
      report.status = TrmStatus::kMaxIters;
      return report;
    }
    const Matrix hess = phi.hessian(report.x);

    double sigma = cfg.sigma0;
    bool solved_once = false;
    bool accepted = false;
    bool tied = false;
    int consecutive_ties = 0;
    while (true) {
      sigma *= cfg.sigma_growth;
      if (sigma > cfg.sigma_max) break;
      Vector d;
      try {
        d = shifted_solve(hess, grad, sigma);
      } catch (const SingularSystemError&) {
        ++report.linear_solves;
        continue;
      }
      ++report.linear_solves;
      solved_once = true;
      const double f_trial = phi.value(report.x + d);
      if (f_trial < fx) {  // strict decrease; ties grow sigma
        report.x += d;
        fx = f_trial;
        accepted = true;
        break;
      }
      if (f_trial == fx) {
        tied = true;
        // Three tied decades in a row: larger shifts only shrink the step
        // further, so no certifiable decrease is left at this resolution.
        if (++consecutive_ties >= 3) break;
      } else {
        consecutive_ties = 0;
      }
    }
    if (!accepted) {
      report.status = tied ? TrmStatus::kStalled
                           : (solved_once ? TrmStatus::kShiftOverflow
                                          : TrmStatus::kLinearSolveFailure);
      return report;
    }

    ++report.iters;
    grad = phi.gradient(report.x);
    report.grad_norm = grad.lpNorm<Eigen::Infinity>();
  }

  report.status = TrmStatus::kConverged;
  return report;
}

}  // namespace malm
