#pragma once

#include <vector>

#include "malm/problem.hpp"
#include "malm/trm.hpp"

namespace malm {

struct MalmConfig {
  double omega = 0.0;   // penalty weight of the target program; 0 gives classical ALM
  double tol = 1e-8;
  double rho0 = 0.1;
  double c_rho = 0.1;   // geometric decrease factor, in (0,1)
  int k_max = 100;
  double rho_min = 1e-12;
  TrmConfig trm;
};

/// Multiplier estimate and proximal penalty carried across outer iterations.
struct DualState {
  Vector lambda;
  double rho;
};

enum class SolveStatus { kConverged, kNotConverged, kSubproblemFailure };

const char* to_string(SolveStatus status);

struct OuterRecord {
  int inner_iters;       // TRM iterations spent in this outer iteration (incl. final test)
  double dual_residual;  // |c(x_k) + omega lambda_k|_inf after the update
  double merit;          // Psi_k (MALM) or Phi_omega (QPM) at x_k
};

struct SolveReport {
  Vector x;
  Vector lambda;           // empty for QPM unless diagnostics requested
  int outer_iters = 0;
  long inner_iters_total = 0;  // sum of all TRM iterations, the tabulated quantity
  SolveStatus status = SolveStatus::kNotConverged;
  TrmStatus subproblem_status = TrmStatus::kConverged;  // last TRM outcome
  int failed_outer = 0;    // outer index k at which the subproblem failed, 0 if none
  double rho_final = 0.0;  // proximal penalty at exit (MALM only)
  std::vector<OuterRecord> history;
};

/// Modified augmented Lagrangian method: minimizes Psi_k for fixed lambda,
/// updates lambda <- lambda - (c + omega lambda) / (omega + rho), stops when
/// |c + omega lambda|_inf <= tol with a cleanly converged subproblem, and
/// shrinks rho after unsuccessful outer iterations. Stalled subproblems
/// (objective flat to machine precision) keep their best iterate and the
/// outer loop continues. omega = 0 reduces to classical ALM.
SolveReport malm_solve(const PenaltyProblem& problem, const MalmConfig& cfg, const Vector& x0,
                       const Vector& lambda0);

/// Quadratic penalty method: one TRM run on Phi_omega. Rejects omega <= 0.
/// lambda is reported as -c(x)/omega for diagnostics.
SolveReport qpm_solve(const PenaltyProblem& problem, double omega, const TrmConfig& trm,
                      const Vector& x0);

struct KktResidual {
  double stationarity;  // |grad f - J' lambda|_inf
  double feasibility;   // |c + omega lambda|_inf
};

KktResidual kkt_residual(const PenaltyProblem& problem, const Vector& x, const Vector& lambda,
                         double omega);

}  // namespace malm
