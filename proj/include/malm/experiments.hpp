#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "malm/problems.hpp"
#include "malm/solvers.hpp"

namespace malm {

enum class Family { kCircle, kOcp };
enum class Method { kQpm, kMalm };

const char* to_string(Family family);
const char* to_string(Method method);

/// A (omega, eps) or (omega, N) sweep over one problem family. Rows are
/// omega values (0 allowed; QPM cells are then n.a.), columns are eps
/// values for the circle or element counts for the control problem.
struct ExperimentGrid {
  Family family = Family::kCircle;
  std::vector<double> omegas;
  std::vector<double> columns;
  std::vector<Method> methods = {Method::kMalm, Method::kQpm};
  int k_max = 100;
  double tol = 1e-8;
  int quad_points = 8;
  bool parallel_cells = true;
};

enum class CellStatus { kConverged, kNotConverged, kNotApplicable, kFailed };

const char* to_string(CellStatus status);

struct CellResult {
  Method method;
  double omega;
  double column;
  CellStatus status = CellStatus::kNotApplicable;
  long inner_iters = 0;
  double metric1 = 0.0;  // e_A (circle) or delta_J (ocp)
  double metric2 = 0.0;  // e_B (circle) or r (ocp)
  Vector x;              // limit point (empty for n.a. cells)
};

/// Runs every (omega, column, method) cell. Cells are independent; failures
/// are recorded per cell and never abort the grid. Results are ordered by
/// (row, column, method) regardless of execution order.
std::vector<CellResult> run_grid(const ExperimentGrid& grid);

/// Runs one cell directly (used by the single-solve CLI path and tests).
CellResult run_cell(const ExperimentGrid& grid, double omega, double column, Method method);

/// Display payload `status;inner_iters;metric1;metric2` with metrics in
/// 2-significant-digit scientific notation; bare status for n.a. cells.
std::string format_cell(const CellResult& cell);

/// Writes one display CSV per method (<prefix>_<method>.csv, cells formatted
/// as in format_cell) plus a full-precision long-format CSV
/// (<prefix>_long.csv) with one row per cell.
void emit_csv(const ExperimentGrid& grid, const std::vector<CellResult>& results,
              const std::string& out_dir, const std::string& prefix);

/// Parses the key-value grid spec format:
///   family = circle | ocp
///   omega  = <space-separated values>
///   eps    = <values>       (circle columns)
///   N      = <values>       (ocp columns)
///   methods = qpm malm
///   kmax   = <count>
///   tol    = <value>
/// Lines starting with '#' are comments.
ExperimentGrid parse_grid_spec(const std::string& path);

/// Samples the discrete trajectory on a uniform grid and writes `t,y,u` rows.
void write_trajectory_csv(const Transcription& trans, const Vector& x, int samples,
                          std::ostream& out);

}  // namespace malm
