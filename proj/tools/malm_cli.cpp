#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "malm/experiments.hpp"

namespace {

using namespace malm;

int run_solve(const std::string& family, double eps, int num_elements, double omega,
              const std::string& method_name, double tol, int k_max, const std::string& out_path) {
  ExperimentGrid grid;
  grid.family = (family == "circle") ? Family::kCircle : Family::kOcp;
  grid.tol = tol;
  grid.k_max = k_max;
  const Method method = (method_name == "qpm") ? Method::kQpm : Method::kMalm;
  const double column = (grid.family == Family::kCircle) ? eps : num_elements;

  const CellResult cell = run_cell(grid, omega, column, method);
  std::cout << "status: " << to_string(cell.status) << "\n"
            << "inner_iters: " << cell.inner_iters << "\n";
  if (grid.family == Family::kCircle)
    std::cout << "e_A: " << cell.metric1 << "\ne_B: " << cell.metric2 << "\n";
  else
    std::cout << "delta_J: " << cell.metric1 << "\nr: " << cell.metric2 << "\n";

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open " << out_path << "\n";
      return 2;
    }
    out.precision(17);
    for (Eigen::Index i = 0; i < cell.x.size(); ++i) out << cell.x[i] << "\n";
  }
  return 0;
}

int run_sweep(const std::string& spec_path, const std::string& out_dir, bool serial) {
  ExperimentGrid grid = parse_grid_spec(spec_path);
  grid.parallel_cells = !serial;
  const auto results = run_grid(grid);
  emit_csv(grid, results, out_dir, to_string(grid.family));
  std::cout << "wrote " << results.size() << " cells to " << out_dir << "\n";
  return 0;
}

int run_trajectory(int num_elements, double omega, int samples, const std::string& method_name,
                   const std::string& out_path) {
  Transcription trans(make_ocp_instance(), num_elements);
  const auto problem = trans.assemble();
  const Vector x0 = Vector::Zero(trans.dim());

  SolveReport report;
  if (method_name == "malm") {
    MalmConfig cfg;
    cfg.omega = omega;
    report = malm_solve(*problem, cfg, x0, Vector::Zero(trans.residual_dim()));
  } else {
    TrmConfig trm;
    report = qpm_solve(*problem, omega, trm, x0);
  }
  if (report.status != SolveStatus::kConverged) {
    std::cerr << "solve did not converge (" << to_string(report.status) << ")\n";
  }

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot open " << out_path << "\n";
    return 2;
  }
  write_trajectory_csv(trans, report.x, samples, out);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penalty-program solver kit: QPM, ALM and modified ALM experiments"};
  app.require_subcommand(1);

  std::string family = "circle", method = "malm", out_path, spec_path, out_dir = ".";
  double eps = 0.0, omega = 0.1, tol = 1e-8;
  int num_elements = 16, k_max = 100, samples = 200;
  bool serial = false;

  auto* solve = app.add_subcommand("solve", "Run one instance with one method");
  solve->add_option("--problem", family, "circle or ocp")
      ->check(CLI::IsMember({"circle", "ocp"}))
      ->envname("MALM_PROBLEM");
  solve->add_option("--eps", eps, "circle inconsistency parameter")->envname("MALM_EPS");
  solve->add_option("--N", num_elements, "ocp element count")->envname("MALM_N");
  solve->add_option("--omega", omega, "penalty weight (0 = ALM)")->envname("MALM_OMEGA");
  solve->add_option("--method", method, "qpm or malm")
      ->check(CLI::IsMember({"qpm", "malm"}))
      ->envname("MALM_METHOD");
  solve->add_option("--tol", tol, "convergence tolerance")->envname("MALM_TOL");
  solve->add_option("--kmax", k_max, "outer iteration limit")->envname("MALM_KMAX");
  solve->add_option("--out", out_path, "file for the limit point")->envname("MALM_OUT");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid and write CSV tables");
  sweep->add_option("--grid-spec", spec_path, "grid spec file")
      ->required()
      ->envname("MALM_GRID_SPEC");
  sweep->add_option("--out-dir", out_dir, "output directory")->envname("MALM_OUT_DIR");
  sweep->add_flag("--serial", serial, "disable parallel cell execution")->envname("MALM_SERIAL");

  auto* traj = app.add_subcommand("trajectory", "Solve the ocp instance and dump t,y,u samples");
  traj->add_option("--N", num_elements, "element count")->envname("MALM_N");
  traj->add_option("--omega", omega, "penalty weight")->envname("MALM_OMEGA");
  traj->add_option("--samples", samples, "sample count")->envname("MALM_SAMPLES");
  traj->add_option("--method", method, "qpm or malm")
      ->check(CLI::IsMember({"qpm", "malm"}))
      ->envname("MALM_METHOD");
  traj->add_option("--out", out_path, "output CSV path")->required()->envname("MALM_OUT");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(family, eps, num_elements, omega, method, tol, k_max, out_path);
    if (sweep->parsed()) return run_sweep(spec_path, out_dir, serial);
    if (traj->parsed()) return run_trajectory(num_elements, omega, samples, method, out_path);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
