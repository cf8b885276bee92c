#include "malm/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace malm {

const char* to_string(Family family) {
  return family == Family::kCircle ? "circle" : "ocp";
}

const char* to_string(Method method) { return method == Method::kQpm ? "qpm" : "malm"; }

const char* to_string(CellStatus status) {
  switch (status) {
    case CellStatus::kConverged: return "converged";
    case CellStatus::kNotConverged: return "n.c.";
    case CellStatus::kNotApplicable: return "n.a.";
    case CellStatus::kFailed: return "failed";
  }
  return "unknown";
}

CellResult run_cell(const ExperimentGrid& grid, double omega, double column, Method method) {
  CellResult cell;
  cell.method = method;
  cell.omega = omega;
  cell.column = column;

  if (method == Method::kQpm && omega <= 0.0) {
    cell.status = CellStatus::kNotApplicable;
    return cell;
  }

  std::shared_ptr<PenaltyProblem> problem;
  std::unique_ptr<Transcription> trans;
  Vector x0, lambda0;
  if (grid.family == Family::kCircle) {
    problem = make_circle(column);
    x0 = CircleReference::x0();
    lambda0 = CircleReference::lambda0();
  } else {
    trans = std::make_unique<Transcription>(make_ocp_instance(), static_cast<int>(column),
                                            grid.quad_points);
    problem = trans->assemble();
    x0 = Vector::Zero(trans->dim());
    lambda0 = Vector::Zero(trans->residual_dim());
  }

  SolveReport report;
  try {
    if (method == Method::kQpm) {
      TrmConfig trm;
      trm.tol = grid.tol;
      report = qpm_solve(*problem, omega, trm, x0);
    } else {
      MalmConfig cfg;
      cfg.omega = omega;
      cfg.tol = grid.tol;
      cfg.k_max = grid.k_max;
      report = malm_solve(*problem, cfg, x0, lambda0);
    }
  } catch (const std::exception&) {
    cell.status = CellStatus::kFailed;
    return cell;
  }

  cell.inner_iters = report.inner_iters_total;
  cell.x = report.x;
  switch (report.status) {
    case SolveStatus::kConverged: cell.status = CellStatus::kConverged; break;
    case SolveStatus::kNotConverged: cell.status = CellStatus::kNotConverged; break;
    case SolveStatus::kSubproblemFailure: cell.status = CellStatus::kFailed; break;
  }

  if (grid.family == Family::kCircle) {
    const CircleMetrics m = metrics_circle(report.x);
    cell.metric1 = m.e_a;
    cell.metric2 = m.e_b;
  } else {
    const OcpMetrics m = metrics_ocp(*trans, report.x);
    cell.metric1 = m.delta_j;
    cell.metric2 = m.r;
  }
  return cell;
}

std::vector<CellResult> run_grid(const ExperimentGrid& grid) {
  struct Task {
    double omega, column;
    Method method;
  };
  std::vector<Task> tasks;
  for (double omega : grid.omegas)
    for (double column : grid.columns)
      for (Method method : grid.methods) tasks.push_back({omega, column, method});

  std::vector<CellResult> results(tasks.size());
  const int count = static_cast<int>(tasks.size());
#pragma omp parallel for schedule(dynamic) if (grid.parallel_cells)
  for (int i = 0; i < count; ++i) {
    results[i] = run_cell(grid, tasks[i].omega, tasks[i].column, tasks[i].method);
  }
  return results;
}

namespace {

std::string sci2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1e", v);
  return buf;
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string column_label(const ExperimentGrid& grid, double column) {
  if (grid.family == Family::kOcp) return std::to_string(static_cast<long>(column));
  return sci2(column);
}

}  // namespace

std::string format_cell(const CellResult& cell) {
  if (cell.status == CellStatus::kNotApplicable) return to_string(cell.status);
  std::ostringstream out;
  out << to_string(cell.status) << ';' << cell.inner_iters << ';' << sci2(cell.metric1) << ';'
      << sci2(cell.metric2);
  return out.str();
}

void emit_csv(const ExperimentGrid& grid, const std::vector<CellResult>& results,
              const std::string& out_dir, const std::string& prefix) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("emit_csv: cannot create " + out_dir + ": " + ec.message());

  auto open = [](const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path.string());
    return out;
  };

  auto find = [&](double omega, double column, Method method) -> const CellResult* {
    for (const CellResult& cell : results)
      if (cell.method == method && cell.omega == omega && cell.column == column) return &cell;
    return nullptr;
  };

  for (Method method : grid.methods) {
    auto out = open(fs::path(out_dir) / (prefix + "_" + to_string(method) + ".csv"));
    out << "omega";
    for (double column : grid.columns) out << ',' << column_label(grid, column);
    out << '\n';
    for (double omega : grid.omegas) {
      out << sci2(omega);
      for (double column : grid.columns) {
        const CellResult* cell = find(omega, column, method);
        out << ',' << (cell ? format_cell(*cell) : "");
      }
      out << '\n';
    }
  }

  auto out = open(fs::path(out_dir) / (prefix + "_long.csv"));
  out << "family,method,omega,column,status,inner_iters,metric1,metric2\n";
  for (const CellResult& cell : results) {
    out << to_string(grid.family) << ',' << to_string(cell.method) << ',' << full(cell.omega)
        << ',' << full(cell.column) << ',' << to_string(cell.status) << ',' << cell.inner_iters
        << ',' << full(cell.metric1) << ',' << full(cell.metric2) << '\n';
  }
}

ExperimentGrid parse_grid_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_grid_spec: cannot open " + path);

  ExperimentGrid grid;
  grid.omegas.clear();
  grid.columns.clear();
  bool have_family = false, have_columns = false;

  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::istringstream key_in(line.substr(0, eq));
    std::string key;
    key_in >> key;
    std::istringstream value_in(line.substr(eq + 1));

    auto read_doubles = [&value_in] {
      std::vector<double> values;
      double v;
      while (value_in >> v) values.push_back(v);
      return values;
    };

    if (key == "family") {
      std::string value;
      value_in >> value;
      if (value == "circle") grid.family = Family::kCircle;
      else if (value == "ocp") grid.family = Family::kOcp;
      else throw std::runtime_error("parse_grid_spec: unknown family '" + value + "'");
      have_family = true;
    } else if (key == "omega") {
      grid.omegas = read_doubles();
    } else if (key == "eps" || key == "N") {
      grid.columns = read_doubles();
      have_columns = true;
    } else if (key == "methods") {
      grid.methods.clear();
      std::string value;
      while (value_in >> value) {
        if (value == "qpm") grid.methods.push_back(Method::kQpm);
        else if (value == "malm") grid.methods.push_back(Method::kMalm);
        else throw std::runtime_error("parse_grid_spec: unknown method '" + value + "'");
      }
    } else if (key == "kmax") {
      value_in >> grid.k_max;
    } else if (key == "tol") {
      value_in >> grid.tol;
    } else if (key == "quad_points") {
      value_in >> grid.quad_points;
    } else {
      throw std::runtime_error("parse_grid_spec: unknown key '" + key + "'");
    }
  }
  if (!have_family || !have_columns)
    throw std::runtime_error("parse_grid_spec: spec must set family and eps/N columns");
  return grid;
}

void write_trajectory_csv(const Transcription& trans, const Vector& x, int samples,
                          std::ostream& out) {
  if (samples < 2) throw std::invalid_argument("write_trajectory_csv: need at least 2 samples");
  const Vector y = trans.state_nodals(x);
  const Vector u = trans.control_nodals(x);
  const double horizon = trans.mesh().horizon;
  out << "t,y,u\n";
  for (int i = 0; i < samples; ++i) {
    const double t = horizon * i / (samples - 1);
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", t,
                  eval_basis(trans.mesh(), y, t).value, eval_basis(trans.mesh(), u, t).value);
    out << buf;
  }
}

}  // namespace malm
