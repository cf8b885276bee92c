#include "malm/transcription.hpp"

#include <cmath>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace malm {

BasisSample eval_basis(const Mesh& mesh, const Vector& nodal_values, double t) {
  if (nodal_values.size() != mesh.num_elements + 1)
    throw std::invalid_argument("eval_basis: expected N+1 nodal values");
  if (t < 0.0 || t > mesh.horizon)
    throw std::out_of_range("eval_basis: t outside horizon");
  const double h = mesh.width();
  int e = static_cast<int>(t / h);
  e = std::min(e, mesh.num_elements - 1);
  const double local = (t - mesh.node(e)) / h;
  const double left = nodal_values[e], right = nodal_values[e + 1];
  return {left + (right - left) * local, (right - left) / h};
}

Transcription::Transcription(OcpDefinition ocp, int num_elements, int quad_points)
    : ocp_(std::move(ocp)),
      mesh_{num_elements, ocp_.horizon},
      reference_rule_(gauss_legendre(quad_points)) {
  if (num_elements < 1) throw std::invalid_argument("Transcription: need at least one element");
}

double Transcription::global_node(int j) const {
  const int q = reference_rule_.size();
  const int e = j / q, p = j % q;
  return mesh_.node(e) + mesh_.width() * 0.5 * (reference_rule_.nodes[p] + 1.0);
}

double Transcription::global_weight(int j) const {
  return reference_rule_.weights[j % reference_rule_.size()] * mesh_.width() * 0.5;
}

Vector Transcription::state_nodals(const Vector& x) const {
  const int n_el = mesh_.num_elements;
  Vector nodal(n_el + 1);
  nodal[0] = ocp_.initial_state;
  nodal.tail(n_el) = x.head(n_el);
  return nodal;
}

Vector Transcription::control_nodals(const Vector& x) const {
  return x.tail(mesh_.num_elements + 1);
}

namespace {

// Sample of the discrete trajectory at one quadrature point of one element,
// together with the local-to-global dof map. Local dof order:
//   0: left state node, 1: right state node, 2: left control, 3: right control.
// dof[0] is -1 on the first element (initial state fixed and removed).
struct PointSample {
  double t, alpha;
  double y, ydot, u;
  int dof[4];
  double basis[4];       // interpolation weights of the four local dofs
  double state_slope[4]; // d(ydot)/d(local dof)
};

class TranscribedProblem final : public PenaltyProblem {
 public:
  TranscribedProblem(OcpDefinition ocp, Mesh mesh, QuadratureRule rule, AssemblyMode mode)
      : ocp_(std::move(ocp)), mesh_(mesh), rule_(std::move(rule)), mode_(mode) {}

  int dim() const override { return 2 * mesh_.num_elements + 1; }
  int residual_dim() const override { return mesh_.num_elements * rule_.size(); }

  double objective(const Vector& x) const override;
  Vector objective_gradient(const Vector& x) const override;
  Matrix objective_hessian(const Vector& x) const override;
  Vector residual(const Vector& x) const override;
  Matrix residual_jacobian(const Vector& x) const override;
  Matrix weighted_residual_hessian(const Vector& x, const Vector& w) const override;

 private:
  PointSample sample(const Vector& x, int element, int point) const;
  bool parallel() const { return mode_ == AssemblyMode::kParallel; }

  OcpDefinition ocp_;
  Mesh mesh_;
  QuadratureRule rule_;
  AssemblyMode mode_;
};

PointSample Transcribed_sample(const OcpDefinition& ocp, const Mesh& mesh,
                               const QuadratureRule& rule, const Vector& x, int e, int p) {
  const int n_el = mesh.num_elements;
  const double h = mesh.width();
  const double phi1 = 0.5 * (rule.nodes[p] + 1.0);
  const double phi0 = 1.0 - phi1;

  PointSample s;
  s.t = mesh.node(e) + h * phi1;
  s.alpha = rule.weights[p] * h * 0.5;
  s.dof[0] = e - 1;          // y(e h); -1 means the fixed initial node
  s.dof[1] = e;              // y((e+1) h)
  s.dof[2] = n_el + e;       // u(e h)
  s.dof[3] = n_el + e + 1;   // u((e+1) h)
  s.basis[0] = phi0;
  s.basis[1] = phi1;
  s.basis[2] = phi0;
  s.basis[3] = phi1;
  s.state_slope[0] = -1.0 / h;
  s.state_slope[1] = 1.0 / h;
  s.state_slope[2] = 0.0;
  s.state_slope[3] = 0.0;

  const double y_left = (e == 0) ? ocp.initial_state : x[e - 1];
  const double y_right = x[e];
  s.y = y_left * phi0 + y_right * phi1;
  s.ydot = (y_right - y_left) / h;
  s.u = x[s.dof[2]] * phi0 + x[s.dof[3]] * phi1;
  return s;
}

PointSample TranscribedProblem::sample(const Vector& x, int element, int point) const {
  return Transcribed_sample(ocp_, mesh_, rule_, x, element, point);
}

double TranscribedProblem::objective(const Vector& x) const {
  const int n_el = mesh_.num_elements;
  const int q = rule_.size();
  Vector element_sum = Vector::Zero(n_el);
#pragma omp parallel for schedule(static) if (parallel())
  for (int e = 0; e < n_el; ++e) {
    double acc = 0.0;
    for (int p = 0; p < q; ++p) {
      const PointSample s = sample(x, e, p);
      acc += s.alpha * ocp_.running_cost(s.t, s.y, s.u).value;
    }
    element_sum[e] = acc;
  }
  // serial reduction keeps the result independent of thread count
  return element_sum.sum();
}

Vector TranscribedProblem::objective_gradient(const Vector& x) const {
  const int n_el = mesh_.num_elements;
  const int q = rule_.size();
  Matrix local(4, n_el);
  local.setZero();
#pragma omp parallel for schedule(static) if (parallel())
  for (int e = 0; e < n_el; ++e) {
    for (int p = 0; p < q; ++p) {
      const PointSample s = sample(x, e, p);
      const PointDerivatives cost = ocp_.running_cost(s.t, s.y, s.u);
      local(0, e) += s.alpha * cost.dy * s.basis[0];
      local(1, e) += s.alpha * cost.dy * s.basis[1];
      local(2, e) += s.alpha * cost.du * s.basis[2];
      local(3, e) += s.alpha * cost.du * s.basis[3];
    }
  }
  Vector grad = Vector::Zero(dim());
  for (int e = 0; e < n_el; ++e) {
    if (e > 0) grad[e - 1] += local(0, e);
    grad[e] += local(1, e);
    grad[n_el + e] += local(2, e);
    grad[n_el + e + 1] += local(3, e);
  }
  return grad;
}

Matrix TranscribedProblem::objective_hessian(const Vector& x) const {
  const int n_el = mesh_.num_elements;
  const int q = rule_.size();
  std::vector<Eigen::Matrix4d> local(n_el, Eigen::Matrix4d::Zero());
#pragma omp parallel for schedule(static) if (parallel())
  for (int e = 0; e < n_el; ++e) {
    for (int p = 0; p < q; ++p) {
      const PointSample s = sample(x, e, p);
      const PointDerivatives cost = ocp_.running_cost(s.t, s.y, s.u);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const bool a_state = a < 2, b_state = b < 2;
          const double second = a_state ? (b_state ? cost.dyy : cost.dyu)
                                        : (b_state ? cost.dyu : cost.duu);
          local[e](a, b) += s.alpha * second * s.basis[a] * s.basis[b];
        }
      }
    }
  }
  Matrix hess = Matrix::Zero(dim(), dim());
  for (int e = 0; e < n_el; ++e) {
    const int dof[4] = {e - 1, e, n_el + e, n_el + e + 1};
    for (int a = 0; a < 4; ++a) {
      if (dof[a] < 0) continue;
      for (int b = 0; b < 4; ++b) {
        if (dof[b] < 0) continue;
        hess(dof[a], dof[b]) += local[e](a, b);
      }
    }
  }
  return hess;
}

Vector TranscribedProblem::residual(const Vector& x) const {
  const int n_el = mesh_.num_elements;
  const int q = rule_.size();
  Vector c(residual_dim());
#pragma omp parallel for schedule(static) if (parallel())
  for (int e = 0; e < n_el; ++e) {
    for (int p = 0; p < q; ++p) {
      const PointSample s = sample(x, e, p);
      const double rhs = ocp_.dynamics_rhs(s.t, s.y, s.u).value;
      c[e * q + p] = std::sqrt(s.alpha) * (-s.ydot + rhs);
    }
  }
  return c;
}

Matrix TranscribedProblem::residual_jacobian(const Vector& x) const {
  const int n_el = mesh_.num_elements;
  const int q = rule_.size();
  Matrix jac = Matrix::Zero(residual_dim(), dim());
#pragma omp parallel for schedule(static) if (parallel())
  for (int e = 0; e < n_el; ++e) {
    for (int p = 0; p < q; ++p) {
      const PointSample s = sample(x, e, p);
      const PointDerivatives rhs = ocp_.dynamics_rhs(s.t, s.y, s.u);
      const double sqa = std::sqrt(s.alpha);
      const int row = e * q + p;
      for (int a = 0; a < 4; ++a) {
        if (s.dof[a] < 0) continue;
        const double first = (a < 2) ? rhs.dy : rhs.du;
        jac(row, s.dof[a]) = sqa * (-s.state_slope[a] + first * s.basis[a]);
      }
    }
  }
  return jac;
}

Matrix TranscribedProblem::weighted_residual_hessian(const Vector& x, const Vector& w) const {
  const int n_el = mesh_.num_elements;
  const int q = rule_.size();
  if (w.size() != residual_dim())
    throw std::invalid_argument("weighted_residual_hessian: weight dimension mismatch");
  std::vector<Eigen::Matrix4d> local(n_el, Eigen::Matrix4d::Zero());
#pragma omp parallel for schedule(static) if (parallel())
  for (int e = 0; e < n_el; ++e) {
    for (int p = 0; p < q; ++p) {
      const PointSample s = sample(x, e, p);
      const PointDerivatives rhs = ocp_.dynamics_rhs(s.t, s.y, s.u);
      const double scale = w[e * q + p] * std::sqrt(s.alpha);
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const bool a_state = a < 2, b_state = b < 2;
          const double second = a_state ? (b_state ? rhs.dyy : rhs.dyu)
                                        : (b_state ? rhs.dyu : rhs.duu);
          local[e](a, b) += scale * second * s.basis[a] * s.basis[b];
        }
      }
    }
  }
  Matrix hess = Matrix::Zero(dim(), dim());
  for (int e = 0; e < n_el; ++e) {
    const int dof[4] = {e - 1, e, n_el + e, n_el + e + 1};
    for (int a = 0; a < 4; ++a) {
      if (dof[a] < 0) continue;
      for (int b = 0; b < 4; ++b) {
        if (dof[b] < 0) continue;
        hess(dof[a], dof[b]) += local[e](a, b);
      }
    }
  }
  return hess;
}

}  // namespace

std::shared_ptr<PenaltyProblem> Transcription::assemble(AssemblyMode mode) const {
  return std::make_shared<TranscribedProblem>(ocp_, mesh_, reference_rule_, mode);
}

}  // namespace malm
