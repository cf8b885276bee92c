#include <doctest.h>

#include <cmath>
#include <random>

#include "fd_oracle.hpp"
#include "malm/problems.hpp"

using namespace malm;
using namespace malm::testing;

namespace {

Vector random_coeffs(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = dist(rng);
  return x;
}

// Interpolant of the analytic solution in the coefficient layout.
Vector analytic_interpolant(const Transcription& trans) {
  const int n_el = trans.mesh().num_elements;
  Vector x(trans.dim());
  for (int i = 1; i <= n_el; ++i) x[i - 1] = ocp_reference_state(trans.mesh().node(i));
  for (int i = 0; i <= n_el; ++i) x[n_el + i] = ocp_reference_control(trans.mesh().node(i));
  return x;
}

}  // namespace

TEST_CASE("basis interpolates constants exactly") {
  Mesh mesh{4, M_PI / 2.0};
  const Vector nodal = Vector::Constant(5, 3.25);
  for (double t : {0.0, 0.3, 1.0, M_PI / 2.0}) {
    const BasisSample s = eval_basis(mesh, nodal, t);
    CHECK(s.value == doctest::Approx(3.25).epsilon(1e-15));
    CHECK(s.slope == 0.0);
  }
}

TEST_CASE("basis interpolates the identity") {
  Mesh mesh{5, 2.0};
  Vector nodal(6);
  for (int i = 0; i <= 5; ++i) nodal[i] = mesh.node(i);
  for (double t : {0.1, 0.77, 1.5, 1.99}) {
    const BasisSample s = eval_basis(mesh, nodal, t);
    CHECK(s.value == doctest::Approx(t).epsilon(1e-14));
    CHECK(s.slope == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("hat-function expansion on a two-element mesh") {
  Mesh mesh{2, M_PI / 2.0};
  const double h = mesh.width();
  Vector nodal(3);
  nodal << 0.0, 1.0, 0.0;  // fixed initial node plus state coeffs [1, 0]
  const BasisSample s = eval_basis(mesh, nodal, 1.5 * h);
  CHECK(s.value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.slope == doctest::Approx(-1.0 / h).epsilon(1e-14));
}

TEST_CASE("times outside the horizon are rejected") {
  Mesh mesh{2, 1.0};
  CHECK_THROWS_AS(eval_basis(mesh, Vector::Zero(3), -0.1), std::out_of_range);
  CHECK_THROWS_AS(eval_basis(mesh, Vector::Zero(3), 1.1), std::out_of_range);
}

TEST_CASE("the zero trajectory satisfies the dynamics exactly") {
  Transcription trans(make_ocp_instance(), 8);
  auto problem = trans.assemble();
  const Vector x = Vector::Zero(problem->dim());
  CHECK(problem->objective(x) == 0.0);
  CHECK(problem->residual(x).norm() == 0.0);
}

TEST_CASE("objective at the analytic interpolant approaches the reference value") {
  double previous = 1.0;
  for (int n_el : {8, 32, 128}) {
    Transcription trans(make_ocp_instance(), n_el);
    auto problem = trans.assemble();
    const double gap = std::abs(problem->objective(analytic_interpolant(trans)) -
                                kOcpReferenceObjective);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous <= 1e-3);  // O(h^2) at N = 128
}

TEST_CASE("two-element assembly equals a hand-coded oracle") {
  const int n_el = 2, q = 8;
  Transcription trans(make_ocp_instance(), n_el, q);
  auto problem = trans.assemble();
  const Vector x = random_coeffs(trans.dim(), 23);

  // direct 5-variable evaluation: x = (Y1, Y2, U0, U1, U2), h = pi/4
  const double h = M_PI / 4.0;
  const QuadratureRule rule = gauss_legendre(q);
  auto y_at = [&](double t) {
    if (t <= h) return x[0] * (t / h);
    return x[0] + (x[1] - x[0]) * ((t - h) / h);
  };
  auto ydot_at = [&](double t) { return (t <= h ? x[0] : x[1] - x[0]) / h; };
  auto u_at = [&](double t) {
    if (t <= h) return x[2] + (x[3] - x[2]) * (t / h);
    return x[3] + (x[4] - x[3]) * ((t - h) / h);
  };

  double f_oracle = 0.0;
  Vector c_oracle(n_el * q);
  for (int e = 0; e < n_el; ++e) {
    for (int p = 0; p < q; ++p) {
      const double t = e * h + 0.5 * h * (rule.nodes[p] + 1.0);
      const double alpha = 0.5 * h * rule.weights[p];
      f_oracle += alpha * (y_at(t) * y_at(t) + std::cos(t) * u_at(t));
      c_oracle[e * q + p] =
          std::sqrt(alpha) * (-ydot_at(t) + 0.5 * y_at(t) * y_at(t) + u_at(t));
    }
  }

  CHECK(rel_err(problem->objective(x), f_oracle) <= 1e-12);
  CHECK(rel_err(problem->residual(x), c_oracle) <= 1e-12);
}

TEST_CASE("assembled derivatives pass finite-difference checks") {
  for (int n_el : {2, 4, 16}) {
    Transcription trans(make_ocp_instance(), n_el);
    auto problem = trans.assemble();
    const Vector x = random_coeffs(trans.dim(), 100 + n_el);
    CHECK(check_derivatives(*problem, x, 1e-6).max_error() <= 1e-5);
  }
}

TEST_CASE("Jacobian rows touch only the dofs of the owning element") {
  const int n_el = 4, q = 8;
  Transcription trans(make_ocp_instance(), n_el, q);
  auto problem = trans.assemble();
  const Matrix jac = problem->residual_jacobian(random_coeffs(trans.dim(), 42));
  for (int row = 0; row < problem->residual_dim(); ++row) {
    const int e = row / q;
    for (int col = 0; col < problem->dim(); ++col) {
      const bool state_dof = col < n_el;
      const int node = state_dof ? col + 1 : col - n_el;
      const bool in_element = state_dof ? (node == e || node == e + 1)
                                        : (node == e || node == e + 1);
      if (!in_element) CHECK(jac(row, col) == 0.0);
    }
  }
}

TEST_CASE("residual norm is invariant under quadrature refinement") {
  const Vector x = random_coeffs(2 * 6 + 1, 77);
  Transcription coarse(make_ocp_instance(), 6, 8);
  Transcription fine(make_ocp_instance(), 6, 16);
  const double r8 = coarse.assemble()->residual(x).norm();
  const double r16 = fine.assemble()->residual(x).norm();
  CHECK(std::abs(r8 - r16) <= 1e-10);
}

TEST_CASE("serial and parallel assembly agree bitwise") {
  Transcription trans(make_ocp_instance(), 32);
  auto serial = trans.assemble(AssemblyMode::kSerial);
  auto parallel = trans.assemble(AssemblyMode::kParallel);
  const Vector x = random_coeffs(trans.dim(), 9);
  const Vector w = random_coeffs(trans.residual_dim(), 10);
  CHECK(serial->objective(x) == parallel->objective(x));
  CHECK(serial->objective_gradient(x) == parallel->objective_gradient(x));
  CHECK(serial->objective_hessian(x) == parallel->objective_hessian(x));
  CHECK(serial->residual(x) == parallel->residual(x));
  CHECK(serial->residual_jacobian(x) == parallel->residual_jacobian(x));
  CHECK(serial->weighted_residual_hessian(x, w) == parallel->weighted_residual_hessian(x, w));
}

TEST_CASE("mesh width times element count reproduces the horizon") {
  for (int n_el : {2, 7, 40, 256}) {
    Mesh mesh{n_el, M_PI / 2.0};
    CHECK(mesh.width() * n_el == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
  }
}
