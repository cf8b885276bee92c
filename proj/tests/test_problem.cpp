#include <doctest.h>

#include <cmath>
#include <random>

#include "fd_oracle.hpp"
#include "malm/problems.hpp"

using namespace malm;
using namespace malm::testing;

namespace {

// c(x) = A x + b, so every residual Hessian vanishes.
class AffineProblem final : public PenaltyProblem {
 public:
  AffineProblem(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {}
  int dim() const override { return static_cast<int>(a_.cols()); }
  int residual_dim() const override { return static_cast<int>(a_.rows()); }
  double objective(const Vector& x) const override { return 0.5 * x.squaredNorm(); }
  Vector objective_gradient(const Vector& x) const override { return x; }
  Matrix objective_hessian(const Vector&) const override { return Matrix::Identity(dim(), dim()); }
  Vector residual(const Vector& x) const override { return a_ * x + b_; }
  Matrix residual_jacobian(const Vector&) const override { return a_; }
  Matrix weighted_residual_hessian(const Vector&, const Vector&) const override {
    return Matrix::Zero(dim(), dim());
  }

 private:
  Matrix a_;
  Vector b_;
};

class NanObjective final : public PenaltyProblem {
 public:
  int dim() const override { return 1; }
  int residual_dim() const override { return 1; }
  double objective(const Vector&) const override { return std::nan(""); }
  Vector objective_gradient(const Vector&) const override { return Vector::Zero(1); }
  Matrix objective_hessian(const Vector&) const override { return Matrix::Zero(1, 1); }
  Vector residual(const Vector&) const override { return Vector::Zero(1); }
  Matrix residual_jacobian(const Vector&) const override { return Matrix::Zero(1, 1); }
  Matrix weighted_residual_hessian(const Vector&, const Vector&) const override {
    return Matrix::Zero(1, 1);
  }
};

}  // namespace

TEST_CASE("phi on the feasible circle reduces to f") {
  CircleProblem circle(0.0);
  PenaltyObjective phi(circle, 0.5);
  CHECK(phi.value(CircleReference::x_b()) == doctest::Approx(-2.0).epsilon(1e-14));

  const Vector x0 = CircleReference::x0();
  CHECK(phi.value(x0) == doctest::Approx(-x0[0] - x0[1]).epsilon(1e-13));
}

TEST_CASE("phi value and gradient against the finite-difference oracle") {
  CircleProblem circle(0.1);
  PenaltyObjective phi(circle, 0.1);
  Vector x(2);
  x << 1.0, 1.0;

  // hand arithmetic: c = [0.21, -0.19], value = -2 + (0.21^2 + 0.19^2) / 0.2
  CHECK(phi.value(x) == doctest::Approx(-1.599).epsilon(1e-14));

  auto value = [&](const Vector& v) { return phi.value(v); };
  CHECK(rel_err(phi.gradient(x), fd_gradient(value, x, 1e-6)) <= 1e-6);
  CHECK(rel_err(phi.hessian(x), fd_hessian(value, x, 1e-5)) <= 1e-5);
}

TEST_CASE("psi with lambda = 0 and omega = 0 is the plain quadratic penalty") {
  CircleProblem circle(0.01);
  const double rho = 0.3;
  AugLagObjective psi(circle, 0.0, rho, Vector::Zero(2));
  PenaltyObjective phi(circle, rho);
  Vector x(2);
  x << 0.7, -1.3;
  CHECK(psi.value(x) == doctest::Approx(phi.value(x)).epsilon(1e-14));
  CHECK((psi.gradient(x) - phi.gradient(x)).norm() <= 1e-14);
  CHECK((psi.hessian(x) - phi.hessian(x)).norm() <= 1e-12);
}

TEST_CASE("psi at a feasible point with zero multiplier is f") {
  CircleProblem circle(0.0);
  AugLagObjective psi(circle, 0.05, 0.1, Vector::Zero(2));
  CHECK(psi.value(CircleReference::x_b()) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("psi derivatives against the finite-difference oracle") {
  CircleProblem circle(0.01);
  AugLagObjective psi(circle, 1e-2, 0.1, CircleReference::lambda0());
  const Vector x = CircleReference::x0();
  auto value = [&](const Vector& v) { return psi.value(v); };
  CHECK(rel_err(psi.gradient(x), fd_gradient(value, x, 1e-6)) <= 1e-6);
  CHECK(rel_err(psi.hessian(x), fd_hessian(value, x, 1e-5)) <= 1e-5);
}

TEST_CASE("psi with omega = 0 matches the classical augmented Lagrangian formula") {
  CircleProblem circle(1e-4);
  Vector lambda(2);
  lambda << 0.3, -0.8;
  const double rho = 0.05;
  AugLagObjective psi(circle, 0.0, rho, lambda);
  Vector x(2);
  x << 1.2, 0.4;
  const Vector c = circle.residual(x);
  const double classical = circle.objective(x) - lambda.dot(c) + c.squaredNorm() / (2.0 * rho);
  CHECK(rel_err(psi.value(x), classical) <= 1e-14);
}

TEST_CASE("random-point gradient agreement for phi and psi") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  CircleProblem circle(0.1);
  for (int trial = 0; trial < 20; ++trial) {
    Vector x(2);
    x << dist(rng), dist(rng);
    Vector lambda(2);
    lambda << dist(rng), dist(rng);

    PenaltyObjective phi(circle, 0.05);
    AugLagObjective psi(circle, 0.01, 0.1, lambda);
    auto phi_v = [&](const Vector& v) { return phi.value(v); };
    auto psi_v = [&](const Vector& v) { return psi.value(v); };
    CHECK(rel_err(phi.gradient(x), fd_gradient(phi_v, x, 1e-6)) <= 1e-5);
    CHECK(rel_err(psi.gradient(x), fd_gradient(psi_v, x, 1e-6)) <= 1e-5);

    CHECK((phi.hessian(x) - phi.hessian(x).transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((psi.hessian(x) - psi.hessian(x).transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("phi(omega) coincides with psi(omega'=0, rho=omega, lambda=0)") {
  Transcription trans(make_ocp_instance(), 4);
  auto problem = trans.assemble();
  PenaltyObjective phi(*problem, 0.2);
  AugLagObjective psi(*problem, 0.0, 0.2, Vector::Zero(problem->residual_dim()));
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(problem->dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
  CHECK(rel_err(psi.value(x), phi.value(x)) <= 1e-15);
  CHECK(rel_err(psi.gradient(x), phi.gradient(x)) <= 1e-14);
  CHECK(rel_err(psi.hessian(x), phi.hessian(x)) <= 1e-14);
}

TEST_CASE("weighted residual Hessian is linear in the weights") {
  Transcription trans(make_ocp_instance(), 3);
  auto problem = trans.assemble();
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector x(problem->dim()), w1(problem->residual_dim()), w2(problem->residual_dim());
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = dist(rng);
  for (Eigen::Index i = 0; i < w1.size(); ++i) { w1[i] = dist(rng); w2[i] = dist(rng); }
  const double a = 2.5;
  const Matrix lhs = problem->weighted_residual_hessian(x, a * w1 + w2);
  const Matrix rhs = a * problem->weighted_residual_hessian(x, w1) +
                     problem->weighted_residual_hessian(x, w2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("check_derivatives on the circle instance") {
  CircleProblem circle(0.0);
  Vector x(2);
  x << 1.0, 1.0;
  CHECK(check_derivatives(circle, x, 1e-6).max_error() <= 1e-6);
}

TEST_CASE("check_derivatives on the assembled control problem") {
  Transcription trans(make_ocp_instance(), 4);
  auto problem = trans.assemble();
  CHECK(check_derivatives(*problem, Vector::Zero(problem->dim()), 1e-6).max_error() <= 1e-6);
}

TEST_CASE("affine residuals have exactly zero weighted-Hessian error") {
  Matrix a(3, 2);
  a << 1.0, 2.0, -1.0, 0.5, 3.0, -2.0;
  Vector b(3);
  b << 0.1, -0.2, 0.3;
  AffineProblem problem(std::move(a), std::move(b));
  Vector x(2);
  x << 0.4, -0.9;
  CHECK(check_derivatives(problem, x, 1e-6).weighted_hessian_error == 0.0);
}

TEST_CASE("non-finite evaluators abort with a diagnostic") {
  NanObjective problem;
  PenaltyObjective phi(problem, 0.1);
  CHECK_THROWS_AS(phi.value(Vector::Zero(1)), EvaluationError);
  CHECK_THROWS_AS(PenaltyObjective(problem, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(AugLagObjective(problem, 0.0, 0.0, Vector::Zero(1)), std::invalid_argument);
}
