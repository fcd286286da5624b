#pragma once

// Mean-field (Hartree) flow on C^K:
//   i dz_k/dt = -(Delta_K z)_k + (sum_j V_kj |z_j|^2) z_k,
// integrated with implicit Gauss or explicit Runge-Kutta methods.

#include <complex>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bosonmf/operators.hpp"

namespace bosonmf {

/// Point z = q + i p of the one-particle phase space.
struct PhasePoint {
  std::vector<Complex> z;

  PhasePoint() = default;
  explicit PhasePoint(std::vector<Complex> values) : z(std::move(values)) {}

  int sites() const { return static_cast<int>(z.size()); }
  double norm() const;

  /// Real coordinates (q_0..q_{K-1}, p_0..p_{K-1}).
  Eigen::VectorXd to_real() const;
  static PhasePoint from_real(const Eigen::VectorXd& qp);
};

struct ButcherTableau {
  std::string name;
  int stages = 0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;

  bool is_explicit() const;

  /// Two-stage Gauss-Legendre, order 4, symplectic.
  static ButcherTableau gauss2();
  /// Classical explicit RK4.
  static ButcherTableau classical_rk4();
  /// Kutta's 3/8 rule.
  static ButcherTableau three_eighths();
  static ButcherTableau by_name(const std::string& name);
};

/// dz/dt for the Hartree equation.
PhasePoint hartree_rhs(const PhasePoint& z, const PotentialTable& potential);

/// Same vector field on R^{2K}.
Eigen::VectorXd hartree_rhs_real(const Eigen::VectorXd& qp, const PotentialTable& potential);

/// Analytic 2K x 2K Jacobian of hartree_rhs_real.
Eigen::MatrixXd hartree_jacobian(const Eigen::VectorXd& qp, const PotentialTable& potential);

/// <z, -Delta_K z> + 1/2 sum_{i != j} V_ij |z_i|^2 |z_j|^2.
double hartree_energy(const PhasePoint& z, const PotentialTable& potential);

class NewtonError : public std::runtime_error {
 public:
  NewtonError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct NewtonOptions {
  double tolerance = 1e-12;  // max-norm of the stage residual
  int max_iterations = 25;
};

struct StepStats {
  int newton_iterations = 0;
  double residual = 0.0;
};

/// One Runge-Kutta step of size h. Implicit tableaus solve the stage system
/// k_i = f(y0 + h sum_j a_ij k_j) by Newton's method with a dense LU on all
/// stages, starting from k_i = f(y0).
PhasePoint gauss_rk_step(const PhasePoint& z, double h, const ButcherTableau& tableau,
                         const PotentialTable& potential, const NewtonOptions& newton = {},
                         StepStats* stats = nullptr);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> points;

  /// CSV with columns time, Re z_1..K, Im z_1..K.
  void write_csv(const std::filesystem::path& path) const;
};

/// steps uniform steps from 0 to t; returns steps + 1 points.
Trajectory solve_hartree(const PhasePoint& z0, double t, int steps, const ButcherTableau& tableau,
                         const PotentialTable& potential, const NewtonOptions& newton = {});

}  // namespace bosonmf
