#include "bosonmf/hartree.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>

namespace bosonmf {

double PhasePoint::norm() const {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return std::sqrt(s);
}

Eigen::VectorXd PhasePoint::to_real() const {
  const int k = sites();
  Eigen::VectorXd qp(2 * k);
  for (int i = 0; i < k; ++i) {
    qp[i] = z[static_cast<std::size_t>(i)].real();
    qp[k + i] = z[static_cast<std::size_t>(i)].imag();
  }
  return qp;
}

PhasePoint PhasePoint::from_real(const Eigen::VectorXd& qp) {
  const auto k = static_cast<int>(qp.size() / 2);
  std::vector<Complex> z(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) z[static_cast<std::size_t>(i)] = {qp[i], qp[k + i]};
  return PhasePoint(std::move(z));
}

bool ButcherTableau::is_explicit() const {
  for (int i = 0; i < stages; ++i)
    for (int j = i; j < stages; ++j)
      if (a(i, j) != 0.0) return false;
  return true;
}

ButcherTableau ButcherTableau::gauss2() {
  const double r = std::sqrt(3.0) / 6.0;
  ButcherTableau t;
  t.name = "gauss2";
  t.stages = 2;
  t.a.resize(2, 2);
  t.a << 0.25, 0.25 - r, 0.25 + r, 0.25;
  t.b.resize(2);
  t.b << 0.5, 0.5;
  t.c = t.a.rowwise().sum();
  return t;
}

ButcherTableau ButcherTableau::classical_rk4() {
  ButcherTableau t;
  t.name = "rk4";
  t.stages = 4;
  t.a = Eigen::MatrixXd::Zero(4, 4);
  t.a(1, 0) = 0.5;
  t.a(2, 1) = 0.5;
  t.a(3, 2) = 1.0;
  t.b.resize(4);
  t.b << 1.0 / 6.0, 2.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0;
  t.c = t.a.rowwise().sum();
  return t;
}

ButcherTableau ButcherTableau::three_eighths() {
  ButcherTableau t;
  t.name = "rk38";
  t.stages = 4;
  t.a = Eigen::MatrixXd::Zero(4, 4);
  t.a(1, 0) = 1.0 / 3.0;
  t.a(2, 0) = -1.0 / 3.0;
  t.a(2, 1) = 1.0;
  t.a(3, 0) = 1.0;
  t.a(3, 1) = -1.0;
  t.a(3, 2) = 1.0;
  t.b.resize(4);
  t.b << 1.0 / 8.0, 3.0 / 8.0, 3.0 / 8.0, 1.0 / 8.0;
  t.c = t.a.rowwise().sum();
  return t;
}

ButcherTableau ButcherTableau::by_name(const std::string& name) {
  if (name == "gauss2") return gauss2();
  if (name == "rk4") return classical_rk4();
  if (name == "rk38") return three_eighths();
  throw std::invalid_argument("unknown Runge-Kutta tableau '" + name + "' (expected gauss2, rk4 or rk38)");
}

namespace {

void check_sites(int sites, const PotentialTable& potential) {
  if (sites != potential.sites()) throw std::invalid_argument("hartree: potential and state differ in K");
}

// U_i = sum_{j != i} V_ij |z_j|^2
Eigen::VectorXd mean_field(const Eigen::VectorXd& qp, const PotentialTable& potential) {
  const int k = potential.sites();
  Eigen::VectorXd u = Eigen::VectorXd::Zero(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (j != i) u[i] += potential(i, j) * (qp[j] * qp[j] + qp[k + j] * qp[k + j]);
  return u;
}

}  // namespace

Eigen::VectorXd hartree_rhs_real(const Eigen::VectorXd& qp, const PotentialTable& potential) {
  const int k = potential.sites();
  if (qp.size() != 2 * k) throw std::invalid_argument("hartree_rhs_real: expected 2K coordinates");
  const Eigen::VectorXd u = mean_field(qp, potential);
  Eigen::VectorXd f(2 * k);
  for (int i = 0; i < k; ++i) {
    const int up = (i + 1) % k;
    const int down = (i + k - 1) % k;
    f[i] = -(qp[k + up] + qp[k + down]) + u[i] * qp[k + i];
    f[k + i] = (qp[up] + qp[down]) - u[i] * qp[i];
  }
  return f;
}

PhasePoint hartree_rhs(const PhasePoint& z, const PotentialTable& potential) {
  check_sites(z.sites(), potential);
  return PhasePoint::from_real(hartree_rhs_real(z.to_real(), potential));
}

Eigen::MatrixXd hartree_jacobian(const Eigen::VectorXd& qp, const PotentialTable& potential) {
  const int k = potential.sites();
  if (qp.size() != 2 * k) throw std::invalid_argument("hartree_jacobian: expected 2K coordinates");
  const Eigen::VectorXd u = mean_field(qp, potential);
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  const auto q = qp.head(k);
  const auto p = qp.tail(k);
  for (int i = 0; i < k; ++i) {
    const int up = (i + 1) % k;
    const int down = (i + k - 1) % k;
    // Hopping part; for K = 2 both neighbours coincide and the entries add.
    jac(k + i, up) += 1.0;
    jac(k + i, down) += 1.0;
    jac(i, k + up) -= 1.0;
    jac(i, k + down) -= 1.0;
    jac(i, k + i) += u[i];
    jac(k + i, i) -= u[i];
    for (int m = 0; m < k; ++m) {
      if (m == i) continue;
      const double v2 = 2.0 * potential(i, m);
      jac(i, m) += v2 * q[m] * p[i];          // df_q_i / dq_m
      jac(i, k + m) += v2 * p[m] * p[i];      // df_q_i / dp_m
      jac(k + i, m) -= v2 * q[m] * q[i];      // df_p_i / dq_m
      jac(k + i, k + m) -= v2 * p[m] * q[i];  // df_p_i / dp_m
    }
  }
  return jac;
}

double hartree_energy(const PhasePoint& z, const PotentialTable& potential) {
  const int k = z.sites();
  check_sites(k, potential);
  double kinetic = 0.0;
  for (int i = 0; i < k; ++i) {
    const Complex lap = z.z[static_cast<std::size_t>((i + 1) % k)] + z.z[static_cast<std::size_t>((i + k - 1) % k)];
    kinetic -= (std::conj(z.z[static_cast<std::size_t>(i)]) * lap).real();
  }
  double pair = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) pair += potential(i, j) * std::norm(z.z[static_cast<std::size_t>(i)]) * std::norm(z.z[static_cast<std::size_t>(j)]);
  return kinetic + 0.5 * pair;
}

PhasePoint gauss_rk_step(const PhasePoint& z, double h, const ButcherTableau& tableau,
                         const PotentialTable& potential, const NewtonOptions& newton, StepStats* stats) {
  check_sites(z.sites(), potential);
  const int s = tableau.stages;
  const Eigen::VectorXd y0 = z.to_real();
  const auto n = static_cast<int>(y0.size());
  std::vector<Eigen::VectorXd> k(static_cast<std::size_t>(s));
  StepStats local;

  if (tableau.is_explicit()) {
    for (int i = 0; i < s; ++i) {
      Eigen::VectorXd yi = y0;
      for (int j = 0; j < i; ++j) yi += h * tableau.a(i, j) * k[static_cast<std::size_t>(j)];
      k[static_cast<std::size_t>(i)] = hartree_rhs_real(yi, potential);
    }
  } else {
    const Eigen::VectorXd f0 = hartree_rhs_real(y0, potential);
    for (auto& ki : k) ki = f0;
    Eigen::VectorXd residual(n * s);
    Eigen::MatrixXd dg(n * s, n * s);
    std::vector<Eigen::VectorXd> stage(static_cast<std::size_t>(s));
    for (int iter = 0;; ++iter) {
      for (int i = 0; i < s; ++i) {
        Eigen::VectorXd yi = y0;
        for (int j = 0; j < s; ++j) yi += h * tableau.a(i, j) * k[static_cast<std::size_t>(j)];
        stage[static_cast<std::size_t>(i)] = yi;
        residual.segment(i * n, n) = k[static_cast<std::size_t>(i)] - hartree_rhs_real(yi, potential);
      }
      local.residual = residual.lpNorm<Eigen::Infinity>();
      local.newton_iterations = iter;
      if (local.residual < newton.tolerance) break;
      if (iter >= newton.max_iterations)
        throw NewtonError("gauss_rk_step: Newton did not converge in " + std::to_string(newton.max_iterations) +
                              " iterations (residual " + std::to_string(local.residual) + ")",
                          local.residual);
      for (int i = 0; i < s; ++i) {
        const Eigen::MatrixXd df = hartree_jacobian(stage[static_cast<std::size_t>(i)], potential);
        for (int l = 0; l < s; ++l) {
          dg.block(i * n, l * n, n, n) = -h * tableau.a(i, l) * df;
          if (i == l) dg.block(i * n, l * n, n, n).diagonal().array() += 1.0;
        }
      }
      const Eigen::VectorXd delta = dg.partialPivLu().solve(-residual);
      for (int i = 0; i < s; ++i) k[static_cast<std::size_t>(i)] += delta.segment(i * n, n);
    }
  }

  Eigen::VectorXd y1 = y0;
  for (int i = 0; i < s; ++i) y1 += h * tableau.b[i] * k[static_cast<std::size_t>(i)];
  if (stats) *stats = local;
  return PhasePoint::from_real(y1);
}

Trajectory solve_hartree(const PhasePoint& z0, double t, int steps, const ButcherTableau& tableau,
                         const PotentialTable& potential, const NewtonOptions& newton) {
  if (steps < 1) throw std::invalid_argument("solve_hartree: steps must be >= 1");
  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.points.reserve(static_cast<std::size_t>(steps) + 1);
  const double h = t / steps;
  traj.times.push_back(0.0);
  traj.points.push_back(z0);
  for (int s = 1; s <= steps; ++s) {
    traj.points.push_back(gauss_rk_step(traj.points.back(), h, tableau, potential, newton));
    traj.times.push_back(s == steps ? t : s * h);
  }
  return traj;
}

void Trajectory::write_csv(const std::filesystem::path& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("Trajectory::write_csv: cannot open " + path.string());
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  const int k = points.empty() ? 0 : points.front().sites();
  os << "time";
  for (int i = 1; i <= k; ++i) os << ",re_z" << i;
  for (int i = 1; i <= k; ++i) os << ",im_z" << i;
  os << '\n';
  for (std::size_t s = 0; s < points.size(); ++s) {
    os << times[s];
    for (const auto& c : points[s].z) os << ',' << c.real();
    for (const auto& c : points[s].z) os << ',' << c.imag();
    os << '\n';
  }
}

}  // namespace bosonmf
