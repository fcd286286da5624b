#include "bosonmf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bosonmf {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, const JacobiOptions& options) {
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi_eigenvalues: matrix must be square");
  const Eigen::Index n = a.rows();
  const double threshold = options.tolerance * std::max(1.0, a.norm());
  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (++sweep > options.max_sweeps) throw std::runtime_error("jacobi_eigenvalues: no convergence");
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation angle zeroing a(p,q): t = tan(theta) is the smaller root of
        // t^2 + 2 tau t - 1 = 0.
        const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> hermitian_eigenvalues(const Eigen::MatrixXcd& h, const JacobiOptions& options) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = h.real();
  m.bottomRightCorner(n, n) = h.real();
  m.topRightCorner(n, n) = -h.imag();
  m.bottomLeftCorner(n, n) = h.imag();
  const auto doubled = jacobi_eigenvalues(std::move(m), options);
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    ev[static_cast<std::size_t>(i)] = 0.5 * (doubled[static_cast<std::size_t>(2 * i)] + doubled[static_cast<std::size_t>(2 * i + 1)]);
  return ev;
}

}  // namespace bosonmf
