#include "bosonmf/rdm.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <string>

#include "bosonmf/linalg.hpp"

namespace bosonmf {

double DensityMatrix::hermitian_defect() const { return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff(); }

std::vector<double> DensityMatrix::eigenvalues() const {
  return hermitian_eigenvalues(0.5 * (matrix + matrix.adjoint()));
}

void DensityMatrix::write_csv(const std::filesystem::path& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("DensityMatrix::write_csv: cannot open " + path.string());
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  os << "p,K,D_p\n" << order << ',' << sites << ',' << matrix.rows() << '\n';
  os << "row,col,re,im\n";
  for (Eigen::Index r = 0; r < matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < matrix.cols(); ++c)
      os << r << ',' << c << ',' << matrix(r, c).real() << ',' << matrix(r, c).imag() << '\n';
}

namespace {

void require_sector(const FockVector& u, const SectorBasis& basis, const char* what) {
  if (u.sites != basis.sites() || u.particles != basis.particles() || u.size() != basis.size())
    throw std::invalid_argument(std::string(what) + ": vector does not live in the given sector");
}

// N (N-1) ... (N-p+1), exact.
std::uint64_t falling_factorial(int n, int p) {
  std::uint64_t f = 1;
  for (int k = 0; k < p; ++k) f *= static_cast<std::uint64_t>(n - k);
  return f;
}

}  // namespace

Complex wick_expectation(const FockVector& psi, const FockVector& phi, const SectorBasis& basis,
                         const MultiIndex& delta, const MultiIndex& gamma, double epsilon) {
  require_sector(psi, basis, "wick_expectation");
  require_sector(phi, basis, "wick_expectation");
  if (delta.sites() != basis.sites() || gamma.sites() != basis.sites())
    throw std::invalid_argument("wick_expectation: monomial has the wrong number of sites");
  if (!delta.valid() || !gamma.valid()) throw std::invalid_argument("wick_expectation: negative exponent");
  if (delta.length() != gamma.length())
    throw std::invalid_argument("wick_expectation: |delta| != |gamma| (monomial does not conserve particle number)");
  const int order = gamma.length();
  if (order > basis.particles()) return 0.0;

  const SectorBasis lower(basis.sites(), basis.particles() - order);
  const auto& lf_lower = lower.log_factorials();
  const auto& lf = basis.log_factorials();
  std::vector<int> a(static_cast<std::size_t>(basis.sites()));
  std::vector<int> b(a.size());
  Complex sum = 0.0;
  for (Index r = 0; r < lower.size(); ++r) {
    auto row = lower.row(r);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = row[i] + delta[static_cast<int>(i)];
      b[i] = row[i] + gamma[static_cast<int>(i)];
    }
    const Index ra = *basis.find(a);
    const Index rb = *basis.find(b);
    const double w = std::exp(0.5 * (lf[ra] + lf[rb]) - lf_lower[r]);
    sum += std::conj(psi.coeffs[ra]) * phi.coeffs[rb] * w;
  }
  return std::pow(epsilon, order) * sum;
}

DensityMatrix reduced_density_matrix(const FockVector& psi, const SectorBasis& basis, int order, double epsilon) {
  require_sector(psi, basis, "reduced_density_matrix");
  const int n = basis.particles();
  if (order < 0 || order > n) throw std::invalid_argument("reduced_density_matrix: need 0 <= p <= N");
  const int sites = basis.sites();
  const SectorBasis small(sites, order);
  const SectorBasis lower(sites, n - order);
  const Index dp = small.size();
  const auto& lf = basis.log_factorials();
  const auto& lf_small = small.log_factorials();
  const auto& lf_lower = lower.log_factorials();

  // Every element is a sum over alpha' of the same Wick weights, so the whole
  // matrix accumulates as sum_alpha' c c^H with
  // c_beta = Psi_{alpha'+beta} sqrt((alpha'+beta)!) / sqrt(alpha'!).
  const auto d = static_cast<Eigen::Index>(dp);
  constexpr Index kBlock = 256;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXcd block(d, static_cast<Eigen::Index>(kBlock));
  std::vector<int> occ(static_cast<std::size_t>(sites));
  for (Index start = 0; start < lower.size(); start += kBlock) {
    const Index width = std::min(kBlock, lower.size() - start);
    for (Index j = 0; j < width; ++j) {
      const Index r = start + j;
      auto row = lower.row(r);
      for (Index s = 0; s < dp; ++s) {
        auto beta = small.row(s);
        for (std::size_t i = 0; i < occ.size(); ++i) occ[i] = row[i] + beta[i];
        const Index rank = *basis.find(occ);
        block(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(j)) =
            psi.coeffs[rank] * std::exp(0.5 * (lf[rank] - lf_lower[r]));
      }
    }
    const auto cols = block.leftCols(static_cast<Eigen::Index>(width));
    acc.selfadjointView<Eigen::Lower>().rankUpdate(cols);
  }
  const Eigen::MatrixXcd full = acc.selfadjointView<Eigen::Lower>();
  acc = full;

  const double eps_p = std::pow(epsilon, order);
  const double denominator = eps_p * static_cast<double>(falling_factorial(n, order));
  const double lf_p = log_factorial(order);
  DensityMatrix out;
  out.order = order;
  out.sites = sites;
  out.matrix.resize(static_cast<Eigen::Index>(dp), static_cast<Eigen::Index>(dp));
  for (Index b = 0; b < dp; ++b)
    for (Index a = 0; a < dp; ++a) {
      const double coef = std::exp(lf_p - 0.5 * (lf_small[a] + lf_small[b]));
      out.matrix(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) =
          coef * eps_p * acc(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) / denominator;
    }
  return out;
}

DensityMatrix projector_matrix(const std::vector<Complex>& z, int order) {
  const int sites = static_cast<int>(z.size());
  if (sites < 1) throw std::invalid_argument("projector_matrix: empty vector");
  const SectorBasis small(sites, order);
  const double lf_p = log_factorial(order);
  const auto& lf = small.log_factorials();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(small.size()));
  for (Index r = 0; r < small.size(); ++r) {
    auto alpha = small.row(r);
    Complex mono = 1.0;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      for (int e = 0; e < alpha[i]; ++e) mono *= z[i];
    v[static_cast<Eigen::Index>(r)] = std::exp(0.5 * (lf_p - lf[r])) * mono;
  }
  DensityMatrix out;
  out.order = order;
  out.sites = sites;
  out.matrix = v * v.adjoint();
  return out;
}

DensityMatrix mean_field_rdm(const WignerSample& sample, const std::vector<PhasePoint>& points_t, int order) {
  if (sample.points.empty()) throw std::invalid_argument("mean_field_rdm: empty Wigner sample");
  if (points_t.size() != sample.points.size() || sample.weights.size() != sample.points.size())
    throw std::invalid_argument("mean_field_rdm: sample and propagated nodes differ in size");
  DensityMatrix out;
  double mass = 0.0;
  for (std::size_t k = 0; k < points_t.size(); ++k) {
    const double w = sample.weights[k];
    auto proj = projector_matrix(points_t[k].z, order);
    if (k == 0) {
      out = proj;
      out.matrix *= w;
    } else {
      out.matrix += w * proj.matrix;
    }
    mass += w * std::pow(sample.points[k].norm(), 2 * order);
  }
  out.matrix /= mass;
  return out;
}

DensityMatrix asymptotic_rdm(const WignerSample& sample, int order, double t, const PotentialTable& potential,
                             const HartreeConfig& config) {
  if (sample.points.empty()) throw std::invalid_argument("asymptotic_rdm: empty Wigner sample");
  if (t == 0.0) return mean_field_rdm(sample, sample.points, order);
  std::vector<PhasePoint> moved;
  moved.reserve(sample.points.size());
  for (std::size_t k = 0; k < sample.points.size(); ++k) {
    try {
      moved.push_back(solve_hartree(sample.points[k], t, config.steps, config.tableau, potential, config.newton)
                          .points.back());
    } catch (const NewtonError& e) {
      throw NewtonError("asymptotic_rdm: node " + std::to_string(k) + ": " + e.what(), e.residual());
    }
  }
  return mean_field_rdm(sample, moved, order);
}

TraceNormResult trace_norm_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.order != b.order || a.sites != b.sites || a.matrix.rows() != b.matrix.rows())
    throw std::invalid_argument("trace_norm_distance: matrices differ in order or sites");
  Eigen::MatrixXcd d = a.matrix - b.matrix;
  TraceNormResult res;
  res.asymmetry = d.size() ? (d - d.adjoint()).cwiseAbs().maxCoeff() : 0.0;
  if (res.asymmetry > 1e-8)
    throw std::invalid_argument("trace_norm_distance: difference is not Hermitian (defect " +
                                std::to_string(res.asymmetry) + ")");
  d = 0.5 * (d + d.adjoint()).eval();
  res.spectrum = hermitian_eigenvalues(d);
  for (double ev : res.spectrum) res.value += std::abs(ev);
  return res;
}

std::vector<double> site_densities(const DensityMatrix& gamma1) {
  if (gamma1.order != 1) throw std::invalid_argument("site_densities: needs the one-particle matrix");
  const SectorBasis one(gamma1.sites, 1);
  std::vector<double> rho(static_cast<std::size_t>(gamma1.sites));
  std::vector<int> occ(static_cast<std::size_t>(gamma1.sites), 0);
  for (int k = 0; k < gamma1.sites; ++k) {
    occ[static_cast<std::size_t>(k)] = 1;
    const auto r = static_cast<Eigen::Index>(*one.find(occ));
    rho[static_cast<std::size_t>(k)] = gamma1.matrix(r, r).real();
    occ[static_cast<std::size_t>(k)] = 0;
  }
  return rho;
}

}  // namespace bosonmf
