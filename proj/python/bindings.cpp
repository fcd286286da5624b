#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bosonmf/experiments.hpp"
#include "bosonmf/propagator.hpp"

namespace py = pybind11;
using namespace bosonmf;

namespace {

py::array_t<Complex> to_numpy(const std::vector<Complex>& v) {
  py::array_t<Complex> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

std::vector<Complex> from_numpy(const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
  return {a.data(), a.data() + a.size()};
}

FockVector sector_vector(const SectorBasis& basis, const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
  auto c = from_numpy(a);
  if (c.size() != basis.size()) throw std::invalid_argument("coefficient vector does not match the sector");
  return FockVector(basis.sites(), basis.particles(), std::move(c));
}

ExperimentConfig config_from(const std::map<std::string, std::string>& kv) {
  ExperimentConfig c;
  for (const auto& [k, v] : kv) c.set(k, v);
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mean-field limit of bosons on a periodic lattice";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SectorError>(m, "SectorError", PyExc_ValueError);

  m.def("sector_dimension", &sector_dimension, py::arg("sites"), py::arg("particles"));

  py::class_<SectorBasis>(m, "SectorBasis")
      .def(py::init<int, int>(), py::arg("sites"), py::arg("particles"))
      .def_property_readonly("sites", &SectorBasis::sites)
      .def_property_readonly("particles", &SectorBasis::particles)
      .def("__len__", &SectorBasis::size)
      .def("at", [](const SectorBasis& b, Index r) {
        if (r >= b.size()) throw py::index_error("rank out of range");
        const auto a = b.at(r);
        return std::vector<int>(a.occupations().begin(), a.occupations().end());
      })
      .def("rank_of", [](const SectorBasis& b, std::vector<int> occ) { return b.rank_of(MultiIndex(std::move(occ))); });

  m.def("potential", [](int sites) {
    const auto v = build_potential(sites);
    Eigen::MatrixXd out(sites, sites);
    for (int i = 0; i < sites; ++i)
      for (int j = 0; j < sites; ++j) out(i, j) = v(i, j);
    return out;
  }, py::arg("sites"));

  m.def("kinetic_triplets", [](const SectorBasis& basis, double epsilon) {
    const auto op = build_kinetic(basis, epsilon);
    const auto t = op.triplets();
    py::array_t<std::uint64_t> rows(static_cast<py::ssize_t>(t.size()));
    py::array_t<std::uint64_t> cols(static_cast<py::ssize_t>(t.size()));
    py::array_t<double> vals(static_cast<py::ssize_t>(t.size()));
    for (std::size_t i = 0; i < t.size(); ++i) {
      rows.mutable_data()[i] = t[i].row;
      cols.mutable_data()[i] = t[i].col;
      vals.mutable_data()[i] = t[i].value;
    }
    return py::make_tuple(rows, cols, vals);
  }, py::arg("basis"), py::arg("epsilon"), "(rows, cols, values) of dGamma(-Delta_K)");

  m.def("interaction_diagonal", [](const SectorBasis& basis, double epsilon) {
    const auto d = build_interaction_diagonal(basis, build_potential(basis.sites()), epsilon);
    return py::array_t<double>(static_cast<py::ssize_t>(d.values.size()), d.values.data());
  }, py::arg("basis"), py::arg("epsilon"));

  m.def("initial_state", [](const SectorBasis& basis, const std::string& family, int q) {
    auto fam = StateFamily::standard(family_from_string(family), basis.sites());
    fam.q = q;
    return to_numpy(build_state(fam, basis).coeffs);
  }, py::arg("basis"), py::arg("family"), py::arg("q") = 2, "reference state of the named family");

  m.def("evolve", [](const SectorBasis& basis, py::array_t<Complex, py::array::c_style | py::array::forcecast> psi,
                     double t, std::optional<std::uint64_t> min_steps) {
    const double eps = 1.0 / basis.particles();
    const auto v = build_potential(basis.sites());
    const auto kin = build_kinetic(basis, eps);
    const auto diag = build_interaction_diagonal(basis, v, eps);
    const auto plan = plan_evolution(t, eps, kin, diag, v.max_abs(), min_steps);
    auto u0 = sector_vector(basis, psi);
    FockVector u;
    {
      py::gil_scoped_release release;
      u = evolve(plan, std::move(u0));
    }
    py::dict info;
    info["steps"] = plan.steps();
    info["certified_steps"] = plan.certified_steps();
    info["error_bound"] = plan.error_bound();
    return py::make_tuple(to_numpy(u.coeffs), info);
  }, py::arg("basis"), py::arg("psi"), py::arg("t"), py::arg("min_steps") = py::none(),
        "exp(-i t H / eps) psi with eps = 1/N; returns (state, plan info)");

  m.def("hartree", [](py::array_t<Complex, py::array::c_style | py::array::forcecast> z0, double t, int steps,
                      const std::string& tableau, bool free) {
    const auto z = from_numpy(z0);
    const int k = static_cast<int>(z.size());
    const auto v = free ? PotentialTable::zero(k) : build_potential(k);
    const auto traj = solve_hartree(PhasePoint(z), t, steps, ButcherTableau::by_name(tableau), v);
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(traj.points.size()), k);
    for (std::size_t i = 0; i < traj.points.size(); ++i)
      for (int j = 0; j < k; ++j) out(static_cast<Eigen::Index>(i), j) = traj.points[i].z[static_cast<std::size_t>(j)];
    return py::make_tuple(traj.times, out);
  }, py::arg("z0"), py::arg("t"), py::arg("steps") = 100, py::arg("tableau") = "gauss2", py::arg("free") = false);

  m.def("reduced_density_matrix", [](const SectorBasis& basis, py::array_t<Complex, py::array::c_style | py::array::forcecast> psi,
                                     int order) {
    return reduced_density_matrix(sector_vector(basis, psi), basis, order, 1.0 / basis.particles()).matrix;
  }, py::arg("basis"), py::arg("psi"), py::arg("order"));

  m.def("mean_field_rdm", [](int sites, const std::string& family, int order, double t, int nodes, int steps) {
    const auto sample = wigner_sample(StateFamily::standard(family_from_string(family), sites), nodes);
    HartreeConfig hc;
    hc.steps = steps;
    return asymptotic_rdm(sample, order, t, build_potential(sites), hc).matrix;
  }, py::arg("sites"), py::arg("family"), py::arg("order"), py::arg("t"), py::arg("nodes") = 64, py::arg("steps") = 100);

  m.def("trace_norm_distance", [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return trace_norm_distance(DensityMatrix{0, 0, a}, DensityMatrix{0, 0, b}).value;
  }, py::arg("a"), py::arg("b"));

  m.def("fit_slope", [](const std::vector<std::pair<int, double>>& points) {
    const auto f = fit_slope(points);
    return py::make_tuple(f.slope, f.intercept);
  }, py::arg("points"));

  m.def("run_convergence", [](const std::map<std::string, std::string>& config, bool write) {
    const auto c = config_from(config);
    ConvergenceReport r;
    {
      py::gil_scoped_release release;
      r = run_convergence(c);
      if (write) write_convergence_outputs(c, r);
    }
    py::dict out;
    for (const auto& [p, records] : r.records) {
      py::list rows;
      for (const auto& rec : records) rows.append(py::make_tuple(rec.particles, rec.error));
      py::dict entry;
      entry["errors"] = rows;
      if (auto it = r.fits.find(p); it != r.fits.end()) entry["slope"] = it->second.slope;
      out[py::int_(p)] = entry;
    }
    return out;
  }, py::arg("config"), py::arg("write") = false, "config keys as in the key=value file");
}
