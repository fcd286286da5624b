// bosonmf: command-line driver for the mean-field convergence studies.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <locale>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bosonmf/experiments.hpp"
#include "bosonmf/propagator.hpp"

using namespace bosonmf;

namespace {

struct Common {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string output;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("-c,--config", common.config_file, "key=value configuration file");
  cmd->add_option("-s,--set", common.overrides, "override one key (key=value), repeatable");
  cmd->add_option("-o,--output", common.output, "output directory");
}

ExperimentConfig load(const Common& common) {
  ExperimentConfig c = common.config_file.empty() ? ExperimentConfig{} : ExperimentConfig::from_file(common.config_file);
  for (const auto& kv : common.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + kv + "' is not key=value");
    c.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!common.output.empty()) c.output_dir = common.output;
  c.validate();
  return c;
}

int report_particles(const ExperimentConfig& c) {
  if (c.report_particles) return *c.report_particles;
  int n = 0;
  for (int x : c.particle_counts) n = std::max(n, x);
  return n;
}

int run_dims(int kmax, int nmax, bool csv) {
  std::cout.imbue(std::locale::classic());
  if (csv) {
    std::cout << "N";
    for (int k = 1; k <= kmax; ++k) std::cout << ",K=" << k;
    std::cout << '\n';
  } else {
    std::cout << std::setw(4) << "N";
    for (int k = 1; k <= kmax; ++k) std::cout << std::setw(11) << ("K=" + std::to_string(k));
    std::cout << '\n';
  }
  for (int n = 1; n <= nmax; ++n) {
    if (csv) {
      std::cout << n;
      for (int k = 1; k <= kmax; ++k) std::cout << ',' << sector_dimension(k, n);
    } else {
      std::cout << std::setw(4) << n;
      for (int k = 1; k <= kmax; ++k) std::cout << std::setw(11) << sector_dimension(k, n);
    }
    std::cout << '\n';
  }
  return 0;
}

int run_evolve(const ExperimentConfig& c, int n, double t, std::uint64_t checkpoint_every) {
  const SectorBasis basis(c.sites, n);
  const double eps = 1.0 / n;
  const auto v = build_potential(c.sites);
  const auto kin = c.cache_kinetic ? cached_kinetic(c.cache_dir, basis, eps) : build_kinetic(basis, eps);
  const auto diag = build_interaction_diagonal(basis, v, eps);
  std::optional<std::uint64_t> floor;
  if (c.certified_steps_only) floor = 0;
  else floor = static_cast<std::uint64_t>(std::ceil(c.steps_per_unit_time * std::abs(t) - 1e-12));
  const auto plan = plan_evolution(t, eps, kin, diag, v.max_abs(), floor);
  std::cout.imbue(std::locale::classic());
  std::cout << std::setprecision(17);
  std::cout << "K " << c.sites << "\nN " << n << "\ndim " << basis.size() << "\nnnz " << kin.nnz() << "\nsteps "
            << plan.steps() << "\ncertified_steps " << plan.certified_steps() << "\nerror_bound " << plan.error_bound()
            << '\n';
  std::filesystem::create_directories(c.output_dir);
  EvolveHooks hooks;
  if (checkpoint_every > 0) {
    hooks.checkpoint_dir = c.output_dir / "checkpoints";
    hooks.checkpoint_every = checkpoint_every;
  }
  const auto u = evolve(plan, build_state(c.state_family(), basis), hooks);
  save_state(c.output_dir / ("state_N" + std::to_string(n) + ".bin"), u, plan.steps());
  std::cout << "norm " << u.norm() << '\n';
  const auto dens = site_densities(reduced_density_matrix(u, basis, 1, eps));
  for (int k = 0; k < c.sites; ++k) std::cout << "density " << k + 1 << ' ' << dens[static_cast<std::size_t>(k)] << '\n';
  return 0;
}

int run_hartree(const ExperimentConfig& c) {
  std::filesystem::create_directories(c.output_dir);
  const auto sample = wigner_sample(c.state_family(), c.wigner_nodes);
  const auto v = build_potential(c.sites);
  const auto traj = solve_hartree(sample.points.front(), c.t_max, c.hartree_steps, ButcherTableau::by_name(c.tableau), v);
  traj.write_csv(c.output_dir / "hartree.csv");
  std::cout << "wrote " << (c.output_dir / "hartree.csv").string() << '\n';
  return 0;
}

int run_convergence_cmd(const ExperimentConfig& c) {
  const auto report = run_convergence(c);
  write_convergence_outputs(c, report);
  std::cout.imbue(std::locale::classic());
  for (const auto& [p, fit] : report.fits) {
    std::cout << "p=" << p << " slope " << std::setprecision(6) << fit.slope << '\n';
  }
  return report.failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean-field limit of bosons on a periodic lattice"};
  app.require_subcommand(1);

  int kmax = 10;
  int nmax = 20;
  bool csv = false;
  auto* dims = app.add_subcommand("dims", "print sector dimensions");
  dims->add_option("--kmax", kmax, "largest K")->check(CLI::Range(1, 64));
  dims->add_option("--nmax", nmax, "largest N")->check(CLI::Range(1, 255));
  dims->add_flag("--csv", csv, "comma-separated output");

  Common common;
  int evolve_n = 0;
  double evolve_t = 1.0;
  std::uint64_t checkpoint_every = 0;
  auto* evolve_cmd = app.add_subcommand("evolve", "propagate one N-body state");
  add_common(evolve_cmd, common);
  evolve_cmd->add_option("-N,--particles", evolve_n, "particle number (default: largest N in the config)");
  evolve_cmd->add_option("-t,--time", evolve_t, "final time");
  evolve_cmd->add_option("--checkpoint-every", checkpoint_every, "write the state every this many steps");

  auto* hartree_cmd = app.add_subcommand("hartree", "mean-field trajectory of the first Wigner node");
  add_common(hartree_cmd, common);

  auto* conv_cmd = app.add_subcommand("convergence", "error versus N study");
  add_common(conv_cmd, common);

  std::vector<double> density_times{0.0, 1.0};
  auto* dens_cmd = app.add_subcommand("density", "one-particle densities, quantum and mean field");
  add_common(dens_cmd, common);
  dens_cmd->add_option("--times", density_times, "increasing sample times");

  double corr_t = 1.0;
  auto* corr_cmd = app.add_subcommand("correlations", "two-particle density matrices, quantum and mean field");
  add_common(corr_cmd, common);
  corr_cmd->add_option("-t,--time", corr_t, "time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*dims) return run_dims(kmax, nmax, csv);
    const ExperimentConfig c = load(common);
    if (*evolve_cmd) return run_evolve(c, evolve_n > 0 ? evolve_n : report_particles(c), evolve_t, checkpoint_every);
    if (*hartree_cmd) return run_hartree(c);
    if (*conv_cmd) return run_convergence_cmd(c);
    if (*dens_cmd) {
      write_density_outputs(c.output_dir, density_profile(c, report_particles(c), density_times));
      return 0;
    }
    if (*corr_cmd) {
      write_correlation_outputs(c.output_dir, correlation_compare(c, report_particles(c), corr_t));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
