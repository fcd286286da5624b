#include "bosonmf/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <limits>
#include <cmath>
#include <fstream>
#include <iostream>
#include <locale>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "bosonmf/propagator.hpp"

namespace bosonmf {

namespace {

constexpr std::uint64_t kDeskBudget = std::uint64_t{1} << 30;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("bad integer for " + key + ": '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("bad integer for " + key + ": '" + text + "'");
  return value;
}

double parse_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("bad number for " + key + ": '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ConfigError("bad boolean for " + key + ": '" + text + "'");
}

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.imbue(std::locale::classic());
  out.precision(17);
  return out;
}

HartreeConfig hartree_config(const ExperimentConfig& config) {
  HartreeConfig hc;
  hc.steps = config.hartree_steps;
  hc.tableau = ButcherTableau::by_name(config.tableau);
  return hc;
}

// Hartree steps over [0, t_max], rounded up so every sample time is a grid point.
int aligned_hartree_steps(const ExperimentConfig& config) {
  const int intervals = std::max(1, config.time_samples - 1);
  const int per = (config.hartree_steps + intervals - 1) / intervals;
  return std::max(1, per) * intervals;
}

// nodes_at[j][k] = z_k(t_j) for the sample times of config.
std::vector<std::vector<PhasePoint>> mean_field_nodes(const ExperimentConfig& config, const WignerSample& sample,
                                                      const PotentialTable& potential) {
  const int intervals = std::max(1, config.time_samples - 1);
  const int steps = aligned_hartree_steps(config);
  const int stride = steps / intervals;
  const auto tableau = ButcherTableau::by_name(config.tableau);
  std::vector<std::vector<PhasePoint>> nodes_at(static_cast<std::size_t>(config.time_samples));
  for (auto& row : nodes_at) row.resize(sample.points.size());
  for (std::size_t k = 0; k < sample.points.size(); ++k) {
    Trajectory traj;
    try {
      traj = solve_hartree(sample.points[k], config.t_max, steps, tableau, potential);
    } catch (const NewtonError& e) {
      throw NewtonError("Hartree node " + std::to_string(k) + ": " + e.what(), e.residual());
    }
    for (int j = 0; j < config.time_samples; ++j) {
      nodes_at[static_cast<std::size_t>(j)][k] = traj.points[static_cast<std::size_t>(j * stride)];
    }
  }
  return nodes_at;
}

std::optional<std::uint64_t> step_floor(const ExperimentConfig& config, double t) {
  if (config.certified_steps_only) return std::uint64_t{0};
  return static_cast<std::uint64_t>(std::ceil(config.steps_per_unit_time * std::abs(t) - 1e-12));
}

struct SectorSetup {
  SectorBasis basis;
  SparseHermitian kinetic;
  DiagonalOperator interaction;
  double epsilon;
};

SectorSetup make_sector(const ExperimentConfig& config, int particles, const PotentialTable& potential) {
  SectorBasis basis(config.sites, particles);
  const double epsilon = 1.0 / particles;
  SparseHermitian kinetic = config.cache_kinetic ? cached_kinetic(config.cache_dir, basis, epsilon)
                                                 : build_kinetic(basis, epsilon);
  DiagonalOperator interaction = build_interaction_diagonal(basis, potential, epsilon);
  return SectorSetup{std::move(basis), std::move(kinetic), std::move(interaction), epsilon};
}

// Evolves the family state through the given increasing times starting at 0,
// calling visit(j, state) at each.
template <typename Visit>
void evolve_through(const ExperimentConfig& config, const SectorSetup& sector, const PotentialTable& potential,
                    const std::vector<double>& times, Visit&& visit, double* bound = nullptr,
                    std::uint64_t* steps = nullptr) {
  FockVector u = build_state(config.state_family(), sector.basis);
  double previous = 0.0;
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double dt = times[j] - previous;
    if (dt != 0.0) {
      const auto plan = plan_evolution(dt, sector.epsilon, sector.kinetic, sector.interaction, potential.max_abs(),
                                       step_floor(config, dt));
      if (bound) *bound = std::max(*bound, plan.error_bound());
      if (steps) *steps = std::max(*steps, plan.steps());
      u = evolve(plan, std::move(u));
    }
    previous = times[j];
    visit(j, u);
  }
}

void check_budget(const ExperimentConfig& config, int particles) {
  const std::uint64_t bytes = memory_estimate(config.sites, particles);
  if (bytes > kDeskBudget) {
    std::cerr << "K=" << config.sites << " N=" << particles << ": estimated memory "
              << static_cast<double>(bytes) / (1 << 20) << " MiB\n";
    if (!config.full_scale) {
      throw ConfigError("N=" + std::to_string(particles) + " exceeds the desk-scale memory budget; set full_scale=1");
    }
  }
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty integer list");
  std::vector<int> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ':')) parts.push_back(trim(part));
    if (parts.size() < 2 || parts.size() > 3) throw ConfigError("bad range '" + s + "'");
    const int lo = parse_int("range", parts[0]);
    const int hi = parse_int("range", parts[1]);
    const int stride = parts.size() == 3 ? parse_int("range", parts[2]) : 1;
    if (stride <= 0 || hi < lo) throw ConfigError("bad range '" + s + "'");
    for (int v = lo; v <= hi; v += stride) out.push_back(v);
    return out;
  }
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) out.push_back(parse_int("list", trim(part)));
  return out;
}

std::uint64_t memory_estimate(int sites, int particles) {
  const double dim = static_cast<double>(sector_dimension(sites, particles));
  const double hops = particles > 0 ? 2.0 * sites * static_cast<double>(sector_dimension(sites, particles - 1)) : 0.0;
  // 8 complex work vectors, two phase tables, the diagonal, the rank keys and
  // occupation rows, and CSR storage (4-byte column, 8-byte value, row offsets).
  const double bytes = dim * (8 * 16 + 2 * 16 + 8 + 8 + sites + 8) + hops * 12.0;
  return static_cast<std::uint64_t>(bytes);
}

void ExperimentConfig::validate() const {
  if (sites < 3) throw ConfigError("K must be at least 3");
  if (particle_counts.empty()) throw ConfigError("N list is empty");
  for (int n : particle_counts) {
    if (n < 1) throw ConfigError("N must be positive");
    if (family == FamilyKind::Twin && n % 2 != 0) throw ConfigError("twin states need even N");
    if (family == FamilyKind::Wq && (wq_q < 0 || wq_q >= n)) throw ConfigError("wq needs 0 <= q < N");
    for (int p : orders) {
      if (p > n) throw ConfigError("order p exceeds N=" + std::to_string(n));
    }
  }
  if (orders.empty()) throw ConfigError("p list is empty");
  for (int p : orders) {
    if (p < 1) throw ConfigError("p must be positive");
  }
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be finite and non-negative");
  if (time_samples < 1) throw ConfigError("time_samples must be positive");
  if (hartree_steps < 1) throw ConfigError("hartree_steps must be positive");
  if (wigner_nodes < 1) throw ConfigError("m must be positive");
  if (!(steps_per_unit_time >= 0.0)) throw ConfigError("step_floor must be non-negative");
  if (jobs < 1) throw ConfigError("jobs must be positive");
  try {
    ButcherTableau::by_name(tableau);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "K" || key == "sites") {
    sites = parse_int(key, value);
  } else if (key == "N" || key == "particles") {
    particle_counts = parse_int_list(value);
  } else if (key == "family") {
    try {
      family = family_from_string(value);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "q") {
    wq_q = parse_int(key, value);
  } else if (key == "p" || key == "orders") {
    orders = parse_int_list(value);
  } else if (key == "t_max") {
    t_max = parse_double(key, value);
  } else if (key == "time_samples") {
    time_samples = parse_int(key, value);
  } else if (key == "hartree_steps") {
    hartree_steps = parse_int(key, value);
  } else if (key == "tableau") {
    tableau = value;
  } else if (key == "m" || key == "wigner_nodes") {
    wigner_nodes = parse_int(key, value);
  } else if (key == "step_floor") {
    steps_per_unit_time = parse_double(key, value);
  } else if (key == "certified_only") {
    certified_steps_only = parse_bool(key, value);
  } else if (key == "output" || key == "output_dir") {
    output_dir = value;
  } else if (key == "cache") {
    cache_kinetic = parse_bool(key, value);
  } else if (key == "cache_dir") {
    cache_dir = value;
  } else if (key == "full_scale") {
    full_scale = parse_bool(key, value);
  } else if (key == "jobs") {
    jobs = parse_int(key, value);
  } else if (key == "report_N") {
    report_particles = parse_int(key, value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key=value");
    config.set(line.substr(0, eq), line.substr(eq + 1));
  }
  return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

StateFamily ExperimentConfig::state_family() const {
  StateFamily family_data = StateFamily::standard(family, sites);
  family_data.q = wq_q;
  return family_data;
}

std::vector<double> ExperimentConfig::sample_times() const {
  std::vector<double> times(static_cast<std::size_t>(time_samples));
  for (int j = 0; j < time_samples; ++j) {
    times[static_cast<std::size_t>(j)] = time_samples == 1 ? t_max : t_max * j / (time_samples - 1);
  }
  return times;
}

std::map<std::string, std::string> ExperimentConfig::resolved() const {
  std::ostringstream t;
  t.imbue(std::locale::classic());
  t.precision(17);
  t << t_max;
  std::ostringstream floor;
  floor.imbue(std::locale::classic());
  floor << steps_per_unit_time;
  std::map<std::string, std::string> out{
      {"K", std::to_string(sites)},
      {"N", join(particle_counts)},
      {"family", to_string(family)},
      {"p", join(orders)},
      {"t_max", t.str()},
      {"time_samples", std::to_string(time_samples)},
      {"hartree_steps", std::to_string(aligned_hartree_steps(*this))},
      {"tableau", tableau},
      {"m", std::to_string(wigner_nodes)},
      {"step_floor", floor.str()},
      {"certified_only", certified_steps_only ? "1" : "0"},
  };
  if (family == FamilyKind::Wq) out["q"] = std::to_string(wq_q);
  return out;
}

SlopeFit fit_slope(const std::vector<std::pair<int, double>>& points) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [n, err] : points) {
    if (!(err > 0.0) || n <= 0) {
      std::cerr << "warning: dropping N=" << n << " with error " << err << " from the slope fit\n";
      continue;
    }
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(err));
  }
  if (xs.size() < 3) throw std::invalid_argument("slope fit needs at least 3 points with positive error");
  const double count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct N values");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / count);
  fit.points = static_cast<int>(xs.size());
  return fit;
}

ConvergenceReport run_convergence(const ExperimentConfig& config) {
  config.validate();
  for (int n : config.particle_counts) check_budget(config, n);

  ConvergenceReport report;
  report.times = config.sample_times();
  const PotentialTable potential = build_potential(config.sites);
  const StateFamily family = config.state_family();
  const WignerSample sample = wigner_sample(family, config.wigner_nodes);

  // The Wigner sample does not depend on N except for PhiN, whose limit is
  // the single point e2 for every N; the mean-field side is shared.
  const auto nodes_at = mean_field_nodes(config, sample, potential);
  std::map<int, std::vector<DensityMatrix>> limits;
  for (int p : config.orders) {
    auto& row = limits[p];
    for (const auto& nodes : nodes_at) row.push_back(mean_field_rdm(sample, nodes, p));
  }

  struct Outcome {
    std::map<int, ConvergenceRecord> by_order;
    double bound = 0.0;
    std::uint64_t steps = 0;
    std::optional<std::string> failure;
  };
  const std::size_t count = config.particle_counts.size();
  std::vector<Outcome> outcomes(count);
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= count) return;
      const int n = config.particle_counts[idx];
      Outcome& out = outcomes[idx];
      try {
        const SectorSetup sector = make_sector(config, n, potential);
        for (int p : config.orders) {
          out.by_order[p] = ConvergenceRecord{n, p, 0.0, {}};
        }
        evolve_through(
            config, sector, potential, report.times,
            [&](std::size_t j, const FockVector& u) {
              for (int p : config.orders) {
                const DensityMatrix gamma = reduced_density_matrix(u, sector.basis, p, sector.epsilon);
                const double err = trace_norm_distance(gamma, limits[p][j]).value;
                auto& rec = out.by_order[p];
                rec.per_time.push_back(err);
                rec.error = std::max(rec.error, err);
              }
            },
            &out.bound, &out.steps);
      } catch (const std::exception& e) {
        out.failure = e.what();
      }
    }
  };

  const int threads = std::min<int>(config.jobs, static_cast<int>(count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t idx = 0; idx < count; ++idx) {
    const int n = config.particle_counts[idx];
    auto& out = outcomes[idx];
    if (out.failure) {
      std::cerr << "N=" << n << " failed: " << *out.failure << "\n";
      report.failures.push_back(RunFailure{n, *out.failure});
      continue;
    }
    report.propagator_error_bound[n] = out.bound;
    report.propagator_steps[n] = out.steps;
    for (auto& [p, rec] : out.by_order) report.records[p].push_back(std::move(rec));
  }

  for (int p : config.orders) {
    std::vector<std::pair<int, double>> points;
    for (const auto& rec : report.records[p]) points.emplace_back(rec.particles, rec.error);
    try {
      report.fits[p] = fit_slope(points);
    } catch (const std::invalid_argument& e) {
      std::cerr << "p=" << p << ": " << e.what() << "\n";
    }
  }
  return report;
}

void write_convergence_outputs(const ExperimentConfig& config, const ConvergenceReport& report) {
  const auto& dir = config.output_dir;
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json manifest;
  manifest["config"] = config.resolved();
  manifest["times"] = report.times;

  for (const auto& [p, records] : report.records) {
    const std::string suffix = "_p" + std::to_string(p);
    {
      auto out = open_output(dir / ("convergence" + suffix + ".csv"));
      out << "N,error,logN,logerr\n";
      for (const auto& rec : records) {
        out << rec.particles << ',' << rec.error << ',' << std::log(static_cast<double>(rec.particles)) << ','
            << (rec.error > 0.0 ? std::log(rec.error) : -std::numeric_limits<double>::infinity()) << '\n';
      }
    }
    {
      auto out = open_output(dir / ("convergence" + suffix + "_times.csv"));
      out << "N";
      for (double t : report.times) out << ",t=" << format_time(t);
      out << '\n';
      for (const auto& rec : records) {
        out << rec.particles;
        for (double e : rec.per_time) out << ',' << e;
        out << '\n';
      }
    }
    auto fit = report.fits.find(p);
    {
      auto out = open_output(dir / ("slope" + suffix + ".txt"));
      if (fit != report.fits.end()) {
        out << "slope " << fit->second.slope << "\nintercept " << fit->second.intercept << "\nresidual "
            << fit->second.residual << "\npoints " << fit->second.points << '\n';
      } else {
        out << "slope unavailable\n";
      }
    }
    nlohmann::ordered_json entry;
    entry["p"] = p;
    if (fit != report.fits.end()) {
      entry["slope"] = fit->second.slope;
      entry["intercept"] = fit->second.intercept;
      entry["residual"] = fit->second.residual;
    }
    nlohmann::ordered_json errs = nlohmann::ordered_json::array();
    for (const auto& rec : records) errs.push_back({{"N", rec.particles}, {"error", rec.error}});
    entry["errors"] = errs;
    manifest["orders"].push_back(entry);
  }

  nlohmann::ordered_json prop = nlohmann::ordered_json::array();
  for (const auto& [n, bound] : report.propagator_error_bound) {
    prop.push_back({{"N", n}, {"steps_per_interval", report.propagator_steps.at(n)}, {"certified_error_bound", bound}});
  }
  manifest["propagator"] = prop;
  nlohmann::ordered_json failures = nlohmann::ordered_json::array();
  for (const auto& f : report.failures) failures.push_back({{"N", f.particles}, {"error", f.message}});
  manifest["failures"] = failures;

  auto out = open_output(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

std::vector<DensityTable> density_profile(const ExperimentConfig& config, int particles,
                                          const std::vector<double>& times) {
  config.validate();
  check_budget(config, particles);
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0)) {
    throw ConfigError("density times must be non-negative and increasing");
  }
  const PotentialTable potential = build_potential(config.sites);
  const WignerSample sample = wigner_sample(config.state_family(), config.wigner_nodes);
  const SectorSetup sector = make_sector(config, particles, potential);
  const HartreeConfig hc = hartree_config(config);

  std::vector<DensityTable> tables;
  evolve_through(config, sector, potential, times, [&](std::size_t j, const FockVector& u) {
    const double t = times[j];
    const auto quantum = site_densities(reduced_density_matrix(u, sector.basis, 1, sector.epsilon));
    HartreeConfig scaled = hc;
    scaled.steps = config.t_max > 0.0
                       ? std::max(1, static_cast<int>(std::ceil(config.hartree_steps * t / config.t_max - 1e-12)))
                       : config.hartree_steps;
    const auto mean = site_densities(asymptotic_rdm(sample, 1, t, potential, scaled));
    DensityTable table;
    table.time = t;
    for (int k = 0; k < config.sites; ++k) {
      table.rows.push_back(DensityRow{k + 1, quantum[static_cast<std::size_t>(k)], mean[static_cast<std::size_t>(k)]});
    }
    tables.push_back(std::move(table));
  });
  return tables;
}

void write_density_outputs(const std::filesystem::path& dir, const std::vector<DensityTable>& tables) {
  for (const auto& table : tables) {
    auto out = open_output(dir / ("density_t" + format_time(table.time) + ".csv"));
    out << "site,quantum,meanfield\n";
    for (const auto& row : table.rows) out << row.site << ',' << row.quantum << ',' << row.mean_field << '\n';
  }
}

CorrelationPair correlation_compare(const ExperimentConfig& config, int particles, double t) {
  config.validate();
  check_budget(config, particles);
  if (particles < 2) throw ConfigError("pair correlations need N >= 2");
  if (!(t >= 0.0)) throw ConfigError("correlation time must be non-negative");
  const PotentialTable potential = build_potential(config.sites);
  const WignerSample sample = wigner_sample(config.state_family(), config.wigner_nodes);
  const SectorSetup sector = make_sector(config, particles, potential);
  HartreeConfig hc = hartree_config(config);
  if (config.t_max > 0.0) {
    hc.steps = std::max(1, static_cast<int>(std::ceil(config.hartree_steps * t / config.t_max - 1e-12)));
  }

  CorrelationPair pair;
  pair.time = t;
  pair.particles = particles;
  evolve_through(config, sector, potential, {t}, [&](std::size_t, const FockVector& u) {
    pair.quantum = reduced_density_matrix(u, sector.basis, 2, sector.epsilon);
  });
  pair.mean_field = asymptotic_rdm(sample, 2, t, potential, hc);
  return pair;
}

void write_correlation_outputs(const std::filesystem::path& dir, const CorrelationPair& pair) {
  const int sites = pair.quantum.sites;
  const SectorBasis two(sites, 2);
  auto dump_pairs = [&](const std::filesystem::path& path, const DensityMatrix& gamma) {
    auto out = open_output(path);
    out << "k,l,value\n";
    std::vector<int> occ(static_cast<std::size_t>(sites), 0);
    for (int k = 0; k < sites; ++k) {
      for (int l = k; l < sites; ++l) {
        std::fill(occ.begin(), occ.end(), 0);
        ++occ[static_cast<std::size_t>(k)];
        ++occ[static_cast<std::size_t>(l)];
        const auto r = static_cast<Eigen::Index>(*two.find(occ));
        out << k + 1 << ',' << l + 1 << ',' << gamma.matrix(r, r).real() << '\n';
      }
    }
  };
  dump_pairs(dir / "gamma2_quantum.csv", pair.quantum);
  dump_pairs(dir / "gamma2_meanfield.csv", pair.mean_field);
  pair.quantum.write_csv(dir / "gamma2_quantum_matrix.csv");
  pair.mean_field.write_csv(dir / "gamma2_meanfield_matrix.csv");
}

std::string format_time(double t) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(15);
  out << t;
  return out.str();
}

}  // namespace bosonmf
