#pragma once

// End-to-end mean-field convergence studies: sweep N, record the maximum over
// sampled times of ||gamma_N^(p)(t) - gamma_inf^(p)(t)||_1, fit log-log slopes,
// and export density and pair-correlation data.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bosonmf/rdm.hpp"
#include "bosonmf/states.hpp"

namespace bosonmf {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  int sites = 5;
  std::vector<int> particle_counts{2, 4, 6, 8, 10, 12};
  FamilyKind family = FamilyKind::Hermite;
  int wq_q = 2;
  std::vector<int> orders{1, 2};
  double t_max = 1.0;
  int time_samples = 11;  // uniform on [0, t_max], endpoints included
  int hartree_steps = 100;
  std::string tableau = "gauss2";
  int wigner_nodes = 64;
  double steps_per_unit_time = 100.0;  // floor on propagator steps
  bool certified_steps_only = false;   // ignore the floor, use the certified J
  std::filesystem::path output_dir = "out";
  bool cache_kinetic = false;
  std::filesystem::path cache_dir = "cache";
  bool full_scale = false;  // allow sectors above the desk-scale memory budget
  int jobs = 1;             // concurrent N values
  std::optional<int> report_particles;  // N for density/correlations; default max N

  /// Throws ConfigError when a field is out of range.
  void validate() const;

  /// Sets one field from its key; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  /// Reads "key=value" lines; '#' starts a comment.
  static ExperimentConfig from_file(const std::filesystem::path& path);
  static ExperimentConfig from_text(const std::string& text);

  StateFamily state_family() const;
  std::vector<double> sample_times() const;
  std::map<std::string, std::string> resolved() const;
};

/// "2:20:2" (inclusive range with stride) or "2,4,6".
std::vector<int> parse_int_list(const std::string& text);

/// Estimated peak bytes for one N-particle run.
std::uint64_t memory_estimate(int sites, int particles);

struct ConvergenceRecord {
  int particles = 0;
  int order = 0;
  double error = 0.0;             // max over sampled times
  std::vector<double> per_time;   // one value per sample time
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // root-mean-square of the log residuals
  int points = 0;
};

struct RunFailure {
  int particles = 0;
  std::string message;
};

struct ConvergenceReport {
  std::vector<double> times;
  std::map<int, std::vector<ConvergenceRecord>> records;  // by order p
  std::map<int, SlopeFit> fits;                           // by order p
  std::map<int, double> propagator_error_bound;           // by N, per sample interval
  std::map<int, std::uint64_t> propagator_steps;          // by N, per sample interval
  std::vector<RunFailure> failures;
};

/// Least squares of log(error) against log(N). Non-positive errors are
/// dropped with a warning; needs at least 3 remaining points.
SlopeFit fit_slope(const std::vector<std::pair<int, double>>& points);

ConvergenceReport run_convergence(const ExperimentConfig& config);

/// Writes convergence_p{p}.csv, convergence_p{p}_times.csv, slope_p{p}.txt and manifest.json.
void write_convergence_outputs(const ExperimentConfig& config, const ConvergenceReport& report);

struct DensityRow {
  int site = 0;  // 1-based
  double quantum = 0.0;
  double mean_field = 0.0;
};

struct DensityTable {
  double time = 0.0;
  std::vector<DensityRow> rows;
};

/// gamma^(1)_kk of the N-body state and of the mean-field limit at each time.
std::vector<DensityTable> density_profile(const ExperimentConfig& config, int particles,
                                          const std::vector<double>& times);

/// Writes density_t{t}.csv for each table.
void write_density_outputs(const std::filesystem::path& dir, const std::vector<DensityTable>& tables);

struct CorrelationPair {
  DensityMatrix quantum;
  DensityMatrix mean_field;
  double time = 0.0;
  int particles = 0;
};

/// gamma^(2) of the N-body state and of the mean-field limit at time t.
CorrelationPair correlation_compare(const ExperimentConfig& config, int particles, double t);

/// Writes gamma2_quantum.csv / gamma2_meanfield.csv (k,l,value over site
/// pairs k <= l at the basis element e_k v e_l) and the full matrices.
void write_correlation_outputs(const std::filesystem::path& dir, const CorrelationPair& pair);

/// Formats t for file names: shortest round-trip decimal with '.'.
std::string format_time(double t);

}  // namespace bosonmf
