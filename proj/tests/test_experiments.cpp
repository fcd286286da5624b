#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "bosonmf/experiments.hpp"

using namespace bosonmf;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ExperimentConfig small_config(const std::string& family, const std::filesystem::path& out) {
  auto c = ExperimentConfig::from_text("family=" + family + "\nK=3\nN=2:6:2\np=1,2\nt_max=0.5\ntime_samples=3\n");
  c.output_dir = out;
  return c;
}

}  // namespace

TEST_CASE("integer lists and ranges") {
  CHECK(parse_int_list("2:20:2") == std::vector<int>{2, 4, 6, 8, 10, 12, 14, 16, 18, 20});
  CHECK(parse_int_list("1, 2") == std::vector<int>{1, 2});
  CHECK(parse_int_list("3:5") == std::vector<int>{3, 4, 5});
  CHECK_THROWS_AS(parse_int_list("5:3"), ConfigError);
  CHECK_THROWS_AS(parse_int_list("a,b"), ConfigError);
}

TEST_CASE("config file parsing") {
  const auto c = ExperimentConfig::from_text(
      "# study\nfamily=twin\nK=10\nN=2:20:2\np=1,2\nt_max=1.0\nhartree_steps=100\nm=64  # nodes\n");
  CHECK(c.family == FamilyKind::Twin);
  CHECK(c.sites == 10);
  CHECK(c.particle_counts.size() == 10);
  CHECK(c.orders == std::vector<int>{1, 2});
  CHECK(c.t_max == 1.0);
  CHECK(c.wigner_nodes == 64);
  CHECK(c.time_samples == 11);
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(ExperimentConfig::from_text("colour=blue"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_text("K"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_text("t_max=1,5"), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_text("family=twin\nN=3").validate(), ConfigError);
  CHECK_THROWS_AS(ExperimentConfig::from_text("K=2").validate(), ConfigError);
  const auto times = ExperimentConfig().sample_times();
  REQUIRE(times.size() == 11);
  CHECK(times.front() == 0.0);
  CHECK(times.back() == 1.0);
}

TEST_CASE("slope fit") {
  std::vector<std::pair<int, double>> pts;
  for (int n = 2; n <= 12; n += 2) pts.emplace_back(n, 3.0 / n);
  const auto fit = fit_slope(pts);
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  pts.emplace_back(14, 0.0);
  CHECK(fit_slope(pts).points == 6);
  CHECK_THROWS(fit_slope({{2, 1.0}, {4, 0.5}}));
  std::vector<std::pair<int, double>> half;
  for (int n = 2; n <= 12; n += 2) half.emplace_back(n, 2.0 / std::sqrt(n));
  CHECK(fit_slope(half).slope == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("desk budget gate") {
  auto c = ExperimentConfig::from_text("K=10\nN=20\np=1");
  CHECK(memory_estimate(10, 20) > (std::uint64_t{1} << 30));
  CHECK_THROWS_AS(run_convergence(c), ConfigError);
}

TEST_CASE("small convergence study") {
  const auto dir = std::filesystem::temp_directory_path() / "bosonmf_test_conv";
  std::filesystem::remove_all(dir);
  const auto c = small_config("hermite", dir);
  const auto report = run_convergence(c);
  CHECK(report.failures.empty());
  for (int p : {1, 2}) {
    REQUIRE(report.records.at(p).size() == 3);
    for (const auto& rec : report.records.at(p)) {
      CHECK(std::isfinite(rec.error));
      CHECK(rec.error <= 2.0);
      CHECK(rec.per_time.size() == 3);
      CHECK(rec.per_time.front() <= 1e-10);
      CHECK(rec.error > 0.0);
    }
  }
  write_convergence_outputs(c, report);
  for (const char* f : {"convergence_p1.csv", "convergence_p2.csv", "slope_p1.txt", "manifest.json"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  CHECK(slurp(dir / "convergence_p1.csv").rfind("N,error,logN,logerr\n", 0) == 0);
  CHECK(slurp(dir / "manifest.json").find("certified_error_bound") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("repeated runs write identical files") {
  const auto a = std::filesystem::temp_directory_path() / "bosonmf_test_det_a";
  const auto b = std::filesystem::temp_directory_path() / "bosonmf_test_det_b";
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
  auto ca = small_config("twin", a);
  ca.wigner_nodes = 8;
  auto cb = ca;
  cb.output_dir = b;
  cb.jobs = 2;
  write_convergence_outputs(ca, run_convergence(ca));
  write_convergence_outputs(cb, run_convergence(cb));
  for (const auto& entry : std::filesystem::directory_iterator(a)) {
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));
  }
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("density and correlation exports") {
  const auto dir = std::filesystem::temp_directory_path() / "bosonmf_test_dens";
  std::filesystem::remove_all(dir);
  auto c = small_config("hermite", dir);
  const auto tables = density_profile(c, 6, {0.0, 0.5});
  REQUIRE(tables.size() == 2);
  for (const auto& t : tables) {
    double q = 0, m = 0;
    for (const auto& r : t.rows) {
      q += r.quantum;
      m += r.mean_field;
    }
    CHECK(q == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (const auto& r : tables[0].rows) CHECK(r.quantum == doctest::Approx(r.mean_field).epsilon(1e-12));
  write_density_outputs(dir, tables);
  CHECK(std::filesystem::exists(dir / "density_t0.csv"));
  CHECK(std::filesystem::exists(dir / "density_t0.5.csv"));

  c.sites = 5;
  const auto pair = correlation_compare(c, 12, 0.5);
  CHECK(std::abs(pair.quantum.trace() - 1.0) < 1e-8);
  CHECK(std::abs(pair.mean_field.trace() - 1.0) < 1e-8);
  CHECK(pair.quantum.eigenvalues().back() >= 0.9);
  write_correlation_outputs(dir, pair);
  CHECK(slurp(dir / "gamma2_quantum.csv").rfind("k,l,value\n", 0) == 0);
  CHECK(std::filesystem::exists(dir / "gamma2_meanfield_matrix.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("time formatting") {
  CHECK(format_time(0.0) == "0");
  CHECK(format_time(1.0) == "1");
  CHECK(format_time(0.25) == "0.25");
}
