#include "bosonmf/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

#include "binary_io.hpp"

namespace bosonmf {

CompositionCoefficients composition_coefficients() {
  const double cbrt2 = std::cbrt(2.0);
  const double a1 = 1.0 / (2.0 - cbrt2);
  return {a1, -cbrt2 / (2.0 - cbrt2), a1};
}

double splitting_radius(const NormBounds& bounds) {
  const auto c = composition_coefficients();
  return (c.a1 - c.a2) * bounds.kinetic - 1.5 * c.a2 * bounds.interaction;
}

std::uint64_t certified_step_count(double t, double epsilon, const NormBounds& bounds) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("certified_step_count: epsilon must be positive");
  const double j = std::abs(t) / (5.0 * epsilon) * splitting_radius(bounds);
  return static_cast<std::uint64_t>(std::ceil(j));
}

double global_error_bound(double t, double epsilon, std::uint64_t steps, const NormBounds& bounds) {
  if (steps == 0) return t == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  const double dt = std::abs(t) / static_cast<double>(steps);
  const double r = splitting_radius(bounds);
  const double e5 = std::pow(std::exp(1.0) / 5.0, 5);
  const double c = 2.0 * e5 * std::pow(r, 5) + 0.75 * std::pow(bounds.kinetic, 5);
  return c * std::abs(t) * std::pow(dt, 4) / std::pow(epsilon, 5);
}

std::uint64_t default_step_floor(double t) { return static_cast<std::uint64_t>(std::ceil(100.0 * std::abs(t))); }

std::vector<Complex> interaction_phase(const DiagonalOperator& interaction, double angle_scale) {
  std::vector<Complex> phase(interaction.dim());
  for (Index i = 0; i < phase.size(); ++i) phase[i] = std::polar(1.0, -angle_scale * interaction.values[i]);
  return phase;
}

PropagationPlan plan_evolution(double t, double epsilon, const SparseHermitian& kinetic,
                               const DiagonalOperator& interaction, double max_potential,
                               std::optional<std::uint64_t> min_steps) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("plan_evolution: epsilon must be positive");
  if (!std::isfinite(t)) throw std::invalid_argument("plan_evolution: time must be finite");
  if (kinetic.dim() != interaction.dim()) throw std::invalid_argument("plan_evolution: operator dimensions differ");
  PropagationPlan plan;
  plan.time_ = t;
  plan.epsilon_ = epsilon;
  plan.bounds_ = NormBounds{2.0, 0.5 * max_potential};
  plan.kinetic_ = &kinetic;
  plan.interaction_ = &interaction;
  if (t == 0.0) return plan;
  plan.certified_steps_ = certified_step_count(t, epsilon, plan.bounds_);
  plan.steps_ = std::max({plan.certified_steps_, min_steps.value_or(default_step_floor(t)), std::uint64_t{1}});
  plan.dt_ = t / static_cast<double>(plan.steps_);
  plan.error_bound_ = global_error_bound(t, epsilon, plan.steps_, plan.bounds_);
  const auto c = composition_coefficients();
  plan.outer_phase_ = interaction_phase(interaction, 0.5 * c.a1 * plan.dt_ / epsilon);
  plan.inner_phase_ = interaction_phase(interaction, 0.5 * (c.a1 + c.a2) * plan.dt_ / epsilon);
  return plan;
}

void apply_interaction_phase(FockVector& u, std::span<const Complex> phase) {
  if (phase.size() != u.size()) throw std::invalid_argument("apply_interaction_phase: length mismatch");
  const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) u.coeffs[static_cast<Index>(i)] *= phase[static_cast<Index>(i)];
}

FockVector taylor4_normalized(const SparseHermitian& kinetic, double tau, const FockVector& u) {
  if (u.size() != kinetic.dim()) throw std::invalid_argument("taylor4_normalized: dimension mismatch");
  const double in_norm = u.norm();
  if (tau == 0.0 || in_norm == 0.0) return u;
  // Horner: u + A(u + A/2 (u + A/3 (u + A/4 u))), A = -i tau M.
  const Index n = u.size();
  std::vector<Complex> acc = u.coeffs;
  std::vector<Complex> tmp(n);
  const Complex minus_i_tau(0.0, -tau);
  for (int k = 4; k >= 1; --k) {
    kinetic.multiply(acc, tmp);
    const Complex f = minus_i_tau / static_cast<double>(k);
    for (Index i = 0; i < n; ++i) acc[i] = u.coeffs[i] + f * tmp[i];
  }
  FockVector out(u.sites, u.particles, std::move(acc));
  const double out_norm = out.norm();
  if (!(out_norm > 1e-300)) {
    std::ostringstream os;
    os << "taylor4_normalized: Taylor polynomial annihilated the state (tau=" << tau << ", |u|=" << in_norm
       << ", |TL u|=" << out_norm << ")";
    throw PropagationError(os.str());
  }
  out.scale(in_norm / out_norm);
  return out;
}

FockVector composition_step(const PropagationPlan& plan, const FockVector& u) {
  if (plan.steps() == 0) return u;
  const auto c = composition_coefficients();
  const double scale = plan.dt() / plan.epsilon();
  FockVector v = u;
  apply_interaction_phase(v, plan.outer_phase());
  v = taylor4_normalized(plan.kinetic(), c.a1 * scale, v);
  apply_interaction_phase(v, plan.inner_phase());
  v = taylor4_normalized(plan.kinetic(), c.a2 * scale, v);
  apply_interaction_phase(v, plan.inner_phase());
  v = taylor4_normalized(plan.kinetic(), c.a3 * scale, v);
  apply_interaction_phase(v, plan.outer_phase());
  return v;
}

FockVector evolve(const PropagationPlan& plan, FockVector u0, const EvolveHooks& hooks) {
  for (std::uint64_t s = 1; s <= plan.steps(); ++s) {
    u0 = composition_step(plan, u0);
    if (hooks.on_step) hooks.on_step(s, u0);
    if (hooks.checkpoint_dir && hooks.checkpoint_every > 0 && s % hooks.checkpoint_every == 0) {
      std::filesystem::create_directories(*hooks.checkpoint_dir);
      save_state(*hooks.checkpoint_dir / ("state_step" + std::to_string(s) + ".bin"), u0, s);
    }
  }
  return u0;
}

namespace {
constexpr char kStateMagic[8] = {'B', 'M', 'F', 'V', 'E', 'C', '0', '1'};
}

void save_state(const std::filesystem::path& path, const FockVector& u, std::uint64_t step) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("save_state: cannot open " + path.string());
  os.write(kStateMagic, sizeof kStateMagic);
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(u.sites));
  io::write_le<std::uint32_t>(os, static_cast<std::uint32_t>(u.particles));
  io::write_le<std::uint64_t>(os, step);
  io::write_le<std::uint64_t>(os, u.size());
  for (const auto& c : u.coeffs) {
    io::write_le<double>(os, c.real());
    io::write_le<double>(os, c.imag());
  }
  if (!os) throw std::runtime_error("save_state: write failed for " + path.string());
}

FockVector load_state(const std::filesystem::path& path, std::uint64_t* step) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_state: cannot open " + path.string());
  char magic[8];
  if (!is.read(magic, sizeof magic) || !std::equal(magic, magic + 8, kStateMagic))
    throw std::runtime_error("load_state: bad magic in " + path.string());
  FockVector u;
  u.sites = static_cast<int>(io::read_le<std::uint32_t>(is));
  u.particles = static_cast<int>(io::read_le<std::uint32_t>(is));
  const auto s = io::read_le<std::uint64_t>(is);
  const auto dim = io::read_le<std::uint64_t>(is);
  if (dim != sector_dimension(u.sites, u.particles)) throw std::runtime_error("load_state: dimension mismatch");
  u.coeffs.resize(dim);
  for (auto& c : u.coeffs) {
    const double re = io::read_le<double>(is);
    const double im = io::read_le<double>(is);
    c = {re, im};
  }
  if (step) *step = s;
  return u;
}

}  // namespace bosonmf
