#pragma once

// Fourth-order composition of Strang splittings for exp(-i t H / eps), with
// the free factor replaced by a norm-normalized fourth-order Taylor polynomial.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>

#include "bosonmf/operators.hpp"

namespace bosonmf {

struct CompositionCoefficients {
  double a1;
  double a2;
  double a3;
};

/// a1 = a3 = 1/(2 - 2^{1/3}), a2 = -2^{1/3}/(2 - 2^{1/3}).
CompositionCoefficients composition_coefficients();

/// Certified operator-norm bounds used to size the step count.
struct NormBounds {
  double kinetic = 2.0;      // ||dGamma(-Delta_K)|| <= ||Delta_K|| = 2
  double interaction = 0.5;  // ||V|| <= max|V_ij| / 2
};

/// (a1 - a2) ||A|| - (3 a2 / 2) ||B||.
double splitting_radius(const NormBounds& bounds);

/// Smallest J with J >= (t / (5 eps)) * splitting_radius.
std::uint64_t certified_step_count(double t, double epsilon, const NormBounds& bounds);

/// Global error bound (2 (e/5)^5 R^5 + (3/4) ||A||^5) |t| dt^4 / eps^5 for J steps.
double global_error_bound(double t, double epsilon, std::uint64_t steps, const NormBounds& bounds);

/// Default step floor: ceil(100 |t|).
std::uint64_t default_step_floor(double t);

class PropagationPlan {
 public:
  double time() const { return time_; }
  std::uint64_t steps() const { return steps_; }
  std::uint64_t certified_steps() const { return certified_steps_; }
  double dt() const { return dt_; }
  double epsilon() const { return epsilon_; }
  double error_bound() const { return error_bound_; }
  const NormBounds& bounds() const { return bounds_; }
  const SparseHermitian& kinetic() const { return *kinetic_; }
  const DiagonalOperator& interaction() const { return *interaction_; }

  /// Phase factors exp(-i (a1/2) dt V / eps) and exp(-i ((a1+a2)/2) dt V / eps).
  const std::vector<Complex>& outer_phase() const { return outer_phase_; }
  const std::vector<Complex>& inner_phase() const { return inner_phase_; }

 private:
  friend PropagationPlan plan_evolution(double, double, const SparseHermitian&, const DiagonalOperator&, double,
                                        std::optional<std::uint64_t>);
  double time_ = 0.0;
  std::uint64_t steps_ = 0;
  std::uint64_t certified_steps_ = 0;
  double dt_ = 0.0;
  double epsilon_ = 1.0;
  double error_bound_ = 0.0;
  NormBounds bounds_;
  const SparseHermitian* kinetic_ = nullptr;
  const DiagonalOperator* interaction_ = nullptr;
  std::vector<Complex> outer_phase_;
  std::vector<Complex> inner_phase_;
};

/// Builds a plan for total time t (negative t runs backwards). The step count
/// is max(certified J, min_steps); min_steps defaults to ceil(100 |t|) and
/// 0 gives the bare certified J. The plan refers to kinetic and interaction,
/// which must outlive it.
PropagationPlan plan_evolution(double t, double epsilon, const SparseHermitian& kinetic,
                               const DiagonalOperator& interaction, double max_potential,
                               std::optional<std::uint64_t> min_steps = std::nullopt);

/// u <- phase (elementwise).
void apply_interaction_phase(FockVector& u, std::span<const Complex> phase);

/// exp(-i angle_scale * V_alpha) for every basis element.
std::vector<Complex> interaction_phase(const DiagonalOperator& interaction, double angle_scale);

/// Normalized Taylor step: TL(e^A) u rescaled to ||u||, A = -i tau kinetic.
FockVector taylor4_normalized(const SparseHermitian& kinetic, double tau, const FockVector& u);

/// One full dt step of the modified composition.
FockVector composition_step(const PropagationPlan& plan, const FockVector& u);

struct EvolveHooks {
  /// Called after every step with (step index starting at 1, current state).
  std::function<void(std::uint64_t, const FockVector&)> on_step;
  /// When set, the state is written to checkpoint_dir every checkpoint_every steps.
  std::optional<std::filesystem::path> checkpoint_dir;
  std::uint64_t checkpoint_every = 0;
};

class PropagationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies composition_step plan.steps() times.
FockVector evolve(const PropagationPlan& plan, FockVector u0, const EvolveHooks& hooks = {});

// Checkpoint format: magic "BMFVEC01", K (u32), N (u32), step (u64), dim (u64),
// then dim pairs (re f64, im f64), little-endian.
void save_state(const std::filesystem::path& path, const FockVector& u, std::uint64_t step);
FockVector load_state(const std::filesystem::path& path, std::uint64_t* step = nullptr);

}  // namespace bosonmf
