// Copyright 2026 The gcans Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file bench.hpp
 * Experiment runner: seeded multi-start optimizer runs, per-iteration CSV
 * traces, JSON summaries, cloud cost/time models and hyperparameter sweeps.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcans/estimator.hpp"
#include "gcans/optimizers.hpp"
#include "gcans/pauli.hpp"

namespace gcans::bench {

/// Raised for malformed or inconsistent experiment specs.
class SpecError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// C = 0.3 P K + 0.00035 S dollars.
double cost_usd(std::uint64_t iterations, std::uint64_t shots, std::uint64_t terms);
/// T = 0.1 P K + 0.0002 S seconds.
double time_seconds(std::uint64_t iterations, std::uint64_t shots, std::uint64_t terms);

struct ProblemSpec {
    enum class Kind { tfim, file };
    Kind kind = Kind::tfim;
    std::size_t num_qubits = 0;
    double field = 0.0;
    Boundary boundary = Boundary::open;
    std::filesystem::path hamiltonian_file;
    std::size_t depth = 1;

    [[nodiscard]] Observable observable() const;
    [[nodiscard]] std::string describe() const;
};

/**
 * One optimizer entry. Unset fields keep the OptimizerConfig defaults;
 * the learning rate is learning_rate_multiplier / L.
 */
struct OptimizerSpec {
    OptimizerKind kind = OptimizerKind::gcans;
    std::string label; ///< file stem; defaults to the optimizer name
    double learning_rate_multiplier = 0.5;
    std::optional<double> lipschitz; ///< overrides d * one_norm
    std::optional<double> mu;
    std::optional<ShotCount> min_shots;
    std::optional<ShotCount> max_shots_per_component;
    std::optional<double> icans_bias;
    std::optional<double> adam_beta1;
    std::optional<double> adam_beta2;
    std::optional<double> adam_epsilon;
    std::optional<ShotCount> adam_shots;
    std::optional<ShotCount> sgd_initial_shots;
    std::optional<double> sgd_common_ratio;

    [[nodiscard]] OptimizerConfig config(double default_lipschitz, ShotCount budget) const;
};

struct ExperimentSpec {
    ProblemSpec problem;
    std::vector<OptimizerSpec> optimizers;
    ShotCount budget = 0;
    std::vector<std::uint64_t> seeds;
    std::optional<double> threshold;   ///< absolute epsilon; wins over the fraction
    double threshold_fraction = 0.01;  ///< epsilon = fraction * initial gap, per seed
    std::optional<double> ground_energy; ///< required when the problem is too large for the dense oracle
    AllocationStrategy strategy = AllocationStrategy::weighted_random;
    std::filesystem::path output_dir = "results";
    std::size_t threads = 0; ///< 0: hardware concurrency
    std::map<std::string, std::vector<double>> sweep_values;

    /// Throws SpecError on any violated invariant.
    void validate() const;
};

/**
 * Parse a JSON spec. Unknown keys are errors. Relative Hamiltonian paths
 * resolve against `base_dir`.
 */
ExperimentSpec parse_spec(std::string_view text, const std::filesystem::path &base_dir = {});

/// Reads the file, then applies the GCANS_OUTPUT_DIR override when set.
ExperimentSpec load_spec(const std::filesystem::path &path);

struct CellResult {
    std::string label;
    OptimizerKind kind = OptimizerKind::gcans;
    std::uint64_t seed = 0;
    OptimizationTrace trace;
    double threshold = 0.0; ///< epsilon in energy units
    std::optional<ShotCount> shots_to_threshold;
    std::optional<std::uint64_t> iterations_to_threshold;

    [[nodiscard]] std::uint64_t iterations() const { return trace.iterations(); }
    [[nodiscard]] ShotCount shots() const { return trace.total_shots(); }
};

struct ExperimentResult {
    double ground_energy = 0.0;
    std::size_t terms = 0;
    std::size_t dimension = 0;
    double lipschitz = 0.0;
    std::vector<CellResult> cells; ///< optimizer-major, seed-minor

    [[nodiscard]] std::vector<const CellResult *> cells_for(std::string_view label) const;
};

/// First cumulative shot count (and iteration count) at which energy - ground <= epsilon.
std::optional<std::size_t> first_record_within(const OptimizationTrace &trace,
                                               double ground_energy, double epsilon);

/// CSV text of one trace: k,cumulative_shots,exact_energy,estimated_grad_norm,shots_this_iteration,min_s,max_s.
std::string trace_csv(const OptimizationTrace &trace);

/// Summary JSON text for a finished experiment.
std::string summary_json(const ExperimentSpec &spec, const ExperimentResult &result);

/**
 * Runs every (optimizer, seed) cell. Seed s draws theta0 from Rng(s, 0) and
 * runs the optimizer on Rng(s, 1), so all optimizers share a start per seed.
 * When `write_files` is set, writes <label>_seed<s>.csv and summary.json to
 * spec.output_dir.
 */
ExperimentResult run_experiment(const ExperimentSpec &spec, bool write_files = true);

enum class SweepAxis { learning_rate_multiplier, common_ratio };
SweepAxis parse_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

struct SweepPoint {
    std::string label;
    double value = 0.0;
    bool feasible = true;
    std::string error; ///< config rejection message when infeasible
    std::vector<std::uint64_t> seeds;
    std::vector<double> final_energies;
    std::vector<double> normalized_gaps; ///< (final - ground) / epsilon per seed
    [[nodiscard]] double median_gap() const;
};

struct SweepReport {
    SweepAxis axis = SweepAxis::learning_rate_multiplier;
    double ground_energy = 0.0;
    std::vector<SweepPoint> points;

    /// max - min of the median normalized gaps over the feasible points of `label`.
    [[nodiscard]] std::optional<double> range(std::string_view label) const;
    /// True when every point of `label` ran.
    [[nodiscard]] bool complete(std::string_view label) const;
};

/**
 * For every value in spec.sweep_values[axis] and every optimizer the axis
 * applies to (all of them for the learning rate, SGD-DS for the common ratio),
 * runs all seeds. Configurations rejected by validation become infeasible
 * points rather than errors. Writes sweep_<axis>.csv and
 * sweep_<axis>_summary.json when `write_files` is set.
 */
SweepReport run_sweep(const ExperimentSpec &spec, SweepAxis axis, bool write_files = true);

std::string sweep_csv(const SweepReport &report);

/// Dense ground energy of the spec's problem.
double ground(const ProblemSpec &problem);

} // namespace gcans::bench
