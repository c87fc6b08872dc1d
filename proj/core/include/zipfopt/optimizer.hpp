#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "zipfopt/association_matrix.hpp"
#include "zipfopt/measures.hpp"

namespace zipfopt {

struct OptimizerConfig {
    ModelKind model = ModelKind::B;
    std::size_t forms = 10;
    std::size_t meanings = 10;
    double lambda = 0.4;
    /// Per-cell flip probability of a proposal; unset means 1/(V_S V_R).
    std::optional<double> mutation_prob;
    std::size_t max_steps = 1'000'000;
    /// Consecutive rejected proposals before stopping; unset means 10 V_S V_R.
    std::optional<std::size_t> stall_window;
    std::uint64_t seed = 1;
    double init_density = 0.5;
    LogBase log_base = LogBase::Two;
    /// Accept only strictly lower energy instead of Omega_new <= Omega_old.
    bool strict_descent = false;

    double effective_mutation_prob() const;
    std::size_t effective_stall_window() const;
    /// Throws std::invalid_argument describing the first violated constraint.
    void validate() const;
};

/// One point of the accepted-energy trace.
struct TracePoint {
    std::size_t step;
    double omega;
    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunRecord {
    OptimizerConfig config;
    AssociationMatrix terminal;
    MeasureSet measures;
    double omega = 0.0;
    /// Initial energy at step 0 followed by every strict improvement.
    std::vector<TracePoint> trace;
    std::size_t accepted = 0;
    std::size_t steps = 0;
    bool stalled = false;
    double wall_seconds = 0.0;
};

/// Zero-temperature Monte Carlo minimization of Omega(lambda).
///
/// Starts from random_matrix(init_density, seed). Each step flips every cell
/// independently with probability nu (proposals that would flip nothing are
/// redrawn). Mutants invalid for the model are rejected; valid ones are
/// accepted iff their energy does not exceed the current one. Stops after
/// max_steps or stall_window consecutive rejections. Bit-reproducible for a
/// fixed config.
RunRecord minimize(const OptimizerConfig& config);

/// Observable lexicon size: forms with p(s_i) > 0.
std::size_t observable_forms(const MeasureSet& measures) noexcept;

/// Trade-off 1/2 - epsilon at which Zipf-like distributions are expected.
double critical_lambda(double epsilon = 0.1) noexcept;

struct SweepConfig {
    OptimizerConfig base;  // lambda and seed are ignored; seed comes from master_seed
    std::vector<double> lambda_grid;
    std::size_t replicas = 1;
    std::uint64_t master_seed = 1;
    /// Worker threads; 0 means hardware concurrency.
    std::size_t threads = 1;

    void validate() const;
};

/// Seed of one sweep run, a hash of (master, lambda index, replica index).
std::uint64_t derive_seed(std::uint64_t master, std::size_t lambda_index, std::size_t replica);

/// Evenly spaced grid of `steps` values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t steps);

struct SweepRun {
    std::size_t lambda_index;
    std::size_t replica;
    std::size_t lexicon_size;
    /// lambda lies within 1e-9 of critical_lambda(0.1).
    bool critical_regime;
    RunRecord record;
};

struct SweepResult {
    std::vector<double> lambda_grid;
    /// Sorted by lambda index, then replica.
    std::vector<SweepRun> runs;

    /// Mean lexicon size per grid point.
    std::vector<double> mean_lexicon_sizes() const;
};

SweepResult sweep(const SweepConfig& config);

struct Transition {
    bool found = false;
    double lambda = 0.0;  ///< midpoint of the interval with the largest jump
    double jump = 0.0;    ///< signed change in mean L across that interval
};

/// Locates the grid interval with the largest absolute change in mean lexicon
/// size. `found` is false when the curve is flat. Throws std::invalid_argument
/// with fewer than 3 points or mismatched lengths.
Transition detect_transition(const std::vector<double>& lambdas,
                             const std::vector<double>& mean_lexicon);
Transition detect_transition(const SweepResult& result);

}  // namespace zipfopt
