#include "zipfopt/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

namespace zipfopt {

double OptimizerConfig::effective_mutation_prob() const {
    return mutation_prob.value_or(1.0 / static_cast<double>(forms * meanings));
}

std::size_t OptimizerConfig::effective_stall_window() const {
    return stall_window.value_or(10 * forms * meanings);
}

void OptimizerConfig::validate() const {
    if (forms == 0 || meanings == 0) throw std::invalid_argument("vs and vr must be positive");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("lambda must lie in [0, 1]");
    const double nu = effective_mutation_prob();
    if (!(nu > 0.0 && nu <= 1.0)) throw std::invalid_argument("mutation-prob must lie in (0, 1]");
    if (max_steps < 1) throw std::invalid_argument("max-steps must be at least 1");
    if (effective_stall_window() < 1) throw std::invalid_argument("stall-window must be at least 1");
    if (!(init_density > 0.0 && init_density < 1.0)) {
        throw std::invalid_argument("init-density must lie in (0, 1)");
    }
}

namespace {

// Cells flipped by one proposal, drawn by geometric gaps so the cost is
// proportional to the number of flips rather than the number of cells.
class ProposalSampler {
public:
    ProposalSampler(std::size_t cells, double nu) : cells_(cells), all_(nu >= 1.0), gap_(all_ ? 0.5 : nu) {}

    void draw(std::mt19937_64& rng, std::vector<std::size_t>& out) {
        out.clear();
        if (all_) {
            for (std::size_t c = 0; c < cells_; ++c) out.push_back(c);
            return;
        }
        while (out.empty()) {
            std::size_t pos = gap_(rng);
            while (pos < cells_) {
                out.push_back(pos);
                pos += 1 + gap_(rng);
            }
        }
    }

private:
    std::size_t cells_;
    bool all_;
    std::geometric_distribution<std::size_t> gap_;
};

}  // namespace

RunRecord minimize(const OptimizerConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    EnergyTracker state(random_matrix(config.forms, config.meanings, config.init_density,
                                      config.model, config.seed),
                        config.model, config.log_base);
    // Separate stream from the initialization so changing nu never changes
    // the starting matrix.
    std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    ProposalSampler sampler(config.forms * config.meanings, config.effective_mutation_prob());
    const std::size_t stall_limit = config.effective_stall_window();

    double current = state.omega(config.lambda);
    RunRecord rec{config, state.matrix(), {}, current, {{0, current}}, 0, 0, false, 0.0};

    std::vector<std::size_t> flips;
    std::size_t stall = 0;
    std::size_t step = 0;
    while (step < config.max_steps) {
        ++step;
        sampler.draw(rng, flips);
        for (auto c : flips) state.flip_cell(c);

        bool accept = false;
        double candidate = current;
        if (state.valid()) {
            candidate = state.omega(config.lambda);
            accept = config.strict_descent ? candidate < current : candidate <= current;
        }
        if (accept) {
            ++rec.accepted;
            stall = 0;
            if (candidate < current) rec.trace.push_back({step, candidate});
            current = candidate;
        } else {
            for (auto it = flips.rbegin(); it != flips.rend(); ++it) state.flip_cell(*it);
            if (++stall >= stall_limit) {
                rec.stalled = true;
                break;
            }
        }
    }

    rec.steps = step;
    rec.terminal = state.matrix();
    rec.measures = entropy_measures(rec.terminal, config.model, config.log_base);
    rec.omega = current;
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::size_t observable_forms(const MeasureSet& measures) noexcept {
    return static_cast<std::size_t>(
        std::count_if(measures.p_form.begin(), measures.p_form.end(), [](double p) { return p > 0.0; }));
}

double critical_lambda(double epsilon) noexcept { return 0.5 - epsilon; }

void SweepConfig::validate() const {
    if (lambda_grid.empty()) throw std::invalid_argument("lambda grid is empty");
    for (std::size_t k = 0; k < lambda_grid.size(); ++k) {
        const double l = lambda_grid[k];
        if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("lambda grid values must lie in [0, 1]");
        if (k > 0 && !(l > lambda_grid[k - 1])) {
            throw std::invalid_argument("lambda grid must be strictly increasing");
        }
    }
    if (replicas < 1) throw std::invalid_argument("replicas must be at least 1");
    OptimizerConfig probe = base;
    probe.lambda = lambda_grid.front();
    probe.validate();
}

std::uint64_t derive_seed(std::uint64_t master, std::size_t lambda_index, std::size_t replica) {
    // splitmix64 finalizer applied to a combination of the three inputs
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(master) ^ static_cast<std::uint64_t>(lambda_index)) ^
               static_cast<std::uint64_t>(replica));
}

std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
    std::vector<double> grid;
    if (steps == 0) return grid;
    if (steps == 1) return {lo};
    grid.reserve(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        grid.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1));
    }
    return grid;
}

std::vector<double> SweepResult::mean_lexicon_sizes() const {
    std::vector<double> sum(lambda_grid.size(), 0.0);
    std::vector<std::size_t> n(lambda_grid.size(), 0);
    for (const auto& r : runs) {
        sum[r.lambda_index] += static_cast<double>(r.lexicon_size);
        ++n[r.lambda_index];
    }
    for (std::size_t k = 0; k < sum.size(); ++k) {
        if (n[k]) sum[k] /= static_cast<double>(n[k]);
    }
    return sum;
}

SweepResult sweep(const SweepConfig& config) {
    config.validate();
    const std::size_t jobs = config.lambda_grid.size() * config.replicas;
    SweepResult result{config.lambda_grid, {}};
    std::vector<std::optional<SweepRun>> slots(jobs);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const std::size_t li = job / config.replicas;
            const std::size_t rep = job % config.replicas;
            OptimizerConfig oc = config.base;
            oc.lambda = config.lambda_grid[li];
            oc.seed = derive_seed(config.master_seed, li, rep);
            RunRecord rec = minimize(oc);
            const std::size_t lex = observable_forms(rec.measures);
            const bool critical = std::abs(oc.lambda - critical_lambda()) < 1e-9;
            slots[job].emplace(SweepRun{li, rep, lex, critical, std::move(rec)});
        }
    };

    std::size_t threads = config.threads ? config.threads : std::thread::hardware_concurrency();
    threads = std::clamp<std::size_t>(threads, 1, jobs);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    result.runs.reserve(jobs);
    for (auto& s : slots) result.runs.push_back(std::move(*s));
    return result;
}

Transition detect_transition(const std::vector<double>& lambdas,
                             const std::vector<double>& mean_lexicon) {
    if (lambdas.size() != mean_lexicon.size()) {
        throw std::invalid_argument("lambda and lexicon-size curves differ in length");
    }
    if (lambdas.size() < 3) throw std::invalid_argument("transition detection needs at least 3 grid points");
    Transition t;
    double best = 0.0;
    for (std::size_t k = 1; k < lambdas.size(); ++k) {
        const double jump = mean_lexicon[k] - mean_lexicon[k - 1];
        if (std::abs(jump) > best) {
            best = std::abs(jump);
            t = {true, 0.5 * (lambdas[k] + lambdas[k - 1]), jump};
        }
    }
    return t;
}

Transition detect_transition(const SweepResult& result) {
    return detect_transition(result.lambda_grid, result.mean_lexicon_sizes());
}

}  // namespace zipfopt
