// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "zipfopt/association_matrix.hpp"
#include "zipfopt/laws.hpp"
#include "zipfopt/measures.hpp"
#include "zipfopt/optimizer.hpp"
#include "zipfopt/oracle.hpp"

using namespace zipfopt;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<Outcome()> body;
};

// Random valid matrices with random shape up to max_side x max_side.
std::vector<AssociationMatrix> corpus(std::size_t count, std::size_t max_side, ModelKind model, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> side(1, max_side);
    std::uniform_real_distribution<double> dens(0.02, 0.9);
    std::vector<AssociationMatrix> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto n = side(rng), m = side(rng);
        out.push_back(random_matrix(n, m, dens(rng), model, rng()));
    }
    return out;
}

std::vector<AssociationMatrix> mixed_corpus() {
    auto a = corpus(500, 20, ModelKind::A, 101);
    auto b = corpus(500, 20, ModelKind::B, 202);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

ModelKind model_of(std::size_t k) { return k < 500 ? ModelKind::A : ModelKind::B; }

Outcome model_a_linearity() {
    double worst = 0.0;
    for (const auto& m : corpus(1000, 20, ModelKind::A, 7)) {
        const auto p = form_probabilities(m, ModelKind::A);
        for (std::size_t i = 0; i < m.forms(); ++i) {
            worst = std::max(worst, std::abs(p[i] - static_cast<double>(m.form_degree(i)) / m.links()));
        }
    }
    return {worst < 1e-12, fmt::format("max |p - mu/M| = {:.3g} over 1000 matrices", worst)};
}

Outcome uniform_degree_proportionality() {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<std::size_t> side(3, 20);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t k = 1 + static_cast<std::size_t>(t % 3);
        const std::size_t n = side(rng), m = side(rng);
        // every meaning linked to exactly k distinct forms
        AssociationMatrix a(n, m);
        std::vector<std::size_t> rows(n);
        for (std::size_t i = 0; i < n; ++i) rows[i] = i;
        for (std::size_t j = 0; j < m; ++j) {
            std::shuffle(rows.begin(), rows.end(), rng);
            for (std::size_t c = 0; c < k; ++c) a.flip(rows[c], j);
        }
        const auto p = form_probabilities(a, ModelKind::B);
        for (std::size_t i = 0; i < n; ++i) {
            const double expect = static_cast<double>(a.form_degree(i)) / static_cast<double>(k * m);
            worst = std::max(worst, std::abs(p[i] - expect));
        }
    }
    return {worst < 1e-12, fmt::format("max |p - mu/(k V_R)| = {:.3g} over 200 matrices", worst)};
}

Outcome energy_equivalence() {
    const auto mats = mixed_corpus();
    double worst = 0.0;
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const auto ms = entropy_measures(mats[k], model_of(k));
        for (int g = 0; g <= 100; ++g) {
            const EnergyParams params(g / 100.0);
            const double direct = -params.lambda() * ms.i_sr + (1.0 - params.lambda()) * ms.h_s;
            worst = std::max(worst, std::abs(direct - omega_energy_conditional(ms, params)));
            worst = std::max(worst, std::abs(omega_energy(ms, params) - direct));
        }
    }
    return {worst < 1e-12, fmt::format("max disagreement = {:.3g} over 1000 x 101", worst)};
}

Outcome normalization_and_inequalities() {
    const auto mats = mixed_corpus();
    double worst_norm = 0.0;
    std::size_t violations = 0;
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const auto ms = entropy_measures(mats[k], model_of(k));
        double sf = 0.0, sr = 0.0;
        for (double p : ms.p_form) sf += p;
        for (double p : ms.p_meaning) sr += p;
        worst_norm = std::max({worst_norm, std::abs(sf - 1.0), std::abs(sr - 1.0)});
        // entropies are sums of non-negative terms; allow rounding at the bound
        const double tol = 1e-12;
        if (ms.h_s_given_r < -tol || ms.h_s_given_r > ms.h_s + tol || ms.i_sr < -tol) ++violations;
    }
    return {worst_norm < 1e-12 && violations == 0,
            fmt::format("max |sum p - 1| = {:.3g}, inequality violations = {}", worst_norm, violations)};
}

Outcome oracle_domains() {
    const std::vector<std::pair<std::size_t, std::size_t>> sizes{{2, 2}, {3, 3}, {2, 4}};
    const std::vector<double> lambdas{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<std::string> failures;
    std::size_t minimizers = 0;
    for (auto [n, m] : sizes) {
        for (auto model : {ModelKind::A, ModelKind::B}) {
            for (double lambda : lambdas) {
                const auto r = enumerate_minima(n, m, model, lambda);
                minimizers += r.minimizers.size();
                bool ok = true;
                if (lambda < 0.5) ok = r.all_single_form && r.all_weak_law_undefined;
                else if (lambda == 0.5)
                    ok = model == ModelKind::A ? r.all_meaning_degrees_at_most_one : r.all_meaning_degrees_one;
                else ok = r.all_equal_degrees_or_probabilities && r.all_weak_law_undefined;
                if (!ok) failures.push_back(fmt::format("{}x{} {} lambda={}", n, m, to_char(model), lambda));
            }
        }
    }
    std::string detail = fmt::format("30 cases, {} minimizers checked", minimizers);
    for (const auto& f : failures) detail += "; failed " + f;
    return {failures.empty(), detail};
}

Outcome optimizer_vs_oracle() {
    bool ok = true;
    std::string detail;
    for (double lambda : {0.25, 0.5, 0.75}) {
        const double target = enumerate_minima(3, 3, ModelKind::B, lambda).min_omega;
        int hits = 0;
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            OptimizerConfig c;
            c.model = ModelKind::B;
            c.forms = c.meanings = 3;
            c.lambda = lambda;
            c.seed = seed;
            if (std::abs(minimize(c).omega - target) <= 1e-9) ++hits;
        }
        ok = ok && hits >= 40;
        detail += fmt::format("{}lambda={}: {}/50", detail.empty() ? "" : ", ", lambda, hits);
    }
    return {ok, detail};
}

Outcome weak_law_at_critical() {
    const double lambda = critical_lambda(0.1);
    auto run = [&](ModelKind model, std::uint64_t seed) {
        OptimizerConfig c;
        c.model = model;
        c.forms = c.meanings = 30;
        c.lambda = lambda;
        c.seed = seed;
        return weak_law_test(minimize(c).terminal, model);
    };
    int b_defined = 0, b_positive = 0;
    int a_defined = 0, a_one = 0;
    for (std::uint64_t r = 0; r < 20; ++r) {
        const auto rb = run(ModelKind::B, derive_seed(2024, 0, r));
        if (rb.defined()) {
            ++b_defined;
            if (*rb.rho > 0) ++b_positive;
        }
        const auto ra = run(ModelKind::A, derive_seed(2024, 1, r));
        if (ra.defined()) {
            ++a_defined;
            if (*ra.rho == 1.0) ++a_one;
        }
    }
    const bool ok = b_defined > 0 && b_positive >= 0.9 * b_defined && a_one == a_defined;
    // Model A tends to collapse to a single form here, which leaves nothing to check
    const char* note = a_defined == 0 ? " (holds vacuously)" : "";
    return {ok, fmt::format("lambda={}; model B rho>0 in {}/{} defined; model A rho=1 in {}/{} defined{}", lambda,
                            b_positive, b_defined, a_one, a_defined, note)};
}

Outcome three_domain_sweep() {
    SweepConfig s;
    s.base.model = ModelKind::B;
    s.base.forms = s.base.meanings = 20;
    s.lambda_grid = linear_grid(0.05, 0.95, 19);
    s.replicas = 10;
    s.master_seed = 99;
    const auto result = sweep(s);
    const auto mean = result.mean_lexicon_sizes();
    bool ok = true;
    double low_max = 0.0, high_min = 1e9;
    for (std::size_t k = 0; k < mean.size(); ++k) {
        const double l = result.lambda_grid[k];
        if (l <= 0.25 + 1e-9) low_max = std::max(low_max, mean[k]);
        if (l >= 0.75 - 1e-9) high_min = std::min(high_min, mean[k]);
    }
    ok = low_max <= 2.0 && high_min >= 0.5 * 20;
    const auto t = detect_transition(result);
    ok = ok && t.found && t.lambda > 0.25 && t.lambda < 0.75;
    return {ok, fmt::format("max mean L (lambda<=0.25) = {}, min mean L (lambda>=0.75) = {}, transition at {}",
                            low_max, high_min, t.found ? fmt::format("{}", t.lambda) : std::string("none"))};
}

ObservableLexicon planted_lexicon(std::size_t n) {
    std::vector<double> f(n);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) z += f[i] = 1.0 / static_cast<double>(i + 1);
    ObservableLexicon lex;
    for (std::size_t i = 0; i < n; ++i) {
        // degrees are counts: mu_i = round(C i^-1/2) with a large C
        const auto mu = static_cast<std::size_t>(std::llround(1e6 / std::sqrt(static_cast<double>(i + 1))));
        lex.entries.push_back({i, f[i] / z, mu, i + 1});
    }
    return lex;
}

Outcome exponent_relation() {
    const auto fit = fit_laws(planted_lexicon(1000));
    if (!fit.delta || !fit.relation_residual) return {false, "fit undefined"};
    const double delta = fit.delta->exponent;
    const double residual = *fit.relation_residual;
    return {std::abs(delta - 0.5) <= 0.02 && std::abs(residual) < 0.02,
            fmt::format("alpha={:.6f} gamma={:.6f} delta={:.6f} residual={:.3g}", fit.alpha->exponent,
                        fit.gamma->exponent, delta, residual)};
}

Outcome zipf_resemblance() {
    int good = 0;
    std::string alphas;
    for (std::uint64_t r = 0; r < 10; ++r) {
        OptimizerConfig c;
        c.model = ModelKind::B;
        c.forms = c.meanings = 50;
        c.lambda = 0.4;
        c.seed = derive_seed(4242, 0, r);
        const auto rec = minimize(c);
        const auto lex = observable_lexicon(rec.terminal, ModelKind::B);
        const auto fit = fit_laws(lex);
        const bool shape = lex.size() > 2 && lex.size() < 50 && fit.alpha && fit.alpha->exponent >= 0.5 &&
                           fit.alpha->exponent <= 1.6 && fit.alpha->r_squared >= 0.8;
        if (shape) ++good;
        alphas += fmt::format(" L={}/a={}", lex.size(),
                              fit.alpha ? fmt::format("{:.2f}", fit.alpha->exponent) : std::string("NA"));
    }
    return {good > 5, fmt::format("{}/10 replicas Zipf-like;{}", good, alphas)};
}

Outcome rank_model_sanity() {
    auto lexicon = [](std::size_t n, const std::function<double(std::size_t)>& weight) {
        double z = 0.0;
        for (std::size_t i = 1; i <= n; ++i) z += weight(i);
        ObservableLexicon lex;
        for (std::size_t i = 1; i <= n; ++i) lex.entries.push_back({i - 1, weight(i) / z, 1, i});
        return lex;
    };
    const auto inv = compare_rank_models(
        lexicon(6, [](std::size_t i) { return std::exp(-std::lgamma(static_cast<double>(i) + 1.0)); }));
    const auto pl = compare_rank_models(lexicon(50, [](std::size_t i) { return 1.0 / static_cast<double>(i); }));
    return {inv.inverse_factorial_preferred() && !pl.inverse_factorial_preferred(),
            fmt::format("inverse-factorial data: AIC_if={:.4f} AIC_pl={:.4f}; power-law data: AIC_pl={:.4f} "
                        "AIC_if={:.4f}",
                        inv.inverse_factorial_aic, inv.powerlaw_aic, pl.powerlaw_aic, pl.inverse_factorial_aic)};
}

Outcome undefined_correlation() {
    std::vector<CorrelationResult> results{
        spearman({0.5, 0.5}, {1, 1}),
        spearman({0.25, 0.25, 0.25, 0.25}, {1, 2, 3, 4}),
        spearman({1.0}, {3.0}),
        weak_law_test(AssociationMatrix(3, 3, {{1, 1, 1}, {0, 0, 0}, {0, 0, 0}}), ModelKind::B),
        weak_law_test(AssociationMatrix(3, 3, {{1, 1, 1}, {0, 0, 0}, {0, 0, 0}}), ModelKind::A),
        weak_law_test(AssociationMatrix(3, 3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), ModelKind::A),
        weak_law_test(AssociationMatrix(3, 3, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}), ModelKind::B),
        weak_law_test(AssociationMatrix(2, 4, {{1, 1, 0, 0}, {0, 0, 1, 1}}), ModelKind::B),
    };
    std::size_t undefined = 0;
    for (const auto& r : results) {
        if (!r.defined() && !r.reason.empty()) ++undefined;
    }
    const auto report = law_report("single", 0.1, AssociationMatrix(2, 2, {{1, 1}, {0, 0}}), ModelKind::B);
    const bool ok = undefined == results.size() && !report.correlation.defined();
    return {ok, fmt::format("{}/{} inputs reported Undefined with a reason", undefined, results.size())};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "model A form probability proportional to degree", 5, model_a_linearity},
        {2, "uniform meaning degree proportionality", 5, uniform_degree_proportionality},
        {3, "energy form equivalence", 30, energy_equivalence},
        {4, "normalization and entropy inequalities", 30, normalization_and_inequalities},
        {5, "exhaustive minima in three lambda domains", 60, oracle_domains},
        {6, "optimizer reaches enumerated minima", 60, optimizer_vs_oracle},
        {7, "weak law at the critical lambda", 600, weak_law_at_critical},
        {8, "three-domain sweep", 900, three_domain_sweep},
        {9, "exponent relation on planted lexicon", 1, exponent_relation},
        {10, "Zipf-like rank distribution at lambda 0.4", 900, zipf_resemblance},
        {11, "rank model comparison", 1, rank_model_sanity},
        {12, "undefined correlation handling", 1, undefined_correlation},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.time_limit_s) {
            o.pass = false;
            o.detail += fmt::format("; over time limit {} s", c.time_limit_s);
        }
        if (!o.pass) ++failed;
        fmt::print("{} criterion {:2}: {} ({:.2f} s): {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail);
        std::fflush(stdout);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
