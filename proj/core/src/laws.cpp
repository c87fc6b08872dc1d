#include "zipfopt/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace zipfopt {

namespace {

constexpr double kTieTolerance = 1e-12;

std::vector<double> as_doubles(const std::vector<LexiconEntry>& entries, auto field) {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(static_cast<double>(field(e)));
    return out;
}

double log_sum_exp(const std::vector<double>& xs) {
    const double top = *std::max_element(xs.begin(), xs.end());
    double s = 0.0;
    for (double x : xs) s += std::exp(x - top);
    return top + std::log(s);
}

}  // namespace

std::vector<double> ObservableLexicon::probabilities() const {
    return as_doubles(entries, [](const LexiconEntry& e) { return e.probability; });
}

std::vector<double> ObservableLexicon::degrees() const {
    return as_doubles(entries, [](const LexiconEntry& e) { return e.degree; });
}

std::vector<double> ObservableLexicon::ranks() const {
    return as_doubles(entries, [](const LexiconEntry& e) { return e.rank; });
}

ObservableLexicon observable_lexicon(const std::vector<double>& p_form,
                                     std::span<const std::size_t> form_degrees) {
    if (p_form.size() != form_degrees.size()) {
        throw std::invalid_argument("probability and degree vectors differ in length");
    }
    ObservableLexicon lex;
    for (std::size_t i = 0; i < p_form.size(); ++i) {
        if (p_form[i] > 0.0) {
            if (form_degrees[i] == 0) throw std::logic_error("observable form without meanings");
            lex.entries.push_back({i, p_form[i], form_degrees[i], 0});
        }
    }

    std::vector<double> distinct = lex.probabilities();
    std::sort(distinct.begin(), distinct.end(), std::greater<>());
    // Each value maps to the largest member of its cluster of near-equal values.
    std::vector<double> snapped(distinct.size());
    for (std::size_t k = 0; k < distinct.size(); ++k) {
        snapped[k] = (k > 0 && distinct[k - 1] - distinct[k] <= kTieTolerance * distinct[k - 1])
                         ? snapped[k - 1]
                         : distinct[k];
    }
    for (auto& e : lex.entries) {
        const auto it = std::find(distinct.begin(), distinct.end(), e.probability);
        e.probability = snapped[static_cast<std::size_t>(it - distinct.begin())];
    }

    std::stable_sort(lex.entries.begin(), lex.entries.end(),
                     [](const LexiconEntry& a, const LexiconEntry& b) { return a.probability > b.probability; });
    for (std::size_t k = 0; k < lex.entries.size(); ++k) lex.entries[k].rank = k + 1;
    return lex;
}

ObservableLexicon observable_lexicon(const AssociationMatrix& matrix, ModelKind model) {
    return observable_lexicon(form_probabilities(matrix, model), matrix.form_degrees());
}

std::vector<double> midranks(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t lo = 0; lo < order.size();) {
        std::size_t hi = lo + 1;
        while (hi < order.size() && values[order[hi]] == values[order[lo]]) ++hi;
        // positions lo..hi-1 share the mean of ranks lo+1..hi
        const double mid = 0.5 * static_cast<double>(lo + 1 + hi);
        for (std::size_t k = lo; k < hi; ++k) ranks[order[k]] = mid;
        lo = hi;
    }
    return ranks;
}

CorrelationResult spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman inputs differ in length");
    CorrelationResult r;
    r.n = x.size();
    if (r.n < 2) {
        r.reason = "fewer than two observations";
        return r;
    }
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    const double mean = 0.5 * static_cast<double>(r.n + 1);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < r.n; ++k) {
        const double dx = rx[k] - mean;
        const double dy = ry[k] - mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        r.reason = sxx == 0.0 ? "zero variance in first variable" : "zero variance in second variable";
        return r;
    }
    // Identical rank vectors are exactly +1; rounding in the general formula
    // can land a few ulps short.
    if (rx == ry) {
        r.rho = 1.0;
    } else {
        r.rho = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    }
    return r;
}

CorrelationResult weak_law_test(const ObservableLexicon& lexicon) {
    return spearman(lexicon.probabilities(), lexicon.degrees());
}

CorrelationResult weak_law_test(const AssociationMatrix& matrix, ModelKind model) {
    return weak_law_test(observable_lexicon(matrix, model));
}

std::optional<LogLogFit> fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys,
                                    ExponentSign sign) {
    if (xs.size() != ys.size() || xs.size() < 3) return std::nullopt;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (!(xs[k] > 0.0) || !(ys[k] > 0.0)) return std::nullopt;
    }
    {
        auto sorted = xs;
        std::sort(sorted.begin(), sorted.end());
        if (std::unique(sorted.begin(), sorted.end()) - sorted.begin() < 3) return std::nullopt;
    }
    const std::size_t n = xs.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t k = 0; k < n; ++k) {
        lx[k] = std::log(xs[k]);
        ly[k] = std::log(ys[k]);
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (lx[k] - mx) * (lx[k] - mx);
        sxy += (lx[k] - mx) * (ly[k] - my);
        syy += (ly[k] - my) * (ly[k] - my);
    }
    const double slope = sxy / sxx;
    LogLogFit fit;
    fit.exponent = sign == ExponentSign::Decay ? -slope : slope;
    fit.intercept = my - slope * mx;
    double ss_res = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = ly[k] - (fit.intercept + slope * lx[k]);
        ss_res += e * e;
    }
    if (std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); })) {
        fit.exponent = 0.0;
        fit.intercept = ly.front();
        fit.r_squared = 1.0;
    } else {
        fit.r_squared = std::max(0.0, 1.0 - ss_res / syy);
    }
    return fit;
}

LawFit fit_laws(const ObservableLexicon& lexicon) {
    const auto f = lexicon.probabilities();
    const auto mu = lexicon.degrees();
    const auto rank = lexicon.ranks();
    LawFit out;
    out.alpha = fit_loglog(rank, f, ExponentSign::Decay);
    out.gamma = fit_loglog(rank, mu, ExponentSign::Decay);
    out.delta = fit_loglog(f, mu, ExponentSign::Growth);
    if (out.alpha && out.gamma && out.delta && out.alpha->exponent != 0.0) {
        out.relation_residual = out.delta->exponent - out.gamma->exponent / out.alpha->exponent;
    }
    return out;
}

RankModelComparison compare_rank_models(const ObservableLexicon& lexicon, double sample_size) {
    const std::size_t n = lexicon.size();
    if (n < 2) throw std::invalid_argument("rank model comparison needs at least two observable forms");
    if (!(sample_size > 0.0)) throw std::invalid_argument("sample size must be positive");

    auto f = lexicon.probabilities();
    const double total = std::accumulate(f.begin(), f.end(), 0.0);
    for (auto& x : f) x /= total;
    std::vector<double> log_rank(n);
    for (std::size_t i = 0; i < n; ++i) log_rank[i] = std::log(static_cast<double>(i + 1));

    // Power law: the log-likelihood is concave in alpha and its derivative is
    // E_alpha[ln i] - sum f_i ln i, decreasing in alpha, so bisect for the root.
    const double target = std::inner_product(f.begin(), f.end(), log_rank.begin(), 0.0);
    std::vector<double> work(n);
    auto log_norm = [&](double alpha) {
        for (std::size_t i = 0; i < n; ++i) work[i] = -alpha * log_rank[i];
        return log_sum_exp(work);
    };
    auto expected_log_rank = [&](double alpha) {
        const double z = log_norm(alpha);
        double e = 0.0;
        for (std::size_t i = 0; i < n; ++i) e += std::exp(work[i] - z) * log_rank[i];
        return e;
    };
    double lo = -50.0, hi = 200.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (expected_log_rank(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RankModelComparison cmp;
    cmp.powerlaw_alpha = 0.5 * (lo + hi);
    cmp.powerlaw_loglik = sample_size * (-cmp.powerlaw_alpha * target - log_norm(cmp.powerlaw_alpha));

    for (std::size_t i = 0; i < n; ++i) work[i] = -std::lgamma(static_cast<double>(i + 2));
    const double z = log_sum_exp(work);
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) ll += f[i] * (work[i] - z);
    cmp.inverse_factorial_loglik = sample_size * ll;

    cmp.powerlaw_aic = 2.0 * 1.0 - 2.0 * cmp.powerlaw_loglik;
    cmp.inverse_factorial_aic = -2.0 * cmp.inverse_factorial_loglik;
    cmp.small_sample = n < 3;
    return cmp;
}

LawReport law_report(std::string run_id, double lambda, const AssociationMatrix& matrix, ModelKind model) {
    LawReport rep;
    rep.run_id = std::move(run_id);
    rep.lambda = lambda;
    rep.model = model;
    const auto lex = observable_lexicon(matrix, model);
    rep.lexicon_size = lex.size();
    rep.correlation = weak_law_test(lex);
    rep.fit = fit_laws(lex);
    if (lex.size() >= 2) rep.rank_models = compare_rank_models(lex);
    return rep;
}

}  // namespace zipfopt
