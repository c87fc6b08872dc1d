#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zipfopt/association_matrix.hpp"
#include "zipfopt/measures.hpp"

namespace zipfopt {

struct LexiconEntry {
    std::size_t form;
    double probability;
    std::size_t degree;
    std::size_t rank;  ///< 1-based, by descending probability
};

/// Forms with non-zero probability, sorted by descending probability with
/// ties broken by ascending form index.
///
/// Probabilities that agree to a relative 1e-12 are snapped to a common value
/// first, so rationals that are mathematically equal but rounded differently
/// (ModelB sums of 1/omega_j) tie as they should.
struct ObservableLexicon {
    std::vector<LexiconEntry> entries;

    std::size_t size() const noexcept { return entries.size(); }
    std::vector<double> probabilities() const;
    std::vector<double> degrees() const;
    std::vector<double> ranks() const;
};

ObservableLexicon observable_lexicon(const std::vector<double>& p_form,
                                     std::span<const std::size_t> form_degrees);
/// Throws std::invalid_argument on an invalid matrix.
ObservableLexicon observable_lexicon(const AssociationMatrix& matrix, ModelKind model);

struct CorrelationResult {
    std::optional<double> rho;  ///< empty when undefined
    std::size_t n = 0;
    std::string reason;         ///< why it is undefined, empty otherwise

    bool defined() const noexcept { return rho.has_value(); }
};

/// Tie-averaged (mid) ranks, 1-based.
std::vector<double> midranks(const std::vector<double>& values);

/// Pearson correlation of midranks. Undefined for n < 2 or when either rank
/// vector has zero variance. Throws std::invalid_argument on length mismatch.
CorrelationResult spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Spearman correlation between probability and degree over observable forms.
CorrelationResult weak_law_test(const ObservableLexicon& lexicon);
CorrelationResult weak_law_test(const AssociationMatrix& matrix, ModelKind model);

/// Sign applied to the log-log slope: decay laws (y ~ x^-e) report e = -slope.
enum class ExponentSign { Decay, Growth };

struct LogLogFit {
    double exponent = 0.0;
    double intercept = 0.0;  ///< natural-log intercept of ln y = slope ln x + intercept
    double r_squared = 0.0;  ///< 1 when the residual is exactly zero
};

/// Ordinary least squares of ln y on ln x. Empty when there are fewer than 3
/// points, fewer than 3 distinct x, a size mismatch, or a non-positive value.
std::optional<LogLogFit> fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys,
                                    ExponentSign sign = ExponentSign::Decay);

/// Exponents of the three laws over an observable lexicon:
/// alpha from probability ~ rank^-alpha, gamma from degree ~ rank^-gamma and
/// delta from degree ~ probability^delta, with relation_residual = delta - gamma/alpha.
struct LawFit {
    std::optional<LogLogFit> alpha;
    std::optional<LogLogFit> gamma;
    std::optional<LogLogFit> delta;
    std::optional<double> relation_residual;
};

LawFit fit_laws(const ObservableLexicon& lexicon);

struct RankModelComparison {
    double powerlaw_alpha = 0.0;
    double powerlaw_loglik = 0.0;
    double powerlaw_aic = 0.0;
    double inverse_factorial_loglik = 0.0;
    double inverse_factorial_aic = 0.0;
    /// Fewer than 3 ranks: both candidates fit almost trivially.
    bool small_sample = false;

    bool inverse_factorial_preferred() const noexcept {
        return inverse_factorial_aic < powerlaw_aic;
    }
};

/// AIC comparison of p(i) ~ i^-alpha (alpha by maximum likelihood, one
/// parameter) against p(i) ~ 1/i! (no parameters), both normalized over ranks
/// 1..L. The observed probabilities are treated as the frequencies of
/// `sample_size` draws. Throws std::invalid_argument when L < 2.
RankModelComparison compare_rank_models(const ObservableLexicon& lexicon, double sample_size = 1.0);

/// One row of the law report for a terminal configuration.
struct LawReport {
    std::string run_id;
    double lambda = 0.0;
    ModelKind model = ModelKind::B;
    std::size_t lexicon_size = 0;
    CorrelationResult correlation;
    LawFit fit;
    std::optional<RankModelComparison> rank_models;
};

LawReport law_report(std::string run_id, double lambda, const AssociationMatrix& matrix, ModelKind model);

}  // namespace zipfopt
