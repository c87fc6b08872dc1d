#include "zipfopt/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "zipfopt/laws.hpp"

namespace zipfopt {

namespace {

template <typename T>
bool all_equal(const std::vector<T>& xs) {
    return std::adjacent_find(xs.begin(), xs.end(), std::not_equal_to<>()) == xs.end();
}

}  // namespace

MatrixProperties matrix_properties(const AssociationMatrix& matrix, ModelKind model) {
    const auto lex = observable_lexicon(matrix, model);
    MatrixProperties p;
    p.observable_forms = lex.size();
    p.single_form = lex.size() == 1;
    const auto omega = matrix.meaning_degrees();
    p.meaning_degrees_at_most_one = std::all_of(omega.begin(), omega.end(), [](auto w) { return w <= 1; });
    p.meaning_degrees_all_one = std::all_of(omega.begin(), omega.end(), [](auto w) { return w == 1; });
    // The lexicon snaps near-equal probabilities, so exact comparison is safe.
    p.equal_observable_degrees = all_equal(lex.degrees());
    p.equal_observable_probabilities = all_equal(lex.probabilities());
    p.weak_law = (lex.size() < 2 || p.equal_observable_degrees || p.equal_observable_probabilities)
                     ? Definability::UndefinedZeroVariance
                     : Definability::Defined;
    return p;
}

Definability check_weak_law_definability(const AssociationMatrix& matrix, ModelKind model) {
    return matrix_properties(matrix, model).weak_law;
}

MinimaReport enumerate_minima(std::size_t forms, std::size_t meanings, ModelKind model, double lambda,
                              LogBase base) {
    const std::size_t cells = forms * meanings;
    if (forms == 0 || meanings == 0) throw std::invalid_argument("sizes must be positive");
    if (cells > kMaxEnumerationCells) {
        throw std::invalid_argument("enumeration limited to " + std::to_string(kMaxEnumerationCells) +
                                    " cells, got " + std::to_string(cells));
    }
    const EnergyParams params(lambda);

    MinimaReport rep;
    rep.forms = forms;
    rep.meanings = meanings;
    rep.model = model;
    rep.lambda = lambda;
    rep.log_base = base;

    struct Candidate {
        std::uint64_t bits;
        double omega;
    };
    std::vector<Candidate> near;
    double best = 0.0;
    const std::uint64_t count = std::uint64_t{1} << cells;
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        const auto m = matrix_from_bits(forms, meanings, bits);
        if (!is_valid(m, model)) continue;
        ++rep.evaluated;
        const double omega = omega_energy(entropy_measures(m, model, base), params);
        if (near.empty() || omega < best - kMinimaTolerance) {
            best = omega;
            std::erase_if(near, [&](const Candidate& c) { return c.omega > best + kMinimaTolerance; });
            near.push_back({bits, omega});
        } else if (omega <= best + kMinimaTolerance) {
            best = std::min(best, omega);
            near.push_back({bits, omega});
        }
    }
    if (near.empty()) throw std::logic_error("no valid configuration");
    std::erase_if(near, [&](const Candidate& c) { return c.omega > best + kMinimaTolerance; });
    rep.min_omega = best;

    rep.all_single_form = rep.all_meaning_degrees_at_most_one = rep.all_meaning_degrees_one = true;
    rep.all_equal_observable_degrees = rep.all_equal_observable_probabilities = true;
    rep.all_equal_degrees_or_probabilities = rep.all_weak_law_undefined = true;
    for (const auto& c : near) {
        auto m = matrix_from_bits(forms, meanings, c.bits);
        const auto p = matrix_properties(m, model);
        rep.all_single_form &= p.single_form;
        rep.all_meaning_degrees_at_most_one &= p.meaning_degrees_at_most_one;
        rep.all_meaning_degrees_one &= p.meaning_degrees_all_one;
        rep.all_equal_observable_degrees &= p.equal_observable_degrees;
        rep.all_equal_observable_probabilities &= p.equal_observable_probabilities;
        rep.all_equal_degrees_or_probabilities &= p.equal_observable_degrees || p.equal_observable_probabilities;
        const bool undefined = p.weak_law == Definability::UndefinedZeroVariance;
        rep.all_weak_law_undefined &= undefined;
        rep.any_weak_law_defined |= !undefined;
        rep.minimizer_bits.push_back(c.bits);
        rep.minimizers.push_back(std::move(m));
        rep.properties.push_back(p);
    }
    return rep;
}

}  // namespace zipfopt
