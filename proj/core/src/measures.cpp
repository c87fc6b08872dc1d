#include "zipfopt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zipfopt {

namespace {

constexpr double kClosedFormTolerance = 1e-12;

void require_valid(const AssociationMatrix& matrix, ModelKind model) {
    if (!is_valid(matrix, model)) {
        throw std::invalid_argument(std::string("matrix is not valid for model ") +
                                    to_char(model));
    }
}

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace

double nats_to_unit(LogBase base) noexcept {
    return base == LogBase::Two ? 1.0 / std::log(2.0) : 1.0;
}

std::string_view to_string(LogBase base) noexcept { return base == LogBase::Two ? "2" : "e"; }

LogBase log_base_from_string(std::string_view text) {
    if (text == "2") return LogBase::Two;
    if (text == "e") return LogBase::E;
    throw std::invalid_argument("log base must be 2 or e, got '" + std::string(text) + "'");
}

EnergyParams::EnergyParams(double lambda) : lambda_(lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("lambda must lie in [0, 1]");
    }
}

double conditional_form_probability(const AssociationMatrix& matrix, std::size_t i, std::size_t j) {
    if (!matrix.get(i, j)) return 0.0;
    return 1.0 / static_cast<double>(matrix.meaning_degree(j));
}

std::vector<double> meaning_probabilities(const AssociationMatrix& matrix, ModelKind model) {
    require_valid(matrix, model);
    std::vector<double> p(matrix.meanings());
    if (model == ModelKind::B) {
        const double u = 1.0 / static_cast<double>(matrix.meanings());
        for (auto& x : p) x = u;
        return p;
    }
    const double m = static_cast<double>(matrix.links());
    for (std::size_t j = 0; j < p.size(); ++j) {
        p[j] = static_cast<double>(matrix.meaning_degree(j)) / m;
    }
    return p;
}

std::vector<double> form_probabilities(const AssociationMatrix& matrix, ModelKind model) {
    const auto prior = meaning_probabilities(matrix, model);
    std::vector<double> p(matrix.forms(), 0.0);
    for (std::size_t i = 0; i < matrix.forms(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < matrix.meanings(); ++j) {
            if (matrix.at(i, j)) {
                s += prior[j] / static_cast<double>(matrix.meaning_degree(j));
            }
        }
        p[i] = s;
    }
    if (model == ModelKind::A) {
        const double m = static_cast<double>(matrix.links());
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double closed = static_cast<double>(matrix.form_degree(i)) / m;
            if (std::abs(p[i] - closed) >= kClosedFormTolerance) {
                throw std::logic_error("model A form probability departs from mu_i/M");
            }
        }
    }
    return p;
}

MeasureSet entropy_measures(const AssociationMatrix& matrix, ModelKind model, LogBase base) {
    MeasureSet ms;
    ms.p_meaning = meaning_probabilities(matrix, model);
    ms.p_form = form_probabilities(matrix, model);

    double h = 0.0;
    for (double p : ms.p_form) h -= plogp(p);

    // -sum_j p(r_j) sum_i p(s_i|r_j) log p(s_i|r_j); every linked form of
    // meaning j has p(s_i|r_j) = 1/omega_j.
    double hc = 0.0;
    for (std::size_t j = 0; j < matrix.meanings(); ++j) {
        const std::size_t w = matrix.meaning_degree(j);
        if (w == 0) continue;
        double inner = 0.0;
        for (std::size_t i = 0; i < matrix.forms(); ++i) {
            inner -= plogp(conditional_form_probability(matrix, i, j));
        }
        hc += ms.p_meaning[j] * inner;
    }

    const double unit = nats_to_unit(base);
    ms.h_s = h * unit;
    ms.h_s_given_r = hc * unit;
    ms.i_sr = ms.h_s - ms.h_s_given_r;
    return ms;
}

double omega_energy_conditional(const MeasureSet& measures, EnergyParams params) noexcept {
    const double l = params.lambda();
    return (1.0 - 2.0 * l) * measures.h_s + l * measures.h_s_given_r;
}

double omega_energy(const MeasureSet& measures, EnergyParams params) {
    const double l = params.lambda();
    const double omega = -l * measures.i_sr + (1.0 - l) * measures.h_s;
    if (std::abs(omega - omega_energy_conditional(measures, params)) >= 1e-12) {
        throw std::logic_error("energy forms disagree");
    }
    return omega;
}

EnergyTracker::EnergyTracker(AssociationMatrix matrix, ModelKind model, LogBase base)
    : matrix_(std::move(matrix)),
      model_(model),
      base_(base),
      unit_(nats_to_unit(base)),
      form_hist_(matrix_.meanings() + 1, 0),
      meaning_hist_(matrix_.forms() + 1, 0) {
    const std::size_t top = std::max(matrix_.forms(), matrix_.meanings());
    inverse_.assign(top + 1, 0.0);
    log_.assign(top + 1, 0.0);
    for (std::size_t d = 1; d <= top; ++d) {
        inverse_[d] = 1.0 / static_cast<double>(d);
        log_[d] = std::log(static_cast<double>(d));
    }
    for (auto d : matrix_.form_degrees()) ++form_hist_[d];
    for (auto d : matrix_.meaning_degrees()) ++meaning_hist_[d];
    if (model_ == ModelKind::B) {
        row_mass_.assign(matrix_.forms(), 0.0);
        row_term_.assign(matrix_.forms(), 0.0);
        for (std::size_t i = 0; i < matrix_.forms(); ++i) refresh_row(i);
    }
}

void EnergyTracker::flip(std::size_t i, std::size_t j) {
    if (i >= matrix_.forms() || j >= matrix_.meanings()) {
        throw std::out_of_range("matrix index out of range");
    }
    flip_cell(i * matrix_.meanings() + j);
}

void EnergyTracker::flip_cell(std::size_t cell) {
    const std::size_t v_r = matrix_.meanings();
    const std::size_t i = cell / v_r;
    const std::size_t j = cell % v_r;
    --form_hist_[matrix_.form_degree(i)];
    --meaning_hist_[matrix_.meaning_degree(j)];
    matrix_.flip_cell(cell);
    ++form_hist_[matrix_.form_degree(i)];
    ++meaning_hist_[matrix_.meaning_degree(j)];
    if (model_ == ModelKind::B) {
        // omega_j changed, so every row linked to j shifts; row i shifts too
        // even when the flip removed its link.
        for (std::size_t k = 0; k < matrix_.forms(); ++k) {
            if (k == i || matrix_.at(k, j)) refresh_row(k);
        }
    }
}

void EnergyTracker::refresh_row(std::size_t i) {
    const std::size_t v_r = matrix_.meanings();
    const auto cells = matrix_.cells().subspan(i * v_r, v_r);
    double q = 0.0;
    for (std::size_t j = 0; j < v_r; ++j) {
        if (cells[j]) q += inverse_[matrix_.meaning_degree(j)];
    }
    row_mass_[i] = q;
    row_term_[i] = plogp(q);
}

double EnergyTracker::sum_d_log_d(const std::vector<std::size_t>& histogram) const {
    double s = 0.0;
    for (std::size_t d = 2; d < histogram.size(); ++d) {
        if (histogram[d]) s += static_cast<double>(histogram[d] * d) * log_[d];
    }
    return s;
}

double EnergyTracker::sum_log_d(const std::vector<std::size_t>& histogram) const {
    double s = 0.0;
    for (std::size_t d = 2; d < histogram.size(); ++d) {
        if (histogram[d]) s += static_cast<double>(histogram[d]) * log_[d];
    }
    return s;
}

double EnergyTracker::h_s() const {
    if (model_ == ModelKind::A) {
        // -sum (mu/M) ln(mu/M) = ln M - (1/M) sum mu ln mu
        const double m = static_cast<double>(matrix_.links());
        return (std::log(m) - sum_d_log_d(form_hist_) / m) * unit_;
    }
    // p_i = q_i / V_R, so H = ln V_R - (1/V_R) sum q ln q
    const double v_r = static_cast<double>(matrix_.meanings());
    double t = 0.0;
    for (double x : row_term_) t += x;
    return (std::log(v_r) - t / v_r) * unit_;
}

double EnergyTracker::h_s_given_r() const {
    if (model_ == ModelKind::A) {
        return sum_d_log_d(meaning_hist_) / static_cast<double>(matrix_.links()) * unit_;
    }
    return sum_log_d(meaning_hist_) / static_cast<double>(matrix_.meanings()) * unit_;
}

double EnergyTracker::omega(double lambda) const {
    return (1.0 - 2.0 * lambda) * h_s() + lambda * h_s_given_r();
}

}  // namespace zipfopt
