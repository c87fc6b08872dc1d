#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "zipfopt/association_matrix.hpp"

namespace zipfopt {

/// Unit of every entropy: bits (log base 2) or nats (natural log).
enum class LogBase { Two, E };

/// 1 / ln(base); multiplies a quantity in nats to express it in `base`.
double nats_to_unit(LogBase base) noexcept;
std::string_view to_string(LogBase base) noexcept;
/// Accepts "2" or "e". Throws std::invalid_argument otherwise.
LogBase log_base_from_string(std::string_view text);

/// Probabilities and information measures of one matrix under one model.
struct MeasureSet {
    std::vector<double> p_form;
    std::vector<double> p_meaning;
    double h_s = 0.0;          ///< H(S)
    double h_s_given_r = 0.0;  ///< H(S|R)
    double i_sr = 0.0;         ///< I(S,R) = H(S) - H(S|R)
};

/// Trade-off weight lambda in [0,1]. Throws std::invalid_argument otherwise.
class EnergyParams {
public:
    explicit EnergyParams(double lambda);
    double lambda() const noexcept { return lambda_; }

private:
    double lambda_;
};

/// a_ij / omega_j, and 0 for a disconnected meaning. Throws std::out_of_range.
double conditional_form_probability(const AssociationMatrix& matrix, std::size_t i, std::size_t j);

/// ModelA: omega_j / M. ModelB: 1 / V_R.
/// Throws std::invalid_argument when the matrix is not valid for the model.
std::vector<double> meaning_probabilities(const AssociationMatrix& matrix, ModelKind model);

/// p(s_i) = sum_j p(s_i|r_j) p(r_j) over connected meanings.
///
/// For ModelA the general sum collapses to mu_i / M; the result is checked
/// against that closed form and std::logic_error is thrown if they differ by
/// more than 1e-12. Throws std::invalid_argument on an invalid matrix.
std::vector<double> form_probabilities(const AssociationMatrix& matrix, ModelKind model);

/// H(S), H(S|R) and I(S,R) with 0 log 0 = 0. Throws std::invalid_argument on
/// an invalid matrix.
MeasureSet entropy_measures(const AssociationMatrix& matrix, ModelKind model,
                            LogBase base = LogBase::Two);

/// Omega(lambda) = -lambda I(S,R) + (1 - lambda) H(S).
///
/// Also evaluates the equivalent (1 - 2 lambda) H(S) + lambda H(S|R) and throws
/// std::logic_error if the two disagree by more than 1e-12.
double omega_energy(const MeasureSet& measures, EnergyParams params);

/// (1 - 2 lambda) H(S) + lambda H(S|R).
double omega_energy_conditional(const MeasureSet& measures, EnergyParams params) noexcept;

/// Owns a matrix and keeps enough per-row and per-degree state to evaluate
/// H(S), H(S|R) and Omega after each flip without a full pass over the cells.
///
/// ModelA needs only the degree histograms. ModelB caches
/// q_i = sum_j a_ij / omega_j per form; a flip at (i, j) recomputes q for row i
/// and for the rows linked to meaning j. Every cached value is recomputed from
/// the current cells rather than patched, so the energy is a deterministic
/// function of the matrix regardless of the flip history.
class EnergyTracker {
public:
    EnergyTracker(AssociationMatrix matrix, ModelKind model, LogBase base = LogBase::Two);

    void flip_cell(std::size_t cell);
    void flip(std::size_t i, std::size_t j);

    const AssociationMatrix& matrix() const noexcept { return matrix_; }
    ModelKind model() const noexcept { return model_; }
    LogBase log_base() const noexcept { return base_; }
    bool valid() const noexcept { return is_valid(matrix_, model_); }

    /// Preconditions for the three accessors below: valid().
    double h_s() const;
    double h_s_given_r() const;
    double omega(double lambda) const;

private:
    void refresh_row(std::size_t i);
    double sum_d_log_d(const std::vector<std::size_t>& histogram) const;
    double sum_log_d(const std::vector<std::size_t>& histogram) const;

    AssociationMatrix matrix_;
    ModelKind model_;
    LogBase base_;
    double unit_;
    std::vector<double> inverse_;     // 1/d for d = 0..V_S, with inverse_[0] = 0
    std::vector<double> log_;         // ln d, log_[0] = 0
    std::vector<std::size_t> form_hist_;     // count of forms by degree
    std::vector<std::size_t> meaning_hist_;  // count of meanings by degree
    std::vector<double> row_mass_;    // q_i (ModelB)
    std::vector<double> row_term_;    // q_i ln q_i (ModelB)
};

}  // namespace zipfopt
