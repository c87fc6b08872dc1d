#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "zipfopt/association_matrix.hpp"
#include "zipfopt/measures.hpp"

namespace zipfopt {

/// Largest matrix (in cells) the exhaustive enumeration accepts.
inline constexpr std::size_t kMaxEnumerationCells = 20;
/// Two energies closer than this are the same minimum.
inline constexpr double kMinimaTolerance = 1e-12;

enum class Definability { Defined, UndefinedZeroVariance };

/// Whether a correlation between probability and degree over observable forms
/// can exist: it cannot with fewer than two observable forms, or when all
/// observable probabilities are equal, or all observable degrees are equal.
Definability check_weak_law_definability(const AssociationMatrix& matrix, ModelKind model);

/// Structural properties of one configuration, recomputed from its cells.
struct MatrixProperties {
    std::size_t observable_forms = 0;
    bool single_form = false;              ///< exactly one observable form
    bool meaning_degrees_at_most_one = false;
    bool meaning_degrees_all_one = false;
    bool equal_observable_degrees = false;
    bool equal_observable_probabilities = false;
    Definability weak_law = Definability::Defined;
};

MatrixProperties matrix_properties(const AssociationMatrix& matrix, ModelKind model);

struct MinimaReport {
    std::size_t forms = 0;
    std::size_t meanings = 0;
    ModelKind model = ModelKind::B;
    double lambda = 0.0;
    LogBase log_base = LogBase::Two;
    double min_omega = 0.0;
    std::size_t evaluated = 0;  ///< valid configurations visited
    /// Minimizers in ascending bit-pattern order.
    std::vector<AssociationMatrix> minimizers;
    std::vector<std::uint64_t> minimizer_bits;
    std::vector<MatrixProperties> properties;

    // Each flag holds for every minimizer.
    bool all_single_form = false;
    bool all_meaning_degrees_at_most_one = false;
    bool all_meaning_degrees_one = false;
    bool all_equal_observable_degrees = false;
    bool all_equal_observable_probabilities = false;
    bool all_equal_degrees_or_probabilities = false;
    bool all_weak_law_undefined = false;
    bool any_weak_law_defined = false;
};

/// Evaluates Omega(lambda) on every configuration valid for the model, visiting
/// bit patterns 0 .. 2^(V_S V_R) - 1 in row-major order, and returns all
/// configurations within kMinimaTolerance of the minimum. Throws
/// std::invalid_argument when V_S V_R exceeds kMaxEnumerationCells or lambda
/// lies outside [0, 1].
MinimaReport enumerate_minima(std::size_t forms, std::size_t meanings, ModelKind model, double lambda,
                              LogBase base = LogBase::Two);

}  // namespace zipfopt
