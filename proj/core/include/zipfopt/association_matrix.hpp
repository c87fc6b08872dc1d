#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace zipfopt {

/// Which meaning prior the model assumes.
///
/// ModelA: p(r_j) is proportional to the meaning degree; needs at least one link.
/// ModelB: p(r_j) = 1/V_R; every meaning must be linked to some form.
enum class ModelKind { A, B };

char to_char(ModelKind model);
ModelKind model_from_char(char c);

/// Binary form-meaning association matrix.
///
/// Rows are forms, columns are meanings. Form degrees (row sums), meaning
/// degrees (column sums) and the link total are cached and kept in sync by
/// flip(), so single-cell mutation costs O(1).
class AssociationMatrix {
public:
    using Grid = std::vector<std::vector<int>>;

    /// Zero matrix.
    AssociationMatrix(std::size_t forms, std::size_t meanings);

    /// Throws std::invalid_argument on shape mismatch or entries outside {0,1}.
    AssociationMatrix(std::size_t forms, std::size_t meanings, const Grid& cells);

    std::size_t forms() const noexcept { return forms_; }
    std::size_t meanings() const noexcept { return meanings_; }
    std::size_t cell_count() const noexcept { return cells_.size(); }

    bool at(std::size_t i, std::size_t j) const noexcept { return cells_[i * meanings_ + j] != 0; }
    /// Bounds-checked access.
    bool get(std::size_t i, std::size_t j) const;

    /// Toggles a_ij and adjusts the degree caches. Throws std::out_of_range.
    void flip(std::size_t i, std::size_t j);
    /// Toggle by row-major cell index, unchecked.
    void flip_cell(std::size_t cell) noexcept;

    std::size_t form_degree(std::size_t i) const noexcept { return form_degree_[i]; }
    std::size_t meaning_degree(std::size_t j) const noexcept { return meaning_degree_[j]; }
    std::span<const std::size_t> form_degrees() const noexcept { return form_degree_; }
    std::span<const std::size_t> meaning_degrees() const noexcept { return meaning_degree_; }
    std::size_t links() const noexcept { return links_; }
    /// Number of meanings with degree zero.
    std::size_t disconnected_meanings() const noexcept { return disconnected_meanings_; }

    /// Row-major 0/1 storage.
    std::span<const std::uint8_t> cells() const noexcept { return cells_; }

    /// Recomputes every cache from the cells and compares.
    bool caches_consistent() const;

    friend bool operator==(const AssociationMatrix& a, const AssociationMatrix& b) {
        return a.forms_ == b.forms_ && a.meanings_ == b.meanings_ && a.cells_ == b.cells_;
    }

private:
    std::size_t forms_;
    std::size_t meanings_;
    std::vector<std::uint8_t> cells_;
    std::vector<std::size_t> form_degree_;
    std::vector<std::size_t> meaning_degree_;
    std::size_t links_ = 0;
    std::size_t disconnected_meanings_ = 0;
};

/// ModelB: no meaning has degree zero. ModelA: at least one link.
bool is_valid(const AssociationMatrix& matrix, ModelKind model) noexcept;

/// Each cell is 1 with probability `density`, then repaired to satisfy
/// is_valid(model): for ModelB every empty column gets one link at a uniform
/// row; for ModelA an empty matrix gets one link at a uniform cell.
/// A pure function of its arguments. Throws std::invalid_argument unless
/// 0 < density < 1 and both sizes are positive.
AssociationMatrix random_matrix(std::size_t forms, std::size_t meanings, double density,
                                ModelKind model, std::uint64_t seed);

/// Matrix built from a row-major bit pattern; bit k is cell k. Used by the
/// exhaustive enumeration.
AssociationMatrix matrix_from_bits(std::size_t forms, std::size_t meanings, std::uint64_t bits);

}  // namespace zipfopt
