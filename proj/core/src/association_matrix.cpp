#include "zipfopt/association_matrix.hpp"

#include <random>
#include <string>

namespace zipfopt {

char to_char(ModelKind model) { return model == ModelKind::A ? 'A' : 'B'; }

ModelKind model_from_char(char c) {
    switch (c) {
        case 'A':
        case 'a':
            return ModelKind::A;
        case 'B':
        case 'b':
            return ModelKind::B;
        default:
            throw std::invalid_argument(std::string("unknown model '") + c + "'");
    }
}

AssociationMatrix::AssociationMatrix(std::size_t forms, std::size_t meanings)
    : forms_(forms),
      meanings_(meanings),
      cells_(forms * meanings, 0),
      form_degree_(forms, 0),
      meaning_degree_(meanings, 0),
      disconnected_meanings_(meanings) {
    if (forms == 0 || meanings == 0) {
        throw std::invalid_argument("association matrix needs at least one form and one meaning");
    }
}

AssociationMatrix::AssociationMatrix(std::size_t forms, std::size_t meanings, const Grid& cells)
    : AssociationMatrix(forms, meanings) {
    if (cells.size() != forms) {
        throw std::invalid_argument("cell grid has " + std::to_string(cells.size()) +
                                    " rows, expected " + std::to_string(forms));
    }
    for (std::size_t i = 0; i < forms; ++i) {
        if (cells[i].size() != meanings) {
            throw std::invalid_argument("row " + std::to_string(i) + " has " +
                                        std::to_string(cells[i].size()) + " cells, expected " +
                                        std::to_string(meanings));
        }
        for (std::size_t j = 0; j < meanings; ++j) {
            const int v = cells[i][j];
            if (v != 0 && v != 1) {
                throw std::invalid_argument("non-binary entry at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            }
            if (v == 1) flip_cell(i * meanings + j);
        }
    }
}

bool AssociationMatrix::get(std::size_t i, std::size_t j) const {
    if (i >= forms_ || j >= meanings_) throw std::out_of_range("matrix index out of range");
    return at(i, j);
}

void AssociationMatrix::flip(std::size_t i, std::size_t j) {
    if (i >= forms_ || j >= meanings_) throw std::out_of_range("matrix index out of range");
    flip_cell(i * meanings_ + j);
}

void AssociationMatrix::flip_cell(std::size_t cell) noexcept {
    const std::size_t i = cell / meanings_;
    const std::size_t j = cell % meanings_;
    if (cells_[cell]) {
        cells_[cell] = 0;
        --form_degree_[i];
        --links_;
        if (--meaning_degree_[j] == 0) ++disconnected_meanings_;
    } else {
        cells_[cell] = 1;
        ++form_degree_[i];
        ++links_;
        if (meaning_degree_[j]++ == 0) --disconnected_meanings_;
    }
}

bool AssociationMatrix::caches_consistent() const {
    std::size_t total = 0;
    std::size_t empty = 0;
    std::vector<std::size_t> cols(meanings_, 0);
    for (std::size_t i = 0; i < forms_; ++i) {
        std::size_t row = 0;
        for (std::size_t j = 0; j < meanings_; ++j) {
            if (at(i, j)) {
                ++row;
                ++cols[j];
            }
        }
        if (row != form_degree_[i]) return false;
        total += row;
    }
    for (std::size_t j = 0; j < meanings_; ++j) {
        if (cols[j] != meaning_degree_[j]) return false;
        if (cols[j] == 0) ++empty;
    }
    return total == links_ && empty == disconnected_meanings_;
}

bool is_valid(const AssociationMatrix& matrix, ModelKind model) noexcept {
    if (model == ModelKind::B) return matrix.disconnected_meanings() == 0;
    return matrix.links() >= 1;
}

AssociationMatrix random_matrix(std::size_t forms, std::size_t meanings, double density,
                                ModelKind model, std::uint64_t seed) {
    if (!(density > 0.0 && density < 1.0)) {
        throw std::invalid_argument("density must lie strictly between 0 and 1");
    }
    AssociationMatrix m(forms, meanings);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(density);
    for (std::size_t c = 0; c < m.cell_count(); ++c) {
        if (coin(rng)) m.flip_cell(c);
    }
    if (model == ModelKind::B) {
        std::uniform_int_distribution<std::size_t> row(0, forms - 1);
        for (std::size_t j = 0; j < meanings; ++j) {
            if (m.meaning_degree(j) == 0) m.flip_cell(row(rng) * meanings + j);
        }
    } else if (m.links() == 0) {
        std::uniform_int_distribution<std::size_t> cell(0, m.cell_count() - 1);
        m.flip_cell(cell(rng));
    }
    return m;
}

AssociationMatrix matrix_from_bits(std::size_t forms, std::size_t meanings, std::uint64_t bits) {
    AssociationMatrix m(forms, meanings);
    for (std::size_t c = 0; c < m.cell_count(); ++c) {
        if ((bits >> c) & 1u) m.flip_cell(c);
    }
    return m;
}

}  // namespace zipfopt
