#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "zipfopt/association_matrix.hpp"

using namespace zipfopt;

namespace {

std::vector<std::size_t> vec(std::span<const std::size_t> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("construction computes degree caches") {
    SUBCASE("identity") {
        AssociationMatrix m(2, 2, {{1, 0}, {0, 1}});
        CHECK(vec(m.form_degrees()) == std::vector<std::size_t>{1, 1});
        CHECK(vec(m.meaning_degrees()) == std::vector<std::size_t>{1, 1});
        CHECK(m.links() == 2);
    }
    SUBCASE("upper triangle") {
        AssociationMatrix m(2, 2, {{1, 1}, {1, 0}});
        CHECK(vec(m.form_degrees()) == std::vector<std::size_t>{2, 1});
        CHECK(vec(m.meaning_degrees()) == std::vector<std::size_t>{2, 1});
        CHECK(m.links() == 3);
    }
    SUBCASE("zero matrix") {
        AssociationMatrix m(1, 3, {{0, 0, 0}});
        CHECK(vec(m.form_degrees()) == std::vector<std::size_t>{0});
        CHECK(vec(m.meaning_degrees()) == std::vector<std::size_t>{0, 0, 0});
        CHECK(m.links() == 0);
        CHECK(m.disconnected_meanings() == 3);
    }
}

TEST_CASE("construction rejects bad grids") {
    CHECK_THROWS_AS(AssociationMatrix(2, 2, {{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(AssociationMatrix(2, 2, {{1, 0}, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(AssociationMatrix(1, 2, {{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(AssociationMatrix(0, 2), std::invalid_argument);
}

TEST_CASE("flip toggles one cell and its caches") {
    AssociationMatrix m(2, 2, {{1, 0}, {0, 1}});
    m.flip(0, 1);
    CHECK(m == AssociationMatrix(2, 2, {{1, 1}, {0, 1}}));
    CHECK(vec(m.form_degrees()) == std::vector<std::size_t>{2, 1});
    CHECK(vec(m.meaning_degrees()) == std::vector<std::size_t>{1, 2});
    CHECK(m.links() == 3);

    m.flip(0, 1);
    CHECK(m == AssociationMatrix(2, 2, {{1, 0}, {0, 1}}));

    AssociationMatrix z(1, 1);
    z.flip(0, 0);
    CHECK(z.form_degree(0) == 1);
    CHECK(z.meaning_degree(0) == 1);
    CHECK(z.links() == 1);

    CHECK_THROWS_AS(m.flip(2, 0), std::out_of_range);
    CHECK_THROWS_AS(m.flip(0, 2), std::out_of_range);
}

TEST_CASE("caches match recomputation after random flip sequences") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> side(1, 8);
        const std::size_t n = side(rng), k = side(rng);
        AssociationMatrix m(n, k);
        const AssociationMatrix start = m;
        std::uniform_int_distribution<std::size_t> row(0, n - 1), col(0, k - 1);
        std::vector<std::pair<std::size_t, std::size_t>> done;
        for (int s = 0; s < 60; ++s) {
            const auto i = row(rng), j = col(rng);
            m.flip(i, j);
            done.emplace_back(i, j);
            REQUIRE(m.caches_consistent());
            for (std::size_t r = 0; r < n; ++r) REQUIRE(m.form_degree(r) <= k);
            for (std::size_t c = 0; c < k; ++c) REQUIRE(m.meaning_degree(c) <= n);
        }
        // Undoing in any order restores the start: flips commute and are involutions.
        std::shuffle(done.begin(), done.end(), rng);
        for (auto [i, j] : done) m.flip(i, j);
        CHECK(m == start);
        CHECK(m.caches_consistent());
    }
}

TEST_CASE("model validity") {
    CHECK(is_valid(AssociationMatrix(2, 2, {{1, 1}, {0, 0}}), ModelKind::B));
    CHECK_FALSE(is_valid(AssociationMatrix(2, 2, {{1, 0}, {0, 0}}), ModelKind::B));
    CHECK(is_valid(AssociationMatrix(2, 2, {{1, 0}, {0, 0}}), ModelKind::A));
    CHECK_FALSE(is_valid(AssociationMatrix(2, 2, {{0, 0}, {0, 0}}), ModelKind::A));
    CHECK_FALSE(is_valid(AssociationMatrix(2, 2, {{0, 0}, {0, 0}}), ModelKind::B));
}

TEST_CASE("model letters") {
    CHECK(model_from_char('A') == ModelKind::A);
    CHECK(model_from_char('b') == ModelKind::B);
    CHECK(to_char(ModelKind::B) == 'B');
    CHECK_THROWS_AS(model_from_char('C'), std::invalid_argument);
}

TEST_CASE("random_matrix is deterministic and valid") {
    const auto a = random_matrix(5, 5, 0.5, ModelKind::B, 99);
    const auto b = random_matrix(5, 5, 0.5, ModelKind::B, 99);
    CHECK(a == b);
    CHECK_FALSE(a == random_matrix(5, 5, 0.5, ModelKind::B, 100));

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto sparse = random_matrix(6, 9, 0.05, ModelKind::B, seed);
        for (auto w : sparse.meaning_degrees()) REQUIRE(w >= 1);
        REQUIRE(sparse.caches_consistent());
        REQUIRE(is_valid(random_matrix(1, 1, 0.01, ModelKind::A, seed), ModelKind::A));
    }

    CHECK_THROWS_AS(random_matrix(3, 3, 0.0, ModelKind::A, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_matrix(3, 3, 1.0, ModelKind::A, 1), std::invalid_argument);
}

TEST_CASE("random_matrix link count concentrates as a binomial") {
    // Exact binomial mass of [4500, 5500] for Bin(10000, 0.5); the sampler has
    // to land there for practically every seed.
    const double mass = zipfopt::testing::binomial_interval_probability(10000, 0.5, 4500, 5500);
    REQUIRE(mass > 0.99);
    int inside = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        const auto m = random_matrix(100, 100, 0.5, ModelKind::A, static_cast<std::uint64_t>(s));
        if (m.links() >= 4500 && m.links() <= 5500) ++inside;
    }
    CHECK(inside >= 99);
}

TEST_CASE("matrix_from_bits is row-major") {
    const auto m = matrix_from_bits(2, 3, 0b100001);
    CHECK(m.at(0, 0));
    CHECK(m.at(1, 2));
    CHECK(m.links() == 2);
}
