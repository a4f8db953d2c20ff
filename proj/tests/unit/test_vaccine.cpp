#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "qvica/vaccine.hpp"

using namespace qvica;
using namespace qvica::vaccine;

namespace {

// quantum vaccine whose observation is the given bit pattern, deterministically
qcore::QuantumIndividual fixed_bits(const BitVector& bits) {
    qcore::QuantumIndividual q;
    for (auto b : bits) q.push_back(qcore::QBit::from_prob_zero(b ? 0.0 : 1.0));
    return q;
}

BitVector random_bits(Rng& rng, std::size_t len) {
    BitVector v(len);
    for (auto& b : v) b = (uniform01(rng) <= 0.5) ? 0 : 1;
    return v;
}

}  // namespace

TEST_CASE("grid cell counts multiply the divisions") {
    CHECK(GridPartition::uniform(2, 2, {0, 0}, {1, 1}).cell_count() == 4);
    CHECK(GridPartition::uniform(6, 2, RealVector(6, 0.0), RealVector(6, 1.0)).cell_count() == 64);
    const GridPartition whole = GridPartition::uniform(1, 1, {-3}, {9});
    CHECK(whole.cell_count() == 1);
    CHECK(whole.width(0) == doctest::Approx(12.0));
    CHECK(whole.cell_corner(0)[0] == doctest::Approx(-3.0));
}

TEST_CASE("grid corners tile the domain") {
    const GridPartition grid({2, 3}, {0.0, 10.0}, {4.0, 16.0});
    REQUIRE(grid.cell_count() == 6);
    // last dimension fastest
    CHECK(grid.cell_corner(0) == RealVector{0.0, 10.0});
    CHECK(grid.cell_corner(1) == RealVector{0.0, 12.0});
    CHECK(grid.cell_corner(2) == RealVector{0.0, 14.0});
    CHECK(grid.cell_corner(3) == RealVector{2.0, 10.0});
    CHECK(grid.cell_corner(5) == RealVector{2.0, 14.0});
    CHECK_THROWS_AS(grid.cell_corner(6), std::out_of_range);
}

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(GridPartition({0}, {0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(GridPartition({2}, {1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("init_vaccines sizes") {
    const GridPartition grid = GridPartition::uniform(2, 2, {0, 0}, {8, 8});
    const VaccineSets sets = init_vaccines(grid, 3);
    CHECK(sets.quantum.size() == 4);
    for (const auto& q : sets.quantum) CHECK(q.size() == 6);
    CHECK(sets.v1.empty());
    CHECK(sets.v2.empty());
    CHECK_THROWS_AS(init_vaccines(grid, 0), std::invalid_argument);
}

TEST_CASE("decode_vaccines applies the cell mapping") {
    const GridPartition grid = GridPartition::uniform(1, 1, {0.0}, {8.0});
    VaccineSets sets = init_vaccines(grid, 3);
    Rng rng = make_rng(1);

    sets.quantum[0] = fixed_bits({1, 0, 1});  // v1 = 5
    decode_vaccines(sets, grid, rng);
    CHECK(sets.v1[0][0] == 5);
    CHECK(sets.v2[0][0] == doctest::Approx(4.0).epsilon(1e-12));

    sets.quantum[0] = fixed_bits({0, 0, 1});  // v1 = 1 cancels the offset
    decode_vaccines(sets, grid, rng);
    CHECK(sets.v1[0][0] == 1);
    CHECK(sets.v2[0][0] == doctest::Approx(0.0).epsilon(1e-12));

    sets.quantum[0] = fixed_bits({0, 0, 0});  // raw -1, clamped to the corner
    decode_vaccines(sets, grid, rng);
    CHECK(sets.v1[0][0] == 0);
    CHECK(sets.v2[0][0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("decoded vaccines always land inside their cell") {
    Rng rng = make_rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dims = 1 + static_cast<std::size_t>(uniform_index(rng, 0, 2));
        const int divisions = 1 + static_cast<int>(uniform_index(rng, 0, 3));
        const std::size_t mb = 1 + static_cast<std::size_t>(uniform_index(rng, 0, 5));
        RealVector lo(dims), hi(dims);
        for (std::size_t j = 0; j < dims; ++j) {
            lo[j] = -5.0 + 10.0 * uniform01(rng);
            hi[j] = lo[j] + 0.5 + 10.0 * uniform01(rng);
        }
        const GridPartition grid = GridPartition::uniform(dims, divisions, lo, hi);
        VaccineSets sets = init_vaccines(grid, mb);
        decode_vaccines(sets, grid, rng);
        REQUIRE(sets.quantum.size() == grid.cell_count());
        REQUIRE(sets.v1.size() == grid.cell_count());
        REQUIRE(sets.v2.size() == grid.cell_count());
        for (std::size_t i = 0; i < sets.v2.size(); ++i) {
            const RealVector corner = grid.cell_corner(i);
            for (std::size_t j = 0; j < dims; ++j) {
                REQUIRE(sets.v2[i][j] >= corner[j] - 1e-12);
                REQUIRE(sets.v2[i][j] <= corner[j] + grid.width(j) + 1e-12);
            }
        }
    }
}

TEST_CASE("hamming basics") {
    CHECK(hamming({1, 0, 1, 1}, {1, 0, 1, 1}) == 0);
    CHECK(hamming({0, 0, 0, 0}, {1, 1, 1, 1}) == 4);
    CHECK(hamming({1, 0, 1, 1}, {1, 0, 0, 1}) == 1);
    CHECK_THROWS_AS(hamming({1, 0}, {1}), std::invalid_argument);
}

TEST_CASE("hamming metric axioms") {
    Rng rng = make_rng(3);
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t len = 1 + static_cast<std::size_t>(uniform_index(rng, 0, 31));
        const BitVector a = random_bits(rng, len);
        const BitVector b = random_bits(rng, len);
        const BitVector c = random_bits(rng, len);
        REQUIRE(hamming(a, a) == 0);
        if (hamming(a, b) == 0) REQUIRE(a == b);
        REQUIRE(hamming(a, b) == hamming(b, a));
        REQUIRE(hamming(a, c) <= hamming(a, b) + hamming(b, c));
    }
}

TEST_CASE("select_farthest picks by summed distance") {
    const std::vector<BitVector> antibodies = {{0, 0, 0}};
    const std::vector<BitVector> vaccines = {{0, 0, 0}, {1, 1, 1}, {1, 0, 1}};
    const auto best = select_farthest(vaccines, antibodies, 1);
    REQUIRE(best.size() == 1);
    CHECK(best[0] == 1);

    const std::vector<BitVector> pair = {{0, 0, 0}, {1, 1, 1}};
    const auto both = select_farthest(pair, pair, 2);
    REQUIRE(both.size() == 2);
    CHECK(both[0] == 0);  // scores tie at 3; lower index first
    CHECK(both[1] == 1);

    CHECK(select_farthest(vaccines, antibodies, 3).size() == 3);
    CHECK_THROWS_AS(select_farthest(vaccines, antibodies, 4), std::invalid_argument);
}

TEST_CASE("farthest_scores equals the brute-force double loop") {
    Rng rng = make_rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t len = 1 + static_cast<std::size_t>(uniform_index(rng, 0, 15));
        std::vector<BitVector> vaccines(1 + uniform_index(rng, 0, 15));
        std::vector<BitVector> antibodies(1 + uniform_index(rng, 0, 15));
        for (auto& v : vaccines) v = random_bits(rng, len);
        for (auto& a : antibodies) a = random_bits(rng, len);

        const auto scores = farthest_scores(vaccines, antibodies);
        for (std::size_t v = 0; v < vaccines.size(); ++v) {
            std::size_t expected = 0;
            for (const auto& a : antibodies) expected += hamming(vaccines[v], a);
            REQUIRE(scores[v] == expected);
        }
    }
}

TEST_CASE("select_farthest with k equal to the vaccine count is a permutation") {
    Rng rng = make_rng(5);
    std::vector<BitVector> vaccines(8), antibodies(4);
    for (auto& v : vaccines) v = random_bits(rng, 12);
    for (auto& a : antibodies) a = random_bits(rng, 12);
    auto order = select_farthest(vaccines, antibodies, vaccines.size());
    std::sort(order.begin(), order.end());
    for (std::size_t i = 0; i < order.size(); ++i) CHECK(order[i] == i);
}

TEST_CASE("resample_vaccines follows the fitted model") {
    Rng rng = make_rng(6);
    const auto samples = resample_vaccines({{2.0}, {4.0}}, 20000, {-100.0}, {100.0}, rng);
    double sum = 0.0;
    for (const auto& v : samples) sum += v[0];
    CHECK(std::abs(sum / 20000.0 - 3.0) < 0.05);

    Rng rng2 = make_rng(7);
    for (const auto& v : resample_vaccines({{1.5}}, 200, {-100.0}, {100.0}, rng2)) {
        CHECK(v[0] > 1.5 - 6e-6);
        CHECK(v[0] < 1.5 + 6e-6);
    }

    Rng a = make_rng(8), b = make_rng(8);
    CHECK(resample_vaccines({{2.0}, {4.0}}, 50, {-10.0}, {10.0}, a) ==
          resample_vaccines({{2.0}, {4.0}}, 50, {-10.0}, {10.0}, b));
    Rng c = make_rng(9);
    CHECK_THROWS_AS(resample_vaccines({}, 5, {-1.0}, {1.0}, c), std::invalid_argument);
}

TEST_CASE("genetic_refresh preserves size and identical parents") {
    const GridPartition grid = GridPartition::uniform(2, 2, {0.0, 0.0}, {10.0, 10.0});
    Rng rng = make_rng(10);

    const std::vector<RealVector> twins = {{3.0, 4.0}, {3.0, 4.0}};
    CHECK(genetic_refresh(twins, grid, rng, 0.0) == twins);

    for (std::size_t size = 2; size <= 10; ++size) {
        std::vector<RealVector> pop(size, RealVector{1.0, 2.0});
        for (auto& v : pop) v[0] = uniform01(rng) * 10.0;
        const auto out = genetic_refresh(pop, grid, rng);
        REQUIRE(out.size() == size);
        for (const auto& v : out)
            for (std::size_t j = 0; j < 2; ++j) {
                REQUIRE(v[j] >= grid.lo(j));
                REQUIRE(v[j] <= grid.hi(j));
            }
    }
}

TEST_CASE("genetic_refresh with zero mutation only recombines") {
    const GridPartition grid = GridPartition::uniform(1, 1, {0.0}, {10.0});
    Rng rng = make_rng(11);
    const std::vector<RealVector> parents = {{2.0}, {9.0}};
    const auto out = genetic_refresh(parents, grid, rng, 0.0);
    REQUIRE(out.size() == 2);
    const bool kept = (out[0][0] == 2.0 && out[1][0] == 9.0);
    const bool swapped = (out[0][0] == 9.0 && out[1][0] == 2.0);
    CHECK((kept || swapped));
}

TEST_CASE("vaccinate keeps verified improvements only") {
    const GenomeLayout layout({3, 3}, true);
    // fitness: prefers codes summing high
    const FitnessFn fitness = [&](const BitVector& bits) {
        const auto d = layout.decode(bits);
        return static_cast<double>(d.codes[0] + d.codes[1]);
    };
    Rng rng = make_rng(12);

    ScoredGenome antibody;
    antibody.bits = layout.encode({1, 2}, 0);
    antibody.fitness = fitness(antibody.bits);

    SUBCASE("idempotent when the vaccine equals the antibody") {
        const auto out = vaccinate({antibody}, {{1.0, 2.0}}, 1.0, layout, fitness, rng);
        CHECK(out[0].bits == antibody.bits);
        CHECK(out[0].fitness == antibody.fitness);
    }

    SUBCASE("fitness-decreasing injections are rejected") {
        const auto out = vaccinate({antibody}, {{0.0, 0.0}}, 1.0, layout, fitness, rng);
        CHECK(out[0].bits == antibody.bits);
    }

    SUBCASE("strictly improving injection is adopted") {
        const auto out = vaccinate({antibody}, {{3.0, 3.0}}, 1.0, layout, fitness, rng);
        CHECK(out[0].fitness > antibody.fitness);
    }

    SUBCASE("empty vaccine set is an error") {
        CHECK_THROWS_AS(vaccinate({antibody}, {}, 1.0, layout, fitness, rng),
                        std::invalid_argument);
    }
}

TEST_CASE("vaccinate never decreases any fitness") {
    const GenomeLayout layout({7, 7, 7}, true);
    const FitnessFn fitness = [&](const BitVector& bits) {
        const auto d = layout.decode(bits);
        return std::sin(d.codes[0] * 1.7) + std::cos(d.codes[1] * 0.9) + 0.1 * d.codes[2];
    };
    Rng rng = make_rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ScoredGenome> antibodies(6);
        for (auto& ab : antibodies) {
            std::vector<int> codes = {static_cast<int>(uniform_index(rng, 0, 7)),
                                      static_cast<int>(uniform_index(rng, 0, 7)),
                                      static_cast<int>(uniform_index(rng, 0, 7))};
            ab.bits = layout.encode(codes, static_cast<int>(uniform_index(rng, 0, 1)));
            ab.fitness = fitness(ab.bits);
        }
        std::vector<RealVector> vaccines(4, RealVector(3));
        for (auto& v : vaccines)
            for (double& x : v) x = 7.0 * uniform01(rng);

        const auto out = vaccinate(antibodies, vaccines, 0.75, layout, fitness, rng);
        REQUIRE(out.size() == antibodies.size());
        for (std::size_t i = 0; i < out.size(); ++i) REQUIRE(out[i].fitness >= antibodies[i].fitness);
    }
}
