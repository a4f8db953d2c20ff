#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "qvica/qcore.hpp"

using namespace qvica;
using namespace qvica::qcore;

namespace {
constexpr double kPi = 3.141592653589793;

QuantumIndividual single(double prob_zero) { return {QBit::from_prob_zero(prob_zero)}; }
}  // namespace

TEST_CASE("init_quantum_population yields uniform superposition") {
    const auto pop = init_quantum_population(1, 4);
    REQUIRE(pop.size() == 1);
    REQUIRE(pop[0].size() == 4);
    for (const QBit& q : pop[0]) CHECK(q.prob_zero() == doctest::Approx(0.5).epsilon(1e-12));

    const auto pop3 = init_quantum_population(3, 8);
    REQUIRE(pop3.size() == 3);
    for (const auto& ind : pop3) CHECK(ind.size() == 8);
}

TEST_CASE("init_quantum_population rejects zero sizes") {
    CHECK_THROWS_AS(init_quantum_population(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(init_quantum_population(5, 0), std::invalid_argument);
}

TEST_CASE("observe collapses deterministic amplitudes") {
    Rng rng = make_rng(7);
    for (int i = 0; i < 200; ++i) {
        CHECK(observe(single(1.0), rng)[0] == 0);
        CHECK(observe(single(0.0), rng)[0] == 1);
    }
}

TEST_CASE("observe frequency tracks alpha squared") {
    Rng rng = make_rng(42);
    const QuantumIndividual q = single(0.5);
    int zeros = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) zeros += (observe(q, rng)[0] == 0) ? 1 : 0;
    const double freq = static_cast<double>(zeros) / draws;
    CHECK(freq > 0.49);
    CHECK(freq < 0.51);
}

TEST_CASE("observe chi-square goodness of fit") {
    // 1 dof, p > 0.001 means chi2 below 10.828
    for (double p0 : {0.1, 0.5, 0.9}) {
        Rng rng = make_rng(derive_seed(99, {static_cast<std::uint64_t>(p0 * 100)}));
        const QuantumIndividual q = single(p0);
        const int draws = 100000;
        int zeros = 0;
        for (int i = 0; i < draws; ++i) zeros += (observe(q, rng)[0] == 0) ? 1 : 0;
        const double e0 = p0 * draws, e1 = (1.0 - p0) * draws;
        const double o0 = zeros, o1 = draws - zeros;
        const double chi2 = (o0 - e0) * (o0 - e0) / e0 + (o1 - e1) * (o1 - e1) / e1;
        CHECK(chi2 < 10.828);
    }
}

TEST_CASE("observe is deterministic under a fixed seed") {
    const auto pop = init_quantum_population(1, 64);
    Rng a = make_rng(123), b = make_rng(123);
    CHECK(observe(pop[0], a) == observe(pop[0], b));
}

TEST_CASE("quantum_mutate rotates toward the guide") {
    const QuantumIndividual q = single(0.5);

    const auto toward_zero = quantum_mutate(q, {0}, 0.1);
    CHECK(toward_zero[0].prob_zero() > 0.5);

    const auto toward_one = quantum_mutate(q, {1}, 0.1);
    CHECK(toward_one[0].prob_zero() < 0.5);
}

TEST_CASE("quantum_mutate clamps at the deterministic states") {
    const QuantumIndividual certain = single(1.0);
    const auto unchanged = quantum_mutate(certain, {0}, 0.3);
    CHECK(unchanged[0].prob_zero() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unchanged[0].angle() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("quantum_mutate trigonometric step") {
    // theta = pi/4 rotated by pi/8 toward |1> lands at 3pi/8
    const QuantumIndividual q = {QBit::from_angle(kPi / 4)};
    const auto rotated = quantum_mutate(q, {1}, kPi / 8);
    CHECK(rotated[0].angle() == doctest::Approx(3 * kPi / 8).epsilon(1e-12));
    CHECK(rotated[0].alpha() == doctest::Approx(std::cos(3 * kPi / 8)).epsilon(1e-12));
}

TEST_CASE("quantum_mutate validates arguments") {
    const auto pop = init_quantum_population(1, 3);
    CHECK_THROWS_AS(quantum_mutate(pop[0], {0, 1}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(quantum_mutate(pop[0], {0, 1, 0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(quantum_mutate(pop[0], {0, 1, 0}, kPi), std::invalid_argument);
}

TEST_CASE("normalization survives arbitrary mutation sequences") {
    Rng rng = make_rng(2024);
    QuantumIndividual q = init_quantum_population(1, 16)[0];
    for (int step = 0; step < 500; ++step) {
        BinaryIndividual guide(16);
        for (auto& b : guide) b = (uniform01(rng) <= 0.5) ? 0 : 1;
        const double delta = 0.01 + 1.5 * uniform01(rng);
        q = quantum_mutate(q, guide, std::min(delta, 1.56));
        for (const QBit& bit : q) {
            const double norm = bit.alpha() * bit.alpha() + bit.beta() * bit.beta();
            REQUIRE(norm == doctest::Approx(1.0).epsilon(1e-9));
            REQUIRE(bit.alpha() >= -1.0);
            REQUIRE(bit.alpha() <= 1.0);
            REQUIRE(bit.beta() >= -1.0);
            REQUIRE(bit.beta() <= 1.0);
        }
    }
}

TEST_CASE("repeated mutation converges to the guide") {
    QuantumIndividual q = init_quantum_population(1, 8)[0];
    const BinaryIndividual guide = {0, 1, 0, 1, 1, 0, 0, 1};
    for (int step = 0; step < 100; ++step) q = quantum_mutate(q, guide, 0.05 * kPi);
    for (std::size_t i = 0; i < guide.size(); ++i) {
        const double target = guide[i] == 0 ? 1.0 : 0.0;
        CHECK(q[i].prob_zero() == doctest::Approx(target).epsilon(1e-12));
    }
}
