#pragma once

#include <cstdint>
#include <vector>

#include "qvica/rng.hpp"

namespace qvica::qcore {

// One bit of a collapsed genome; 0 or 1.
using BitVector = std::vector<std::uint8_t>;
using BinaryIndividual = BitVector;

// Two-amplitude unit representing a superposition of |0> and |1>.
// Amplitudes are kept real via the angle parametrization theta in [0, pi/2],
// alpha = cos(theta), beta = sin(theta), so alpha^2 + beta^2 = 1 holds by
// construction and both amplitudes stay in [0, 1].
class QBit {
public:
    // Uniform superposition: alpha^2 = beta^2 = 0.5.
    QBit();
    // From an angle in [0, pi/2]; clamps out-of-range input.
    static QBit from_angle(double theta);
    // From a target probability of observing 0.
    static QBit from_prob_zero(double p0);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double prob_zero() const { return alpha_ * alpha_; }
    double angle() const;

private:
    QBit(double a, double b) : alpha_(a), beta_(b) {}
    double alpha_;
    double beta_;
};

// Fixed-length sequence of q-bits encoding a superposed genome.
using QuantumIndividual = std::vector<QBit>;

// `count` individuals of `m` q-bits each, all in uniform superposition so
// every basis state is equiprobable. Throws std::invalid_argument on
// count == 0 or m == 0.
std::vector<QuantumIndividual> init_quantum_population(std::size_t count, std::size_t m);

// Collapse: per q-bit draw r in (0, 1]; bit = 0 if r <= alpha^2, else 1.
BinaryIndividual observe(const QuantumIndividual& q, Rng& rng);

// Rotate each q-bit's angle by +/-delta toward the configuration favoring the
// guide's bit (theta -> 0 for bit 0, theta -> pi/2 for bit 1), clamped to
// [0, pi/2]. delta must lie in (0, pi/2); lengths must match.
QuantumIndividual quantum_mutate(const QuantumIndividual& q,
                                 const BinaryIndividual& guide,
                                 double delta);

}  // namespace qvica::qcore
