#include "qvica/qcore.hpp"

#include <cmath>
#include <stdexcept>

namespace qvica::qcore {

namespace {
constexpr double kHalfPi = 1.5707963267948966;
constexpr double kInvSqrt2 = 0.7071067811865476;

double clamp_angle(double theta) {
    if (theta < 0.0) return 0.0;
    if (theta > kHalfPi) return kHalfPi;
    return theta;
}
}  // namespace

QBit::QBit() : alpha_(kInvSqrt2), beta_(kInvSqrt2) {}

QBit QBit::from_angle(double theta) {
    theta = clamp_angle(theta);
    return QBit(std::cos(theta), std::sin(theta));
}

QBit QBit::from_prob_zero(double p0) {
    if (p0 < 0.0) p0 = 0.0;
    if (p0 > 1.0) p0 = 1.0;
    return from_angle(std::acos(std::sqrt(p0)));
}

double QBit::angle() const { return std::atan2(beta_, alpha_); }

std::vector<QuantumIndividual> init_quantum_population(std::size_t count, std::size_t m) {
    if (count == 0) throw std::invalid_argument("init_quantum_population: count must be >= 1");
    if (m == 0) throw std::invalid_argument("init_quantum_population: m must be >= 1");
    return std::vector<QuantumIndividual>(count, QuantumIndividual(m, QBit()));
}

BinaryIndividual observe(const QuantumIndividual& q, Rng& rng) {
    BinaryIndividual bits(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        double r = uniform01(rng);
        bits[i] = (r <= q[i].prob_zero()) ? 0 : 1;
    }
    return bits;
}

QuantumIndividual quantum_mutate(const QuantumIndividual& q,
                                 const BinaryIndividual& guide,
                                 double delta) {
    if (q.size() != guide.size())
        throw std::invalid_argument("quantum_mutate: genome/guide length mismatch");
    if (!(delta > 0.0) || !(delta < kHalfPi))
        throw std::invalid_argument("quantum_mutate: delta must lie in (0, pi/2)");

    QuantumIndividual out;
    out.reserve(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        double theta = q[i].angle();
        theta += (guide[i] == 0) ? -delta : delta;
        out.push_back(QBit::from_angle(theta));
    }
    return out;
}

}  // namespace qvica::qcore
