#pragma once

#include <vector>

#include "qvica/qcore.hpp"
#include "qvica/rng.hpp"

namespace qvica::eda {

using RealVector = std::vector<double>;

// Variance floor: keeps sampling alive when the selected set collapses to a
// single point.
constexpr double kSigmaFloor = 1e-6;
// Marginal-probability clamp for the binary model; prevents premature
// fixation of any bit.
constexpr double kProbFloor = 0.01;

// Independent per-dimension normal model.
struct GaussianModel {
    RealVector mu;
    RealVector sigma;  // each >= kSigmaFloor
};

// Independent per-bit Bernoulli model.
struct BernoulliModel {
    RealVector p;  // each in [kProbFloor, 1 - kProbFloor]
};

// Per-dimension mean and population standard deviation (divisor = sample
// count) over the samples, with sigma floored at kSigmaFloor.
// Throws on an empty set or mismatched dimensions.
GaussianModel estimate_gaussian(const std::vector<RealVector>& samples);

// `count` vectors drawn componentwise from Normal(mu_j, sigma_j), clamped to
// [lo_j, hi_j]. Bounds must be finite with lo < hi per dimension.
std::vector<RealVector> sample_gaussian(const GaussianModel& model,
                                        std::size_t count,
                                        const RealVector& lo,
                                        const RealVector& hi,
                                        Rng& rng);

// Per-bit relative frequency of 1s, clamped into [kProbFloor, 1 - kProbFloor].
BernoulliModel estimate_umda(const std::vector<qcore::BitVector>& samples);

// `count` bit-vectors with independent bits, bit_i = 1 with probability p_i.
std::vector<qcore::BitVector> sample_umda(const BernoulliModel& model,
                                          std::size_t count,
                                          Rng& rng);

}  // namespace qvica::eda
