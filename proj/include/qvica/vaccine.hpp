#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "qvica/encoding.hpp"
#include "qvica/eda.hpp"
#include "qvica/qcore.hpp"
#include "qvica/rng.hpp"

namespace qvica::vaccine {

using eda::RealVector;
using qcore::BitVector;

// Axis-aligned grid over the decision space: dimension j spans
// [lo_j, hi_j] cut into D_j equal cells; cells tile the domain exactly.
class GridPartition {
public:
    GridPartition() = default;
    // Same division count for every dimension.
    static GridPartition uniform(std::size_t dims, int divisions,
                                 RealVector lo, RealVector hi);
    GridPartition(std::vector<int> divisions, RealVector lo, RealVector hi);

    std::size_t dims() const { return divisions_.size(); }
    std::size_t cell_count() const { return cells_; }  // n = prod D_j
    int divisions(std::size_t j) const { return divisions_[j]; }
    double lo(std::size_t j) const { return lo_[j]; }
    double hi(std::size_t j) const { return hi_[j]; }
    double width(std::size_t j) const { return (hi_[j] - lo_[j]) / divisions_[j]; }
    const RealVector& domain_lo() const { return lo_; }
    const RealVector& domain_hi() const { return hi_; }

    // Lower corner c_i of cell `cell`; cells are indexed in row-major order
    // with the last dimension varying fastest.
    RealVector cell_corner(std::size_t cell) const;

private:
    std::vector<int> divisions_;
    RealVector lo_, hi_;
    std::size_t cells_ = 0;
};

// Quantum vaccine population with its decoded integer (v1) and real (v2)
// forms. One vaccine per grid cell.
struct VaccineSets {
    std::vector<qcore::QuantumIndividual> quantum;
    std::vector<std::vector<int>> v1;  // per vaccine: one integer per dimension
    std::vector<RealVector> v2;        // per vaccine: one point in the decision space
    std::size_t bits_per_dim = 0;
};

// One quantum vaccine per grid cell, d * bits_per_dim q-bits each, all in
// uniform superposition. v1/v2 stay empty until decode_vaccines.
VaccineSets init_vaccines(const GridPartition& grid, std::size_t bits_per_dim);

// Observe each quantum vaccine into per-dimension big-endian integers (v1),
// then map into the owning cell:
//   v2_j = c_j + (width_j / 2^mb) * (v1_j - 1), clamped to [c_j, c_j + width_j].
void decode_vaccines(VaccineSets& sets, const GridPartition& grid, Rng& rng);

// Count of differing positions. Throws on length mismatch.
std::size_t hamming(const BitVector& a, const BitVector& b);

// Per-vaccine sum of Hamming distances to all antibodies.
std::vector<std::size_t> farthest_scores(const std::vector<BitVector>& vaccine_bits,
                                         const std::vector<BitVector>& antibody_bits);

// Indices of the k highest-scoring vaccines (ties broken by lower index),
// ordered by descending score.
std::vector<std::size_t> select_farthest(const std::vector<BitVector>& vaccine_bits,
                                         const std::vector<BitVector>& antibody_bits,
                                         std::size_t k);

// Fit a Gaussian model over v_best and draw `count` fresh vaccines clamped to
// the decision-space bounds.
std::vector<RealVector> resample_vaccines(const std::vector<RealVector>& v_best,
                                          std::size_t count,
                                          const RealVector& lo,
                                          const RealVector& hi,
                                          Rng& rng);

// Uniform crossover over consecutive pairs (per-dimension swap with
// probability 0.5) followed by per-dimension Gaussian perturbation with
// sd = mutation_scale * width_j, clamped to the domain. Size preserved; a
// lone trailing element skips crossover.
std::vector<RealVector> genetic_refresh(const std::vector<RealVector>& v2_second,
                                        const GridPartition& grid,
                                        Rng& rng,
                                        double mutation_scale = 0.1);

using FitnessFn = std::function<double(const BitVector&)>;

// Vaccination with verification: a `rate` fraction of antibodies (chosen
// uniformly, at least one) each receive one uniformly chosen vaccine on a
// uniformly chosen non-empty subset of features. Injected components are
// rounded to the nearest valid bin index and re-encoded; the vaccinated
// variant replaces the original only if its fitness does not decrease.
std::vector<ScoredGenome> vaccinate(const std::vector<ScoredGenome>& antibodies,
                                    const std::vector<RealVector>& v2,
                                    double rate,
                                    const GenomeLayout& layout,
                                    const FitnessFn& fitness,
                                    Rng& rng);

// Rounds a decision-space point to bin codes and encodes its feature bits
// (no class bit); the shared layout makes vaccine/antibody Hamming
// comparisons well-defined.
BitVector encode_vaccine_bits(const RealVector& point, const GenomeLayout& layout);

}  // namespace qvica::vaccine
