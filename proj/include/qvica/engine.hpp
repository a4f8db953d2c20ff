#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qvica/encoding.hpp"
#include "qvica/qcore.hpp"
#include "qvica/rng.hpp"
#include "qvica/vaccine.hpp"

namespace qvica::engine {

using qcore::BinaryIndividual;
using qcore::BitVector;
using qcore::QuantumIndividual;
using vaccine::FitnessFn;

struct EngineConfig {
    int population_size = 10;        // n
    int clone_budget = 0;            // Nc; 0 means the default 5 * n
    int iterations = 20;             // T
    double mutation_angle = 0.05 * 3.141592653589793;
    double vaccination_rate = 0.5;
    GenomeLayout layout;
    std::uint64_t seed = 1;

    // vaccine pipeline
    int grid_divisions = 2;          // D_j, same for every dimension
    int vaccine_bits_per_dim = 4;    // mb
    double refresh_mutation_scale = 0.1;

    // optional warm start: genomes encoded as biased survivors before the
    // first iteration (uniform superposition when empty)
    std::vector<BitVector> initial_genomes;

    int clones_per_antibody() const;  // C = floor(Nc / n)
    int effective_clone_budget() const { return clone_budget > 0 ? clone_budget : 5 * population_size; }
    void validate() const;            // throws std::invalid_argument
};

struct IterationStats {
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double diversity = 0.0;  // mean pairwise Hamming over the selected population
};
using EvolutionHistory = std::vector<IterationStats>;

struct RunResult {
    std::vector<ScoredGenome> population;  // final population, ranked by fitness
    EvolutionHistory history;
};

// Survivor re-encoding biases: a survivor's q-bits favor its own bits with
// probability 0.9; the single best survivor is encoded deterministically.
constexpr double kSurvivorBias = 0.9;

// Each antibody cloned C = floor(Nc/n) times; output holds the originals
// followed by the clones grouped by parent (clone j of parent i sits at
// n + i*C + j).
std::vector<QuantumIndividual> clonal_expand(const std::vector<QuantumIndividual>& population,
                                             const EngineConfig& config);

struct SelectionResult {
    std::vector<QuantumIndividual> quantum;   // Q(t+1), biased re-encodings
    std::vector<ScoredGenome> selected;       // the survivors, ranked by fitness
};

// Top-n candidates by fitness (ties broken by lower index). Survivors are
// re-encoded toward their bits; the best one deterministically (elitism).
SelectionResult clonal_select(const std::vector<ScoredGenome>& candidates, std::size_t n);

// Full training loop: clonal expansion, rotation mutation toward the current
// best, observation, the vaccine pipeline (decode, split, farthest selection,
// EDA resampling, genetic refresh, merge, vaccination with verification), and
// clonal selection over the new candidates plus the previous population.
// Deterministic under a fixed config.seed.
RunResult run(const EngineConfig& config, const FitnessFn& fitness);

}  // namespace qvica::engine
