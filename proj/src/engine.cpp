#include "qvica/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qvica::engine {

namespace {

// stream tags for derived seeds
constexpr std::uint64_t kStreamObserve = 0x0b5e;
constexpr std::uint64_t kStreamVaccineDecode = 0xdec0;
constexpr std::uint64_t kStreamResample = 0x5a3e;
constexpr std::uint64_t kStreamRefresh = 0x6e7e;
constexpr std::uint64_t kStreamVaccinate = 0x7acc;

QuantumIndividual encode_survivor(const BitVector& bits, bool deterministic) {
    QuantumIndividual q;
    q.reserve(bits.size());
    for (std::uint8_t b : bits) {
        double p0 = deterministic ? (b ? 0.0 : 1.0) : (b ? 1.0 - kSurvivorBias : kSurvivorBias);
        q.push_back(qcore::QBit::from_prob_zero(p0));
    }
    return q;
}

double mean_pairwise_hamming(const std::vector<ScoredGenome>& pop) {
    if (pop.size() < 2) return 0.0;
    std::size_t total = 0, pairs = 0;
    for (std::size_t i = 0; i < pop.size(); ++i)
        for (std::size_t j = i + 1; j < pop.size(); ++j) {
            total += vaccine::hamming(pop[i].bits, pop[j].bits);
            ++pairs;
        }
    return static_cast<double>(total) / static_cast<double>(pairs);
}

}  // namespace

int EngineConfig::clones_per_antibody() const {
    return effective_clone_budget() / population_size;
}

void EngineConfig::validate() const {
    if (population_size < 1) throw std::invalid_argument("EngineConfig: population_size must be >= 1");
    if (iterations < 1) throw std::invalid_argument("EngineConfig: iterations must be >= 1");
    if (effective_clone_budget() < population_size)
        throw std::invalid_argument("EngineConfig: clone_budget must be >= population_size");
    if (!(mutation_angle > 0.0) || !(mutation_angle < 1.5707963267948966))
        throw std::invalid_argument("EngineConfig: mutation_angle must lie in (0, pi/2)");
    if (!(vaccination_rate > 0.0) || vaccination_rate > 1.0)
        throw std::invalid_argument("EngineConfig: vaccination_rate must lie in (0, 1]");
    if (layout.genome_bits() == 0) throw std::invalid_argument("EngineConfig: empty genome layout");
    if (grid_divisions < 1) throw std::invalid_argument("EngineConfig: grid_divisions must be >= 1");
    if (vaccine_bits_per_dim < 1 || vaccine_bits_per_dim > 24)
        throw std::invalid_argument("EngineConfig: vaccine_bits_per_dim must lie in [1, 24]");
    for (const auto& g : initial_genomes)
        if (g.size() != layout.genome_bits())
            throw std::invalid_argument("EngineConfig: initial genome length mismatch");
}

std::vector<QuantumIndividual> clonal_expand(const std::vector<QuantumIndividual>& population,
                                             const EngineConfig& config) {
    if (population.empty()) throw std::invalid_argument("clonal_expand: empty population");
    const int clones = config.clones_per_antibody();

    std::vector<QuantumIndividual> expanded = population;
    expanded.reserve(population.size() * (1 + static_cast<std::size_t>(clones)));
    for (const auto& q : population)
        for (int c = 0; c < clones; ++c) expanded.push_back(q);
    return expanded;
}

SelectionResult clonal_select(const std::vector<ScoredGenome>& candidates, std::size_t n) {
    if (candidates.size() < n) throw std::invalid_argument("clonal_select: fewer candidates than survivors");

    std::vector<std::size_t> order(candidates.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return candidates[a].fitness > candidates[b].fitness;
    });

    SelectionResult result;
    result.quantum.reserve(n);
    result.selected.reserve(n);
    for (std::size_t rank = 0; rank < n; ++rank) {
        const ScoredGenome& survivor = candidates[order[rank]];
        result.selected.push_back(survivor);
        result.quantum.push_back(encode_survivor(survivor.bits, rank == 0));
    }
    return result;
}

RunResult run(const EngineConfig& config, const FitnessFn& fitness) {
    config.validate();

    const std::size_t n = static_cast<std::size_t>(config.population_size);
    const std::size_t m = config.layout.genome_bits();
    const std::size_t d = config.layout.num_features();
    const std::uint64_t master = config.seed;

    // Decision space: the per-feature bin-index box [0, max_code].
    vaccine::RealVector lo(d, 0.0), hi(d);
    for (std::size_t f = 0; f < d; ++f) hi[f] = static_cast<double>(config.layout.max_code(f));
    const vaccine::GridPartition grid =
        vaccine::GridPartition::uniform(d, config.grid_divisions, lo, hi);

    std::vector<QuantumIndividual> population;
    if (config.initial_genomes.empty()) {
        population = qcore::init_quantum_population(n, m);
    } else {
        population.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            population.push_back(
                encode_survivor(config.initial_genomes[i % config.initial_genomes.size()], false));
    }

    vaccine::VaccineSets vaccines =
        vaccine::init_vaccines(grid, static_cast<std::size_t>(config.vaccine_bits_per_dim));

    std::vector<ScoredGenome> previous;  // survivors of the last iteration
    std::optional<BitVector> best_bits;
    RunResult result;
    result.history.reserve(static_cast<std::size_t>(config.iterations));

    for (int t = 1; t <= config.iterations; ++t) {
        const std::uint64_t ut = static_cast<std::uint64_t>(t);

        // clonal expansion + rotation mutation of the clones toward the best
        std::vector<QuantumIndividual> expanded = clonal_expand(population, config);
        if (best_bits) {
            for (std::size_t i = n; i < expanded.size(); ++i)
                expanded[i] = qcore::quantum_mutate(expanded[i], *best_bits, config.mutation_angle);
        }

        // observation and evaluation
        std::vector<ScoredGenome> observed(expanded.size());
        for (std::size_t i = 0; i < expanded.size(); ++i) {
            Rng rng = make_rng(derive_seed(master, {kStreamObserve, ut, i}));
            observed[i].bits = qcore::observe(expanded[i], rng);
            observed[i].fitness = fitness(observed[i].bits);
        }

        // vaccine pipeline: decode, split by index parity, select the
        // farthest half of V2' as V_best, resample V2' from its Gaussian
        // model, refresh V2'' genetically, merge
        {
            Rng rng = make_rng(derive_seed(master, {kStreamVaccineDecode, ut}));
            vaccine::decode_vaccines(vaccines, grid, rng);
        }
        std::vector<vaccine::RealVector> v2_first, v2_second;
        for (std::size_t i = 0; i < vaccines.v2.size(); ++i)
            (i % 2 == 0 ? v2_first : v2_second).push_back(vaccines.v2[i]);

        std::vector<vaccine::RealVector> merged;
        if (!v2_first.empty()) {
            std::vector<BitVector> vac_bits;
            vac_bits.reserve(v2_first.size());
            for (const auto& v : v2_first)
                vac_bits.push_back(vaccine::encode_vaccine_bits(v, config.layout));

            std::vector<BitVector> ab_bits;
            ab_bits.reserve(observed.size());
            for (const auto& ab : observed)
                ab_bits.push_back(config.layout.feature_slice(ab.bits));

            const std::size_t k = (v2_first.size() + 1) / 2;
            std::vector<vaccine::RealVector> v_best;
            for (std::size_t idx : vaccine::select_farthest(vac_bits, ab_bits, k))
                v_best.push_back(v2_first[idx]);

            Rng rng = make_rng(derive_seed(master, {kStreamResample, ut}));
            merged = vaccine::resample_vaccines(v_best, v2_first.size(), grid.domain_lo(),
                                                grid.domain_hi(), rng);
        }
        {
            Rng rng = make_rng(derive_seed(master, {kStreamRefresh, ut}));
            for (auto& v : vaccine::genetic_refresh(v2_second, grid, rng,
                                                    config.refresh_mutation_scale))
                merged.push_back(std::move(v));
        }
        vaccines.v2 = merged;

        // vaccination with verification
        {
            Rng rng = make_rng(derive_seed(master, {kStreamVaccinate, ut}));
            observed = vaccine::vaccinate(observed, vaccines.v2, config.vaccination_rate,
                                          config.layout, fitness, rng);
        }

        // clonal selection over the new candidates plus the previous
        // survivors, deduplicated by genome so the population accumulates
        // distinct rules (incumbents first: ties keep them in place)
        std::vector<ScoredGenome> pool;
        pool.reserve(previous.size() + observed.size());
        std::set<BitVector> seen;
        auto add_distinct = [&](const ScoredGenome& g) {
            if (seen.insert(g.bits).second) pool.push_back(g);
        };
        for (const auto& g : previous) add_distinct(g);
        for (const auto& g : observed) add_distinct(g);

        SelectionResult sel = clonal_select(pool, std::min(n, pool.size()));
        population = std::move(sel.quantum);
        previous = std::move(sel.selected);
        // refill with fresh uniform individuals when fewer distinct genomes exist
        while (population.size() < n) population.emplace_back(m, qcore::QBit());

        best_bits = previous.front().bits;

        IterationStats stats;
        stats.best_fitness = previous.front().fitness;
        double sum = 0.0;
        for (const auto& g : previous) sum += g.fitness;
        stats.mean_fitness = sum / static_cast<double>(previous.size());
        stats.diversity = mean_pairwise_hamming(previous);
        result.history.push_back(stats);
    }

    result.population = std::move(previous);
    return result;
}

}  // namespace qvica::engine
