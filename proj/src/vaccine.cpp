#include "qvica/vaccine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qvica::vaccine {

GridPartition GridPartition::uniform(std::size_t dims, int divisions,
                                     RealVector lo, RealVector hi) {
    return GridPartition(std::vector<int>(dims, divisions), std::move(lo), std::move(hi));
}

GridPartition::GridPartition(std::vector<int> divisions, RealVector lo, RealVector hi)
    : divisions_(std::move(divisions)), lo_(std::move(lo)), hi_(std::move(hi)) {
    if (divisions_.empty() || lo_.size() != divisions_.size() || hi_.size() != divisions_.size())
        throw std::invalid_argument("GridPartition: dimension mismatch");
    cells_ = 1;
    for (std::size_t j = 0; j < divisions_.size(); ++j) {
        if (divisions_[j] < 1) throw std::invalid_argument("GridPartition: divisions must be >= 1");
        if (!(hi_[j] > lo_[j])) throw std::invalid_argument("GridPartition: empty dimension range");
        cells_ *= static_cast<std::size_t>(divisions_[j]);
    }
}

RealVector GridPartition::cell_corner(std::size_t cell) const {
    if (cell >= cells_) throw std::out_of_range("GridPartition::cell_corner: cell index");
    RealVector corner(dims());
    // mixed-radix decomposition, last dimension fastest
    for (std::size_t j = dims(); j-- > 0;) {
        const std::size_t d = static_cast<std::size_t>(divisions_[j]);
        const std::size_t idx = cell % d;
        cell /= d;
        corner[j] = lo_[j] + static_cast<double>(idx) * width(j);
    }
    return corner;
}

VaccineSets init_vaccines(const GridPartition& grid, std::size_t bits_per_dim) {
    if (bits_per_dim == 0) throw std::invalid_argument("init_vaccines: bits_per_dim must be >= 1");
    VaccineSets sets;
    sets.bits_per_dim = bits_per_dim;
    sets.quantum = qcore::init_quantum_population(grid.cell_count(), grid.dims() * bits_per_dim);
    return sets;
}

void decode_vaccines(VaccineSets& sets, const GridPartition& grid, Rng& rng) {
    const std::size_t mb = sets.bits_per_dim;
    const double scale = static_cast<double>(1ull << mb);
    sets.v1.assign(sets.quantum.size(), std::vector<int>(grid.dims()));
    sets.v2.assign(sets.quantum.size(), RealVector(grid.dims()));

    for (std::size_t i = 0; i < sets.quantum.size(); ++i) {
        const BitVector bits = qcore::observe(sets.quantum[i], rng);
        const RealVector corner = grid.cell_corner(i);
        for (std::size_t j = 0; j < grid.dims(); ++j) {
            int v1 = 0;
            for (std::size_t b = 0; b < mb; ++b) v1 = (v1 << 1) | bits[j * mb + b];
            sets.v1[i][j] = v1;

            const double w = grid.width(j);
            double v2 = corner[j] + (w / scale) * (static_cast<double>(v1) - 1.0);
            if (v2 < corner[j]) v2 = corner[j];
            if (v2 > corner[j] + w) v2 = corner[j] + w;
            sets.v2[i][j] = v2;
        }
    }
}

std::size_t hamming(const BitVector& a, const BitVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("hamming: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
    return d;
}

std::vector<std::size_t> farthest_scores(const std::vector<BitVector>& vaccine_bits,
                                         const std::vector<BitVector>& antibody_bits) {
    if (vaccine_bits.empty()) return {};
    const std::size_t m = vaccine_bits.front().size();
    for (const auto& v : vaccine_bits)
        if (v.size() != m) throw std::invalid_argument("farthest_scores: vaccine length mismatch");

    // Sum over antibodies of per-bit mismatches equals, per position, either
    // the count of antibody ones (vaccine bit 0) or zeros (vaccine bit 1);
    // counting positions once makes scoring O((V + A) * m).
    std::vector<std::size_t> ones(m, 0);
    for (const auto& a : antibody_bits) {
        if (a.size() != m) throw std::invalid_argument("farthest_scores: antibody length mismatch");
        for (std::size_t i = 0; i < m; ++i) ones[i] += a[i];
    }
    const std::size_t total = antibody_bits.size();

    std::vector<std::size_t> scores(vaccine_bits.size(), 0);
    for (std::size_t v = 0; v < vaccine_bits.size(); ++v) {
        std::size_t s = 0;
        for (std::size_t i = 0; i < m; ++i)
            s += vaccine_bits[v][i] ? (total - ones[i]) : ones[i];
        scores[v] = s;
    }
    return scores;
}

std::vector<std::size_t> select_farthest(const std::vector<BitVector>& vaccine_bits,
                                         const std::vector<BitVector>& antibody_bits,
                                         std::size_t k) {
    if (k > vaccine_bits.size()) throw std::invalid_argument("select_farthest: k exceeds vaccine count");
    const std::vector<std::size_t> scores = farthest_scores(vaccine_bits, antibody_bits);

    std::vector<std::size_t> order(vaccine_bits.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    order.resize(k);
    return order;
}

std::vector<RealVector> resample_vaccines(const std::vector<RealVector>& v_best,
                                          std::size_t count,
                                          const RealVector& lo,
                                          const RealVector& hi,
                                          Rng& rng) {
    if (v_best.empty()) throw std::invalid_argument("resample_vaccines: empty v_best");
    const eda::GaussianModel model = eda::estimate_gaussian(v_best);
    return eda::sample_gaussian(model, count, lo, hi, rng);
}

std::vector<RealVector> genetic_refresh(const std::vector<RealVector>& v2_second,
                                        const GridPartition& grid,
                                        Rng& rng,
                                        double mutation_scale) {
    std::vector<RealVector> out = v2_second;

    for (std::size_t p = 0; p + 1 < out.size(); p += 2)
        for (std::size_t j = 0; j < grid.dims(); ++j)
            if (uniform01(rng) <= 0.5) std::swap(out[p][j], out[p + 1][j]);

    if (mutation_scale > 0.0) {
        for (auto& v : out)
            for (std::size_t j = 0; j < grid.dims(); ++j) {
                double x = normal(rng, v[j], mutation_scale * grid.width(j));
                if (x < grid.lo(j)) x = grid.lo(j);
                if (x > grid.hi(j)) x = grid.hi(j);
                v[j] = x;
            }
    }
    return out;
}

BitVector encode_vaccine_bits(const RealVector& point, const GenomeLayout& layout) {
    if (point.size() != layout.num_features())
        throw std::invalid_argument("encode_vaccine_bits: dimension mismatch");
    BitVector bits;
    bits.reserve(layout.feature_bits());
    for (std::size_t f = 0; f < point.size(); ++f) {
        long long c = std::llround(point[f]);
        if (c < 0) c = 0;
        if (c > layout.max_code(f)) c = layout.max_code(f);
        for (int b = layout.field_bits(f) - 1; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((c >> b) & 1));
    }
    return bits;
}

std::vector<ScoredGenome> vaccinate(const std::vector<ScoredGenome>& antibodies,
                                    const std::vector<RealVector>& v2,
                                    double rate,
                                    const GenomeLayout& layout,
                                    const FitnessFn& fitness,
                                    Rng& rng) {
    if (v2.empty()) throw std::invalid_argument("vaccinate: empty vaccine set");
    if (!(rate > 0.0) || rate > 1.0) throw std::invalid_argument("vaccinate: rate must be in (0, 1]");

    std::vector<ScoredGenome> out = antibodies;
    if (out.empty()) return out;

    std::size_t n_inject = static_cast<std::size_t>(std::llround(rate * static_cast<double>(out.size())));
    if (n_inject == 0) n_inject = 1;
    if (n_inject > out.size()) n_inject = out.size();

    // partial Fisher-Yates: first n_inject entries are a uniform subset
    std::vector<std::size_t> idx(out.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < n_inject; ++i) {
        std::size_t j = static_cast<std::size_t>(uniform_index(rng, i, idx.size() - 1));
        std::swap(idx[i], idx[j]);
    }

    const std::size_t d = layout.num_features();
    for (std::size_t i = 0; i < n_inject; ++i) {
        ScoredGenome& ab = out[idx[i]];
        const RealVector& vac = v2[static_cast<std::size_t>(uniform_index(rng, 0, v2.size() - 1))];

        // uniform non-empty feature subset
        std::vector<std::uint8_t> mask(d, 0);
        bool any = false;
        while (!any)
            for (std::size_t f = 0; f < d; ++f) {
                mask[f] = (uniform01(rng) <= 0.5) ? 1 : 0;
                any = any || mask[f];
            }

        GenomeLayout::Decoded rule = layout.decode(ab.bits);
        for (std::size_t f = 0; f < d; ++f) {
            if (!mask[f]) continue;
            long long c = std::llround(vac[f]);
            if (c < 0) c = 0;
            if (c > layout.max_code(f)) c = layout.max_code(f);
            rule.codes[f] = static_cast<int>(c);
        }

        ScoredGenome candidate;
        candidate.bits = layout.encode(rule.codes,
                                       layout.has_class_bit() ? std::optional<int>(rule.class_bit)
                                                              : std::nullopt);
        candidate.fitness = fitness(candidate.bits);
        if (candidate.fitness >= ab.fitness) ab = std::move(candidate);
    }
    return out;
}

}  // namespace qvica::vaccine
