#include "qvica/eda.hpp"

#include <cmath>
#include <stdexcept>

namespace qvica::eda {

GaussianModel estimate_gaussian(const std::vector<RealVector>& samples) {
    if (samples.empty()) throw std::invalid_argument("estimate_gaussian: empty sample set");
    const std::size_t dim = samples.front().size();
    const double b = static_cast<double>(samples.size());

    GaussianModel model;
    model.mu.assign(dim, 0.0);
    model.sigma.assign(dim, 0.0);

    for (const auto& s : samples) {
        if (s.size() != dim) throw std::invalid_argument("estimate_gaussian: dimension mismatch");
        for (std::size_t j = 0; j < dim; ++j) model.mu[j] += s[j];
    }
    for (std::size_t j = 0; j < dim; ++j) model.mu[j] /= b;

    for (const auto& s : samples)
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = s[j] - model.mu[j];
            model.sigma[j] += d * d;
        }
    for (std::size_t j = 0; j < dim; ++j) {
        model.sigma[j] = std::sqrt(model.sigma[j] / b);
        if (model.sigma[j] < kSigmaFloor) model.sigma[j] = kSigmaFloor;
    }
    return model;
}

std::vector<RealVector> sample_gaussian(const GaussianModel& model,
                                        std::size_t count,
                                        const RealVector& lo,
                                        const RealVector& hi,
                                        Rng& rng) {
    const std::size_t dim = model.mu.size();
    if (count == 0) throw std::invalid_argument("sample_gaussian: count must be >= 1");
    if (lo.size() != dim || hi.size() != dim)
        throw std::invalid_argument("sample_gaussian: bounds dimension mismatch");
    for (std::size_t j = 0; j < dim; ++j)
        if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]) || !(lo[j] < hi[j]))
            throw std::invalid_argument("sample_gaussian: invalid bounds");

    std::vector<RealVector> out(count, RealVector(dim));
    for (auto& v : out)
        for (std::size_t j = 0; j < dim; ++j) {
            double x = normal(rng, model.mu[j], model.sigma[j]);
            if (x < lo[j]) x = lo[j];
            if (x > hi[j]) x = hi[j];
            v[j] = x;
        }
    return out;
}

BernoulliModel estimate_umda(const std::vector<qcore::BitVector>& samples) {
    if (samples.empty()) throw std::invalid_argument("estimate_umda: empty sample set");
    const std::size_t dim = samples.front().size();
    const double b = static_cast<double>(samples.size());

    BernoulliModel model;
    model.p.assign(dim, 0.0);
    for (const auto& s : samples) {
        if (s.size() != dim) throw std::invalid_argument("estimate_umda: length mismatch");
        for (std::size_t i = 0; i < dim; ++i) model.p[i] += s[i];
    }
    for (std::size_t i = 0; i < dim; ++i) {
        model.p[i] /= b;
        if (model.p[i] < kProbFloor) model.p[i] = kProbFloor;
        if (model.p[i] > 1.0 - kProbFloor) model.p[i] = 1.0 - kProbFloor;
    }
    return model;
}

std::vector<qcore::BitVector> sample_umda(const BernoulliModel& model,
                                          std::size_t count,
                                          Rng& rng) {
    if (count == 0) throw std::invalid_argument("sample_umda: count must be >= 1");
    std::vector<qcore::BitVector> out(count, qcore::BitVector(model.p.size()));
    for (auto& v : out)
        for (std::size_t i = 0; i < model.p.size(); ++i)
            v[i] = (uniform01(rng) <= model.p[i]) ? 1 : 0;
    return out;
}

}  // namespace qvica::eda
