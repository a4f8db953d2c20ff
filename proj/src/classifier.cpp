#include "qvica/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qvica/vaccine.hpp"

namespace qvica::classifier {

namespace {

std::vector<int> codes_vector(const std::array<int, data::kNumFeatures>& codes) {
    return std::vector<int>(codes.begin(), codes.end());
}

BitVector antigen_feature_bits(const GenomeLayout& layout, const ProcessedAntigen& antigen) {
    BitVector bits;
    bits.reserve(layout.feature_bits());
    for (std::size_t f = 0; f < data::kNumFeatures; ++f) {
        const int code = antigen.codes[f];
        for (int b = layout.field_bits(f) - 1; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((code >> b) & 1));
    }
    return bits;
}

}  // namespace

GenomeLayout rule_layout(const std::vector<int>& max_codes) {
    if (max_codes.size() != data::kNumFeatures)
        throw std::invalid_argument("rule_layout: expected six feature code bounds");
    return GenomeLayout(max_codes, true);
}

BitVector encode(const GenomeLayout& layout, const RuleAntibody& rule) {
    return layout.encode(codes_vector(rule.codes), static_cast<int>(rule.cls));
}

RuleAntibody decode(const GenomeLayout& layout, const BitVector& bits) {
    const GenomeLayout::Decoded decoded = layout.decode(bits);
    RuleAntibody rule;
    std::copy(decoded.codes.begin(), decoded.codes.end(), rule.codes.begin());
    rule.cls = decoded.class_bit ? Class::attack : Class::normal;
    return rule;
}

TrainingContext::TrainingContext(const std::vector<ProcessedAntigen>& antigens,
                                 GenomeLayout layout,
                                 MatchParams params)
    : layout_(std::move(layout)), params_(params) {
    if (antigens.empty()) throw std::invalid_argument("TrainingContext: empty training set");
    if (params_.theta_match < 0) throw std::invalid_argument("TrainingContext: negative theta_match");

    packable_ = (params_.theta_match == 0 && layout_.feature_bits() <= 64);
    for (const auto& a : antigens) {
        if (!a.cls) throw std::invalid_argument("TrainingContext: training antigen without class");
        ++class_counts_[static_cast<std::size_t>(*a.cls)];

        const BitVector bits = antigen_feature_bits(layout_, a);
        if (packable_) {
            const std::uint64_t key = pack_bits(bits);
            auto [it, fresh] = signature_counts_.try_emplace(key, std::array<std::uint32_t, 2>{});
            if (fresh) signature_order_.emplace_back(key, a.codes);
            ++it->second[static_cast<std::size_t>(*a.cls)];
        } else {
            antigen_bits_.push_back(bits);
            antigen_cls_.push_back(*a.cls);
        }
    }
}

double TrainingContext::fitness(const BitVector& genome) const {
    return fitness(decode(layout_, genome));
}

double TrainingContext::fitness(const RuleAntibody& rule) const {
    const std::size_t own = static_cast<std::size_t>(rule.cls);
    std::size_t same = 0, other = 0;

    if (packable_) {
        const BitVector bits =
            layout_.feature_slice(layout_.encode(codes_vector(rule.codes), static_cast<int>(rule.cls)));
        auto it = signature_counts_.find(pack_bits(bits));
        if (it != signature_counts_.end()) {
            same = it->second[own];
            other = it->second[1 - own];
        }
    } else {
        const BitVector bits =
            layout_.feature_slice(layout_.encode(codes_vector(rule.codes), static_cast<int>(rule.cls)));
        for (std::size_t i = 0; i < antigen_bits_.size(); ++i) {
            if (vaccine::hamming(bits, antigen_bits_[i]) > static_cast<std::size_t>(params_.theta_match))
                continue;
            if (antigen_cls_[i] == rule.cls) ++same;
            else ++other;
        }
    }

    const double raw = static_cast<double>(same) - params_.lambda * static_cast<double>(other);
    if (raw <= 0.0) return 0.0;
    return raw / static_cast<double>(class_counts_[own]);
}

std::vector<RuleAntibody> TrainingContext::ranked_signatures(Class c) const {
    struct Entry {
        std::array<int, data::kNumFeatures> codes;
        std::uint32_t count;
        std::size_t order;
    };
    std::vector<Entry> entries;

    if (packable_) {
        for (std::size_t i = 0; i < signature_order_.size(); ++i) {
            const auto& [key, codes] = signature_order_[i];
            const auto& counts = signature_counts_.at(key);
            const std::uint32_t cnt = counts[static_cast<std::size_t>(c)];
            if (cnt > 0) entries.push_back({codes, cnt, i});
        }
    } else {
        // group by decoded codes; adequate for the rarely used generic path
        std::vector<std::pair<std::vector<int>, std::uint32_t>> grouped;
        for (std::size_t i = 0; i < antigen_bits_.size(); ++i) {
            if (antigen_cls_[i] != c) continue;
            const GenomeLayout::Decoded decoded = [&] {
                BitVector genome = antigen_bits_[i];
                genome.push_back(static_cast<std::uint8_t>(c));
                return layout_.decode(genome);
            }();
            auto it = std::find_if(grouped.begin(), grouped.end(),
                                   [&](const auto& g) { return g.first == decoded.codes; });
            if (it == grouped.end()) grouped.emplace_back(decoded.codes, 1);
            else ++it->second;
        }
        for (std::size_t i = 0; i < grouped.size(); ++i) {
            Entry e;
            std::copy(grouped[i].first.begin(), grouped[i].first.end(), e.codes.begin());
            e.count = grouped[i].second;
            e.order = i;
            entries.push_back(e);
        }
    }

    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.order < b.order;
    });

    std::vector<RuleAntibody> rules;
    rules.reserve(entries.size());
    for (const auto& e : entries) {
        RuleAntibody r;
        r.codes = e.codes;
        r.cls = c;
        rules.push_back(r);
    }
    return rules;
}

double ConfusionCounts::accuracy() const {
    if (total() == 0) throw std::logic_error("ConfusionCounts: empty tally");
    return static_cast<double>(tp + tn) / static_cast<double>(total());
}

TrainedModel train(const TrainConfig& config,
                   const std::vector<ProcessedAntigen>& antigens,
                   const std::vector<int>& max_codes) {
    const GenomeLayout layout = rule_layout(max_codes);
    const TrainingContext ctx(antigens, layout, config.match);
    if (ctx.class_count(Class::normal) == 0 || ctx.class_count(Class::attack) == 0)
        throw std::invalid_argument("train: training set must contain both classes");

    // Warm start: interleave the most frequent signatures of both classes.
    // Exact-match fitness has no gradient from a uniform random population,
    // so antibodies begin at observed antigen signatures.
    engine::EngineConfig engine_config = config.engine;
    engine_config.layout = layout;
    engine_config.initial_genomes.clear();
    {
        const std::vector<RuleAntibody> normal_rules = ctx.ranked_signatures(Class::normal);
        const std::vector<RuleAntibody> attack_rules = ctx.ranked_signatures(Class::attack);
        const std::size_t n = static_cast<std::size_t>(engine_config.population_size);
        for (std::size_t i = 0; engine_config.initial_genomes.size() < n; ++i) {
            const std::vector<RuleAntibody>& source = (i % 2 == 0) ? attack_rules : normal_rules;
            const std::size_t idx = (i / 2) % source.size();
            engine_config.initial_genomes.push_back(encode(layout, source[idx]));
        }
    }

    const engine::RunResult result =
        engine::run(engine_config, [&ctx](const BitVector& bits) { return ctx.fitness(bits); });

    TrainedModel model;
    model.layout = layout;
    model.theta_match = config.match.theta_match;
    const double total =
        static_cast<double>(ctx.class_count(Class::normal) + ctx.class_count(Class::attack));
    model.priors[0] = static_cast<double>(ctx.class_count(Class::normal)) / total;
    model.priors[1] = static_cast<double>(ctx.class_count(Class::attack)) / total;

    // Duplicates add no information under argmax voting. Zero-fitness rules
    // cover nothing net of the penalty; their votes can only tie or
    // contradict covered signatures, so they are dropped unless a class
    // would otherwise lose all its rules.
    std::set<std::pair<std::vector<int>, int>> seen;
    std::vector<RuleAntibody> deduped;
    for (const auto& genome : result.population) {
        RuleAntibody rule = decode(layout, genome.bits);
        rule.fitness = genome.fitness;
        if (seen.emplace(codes_vector(rule.codes), static_cast<int>(rule.cls)).second)
            deduped.push_back(std::move(rule));
    }
    std::array<bool, 2> covered{};
    for (const auto& rule : deduped)
        if (rule.fitness > 0.0) {
            model.antibodies.push_back(rule);
            covered[static_cast<std::size_t>(rule.cls)] = true;
        }
    for (std::size_t c = 0; c < 2; ++c) {
        if (covered[c]) continue;
        for (const auto& rule : deduped)
            if (static_cast<std::size_t>(rule.cls) == c) model.antibodies.push_back(rule);
    }
    return model;
}

Class predict(const TrainedModel& model, const ProcessedAntigen& antigen) {
    if (model.antibodies.empty()) throw std::logic_error("predict: empty model");
    const BitVector antigen_bits = antigen_feature_bits(model.layout, antigen);
    const std::size_t theta = static_cast<std::size_t>(model.theta_match);

    std::array<std::size_t, 2> votes{};
    std::size_t best_distance = antigen_bits.size() + 1;
    std::array<bool, 2> at_best{};

    for (const auto& rule : model.antibodies) {
        const BitVector rule_bits = model.layout.feature_slice(encode(model.layout, rule));
        const std::size_t dist = vaccine::hamming(rule_bits, antigen_bits);
        if (dist <= theta) ++votes[static_cast<std::size_t>(rule.cls)];
        if (dist < best_distance) {
            best_distance = dist;
            at_best = {false, false};
        }
        if (dist == best_distance) at_best[static_cast<std::size_t>(rule.cls)] = true;
    }

    if (votes[0] != votes[1]) return votes[1] > votes[0] ? Class::attack : Class::normal;
    if (at_best[0] != at_best[1]) return at_best[1] ? Class::attack : Class::normal;
    return model.priors[1] >= model.priors[0] ? Class::attack : Class::normal;
}

Evaluation evaluate(const TrainedModel& model, const std::vector<ProcessedAntigen>& antigens) {
    if (antigens.empty()) throw std::invalid_argument("evaluate: empty test set");

    Evaluation ev;
    for (const auto& antigen : antigens) {
        if (!antigen.cls) throw std::invalid_argument("evaluate: test antigen without class");
        const Class predicted = predict(model, antigen);
        const Class actual = *antigen.cls;
        if (actual == Class::attack)
            (predicted == Class::attack) ? ++ev.counts.tp : ++ev.counts.fn;
        else
            (predicted == Class::attack) ? ++ev.counts.fp : ++ev.counts.tn;
    }
    if (ev.counts.total() != antigens.size())
        throw std::logic_error("evaluate: confusion counts do not add up");
    ev.accuracy = ev.counts.accuracy();
    return ev;
}

CvResult cross_validate(const CvConfig& config,
                        const std::vector<FeatureView>& views,
                        const std::vector<Class>& labels,
                        std::size_t k,
                        std::size_t runs) {
    if (views.size() != labels.size())
        throw std::invalid_argument("cross_validate: views/labels size mismatch");
    if (runs < 1) throw std::invalid_argument("cross_validate: runs must be >= 1");

    CvResult result;
    result.runs.reserve(runs);

    for (std::size_t run = 0; run < runs; ++run) {
        const data::FoldPlan plan = data::make_folds(labels, k, derive_seed(config.seed, {0xcf01, run}));
        plan.validate(labels.size());

        CvRun run_result;
        run_result.folds.reserve(k);
        for (std::size_t fold = 0; fold < k; ++fold) {
            const std::vector<std::size_t> train_idx = plan.train_indices(fold);
            const std::vector<std::size_t> test_idx = plan.test_indices(fold);

            std::vector<FeatureView> train_views;
            train_views.reserve(train_idx.size());
            for (std::size_t i : train_idx) train_views.push_back(views[i]);

            const data::DiscretizerModel disc = data::fit_discretizer(train_views, config.bins);

            std::vector<ProcessedAntigen> train_set;
            train_set.reserve(train_idx.size());
            for (std::size_t i : train_idx) train_set.push_back(disc.apply(views[i], labels[i]));

            TrainConfig tc = config.train;
            tc.engine.seed = derive_seed(config.seed, {0xcf02, run, fold});
            const TrainedModel model = train(tc, train_set, disc.max_codes());

            std::vector<ProcessedAntigen> test_set;
            test_set.reserve(test_idx.size());
            for (std::size_t i : test_idx) test_set.push_back(disc.apply(views[i], labels[i]));

            const Evaluation ev = evaluate(model, test_set);
            if (ev.counts.total() != test_idx.size())
                throw std::logic_error("cross_validate: fold tally mismatch");
            run_result.folds.push_back({ev.counts, ev.accuracy});
        }

        double sum = 0.0;
        for (const auto& f : run_result.folds) sum += f.accuracy;
        run_result.mean_accuracy = sum / static_cast<double>(run_result.folds.size());
        result.runs.push_back(std::move(run_result));
    }

    double sum = 0.0, best = 0.0;
    for (const auto& r : result.runs) {
        sum += r.mean_accuracy;
        best = std::max(best, r.mean_accuracy);
    }
    result.mean_accuracy = sum / static_cast<double>(result.runs.size());
    result.best_accuracy = best;
    return result;
}

}  // namespace qvica::classifier
