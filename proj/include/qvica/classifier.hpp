#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qvica/data.hpp"
#include "qvica/encoding.hpp"
#include "qvica/engine.hpp"

namespace qvica::classifier {

using data::Class;
using data::FeatureView;
using data::ProcessedAntigen;

// One classification rule: a bin code per feature plus the class it votes
// for. Genome form: fixed-width big-endian feature fields followed by one
// class bit (0 = normal, 1 = attack).
struct RuleAntibody {
    std::array<int, data::kNumFeatures> codes{};
    Class cls = Class::normal;
    double fitness = 0.0;
};

// Layout for rule genomes given the discretizer's per-feature largest codes.
GenomeLayout rule_layout(const std::vector<int>& max_codes);

BitVector encode(const GenomeLayout& layout, const RuleAntibody& rule);
RuleAntibody decode(const GenomeLayout& layout, const BitVector& bits);

// Matching parameters. theta_match is the Hamming radius on feature bits
// within which a rule and an antigen match (0 = exact code match); lambda
// weights wrong-class coverage in the fitness.
struct MatchParams {
    int theta_match = 0;
    double lambda = 1.0;
};

// Precomputed training-set structures behind the antibody fitness:
//   fitness = max(0, same - lambda * other) / count(class(antibody))
// where same/other count training antigens of the rule's own/opposite class
// within theta_match on feature bits.
class TrainingContext {
public:
    TrainingContext(const std::vector<ProcessedAntigen>& antigens,
                    GenomeLayout layout,
                    MatchParams params);

    double fitness(const BitVector& genome) const;
    double fitness(const RuleAntibody& rule) const;

    const GenomeLayout& layout() const { return layout_; }
    std::size_t class_count(Class c) const { return class_counts_[static_cast<std::size_t>(c)]; }

    // Distinct training signatures of one class, most frequent first
    // (ties by first appearance).
    std::vector<RuleAntibody> ranked_signatures(Class c) const;

private:
    GenomeLayout layout_;
    MatchParams params_;
    std::array<std::size_t, 2> class_counts_{};
    bool packable_ = false;
    // exact-match fast path (theta_match == 0, genome packs into 64 bits)
    std::unordered_map<std::uint64_t, std::array<std::uint32_t, 2>> signature_counts_;
    std::vector<std::pair<std::uint64_t, std::array<int, data::kNumFeatures>>> signature_order_;
    // generic path
    std::vector<BitVector> antigen_bits_;
    std::vector<Class> antigen_cls_;
};

struct ConfusionCounts {
    std::size_t tp = 0, tn = 0, fp = 0, fn = 0;  // attack = positive class
    std::size_t total() const { return tp + tn + fp + fn; }
    double accuracy() const;  // (TP + TN) / (TP + FP + FN + TN)
};

// Final trained rule set with the training class priors.
struct TrainedModel {
    std::vector<RuleAntibody> antibodies;  // deduplicated, ranked by fitness
    std::array<double, 2> priors{};        // P(normal), P(attack); sum to 1
    int theta_match = 0;
    GenomeLayout layout;
};

struct TrainConfig {
    engine::EngineConfig engine;  // layout and warm start filled by train()
    MatchParams match;
};

// Runs the evolutionary engine with the antibody fitness over the training
// antigens (decision space: the per-feature bin-index box). The initial
// population is seeded from the most frequent training signatures of both
// classes. Throws if only one class is present.
TrainedModel train(const TrainConfig& config,
                   const std::vector<ProcessedAntigen>& antigens,
                   const std::vector<int>& max_codes);

// Majority vote among matching antibodies; on a tie (including zero votes)
// the nearest antibody by feature-bit Hamming decides, and if both classes
// sit at the same distance, the larger training prior wins.
Class predict(const TrainedModel& model, const ProcessedAntigen& antigen);

struct Evaluation {
    ConfusionCounts counts;
    double accuracy = 0.0;
};

// Tally over labeled antigens; throws on an empty or unlabeled test set.
Evaluation evaluate(const TrainedModel& model, const std::vector<ProcessedAntigen>& antigens);

struct CvConfig {
    TrainConfig train;
    int bins = 10;             // EFD bins per continuous feature
    std::uint64_t seed = 1;    // master seed; per-(run, fold) seeds derive from it
};

struct CvFold {
    ConfusionCounts counts;
    double accuracy = 0.0;
};
struct CvRun {
    std::vector<CvFold> folds;
    double mean_accuracy = 0.0;
};
struct CvResult {
    std::vector<CvRun> runs;
    double mean_accuracy = 0.0;  // mean of per-run means
    double best_accuracy = 0.0;  // best per-run mean
};

// `runs` independent k-fold cross-validations on labeled records. Each fold
// fits the discretizer on its training split only, trains, and evaluates on
// the held-out fold.
CvResult cross_validate(const CvConfig& config,
                        const std::vector<FeatureView>& views,
                        const std::vector<Class>& labels,
                        std::size_t k,
                        std::size_t runs);

}  // namespace qvica::classifier
