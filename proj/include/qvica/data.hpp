#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "qvica/rng.hpp"

namespace qvica::data {

enum class Class : std::uint8_t { normal = 0, attack = 1 };

// "normal" maps to Class::normal, every attack subtype to Class::attack.
Class class_of(const std::string& label);
const char* class_name(Class c);

// One KDD-Cup-99 connection record: 41 features plus a label. The three
// symbolic columns (protocol_type, service, flag) are kept as strings;
// every numeric column is parsed into `numeric` at its canonical position.
struct RawRecord {
    std::string protocol_type;
    std::string service;
    std::string flag;
    std::array<double, 41> numeric{};  // symbolic slots stay 0
    std::string label;                 // trailing period stripped
    Class cls = Class::normal;
};

// canonical KDD column positions of the six selected features
constexpr int kColService = 2;
constexpr int kColSrcBytes = 4;
constexpr int kColDstBytes = 5;
constexpr int kColRerrorRate = 26;
constexpr int kColDstHostSrvCount = 32;
constexpr int kColDstHostDiffSrvRate = 34;
constexpr std::size_t kNumFeatures = 6;       // 1 symbolic + 5 continuous
constexpr std::size_t kNumContinuous = 5;

// The six selected features, fixed order: service, src_bytes, dst_bytes,
// rerror_rate, dst_host_srv_count, dst_host_diff_srv_rate.
struct FeatureView {
    std::string service;
    std::array<double, kNumContinuous> cont{};
};

// A record after discretization: one bin code per feature, plus the class
// when known (training antigens carry one, test antigens may not).
struct ProcessedAntigen {
    std::array<int, kNumFeatures> codes{};
    std::optional<Class> cls;
};

// Raised on malformed input; line numbers are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Comma-separated text, 41 feature fields + label per line. Throws
// ParseError on a wrong field count or an unparsable numeric field.
std::vector<RawRecord> parse_kdd(std::istream& in);

// File variant; transparently decompresses gzip input.
std::vector<RawRecord> parse_kdd_file(const std::string& path);

FeatureView select_features(const RawRecord& record);

// Per-feature symbol tables (service) and EFD cut points (continuous
// features) fitted on training data.
class DiscretizerModel {
public:
    // Code for the symbolic feature; unseen symbols get the reserved
    // unknown code (== symbol count).
    int service_code(const std::string& symbol) const;
    // Bin for continuous feature f (0-based among the five); a value equal
    // to a cut point falls into the lower bin.
    int continuous_code(std::size_t f, double value) const;

    // Regular bin/symbol count B_f of feature f (0 = service).
    int bin_count(std::size_t f) const;
    // Largest valid code of feature f; the +1 slot covers the unknown
    // bucket, so max_code == B_f.
    int max_code(std::size_t f) const { return bin_count(f); }
    std::vector<int> max_codes() const;

    ProcessedAntigen apply(const FeatureView& view, std::optional<Class> cls) const;

    const std::vector<std::string>& symbols() const { return symbols_; }
    const std::vector<double>& cuts(std::size_t f) const { return cuts_.at(f); }

    // Reassembly from serialized parts; cut lists must be strictly increasing.
    static DiscretizerModel from_parts(std::vector<std::string> symbols,
                                       std::array<std::vector<double>, kNumContinuous> cuts);

    friend DiscretizerModel fit_discretizer(const std::vector<FeatureView>& training,
                                            const std::array<int, kNumContinuous>& bins);

private:
    std::vector<std::string> symbols_;  // code = first-appearance index
    std::unordered_map<std::string, int> symbol_code_;
    std::array<std::vector<double>, kNumContinuous> cuts_;  // strictly increasing
};

// Equal-frequency cut points per continuous feature (cuts that would not
// separate values are dropped, reducing effective bins); symbol codes by
// first appearance. Throws on an empty training set.
DiscretizerModel fit_discretizer(const std::vector<FeatureView>& training,
                                 const std::array<int, kNumContinuous>& bins);
DiscretizerModel fit_discretizer(const std::vector<FeatureView>& training, int bins_per_feature);

// Class-stratified subset of `size` indices (ascending order); class
// proportions preserved within one record.
std::vector<std::size_t> stratified_sample(const std::vector<Class>& labels,
                                           std::size_t size,
                                           std::uint64_t seed);

// k disjoint index sets covering 0..n-1, sizes differing by at most one,
// stratified by class.
struct FoldPlan {
    std::vector<std::vector<std::size_t>> folds;

    std::vector<std::size_t> test_indices(std::size_t fold) const { return folds.at(fold); }
    std::vector<std::size_t> train_indices(std::size_t fold) const;
    // Throws std::logic_error unless folds partition 0..n-1 with sizes
    // differing by <= 1.
    void validate(std::size_t n) const;
};

FoldPlan make_folds(const std::vector<Class>& labels, std::size_t k, std::uint64_t seed);

// processed-antigen file: one antigen per line, six integer codes followed
// by an optional class token
void write_antigens(std::ostream& out, const std::vector<ProcessedAntigen>& antigens);
std::vector<ProcessedAntigen> read_antigens(std::istream& in);

}  // namespace qvica::data
