#include "qvica/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <zlib.h>

namespace qvica::data {

namespace {

constexpr std::size_t kFieldCount = 42;  // 41 features + label

bool is_symbolic_column(std::size_t col) {
    return col == 1 || col == 2 || col == 3;  // protocol_type, service, flag
}

double parse_numeric(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError(line_no, "unparsable numeric field '" + std::string(field) + "'");
    return value;
}

RawRecord parse_line(std::string_view line, std::size_t line_no) {
    std::array<std::string_view, kFieldCount> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        std::string_view field =
            (comma == std::string_view::npos) ? line.substr(start) : line.substr(start, comma - start);
        if (count >= kFieldCount)
            throw ParseError(line_no, "too many fields");
        fields[count++] = field;
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (count != kFieldCount)
        throw ParseError(line_no, "expected 42 comma-separated fields, found " + std::to_string(count));

    RawRecord rec;
    rec.protocol_type = std::string(fields[1]);
    rec.service = std::string(fields[2]);
    rec.flag = std::string(fields[3]);
    for (std::size_t col = 0; col < 41; ++col)
        if (!is_symbolic_column(col)) rec.numeric[col] = parse_numeric(fields[col], line_no);

    std::string_view label = fields[41];
    if (!label.empty() && label.back() == '.') label.remove_suffix(1);
    if (label.empty()) throw ParseError(line_no, "empty label");
    rec.label = std::string(label);
    rec.cls = class_of(rec.label);
    return rec;
}

}  // namespace

Class class_of(const std::string& label) {
    return label == "normal" ? Class::normal : Class::attack;
}

const char* class_name(Class c) { return c == Class::normal ? "normal" : "attack"; }

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<RawRecord> parse_kdd(std::istream& in) {
    std::vector<RawRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        records.push_back(parse_line(line, line_no));
    }
    return records;
}

std::vector<RawRecord> parse_kdd_file(const std::string& path) {
    // gzopen reads both gzip and plain files
    gzFile gz = gzopen(path.c_str(), "rb");
    if (gz == nullptr) throw std::runtime_error("cannot open input file: " + path);

    std::string content;
    char buffer[1 << 16];
    int n = 0;
    while ((n = gzread(gz, buffer, sizeof(buffer))) > 0) content.append(buffer, static_cast<std::size_t>(n));
    const bool ok = (n == 0);
    gzclose(gz);
    if (!ok) throw std::runtime_error("error while reading input file: " + path);

    std::istringstream in(content);
    return parse_kdd(in);
}

FeatureView select_features(const RawRecord& record) {
    FeatureView view;
    view.service = record.service;
    view.cont[0] = record.numeric[kColSrcBytes];
    view.cont[1] = record.numeric[kColDstBytes];
    view.cont[2] = record.numeric[kColRerrorRate];
    view.cont[3] = record.numeric[kColDstHostSrvCount];
    view.cont[4] = record.numeric[kColDstHostDiffSrvRate];
    return view;
}

int DiscretizerModel::service_code(const std::string& symbol) const {
    auto it = symbol_code_.find(symbol);
    return it == symbol_code_.end() ? static_cast<int>(symbols_.size()) : it->second;
}

int DiscretizerModel::continuous_code(std::size_t f, double value) const {
    const auto& cuts = cuts_.at(f);
    // first cut >= value; a value equal to a cut falls into the lower bin
    return static_cast<int>(std::lower_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
}

int DiscretizerModel::bin_count(std::size_t f) const {
    if (f == 0) return static_cast<int>(symbols_.size());
    return static_cast<int>(cuts_.at(f - 1).size()) + 1;
}

std::vector<int> DiscretizerModel::max_codes() const {
    std::vector<int> mc(kNumFeatures);
    for (std::size_t f = 0; f < kNumFeatures; ++f) mc[f] = max_code(f);
    return mc;
}

DiscretizerModel DiscretizerModel::from_parts(std::vector<std::string> symbols,
                                              std::array<std::vector<double>, kNumContinuous> cuts) {
    DiscretizerModel model;
    model.symbols_ = std::move(symbols);
    for (std::size_t i = 0; i < model.symbols_.size(); ++i)
        if (!model.symbol_code_.emplace(model.symbols_[i], static_cast<int>(i)).second)
            throw std::invalid_argument("DiscretizerModel: duplicate symbol");
    for (std::size_t f = 0; f < kNumContinuous; ++f) {
        if (!std::is_sorted(cuts[f].begin(), cuts[f].end()) ||
            std::adjacent_find(cuts[f].begin(), cuts[f].end()) != cuts[f].end())
            throw std::invalid_argument("DiscretizerModel: cut points must be strictly increasing");
        model.cuts_[f] = std::move(cuts[f]);
    }
    return model;
}

ProcessedAntigen DiscretizerModel::apply(const FeatureView& view, std::optional<Class> cls) const {
    ProcessedAntigen antigen;
    antigen.codes[0] = service_code(view.service);
    for (std::size_t f = 0; f < kNumContinuous; ++f)
        antigen.codes[f + 1] = continuous_code(f, view.cont[f]);
    antigen.cls = cls;
    return antigen;
}

DiscretizerModel fit_discretizer(const std::vector<FeatureView>& training,
                                 const std::array<int, kNumContinuous>& bins) {
    if (training.empty()) throw std::invalid_argument("fit_discretizer: empty training set");
    for (int b : bins)
        if (b < 1) throw std::invalid_argument("fit_discretizer: bin count must be >= 1");

    DiscretizerModel model;
    for (const auto& view : training) {
        if (model.symbol_code_.emplace(view.service, static_cast<int>(model.symbols_.size())).second)
            model.symbols_.push_back(view.service);
    }

    std::vector<double> values(training.size());
    for (std::size_t f = 0; f < kNumContinuous; ++f) {
        for (std::size_t i = 0; i < training.size(); ++i) values[i] = training[i].cont[f];
        std::sort(values.begin(), values.end());

        std::vector<double>& cuts = model.cuts_[f];
        cuts.clear();
        const std::size_t n = values.size();
        const std::size_t b = static_cast<std::size_t>(bins[f]);
        for (std::size_t k = 1; k < b; ++k) {
            const std::size_t pos = k * n / b;
            if (pos == 0 || pos >= n) continue;
            // a cut between equal values separates nothing; dropping it keeps
            // all ties in one bin and the cut list strictly increasing
            if (!(values[pos - 1] < values[pos])) continue;
            cuts.push_back(0.5 * (values[pos - 1] + values[pos]));
        }
    }
    return model;
}

DiscretizerModel fit_discretizer(const std::vector<FeatureView>& training, int bins_per_feature) {
    std::array<int, kNumContinuous> bins;
    bins.fill(bins_per_feature);
    return fit_discretizer(training, bins);
}

std::vector<std::size_t> stratified_sample(const std::vector<Class>& labels,
                                           std::size_t size,
                                           std::uint64_t seed) {
    if (size > labels.size()) throw std::invalid_argument("stratified_sample: size exceeds record count");

    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[static_cast<std::size_t>(labels[i])].push_back(i);

    // largest-remainder allocation keeps every class within one record of
    // its exact proportion
    const double total = static_cast<double>(labels.size());
    std::array<std::size_t, 2> take{};
    std::array<double, 2> frac{};
    std::size_t assigned = 0;
    for (std::size_t c = 0; c < 2; ++c) {
        const double exact = static_cast<double>(size) * static_cast<double>(by_class[c].size()) / total;
        take[c] = static_cast<std::size_t>(exact);
        frac[c] = exact - static_cast<double>(take[c]);
        assigned += take[c];
    }
    while (assigned < size) {
        std::size_t c = (frac[0] >= frac[1]) ? 0 : 1;
        if (take[c] >= by_class[c].size()) c = 1 - c;
        ++take[c];
        frac[c] = -1.0;
        ++assigned;
    }

    std::vector<std::size_t> picked;
    picked.reserve(size);
    for (std::size_t c = 0; c < 2; ++c) {
        Rng rng = make_rng(derive_seed(seed, {0x5a17, c}));
        shuffle(by_class[c], rng);
        picked.insert(picked.end(), by_class[c].begin(), by_class[c].begin() + static_cast<std::ptrdiff_t>(take[c]));
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
    std::vector<std::size_t> train;
    for (std::size_t f = 0; f < folds.size(); ++f)
        if (f != fold) train.insert(train.end(), folds[f].begin(), folds[f].end());
    std::sort(train.begin(), train.end());
    return train;
}

void FoldPlan::validate(std::size_t n) const {
    std::vector<std::uint8_t> seen(n, 0);
    std::size_t lo = n, hi = 0, covered = 0;
    for (const auto& fold : folds) {
        lo = std::min(lo, fold.size());
        hi = std::max(hi, fold.size());
        for (std::size_t idx : fold) {
            if (idx >= n || seen[idx]) throw std::logic_error("FoldPlan: folds overlap or exceed range");
            seen[idx] = 1;
            ++covered;
        }
    }
    if (covered != n) throw std::logic_error("FoldPlan: folds do not cover the dataset");
    if (hi - lo > 1) throw std::logic_error("FoldPlan: fold sizes differ by more than one");
}

FoldPlan make_folds(const std::vector<Class>& labels, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("make_folds: k must be >= 2");
    if (labels.size() < k) throw std::invalid_argument("make_folds: fewer records than folds");

    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i)
        by_class[static_cast<std::size_t>(labels[i])].push_back(i);

    // per-class shuffles concatenated, then dealt round-robin: both the
    // overall and the per-class fold sizes differ by at most one
    std::vector<std::size_t> sequence;
    sequence.reserve(labels.size());
    for (std::size_t c = 0; c < 2; ++c) {
        Rng rng = make_rng(derive_seed(seed, {0xf01d, c}));
        shuffle(by_class[c], rng);
        sequence.insert(sequence.end(), by_class[c].begin(), by_class[c].end());
    }

    FoldPlan plan;
    plan.folds.assign(k, {});
    for (std::size_t i = 0; i < sequence.size(); ++i) plan.folds[i % k].push_back(sequence[i]);
    for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
    plan.validate(labels.size());
    return plan;
}

void write_antigens(std::ostream& out, const std::vector<ProcessedAntigen>& antigens) {
    for (const auto& a : antigens) {
        for (std::size_t f = 0; f < kNumFeatures; ++f) {
            if (f) out << ' ';
            out << a.codes[f];
        }
        if (a.cls) out << ' ' << class_name(*a.cls);
        out << '\n';
    }
}

std::vector<ProcessedAntigen> read_antigens(std::istream& in) {
    std::vector<ProcessedAntigen> antigens;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        ProcessedAntigen a;
        for (std::size_t f = 0; f < kNumFeatures; ++f)
            if (!(ls >> a.codes[f])) throw ParseError(line_no, "expected six integer codes");
        std::string cls;
        if (ls >> cls) {
            if (cls == "normal") a.cls = Class::normal;
            else if (cls == "attack") a.cls = Class::attack;
            else throw ParseError(line_no, "unknown class token '" + cls + "'");
        }
        antigens.push_back(a);
    }
    return antigens;
}

}  // namespace qvica::data
