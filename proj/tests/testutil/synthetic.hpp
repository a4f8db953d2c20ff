#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qvica/data.hpp"

namespace testutil {

struct RawDataset {
    std::vector<qvica::data::FeatureView> views;
    std::vector<qvica::data::Class> labels;
};

// One well-formed KDD record line (42 comma-separated fields). The six
// selected feature columns are set from the arguments; the rest take fixed
// benign values.
std::string kdd_line(const std::string& service, double src_bytes, double dst_bytes,
                     double rerror_rate, double dst_host_srv_count,
                     double dst_host_diff_srv_rate, const std::string& label);

// Two-class dataset whose classes occupy disjoint code signatures after
// equal-frequency discretization: four constant-valued prototypes per class,
// all feature values distinct across the eight prototypes. An exact-match
// table lookup classifies it perfectly.
RawDataset separable_dataset(std::size_t count);

// Deterministic KDD-format text resembling the 10% corpus: a handful of
// attack/normal connection archetypes with jittered continuous features and
// a small deliberately ambiguous region, so learnable but not perfectly
// separable.
std::string synthetic_kdd_text(std::size_t records, std::uint64_t seed);

}  // namespace testutil
