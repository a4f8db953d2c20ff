#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qvica/classifier.hpp"
#include "qvica/data.hpp"

namespace qvica::report {

using nlohmann::json;

// FNV-1a 64-bit content hash, lowercase hex.
std::string fnv1a64_hex(const void* data, std::size_t size);
std::string fingerprint_file(const std::string& path);

// Embedded in every emitted result file. Identical manifests imply identical
// result contents; wall-clock timing is therefore reported on stdout, never
// inside result files.
struct Manifest {
    std::string tool;
    std::string version;
    std::uint64_t seed = 0;
    std::string dataset_path;
    std::string dataset_fingerprint;
    std::size_t dataset_records = 0;
    json config;  // effective config snapshot

    static Manifest make(std::uint64_t seed, const std::string& dataset_path,
                         const std::string& fingerprint, std::size_t records, json config);
};

json to_json(const Manifest& m);
Manifest manifest_from_json(const json& j);

json to_json(const classifier::ConfusionCounts& c);
json to_json(const classifier::CvResult& cv);
classifier::CvResult cv_from_json(const json& j);

// One experiment-grid cell: a full cross-validation at (population,
// iterations).
struct CellReport {
    int population = 0;
    int iterations = 0;
    classifier::CvResult cv;
};

struct GridReport {
    Manifest manifest;
    std::vector<int> populations;
    std::vector<int> iterations;
    std::vector<CellReport> cells;  // row-major over populations x iterations

    const CellReport& cell(std::size_t pop_idx, std::size_t iter_idx) const;
};

json to_json(const CellReport& cell);
CellReport cell_from_json(const json& j);
json to_json(const GridReport& grid);
GridReport grid_from_json(const json& j);

// Aligned-text accuracy grid (best per-run mean accuracy per cell, percent).
std::string grid_table(const GridReport& grid);
// Per-fold accuracies of one run.
std::string folds_table(const classifier::CvRun& run);
// Per-run mean accuracies of one cross-validation.
std::string runs_table(const classifier::CvResult& cv);

// Serialization of the fitted discretizer (model files, preprocess summary).
json discretizer_to_json(const data::DiscretizerModel& model);
data::DiscretizerModel discretizer_from_json(const json& j);

// Write-then-rename so partial files never appear under the final name.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace qvica::report
