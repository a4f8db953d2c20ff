#include "qvica/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qvica/version.hpp"

namespace qvica::report {

namespace {

std::string format(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string format_int(const char* fmt, long long v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

std::string fnv1a64_hex(const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fingerprint_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for fingerprinting: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string content = ss.str();
    return fnv1a64_hex(content.data(), content.size());
}

Manifest Manifest::make(std::uint64_t seed, const std::string& dataset_path,
                        const std::string& fingerprint, std::size_t records, json config) {
    Manifest m;
    m.tool = kToolName;
    m.version = kToolVersion;
    m.seed = seed;
    m.dataset_path = dataset_path;
    m.dataset_fingerprint = fingerprint;
    m.dataset_records = records;
    m.config = std::move(config);
    return m;
}

json to_json(const Manifest& m) {
    return json{{"tool", m.tool},
                {"version", m.version},
                {"seed", m.seed},
                {"dataset", {{"path", m.dataset_path},
                             {"fnv1a64", m.dataset_fingerprint},
                             {"records", m.dataset_records}}},
                {"config", m.config}};
}

Manifest manifest_from_json(const json& j) {
    Manifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.dataset_path = j.at("dataset").at("path").get<std::string>();
    m.dataset_fingerprint = j.at("dataset").at("fnv1a64").get<std::string>();
    m.dataset_records = j.at("dataset").at("records").get<std::size_t>();
    m.config = j.at("config");
    return m;
}

json to_json(const classifier::ConfusionCounts& c) {
    return json{{"tp", c.tp}, {"tn", c.tn}, {"fp", c.fp}, {"fn", c.fn}};
}

json to_json(const classifier::CvResult& cv) {
    json runs = json::array();
    for (const auto& run : cv.runs) {
        json folds = json::array();
        for (const auto& fold : run.folds)
            folds.push_back(json{{"confusion", to_json(fold.counts)}, {"accuracy", fold.accuracy}});
        runs.push_back(json{{"folds", folds}, {"mean_accuracy", run.mean_accuracy}});
    }
    return json{{"runs", runs},
                {"mean_accuracy", cv.mean_accuracy},
                {"best_accuracy", cv.best_accuracy}};
}

classifier::CvResult cv_from_json(const json& j) {
    classifier::CvResult cv;
    for (const auto& jr : j.at("runs")) {
        classifier::CvRun run;
        for (const auto& jf : jr.at("folds")) {
            classifier::CvFold fold;
            const json& c = jf.at("confusion");
            fold.counts.tp = c.at("tp").get<std::size_t>();
            fold.counts.tn = c.at("tn").get<std::size_t>();
            fold.counts.fp = c.at("fp").get<std::size_t>();
            fold.counts.fn = c.at("fn").get<std::size_t>();
            fold.accuracy = jf.at("accuracy").get<double>();
            run.folds.push_back(fold);
        }
        run.mean_accuracy = jr.at("mean_accuracy").get<double>();
        cv.runs.push_back(std::move(run));
    }
    cv.mean_accuracy = j.at("mean_accuracy").get<double>();
    cv.best_accuracy = j.at("best_accuracy").get<double>();
    return cv;
}

const CellReport& GridReport::cell(std::size_t pop_idx, std::size_t iter_idx) const {
    return cells.at(pop_idx * iterations.size() + iter_idx);
}

json to_json(const CellReport& cell) {
    return json{{"population", cell.population},
                {"iterations", cell.iterations},
                {"cv", to_json(cell.cv)}};
}

CellReport cell_from_json(const json& j) {
    CellReport cell;
    cell.population = j.at("population").get<int>();
    cell.iterations = j.at("iterations").get<int>();
    cell.cv = cv_from_json(j.at("cv"));
    return cell;
}

json to_json(const GridReport& grid) {
    json cells = json::array();
    for (const auto& cell : grid.cells) cells.push_back(to_json(cell));
    return json{{"manifest", to_json(grid.manifest)},
                {"populations", grid.populations},
                {"iterations", grid.iterations},
                {"cells", cells}};
}

GridReport grid_from_json(const json& j) {
    GridReport grid;
    grid.manifest = manifest_from_json(j.at("manifest"));
    grid.populations = j.at("populations").get<std::vector<int>>();
    grid.iterations = j.at("iterations").get<std::vector<int>>();
    for (const auto& jc : j.at("cells")) grid.cells.push_back(cell_from_json(jc));
    if (grid.cells.size() != grid.populations.size() * grid.iterations.size())
        throw std::runtime_error("grid report: cell count does not match the grid shape");
    return grid;
}

std::string grid_table(const GridReport& grid) {
    std::ostringstream out;
    out << "Accuracy (percent, best of " << (grid.cells.empty() ? 0 : grid.cells.front().cv.runs.size())
        << " runs) by population size and iterations\n";
    out << "pop\\iters";
    for (int it : grid.iterations) out << format_int("%8lld", it);
    out << '\n';
    for (std::size_t p = 0; p < grid.populations.size(); ++p) {
        out << format_int("%-9lld", grid.populations[p]);
        for (std::size_t i = 0; i < grid.iterations.size(); ++i)
            out << format("%8.1f", 100.0 * grid.cell(p, i).cv.best_accuracy);
        out << '\n';
    }
    return out.str();
}

std::string folds_table(const classifier::CvRun& run) {
    std::ostringstream out;
    out << "Fold  Accuracy\n";
    for (std::size_t f = 0; f < run.folds.size(); ++f)
        out << format_int("%-6lld", static_cast<long long>(f + 1))
            << format("%.4f", run.folds[f].accuracy) << '\n';
    out << "Mean  " << format("%.4f", run.mean_accuracy) << '\n';
    return out.str();
}

std::string runs_table(const classifier::CvResult& cv) {
    std::ostringstream out;
    out << "Run   Accuracy\n";
    for (std::size_t r = 0; r < cv.runs.size(); ++r)
        out << format_int("%-6lld", static_cast<long long>(r + 1))
            << format("%.1f", 100.0 * cv.runs[r].mean_accuracy) << '\n';
    out << "Mean  " << format("%.1f", 100.0 * cv.mean_accuracy) << '\n';
    out << "Best  " << format("%.1f", 100.0 * cv.best_accuracy) << '\n';
    return out.str();
}

json discretizer_to_json(const data::DiscretizerModel& model) {
    json cuts = json::array();
    for (std::size_t f = 0; f < data::kNumContinuous; ++f) cuts.push_back(model.cuts(f));
    json bins = json::array();
    for (std::size_t f = 0; f < data::kNumFeatures; ++f) bins.push_back(model.bin_count(f));
    return json{{"symbols", model.symbols()}, {"cuts", cuts}, {"bin_counts", bins}};
}

data::DiscretizerModel discretizer_from_json(const json& j) {
    std::array<std::vector<double>, data::kNumContinuous> cuts;
    const json& jc = j.at("cuts");
    for (std::size_t f = 0; f < data::kNumContinuous; ++f)
        cuts[f] = jc.at(f).get<std::vector<double>>();
    return data::DiscretizerModel::from_parts(j.at("symbols").get<std::vector<std::string>>(),
                                              std::move(cuts));
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write file: " + tmp);
        out << contents;
        if (!out) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qvica::report
