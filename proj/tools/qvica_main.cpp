// Batch front end: preprocessing, training, evaluation, cross-validation,
// experiment grids, and report emission for the QVICA-with-EDA classifier.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qvica/classifier.hpp"
#include "qvica/data.hpp"
#include "qvica/report.hpp"
#include "qvica/version.hpp"

namespace {

using nlohmann::json;
using namespace qvica;

constexpr const char* kEnvPrefix = "QVICA_";

struct AlgoOptions {
    int population = 10;
    int iterations = 20;
    int clone_budget = 0;  // 0 = 5 * population
    double mutation_angle = 0.05 * 3.141592653589793;
    double vaccination_rate = 0.5;
    int grid_divisions = 2;
    int vaccine_bits = 4;
    int bins = 10;
    int theta_match = 0;
    double lambda = 1.0;
    std::uint64_t seed = 1;
};

struct OptionRegistry {
    std::string config_path;
    std::vector<std::pair<CLI::Option*, std::function<void(const std::string&)>>> setters;
    std::vector<std::string> keys;
};

template <typename T>
void register_option(OptionRegistry& reg, CLI::App* cmd, const std::string& name,
                     const std::string& aliases, T& value, const std::string& help) {
    std::string spec = "--" + name + (aliases.empty() ? "" : "," + aliases);
    CLI::Option* opt = cmd->add_option(spec, value, help);
    std::string env = kEnvPrefix;
    for (char c : name) env += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    opt->envname(env);
    reg.keys.push_back(name);
    reg.setters.emplace_back(opt, [&value](const std::string& text) {
        std::istringstream ss(text);
        ss >> value;
        if (ss.fail()) throw std::runtime_error("bad config value '" + text + "'");
    });
}

OptionRegistry add_algo_options(CLI::App* cmd, AlgoOptions& o, bool with_pop_iters = true) {
    OptionRegistry reg;
    cmd->add_option("--config", reg.config_path, "key = value config file; flags override")
        ->envname(std::string(kEnvPrefix) + "CONFIG");
    if (with_pop_iters) {
        register_option(reg, cmd, "population", "--pop,-p", o.population,
                        "antibody population size");
        register_option(reg, cmd, "iterations", "--iters,-t", o.iterations, "engine iterations");
    }
    register_option(reg, cmd, "clone_budget", "", o.clone_budget,
                    "total clone budget Nc (0 = 5 * population)");
    register_option(reg, cmd, "mutation_angle", "", o.mutation_angle,
                    "rotation step in radians, in (0, pi/2)");
    register_option(reg, cmd, "vaccination_rate", "", o.vaccination_rate,
                    "fraction of antibodies vaccinated per iteration");
    register_option(reg, cmd, "grid_divisions", "", o.grid_divisions,
                    "vaccine grid divisions per dimension");
    register_option(reg, cmd, "vaccine_bits", "", o.vaccine_bits, "vaccine bits per dimension");
    register_option(reg, cmd, "bins", "", o.bins, "EFD bins per continuous feature");
    register_option(reg, cmd, "theta_match", "", o.theta_match,
                    "feature-bit Hamming radius for rule matching");
    register_option(reg, cmd, "lambda", "", o.lambda, "wrong-class coverage penalty weight");
    register_option(reg, cmd, "seed", "", o.seed, "master seed");
    return reg;
}

// key = value lines, '#' comments; applied only where neither flag nor env
// var set the option
void apply_config_file(const OptionRegistry& reg) {
    if (reg.config_path.empty()) return;
    std::ifstream in(reg.config_path);
    if (!in) throw std::runtime_error("cannot open config file: " + reg.config_path);

    auto trim = [](std::string s) {
        const char* ws = " \t\r";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(reg.config_path + ":" + std::to_string(line_no) +
                                     ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        bool known = false;
        for (std::size_t i = 0; i < reg.keys.size(); ++i) {
            if (reg.keys[i] != key) continue;
            known = true;
            if (reg.setters[i].first->count() == 0) reg.setters[i].second(value);
        }
        if (!known)
            throw std::runtime_error(reg.config_path + ":" + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
    }
}

json algo_config_json(const AlgoOptions& o) {
    return json{{"population", o.population},
                {"iterations", o.iterations},
                {"clone_budget", o.clone_budget},
                {"mutation_angle", o.mutation_angle},
                {"vaccination_rate", o.vaccination_rate},
                {"grid_divisions", o.grid_divisions},
                {"vaccine_bits", o.vaccine_bits},
                {"bins", o.bins},
                {"theta_match", o.theta_match},
                {"lambda", o.lambda}};
}

classifier::TrainConfig make_train_config(const AlgoOptions& o) {
    classifier::TrainConfig tc;
    tc.engine.population_size = o.population;
    tc.engine.iterations = o.iterations;
    tc.engine.clone_budget = o.clone_budget;
    tc.engine.mutation_angle = o.mutation_angle;
    tc.engine.vaccination_rate = o.vaccination_rate;
    tc.engine.grid_divisions = o.grid_divisions;
    tc.engine.vaccine_bits_per_dim = o.vaccine_bits;
    tc.engine.seed = o.seed;
    tc.match.theta_match = o.theta_match;
    tc.match.lambda = o.lambda;
    return tc;
}

struct Dataset {
    std::vector<data::FeatureView> views;
    std::vector<data::Class> labels;
    std::string path;
    std::string fingerprint;
    std::size_t total_records = 0;
};

Dataset load_dataset(const std::string& path, std::size_t sample, std::uint64_t seed) {
    Dataset ds;
    ds.path = path;
    ds.fingerprint = report::fingerprint_file(path);

    const std::vector<data::RawRecord> records = data::parse_kdd_file(path);
    ds.total_records = records.size();

    std::vector<data::Class> labels(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) labels[i] = records[i].cls;

    std::vector<std::size_t> keep;
    if (sample > 0 && sample < records.size())
        keep = data::stratified_sample(labels, sample, derive_seed(seed, {0x5a3d}));
    else {
        keep.resize(records.size());
        for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    }

    ds.views.reserve(keep.size());
    ds.labels.reserve(keep.size());
    for (std::size_t i : keep) {
        ds.views.push_back(data::select_features(records[i]));
        ds.labels.push_back(labels[i]);
    }
    return ds;
}

std::array<std::size_t, 2> class_counts(const std::vector<data::Class>& labels) {
    std::array<std::size_t, 2> counts{};
    for (data::Class c : labels) ++counts[static_cast<std::size_t>(c)];
    return counts;
}

json model_to_json(const classifier::TrainedModel& model, const data::DiscretizerModel& disc,
                   const report::Manifest& manifest) {
    json antibodies = json::array();
    for (const auto& rule : model.antibodies)
        antibodies.push_back(json{{"codes", rule.codes},
                                  {"class", data::class_name(rule.cls)},
                                  {"fitness", rule.fitness}});
    std::vector<int> max_codes;
    for (std::size_t f = 0; f < data::kNumFeatures; ++f) max_codes.push_back(model.layout.max_code(f));
    return json{{"manifest", report::to_json(manifest)},
                {"discretizer", report::discretizer_to_json(disc)},
                {"max_codes", max_codes},
                {"theta_match", model.theta_match},
                {"priors", model.priors},
                {"antibodies", antibodies}};
}

std::pair<classifier::TrainedModel, data::DiscretizerModel> model_from_json(const json& j) {
    classifier::TrainedModel model;
    model.layout = classifier::rule_layout(j.at("max_codes").get<std::vector<int>>());
    model.theta_match = j.at("theta_match").get<int>();
    model.priors = j.at("priors").get<std::array<double, 2>>();
    for (const auto& ja : j.at("antibodies")) {
        classifier::RuleAntibody rule;
        rule.codes = ja.at("codes").get<std::array<int, data::kNumFeatures>>();
        rule.cls = data::class_of(ja.at("class").get<std::string>());
        rule.fitness = ja.at("fitness").get<double>();
        model.antibodies.push_back(std::move(rule));
    }
    if (model.antibodies.empty()) throw std::runtime_error("model file holds no antibodies");
    return {std::move(model), report::discretizer_from_json(j.at("discretizer"))};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw std::runtime_error(std::string("bad ") + what + " list entry: '" + item + "'");
        }
    }
    if (values.empty()) throw std::runtime_error(std::string("empty ") + what + " list");
    return values;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- subcommand actions ----

int cmd_preprocess(const std::string& input, const std::string& output,
                   const std::string& summary_path, const AlgoOptions& algo) {
    const Dataset ds = load_dataset(input, 0, algo.seed);
    if (ds.views.empty()) throw std::runtime_error("input holds no records");

    const data::DiscretizerModel disc = data::fit_discretizer(ds.views, algo.bins);
    std::vector<data::ProcessedAntigen> antigens;
    antigens.reserve(ds.views.size());
    for (std::size_t i = 0; i < ds.views.size(); ++i)
        antigens.push_back(disc.apply(ds.views[i], ds.labels[i]));

    std::ostringstream antigen_text;
    data::write_antigens(antigen_text, antigens);
    report::write_file_atomic(output, antigen_text.str());

    const report::Manifest manifest = report::Manifest::make(
        algo.seed, ds.path, ds.fingerprint, ds.views.size(), json{{"bins", algo.bins}});
    json summary{{"manifest", report::to_json(manifest)},
                 {"discretizer", report::discretizer_to_json(disc)},
                 {"classes",
                  {{"normal", class_counts(ds.labels)[0]}, {"attack", class_counts(ds.labels)[1]}}}};
    const std::string spath = summary_path.empty() ? output + ".summary.json" : summary_path;
    report::write_file_atomic(spath, summary.dump(2) + "\n");

    const auto counts = class_counts(ds.labels);
    std::cout << "records: " << ds.views.size() << " (normal " << counts[0] << ", attack "
              << counts[1] << ")\n";
    std::cout << "antigens written to " << output << "\n";
    std::cout << "summary written to " << spath << "\n";
    return 0;
}

int cmd_train(const std::string& input, const std::string& output, const AlgoOptions& algo) {
    const auto start = std::chrono::steady_clock::now();
    const Dataset ds = load_dataset(input, 0, algo.seed);

    const data::DiscretizerModel disc = data::fit_discretizer(ds.views, algo.bins);
    std::vector<data::ProcessedAntigen> antigens;
    antigens.reserve(ds.views.size());
    for (std::size_t i = 0; i < ds.views.size(); ++i)
        antigens.push_back(disc.apply(ds.views[i], ds.labels[i]));

    const classifier::TrainedModel model =
        classifier::train(make_train_config(algo), antigens, disc.max_codes());
    const classifier::Evaluation training_eval = classifier::evaluate(model, antigens);

    const report::Manifest manifest = report::Manifest::make(
        algo.seed, ds.path, ds.fingerprint, ds.views.size(), algo_config_json(algo));
    report::write_file_atomic(output, model_to_json(model, disc, manifest).dump(2) + "\n");

    std::cout << "trained " << model.antibodies.size() << " antibodies on " << ds.views.size()
              << " records\n";
    std::cout << "training accuracy: " << training_eval.accuracy << "\n";
    std::cout << "model written to " << output << "\n";
    std::cout << "elapsed: " << seconds_since(start) << " s\n";
    return 0;
}

int cmd_evaluate(const std::string& input, const std::string& model_path,
                 const std::string& output, const std::string& fmt, const AlgoOptions& algo) {
    auto [model, disc] = model_from_json(load_json_file(model_path));
    const Dataset ds = load_dataset(input, 0, algo.seed);

    std::vector<data::ProcessedAntigen> antigens;
    antigens.reserve(ds.views.size());
    for (std::size_t i = 0; i < ds.views.size(); ++i)
        antigens.push_back(disc.apply(ds.views[i], ds.labels[i]));

    const classifier::Evaluation ev = classifier::evaluate(model, antigens);

    std::string text;
    if (fmt == "json") {
        const report::Manifest manifest = report::Manifest::make(
            algo.seed, ds.path, ds.fingerprint, ds.views.size(), json{{"model", model_path}});
        json j{{"manifest", report::to_json(manifest)},
               {"confusion", report::to_json(ev.counts)},
               {"accuracy", ev.accuracy}};
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream ss;
        ss << "records: " << antigens.size() << "\n"
           << "TP " << ev.counts.tp << "  TN " << ev.counts.tn << "  FP " << ev.counts.fp
           << "  FN " << ev.counts.fn << "\n";
        char acc[32];
        std::snprintf(acc, sizeof(acc), "%.4f", ev.accuracy);
        ss << "accuracy " << acc << "\n";
        text = ss.str();
    }
    std::cout << text;
    if (!output.empty()) report::write_file_atomic(output, text);
    return 0;
}

int cmd_cv(const std::string& input, std::size_t folds, std::size_t runs, std::size_t sample,
           const std::string& output, const std::string& fmt, const AlgoOptions& algo) {
    const auto start = std::chrono::steady_clock::now();
    const Dataset ds = load_dataset(input, sample, algo.seed);

    classifier::CvConfig cv_config;
    cv_config.train = make_train_config(algo);
    cv_config.bins = algo.bins;
    cv_config.seed = algo.seed;

    const classifier::CvResult cv =
        classifier::cross_validate(cv_config, ds.views, ds.labels, folds, runs);

    json config = algo_config_json(algo);
    config["folds"] = folds;
    config["runs"] = runs;
    config["sample"] = sample;
    const report::Manifest manifest =
        report::Manifest::make(algo.seed, ds.path, ds.fingerprint, ds.views.size(), config);

    std::size_t best_run = 0;
    for (std::size_t r = 1; r < cv.runs.size(); ++r)
        if (cv.runs[r].mean_accuracy > cv.runs[best_run].mean_accuracy) best_run = r;

    if (fmt == "json") {
        json j{{"manifest", report::to_json(manifest)}, {"cv", report::to_json(cv)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << report::runs_table(cv) << "\n"
                  << "Best run fold detail:\n"
                  << report::folds_table(cv.runs[best_run]);
    }
    if (!output.empty()) {
        json j{{"manifest", report::to_json(manifest)}, {"cv", report::to_json(cv)}};
        report::write_file_atomic(output, j.dump(2) + "\n");
        std::cout << "report written to " << output << "\n";
    }
    std::cout << "elapsed: " << seconds_since(start) << " s\n";
    return 0;
}

int cmd_experiment(const std::string& input, const std::string& out_dir,
                   const std::string& pop_list, const std::string& iter_list, std::size_t folds,
                   std::size_t runs, std::size_t sample, unsigned jobs, const AlgoOptions& algo) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<int> pops = parse_int_list(pop_list, "population");
    const std::vector<int> iters = parse_int_list(iter_list, "iterations");

    const Dataset ds = load_dataset(input, sample, algo.seed);
    std::filesystem::create_directories(out_dir);

    const std::size_t cell_count = pops.size() * iters.size();
    std::vector<report::CellReport> cells(cell_count);

    json base_config = algo_config_json(algo);
    base_config["folds"] = folds;
    base_config["runs"] = runs;
    base_config["sample"] = sample;
    base_config["seed_derivation"] = "mix64 chain over (seed, 0xce11, cell), then (run), (fold)";

    std::mutex io_mutex;
    std::atomic<std::size_t> next_cell{0};
    std::string worker_error;

    auto compute_cell = [&](std::size_t cell, int pop, int iter) {
        AlgoOptions cell_algo = algo;
        cell_algo.population = pop;
        cell_algo.iterations = iter;

        classifier::CvConfig cv_config;
        cv_config.train = make_train_config(cell_algo);
        cv_config.bins = cell_algo.bins;
        cv_config.seed = derive_seed(algo.seed, {0xce11, cell});
        cv_config.train.engine.seed = cv_config.seed;

        report::CellReport result;
        result.population = pop;
        result.iterations = iter;
        result.cv = classifier::cross_validate(cv_config, ds.views, ds.labels, folds, runs);
        cells[cell] = result;

        json cell_config = base_config;
        cell_config["population"] = pop;
        cell_config["iterations"] = iter;
        cell_config["cell_index"] = cell;
        const report::Manifest manifest = report::Manifest::make(
            algo.seed, ds.path, ds.fingerprint, ds.views.size(), cell_config);
        json j{{"manifest", report::to_json(manifest)}, {"cell", report::to_json(result)}};

        char name[64];
        std::snprintf(name, sizeof(name), "cell_pop%d_iters%d.json", pop, iter);
        const std::string path = (std::filesystem::path(out_dir) / name).string();
        report::write_file_atomic(path, j.dump(2) + "\n");
        return result;
    };

    auto worker = [&]() {
        while (true) {
            const std::size_t cell = next_cell.fetch_add(1);
            if (cell >= cell_count) return;
            {
                std::lock_guard<std::mutex> lock(io_mutex);
                if (!worker_error.empty()) return;
            }
            const int pop = pops[cell / iters.size()];
            const int iter = iters[cell % iters.size()];
            const auto cell_start = std::chrono::steady_clock::now();
            try {
                const report::CellReport result = compute_cell(cell, pop, iter);
                std::lock_guard<std::mutex> lock(io_mutex);
                char line[160];
                std::snprintf(line, sizeof(line),
                              "cell pop=%d iters=%d: best %.4f mean %.4f (%.1f s)", pop, iter,
                              result.cv.best_accuracy, result.cv.mean_accuracy,
                              seconds_since(cell_start));
                std::cout << line << "\n" << std::flush;
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(io_mutex);
                if (worker_error.empty()) worker_error = e.what();
                return;
            }
        }
    };

    const unsigned thread_count =
        std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cell_count)));
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < thread_count; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (!worker_error.empty()) throw std::runtime_error(worker_error);

    report::GridReport grid;
    grid.manifest =
        report::Manifest::make(algo.seed, ds.path, ds.fingerprint, ds.views.size(), base_config);
    grid.populations = pops;
    grid.iterations = iters;
    grid.cells = std::move(cells);

    const std::string grid_json_path = (std::filesystem::path(out_dir) / "grid.json").string();
    const std::string grid_txt_path = (std::filesystem::path(out_dir) / "grid.txt").string();
    report::write_file_atomic(grid_json_path, report::to_json(grid).dump(2) + "\n");
    report::write_file_atomic(grid_txt_path, report::grid_table(grid));

    std::cout << "\n" << report::grid_table(grid);
    std::cout << "grid report written to " << grid_json_path << "\n";
    std::cout << "total elapsed: " << seconds_since(start) << " s\n";
    return 0;
}

int cmd_report(const std::string& input, const std::string& fmt) {
    const json j = load_json_file(input);
    if (fmt == "json") {
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    if (j.contains("cells") || (j.contains("manifest") && j.contains("populations"))) {
        const report::GridReport grid = report::grid_from_json(j);
        std::cout << report::grid_table(grid);
    } else if (j.contains("cv")) {
        const classifier::CvResult cv = report::cv_from_json(j.at("cv"));
        std::cout << report::runs_table(cv);
    } else if (j.contains("cell")) {
        const report::CellReport cell = report::cell_from_json(j.at("cell"));
        std::cout << report::runs_table(cell.cv);
    } else {
        throw std::runtime_error("unrecognized report file: " + input);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QVICA-with-EDA intrusion-detection classifier"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    // preprocess
    auto* preprocess = app.add_subcommand("preprocess", "discretize KDD records into antigens");
    std::string pre_input, pre_output, pre_summary;
    AlgoOptions pre_algo;
    preprocess->add_option("--input,-i", pre_input, "KDD-format input (plain or gzip)")->required();
    preprocess->add_option("--output,-o", pre_output, "antigen file to write")->required();
    preprocess->add_option("--summary", pre_summary, "discretizer summary path");
    OptionRegistry pre_reg = add_algo_options(preprocess, pre_algo);

    // train
    auto* train = app.add_subcommand("train", "train a rule model on labeled KDD records");
    std::string train_input, train_output;
    AlgoOptions train_algo;
    train->add_option("--input,-i", train_input, "KDD-format input")->required();
    train->add_option("--output,-o", train_output, "model file to write")->required();
    OptionRegistry train_reg = add_algo_options(train, train_algo);

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "evaluate a trained model on labeled records");
    std::string eval_input, eval_model, eval_output, eval_format = "table";
    AlgoOptions eval_algo;
    evaluate->add_option("--input,-i", eval_input, "KDD-format input")->required();
    evaluate->add_option("--model,-m", eval_model, "model file from train")->required();
    evaluate->add_option("--output,-o", eval_output, "also write the result here");
    evaluate->add_option("--format", eval_format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    OptionRegistry eval_reg = add_algo_options(evaluate, eval_algo);

    // cv
    auto* cv = app.add_subcommand("cv", "k-fold cross-validation");
    std::string cv_input, cv_output, cv_format = "table";
    std::size_t cv_folds = 10, cv_runs = 1, cv_sample = 0;
    AlgoOptions cv_algo;
    cv->add_option("--input,-i", cv_input, "KDD-format input")->required();
    cv->add_option("--folds,-k", cv_folds, "fold count")->envname("QVICA_FOLDS");
    cv->add_option("--runs,-r", cv_runs, "independent runs")->envname("QVICA_RUNS");
    cv->add_option("--sample", cv_sample, "stratified subsample size (0 = all records)")
        ->envname("QVICA_SAMPLE");
    cv->add_option("--output,-o", cv_output, "write a JSON report here");
    cv->add_option("--format", cv_format, "stdout format")->check(CLI::IsMember({"table", "json"}));
    OptionRegistry cv_reg = add_algo_options(cv, cv_algo);

    // experiment
    auto* experiment = app.add_subcommand("experiment", "population x iterations accuracy grid");
    std::string exp_input, exp_dir, exp_pops = "10,20,30,40,50", exp_iters = "10,20,30,40";
    std::size_t exp_folds = 10, exp_runs = 20, exp_sample = 0;
    unsigned exp_jobs = 1;
    AlgoOptions exp_algo;
    experiment->add_option("--input,-i", exp_input, "KDD-format input")->required();
    experiment->add_option("--out-dir,-o", exp_dir, "directory for report files")->required();
    experiment->add_option("--pop", exp_pops, "comma-separated population sizes");
    experiment->add_option("--iters", exp_iters, "comma-separated iteration counts");
    experiment->add_option("--folds,-k", exp_folds, "fold count")->envname("QVICA_FOLDS");
    experiment->add_option("--runs,-r", exp_runs, "runs per cell")->envname("QVICA_RUNS");
    experiment->add_option("--sample", exp_sample, "stratified subsample size (0 = all records)")
        ->envname("QVICA_SAMPLE");
    experiment->add_option("--jobs,-j", exp_jobs, "parallel grid cells")->envname("QVICA_JOBS");
    OptionRegistry exp_reg = add_algo_options(experiment, exp_algo, /*with_pop_iters=*/false);

    // report
    auto* rep = app.add_subcommand("report", "reprint a report file");
    std::string rep_input, rep_format = "table";
    rep->add_option("--input,-i", rep_input, "report JSON from cv or experiment")->required();
    rep->add_option("--format", rep_format, "output format")
        ->check(CLI::IsMember({"table", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (preprocess->parsed()) {
            apply_config_file(pre_reg);
            return cmd_preprocess(pre_input, pre_output, pre_summary, pre_algo);
        }
        if (train->parsed()) {
            apply_config_file(train_reg);
            return cmd_train(train_input, train_output, train_algo);
        }
        if (evaluate->parsed()) {
            apply_config_file(eval_reg);
            return cmd_evaluate(eval_input, eval_model, eval_output, eval_format, eval_algo);
        }
        if (cv->parsed()) {
            apply_config_file(cv_reg);
            return cmd_cv(cv_input, cv_folds, cv_runs, cv_sample, cv_output, cv_format, cv_algo);
        }
        if (experiment->parsed()) {
            apply_config_file(exp_reg);
            return cmd_experiment(exp_input, exp_dir, exp_pops, exp_iters, exp_folds, exp_runs,
                                  exp_sample, exp_jobs, exp_algo);
        }
        if (rep->parsed()) return cmd_report(rep_input, rep_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
