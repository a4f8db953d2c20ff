// Integration tests that drive the qvica binary end to end. The binary path
// arrives as the first program argument (wired up by CTest).

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "synthetic.hpp"

namespace {

std::string g_cli;
std::filesystem::path g_dir;

struct CommandResult {
    int exit_code = -1;
    std::string output;  // stdout + stderr interleaved
};

CommandResult run_command(const std::string& args) {
    const std::string redirect_path = (g_dir / "cmd_output.txt").string();
    const std::string command = g_cli + " " + args + " > " + redirect_path + " 2>&1";
    const int status = std::system(command.c_str());

    CommandResult result;
    result.exit_code = (status == -1) ? -1 : WEXITSTATUS(status);
    std::ifstream in(redirect_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

std::filesystem::path fixture_kdd(const std::string& name, std::size_t records,
                                  std::uint64_t seed) {
    const auto path = g_dir / name;
    if (!std::filesystem::exists(path))
        write_file(path, testutil::synthetic_kdd_text(records, seed));
    return path;
}

}  // namespace

TEST_CASE("preprocess writes antigens and counts") {
    const auto input = fixture_kdd("pre.csv", 300, 1);
    const auto output = g_dir / "pre.antigens";

    const CommandResult r =
        run_command("preprocess --input " + input.string() + " --output " + output.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("records: 300") != std::string::npos);
    REQUIRE(std::filesystem::exists(output));
    REQUIRE(std::filesystem::exists(output.string() + ".summary.json"));

    // count conservation: one antigen line per record
    std::ifstream in(output);
    std::size_t lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 300);

    SUBCASE("byte-identical on rerun") {
        const std::string first = slurp(output);
        const CommandResult again =
            run_command("preprocess --input " + input.string() + " --output " + output.string());
        CHECK(again.exit_code == 0);
        CHECK(slurp(output) == first);
    }
}

TEST_CASE("preprocess names the malformed line and fails") {
    std::ostringstream text;
    for (int i = 0; i < 16; ++i)
        text << testutil::kdd_line("http", 100 + i, 2000, 0.0, 200, 0.0, "normal.") << "\n";
    text << "this,is,not,a,kdd,record\n";
    const auto input = g_dir / "malformed.csv";
    write_file(input, text.str());

    const CommandResult r = run_command("preprocess --input " + input.string() + " --output " +
                                        (g_dir / "malformed.out").string());
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("line 17") != std::string::npos);
}

TEST_CASE("train then evaluate round-trips a model file") {
    const auto input = fixture_kdd("trainset.csv", 400, 2);
    const auto model = g_dir / "model.json";

    const CommandResult tr = run_command("train --input " + input.string() + " --output " +
                                         model.string() + " --pop 20 --iters 8 --seed 5");
    CHECK(tr.exit_code == 0);
    CHECK(tr.output.find("model written") != std::string::npos);
    REQUIRE(std::filesystem::exists(model));

    const CommandResult ev = run_command("evaluate --input " + input.string() + " --model " +
                                         model.string() + " --format table");
    CHECK(ev.exit_code == 0);
    CHECK(ev.output.find("accuracy") != std::string::npos);

    const CommandResult ej = run_command("evaluate --input " + input.string() + " --model " +
                                         model.string() + " --format json");
    CHECK(ej.exit_code == 0);
    CHECK(ej.output.find("\"confusion\"") != std::string::npos);
}

TEST_CASE("cv prints run and fold tables") {
    const auto input = fixture_kdd("cvset.csv", 300, 3);
    const CommandResult r = run_command("cv --input " + input.string() +
                                        " --folds 5 --runs 2 --pop 10 --iters 5 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("Run   Accuracy") != std::string::npos);
    CHECK(r.output.find("Fold  Accuracy") != std::string::npos);
    CHECK(r.output.find("Best") != std::string::npos);
}

TEST_CASE("experiment emits per-cell files, a grid, and report reprints it") {
    const auto input = fixture_kdd("expset.csv", 300, 4);
    const auto out_dir = g_dir / "experiment";
    std::filesystem::remove_all(out_dir);

    const CommandResult r = run_command(
        "experiment --input " + input.string() + " --out-dir " + out_dir.string() +
        " --pop 10 --iters 5 --folds 5 --runs 1 --seed 11 --jobs 2");
    CHECK(r.exit_code == 0);
    REQUIRE(std::filesystem::exists(out_dir / "cell_pop10_iters5.json"));
    REQUIRE(std::filesystem::exists(out_dir / "grid.json"));
    REQUIRE(std::filesystem::exists(out_dir / "grid.txt"));

    // reloading the grid report reproduces the printed table exactly
    const CommandResult rep =
        run_command("report --input " + (out_dir / "grid.json").string() + " --format table");
    CHECK(rep.exit_code == 0);
    CHECK(rep.output == slurp(out_dir / "grid.txt"));

    const CommandResult cell_rep =
        run_command("report --input " + (out_dir / "cell_pop10_iters5.json").string());
    CHECK(cell_rep.exit_code == 0);
    CHECK(cell_rep.output.find("Run   Accuracy") != std::string::npos);

    SUBCASE("a two-cell grid leaves two cell files") {
        const auto dir2 = g_dir / "experiment2";
        std::filesystem::remove_all(dir2);
        const CommandResult r2 = run_command(
            "experiment --input " + input.string() + " --out-dir " + dir2.string() +
            " --pop 10,20 --iters 5 --folds 5 --runs 1 --seed 11");
        CHECK(r2.exit_code == 0);
        CHECK(std::filesystem::exists(dir2 / "cell_pop10_iters5.json"));
        CHECK(std::filesystem::exists(dir2 / "cell_pop20_iters5.json"));
    }
}

TEST_CASE("config file applies under flag and env overrides") {
    const auto input = fixture_kdd("cfgset.csv", 200, 5);
    const auto config = g_dir / "qvica.conf";
    write_file(config, "population = 7\niterations = 4\nseed = 123  # comment\n");
    const auto model = g_dir / "cfg_model.json";

    const CommandResult r = run_command("train --input " + input.string() + " --output " +
                                        model.string() + " --config " + config.string());
    CHECK(r.exit_code == 0);
    const std::string model_text = slurp(model);
    CHECK(model_text.find("\"population\": 7") != std::string::npos);
    CHECK(model_text.find("\"seed\": 123") != std::string::npos);

    SUBCASE("flags beat the config file") {
        const CommandResult r2 = run_command("train --input " + input.string() + " --output " +
                                             model.string() + " --config " + config.string() +
                                             " --pop 9");
        CHECK(r2.exit_code == 0);
        CHECK(slurp(model).find("\"population\": 9") != std::string::npos);
    }

    SUBCASE("environment variables beat the config file") {
        const std::string cmd = "QVICA_POPULATION=11 " + g_cli + " train --input " +
                                input.string() + " --output " + model.string() + " --config " +
                                config.string() + " > " + (g_dir / "env_out.txt").string() +
                                " 2>&1";
        const int status = std::system(cmd.c_str());
        CHECK(WEXITSTATUS(status) == 0);
        CHECK(slurp(model).find("\"population\": 11") != std::string::npos);
    }
}

TEST_CASE("unknown config keys are rejected") {
    const auto input = fixture_kdd("cfgset.csv", 200, 5);
    const auto config = g_dir / "bad.conf";
    write_file(config, "no_such_key = 1\n");
    const CommandResult r = run_command("train --input " + input.string() + " --output " +
                                        (g_dir / "x.json").string() + " --config " +
                                        config.string());
    CHECK(r.exit_code != 0);
    CHECK(r.output.find("no_such_key") != std::string::npos);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-qvica-binary> [doctest args]\n");
        return 2;
    }
    g_cli = argv[1];
    g_dir = std::filesystem::temp_directory_path() / "qvica_cli_tests";
    std::filesystem::create_directories(g_dir);

    doctest::Context context;
    context.applyCommandLine(argc - 1, argv + 1);
    return context.run();
}
