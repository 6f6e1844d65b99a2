#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "weakcast/harness/config.hpp"
#include "weakcast/harness/runner.hpp"

using namespace weakcast;
using namespace weakcast::harness;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("weakcast_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string field_of(const json& j) {
    try {
        config_from_json(j);
    } catch (const ValidationError& e) {
        return e.path();
    }
    return "";
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("config round trip") {
    const json j = {{"source", {{"kind", "markov"}, {"alphabet_size", 2}, {"order", 1}, {"rows", {{0.8, 0.2}, {0.3, 0.7}}}}},
                    {"n_grid", {100, 1000}},
                    {"replicas", 3},
                    {"seed", 42},
                    {"schedule", {{"epsilon", 0.4}}},
                    {"predict", {{"task", "plug_in"}, {"loss", {{0, 1}, {5, 0}}}}}};
    const auto c = config_from_json(j);
    CHECK(c.replicas == 3);
    CHECK(c.schedule.epsilon == 0.4);
    const auto again = config_from_json(config_to_json(c));
    CHECK(again == c);
    CHECK(config_from_json(config_to_json(again)) == c);
    const auto preset = config_from_json({{"source", "iid_fair"}});
    CHECK(config_from_json(config_to_json(preset)) == preset);
}

TEST_CASE("validation errors name the field") {
    CHECK(field_of({{"source", "iid_fair"}, {"replicas", 0}}) == "replicas");
    CHECK(field_of({{"source", "iid_fair"}, {"n_grid", {10, 5}}}) == "n_grid[1]");
    CHECK(field_of({{"source", "iid_fair"}, {"n_grid", json::array()}}) == "n_grid");
    CHECK(field_of({{"source", "iid_fair"}, {"schedule", {{"epsilon", 1.5}}}}) == "schedule.epsilon");
    CHECK(field_of({{"source", "iid_fair"}, {"estimator", "magic"}}) == "estimator");
    CHECK(field_of({{"source", "iid_fair"}, {"bogus", 1}}) == "bogus");
    CHECK(field_of({{"source", {{"kind", "iid"}, {"pmf", {0.5, 0.5}}, {"cycle", {0, 1}}}}}) == "source.cycle");
    CHECK(field_of({{"source", "iid_fair"}, {"replicas", "many"}}) == "replicas");
    CHECK(field_of({{"n_grid", {10}}}) == "source");

    CHECK_THROWS_AS(prepare(config_from_json({{"source", "nope"}})), ValidationError);
    CHECK_THROWS_AS(prepare(config_from_json({{"source", "iid_fair"}, {"mode", "real"}, {"n_grid", {10}}})),
                    ValidationError);
    CHECK_NOTHROW(prepare(config_from_json({{"source", "iid_fair"}, {"n_grid", {10, 1000}}})));
}

TEST_CASE("side alphabet selection") {
    auto c = config_from_json({{"source", "markov_stay90"}, {"estimator", "side_info"}, {"side_info", "state"}});
    CHECK(prepare(c).side_alphabet == 2);
    c.side_info = "noise";
    CHECK(prepare(c).side_alphabet == 2);
    c.source.preset = "ryabco_alt";
    c.side_info = "state";
    CHECK_THROWS_AS(prepare(c), ValidationError);
}

TEST_CASE("runs are byte-identical given the seed") {
    const json j = {{"source", "markov_stay90"}, {"n_grid", {100, 1000}}, {"replicas", 3}, {"seed", 9}};
    const auto e = prepare(config_from_json(j));
    const auto a = scratch("det_a"), b = scratch("det_b");
    for (auto cmd : {Command::simulate, Command::estimate, Command::divergence_curve, Command::predict}) {
        const auto ra = run_command(cmd, e, a);
        auto e2 = e;
        e2.config.workers = 3;
        const auto rb = run_command(cmd, e2, b);
        CHECK(slurp(ra.csv) == slurp(rb.csv));
        const auto summary = json::parse(slurp(ra.summary));
        for (const char* key : {"command", "version", "config", "metrics", "oracle_targets", "runtime_seconds"})
            CHECK(summary.contains(key));
    }
}

TEST_CASE("predict summary carries the Bayes rate") {
    const auto e = prepare(config_from_json({{"source", "markov_stay90"}, {"n_grid", {2000}}}));
    const auto out = run_command(Command::predict, e, scratch("predict"));
    const auto s = json::parse(slurp(out.summary));
    CHECK(s["oracle_targets"]["oracle_bayes_rate"].get<double>() == doctest::Approx(0.1));
    const auto rows = read_csv(out.csv);
    CHECK(rows[0] == std::vector<std::string>{"replica", "t", "prediction", "outcome", "loss", "running_avg"});
    CHECK(rows.size() == 2001);
}

TEST_CASE("estimate L1 error decreases across the grid") {
    const auto e = prepare(config_from_json(
        {{"source", "markov_stay90"}, {"n_grid", {1000, 10000, 100000}}, {"replicas", 40}, {"seed", 3}}));
    const auto out = run_command(Command::estimate, e, scratch("estimate"));
    const auto per_n = out.metrics["per_n"];
    CHECK(per_n[2]["mean_l1_error"].get<double>() < per_n[0]["mean_l1_error"].get<double>());
    CHECK(per_n[2]["mean_l1_error"].get<double>() < per_n[1]["mean_l1_error"].get<double>());
    const auto header = read_csv(out.csv)[0];
    CHECK(header.back() == "l1_error");
}

TEST_CASE("divergence curve on fair bits") {
    const auto e = prepare(config_from_json(
        {{"source", "iid_fair"}, {"estimator", "cesaro"}, {"n_grid", {1000}}, {"replicas", 20}, {"seed", 2}}));
    const auto out = run_command(Command::divergence_curve, e, scratch("div"));
    const auto rows = read_csv(out.csv);
    double total = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) total += std::stod(rows[i][2]);
    CHECK(total / static_cast<double>(rows.size() - 1) < 0.02);
}

TEST_CASE("recurrence stats on fair bits stay under the growth bound") {
    const auto e = prepare(config_from_json({{"source", "iid_fair"},
                                             {"n_grid", {1000000}},
                                             {"replicas", 2},
                                             {"recurrence", {{"k_min", 8}, {"k_max", 16}, {"kac_trials", 2000}}}}));
    const auto out = run_command(Command::recurrence_stats, e, scratch("rec"));
    const auto rows = read_csv(out.csv);
    CHECK(rows[0] == std::vector<std::string>{"replica", "k", "J_k", "tau_Jk", "lambda_k", "avg_gap",
                                              "normalized_log_rate", "truncated"});
    std::size_t checked = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][6].empty()) continue;
        const double k = std::stod(rows[i][1]);
        CHECK(std::stod(rows[i][6]) <= 1.0 + 2.0 * std::log2(k) / k);
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("report tables") {
    const auto empty = scratch("empty_report");
    CHECK(collect_report(empty).empty());
    const auto dir = scratch("report");
    const auto e = prepare(config_from_json({{"source", "iid_fair"}, {"n_grid", {500}}}));
    run_command(Command::predict, e, dir);
    const auto rows = collect_report(dir);
    CHECK_FALSE(rows.empty());
    std::ostringstream os;
    print_report(os, rows);
    CHECK(os.str().find("metrics.final_running_avg") != std::string::npos);
    CHECK(fs::exists(write_report(dir, rows)));
    CHECK_THROWS(collect_report(dir / "missing"));
}

TEST_CASE("double formatting") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(std::nan("")).empty());
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(-INFINITY) == "-inf");
}

#ifdef WEAKCAST_CLI_PATH
TEST_CASE("CLI exit codes") {
    const std::string cli = WEAKCAST_CLI_PATH;
    const auto dir = scratch("cli");
    auto run = [&](const std::string& args) {
        const int status = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    {
        std::ofstream(dir / "good.json") << R"({"source":"iid_fair","n_grid":[200]})";
        std::ofstream(dir / "bad.json") << R"({"source":"iid_fair","replicas":0})";
        std::ofstream(dir / "broken.json") << "{";
    }
    CHECK(run("predict --config " + (dir / "good.json").string() + " --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "predict.csv"));
    CHECK(run("predict --config " + (dir / "bad.json").string()) == 2);
    CHECK(run("predict --config " + (dir / "broken.json").string()) == 2);
    CHECK(run("frobnicate") == 2);
    CHECK(run("") == 2);
    fs::create_directories(dir / "none");
    CHECK(run("report --out " + (dir / "none").string()) == 0);
    CHECK(run("report --out " + (dir / "missing").string()) == 3);
    // an unwritable output location is a runtime failure
    std::ofstream(dir / "file") << "x";
    CHECK(run("predict --config " + (dir / "good.json").string() + " --out " + (dir / "file" / "sub").string()) == 3);
}
#endif
