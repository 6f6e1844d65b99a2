#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "weakcast/errors.hpp"
#include "weakcast/harness/config.hpp"
#include "weakcast/harness/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

}  // namespace

int main(int argc, char** argv) {
    using namespace weakcast::harness;

    CLI::App app{"weakcast: pattern-matching forecasts for stationary processes"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<unsigned> workers;
    std::optional<std::uint64_t> seed;

    for (const auto& [command, name, help] : {
             std::tuple{Command::simulate, "simulate", "Emit sample paths"},
             std::tuple{Command::recurrence_stats, "recurrence-stats", "Kac and recurrence growth diagnostics"},
             std::tuple{Command::estimate, "estimate", "Conditional law estimates against the oracle"},
             std::tuple{Command::divergence_curve, "divergence-curve", "Cesaro divergence curve"},
             std::tuple{Command::predict, "predict", "Online prediction run"},
             std::tuple{Command::report, "report", "Tabulate *.summary.json in --out"},
         }) {
        auto* sub = app.add_subcommand(name, help);
        if (command == Command::report) {
            sub->add_option("--out", out_dir, "Directory holding summaries")->required();
            continue;
        }
        sub->add_option("--config", config_path, "JSON experiment config")->required();
        sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
        sub->add_option("--workers", workers, "Worker threads (overrides workers)")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "Master seed (overrides seed)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    const auto command = parse_command(app.get_subcommands().front()->get_name());
    try {
        if (*command == Command::report) {
            const auto rows = collect_report(out_dir);
            print_report(std::cout, rows);
            write_report(out_dir, rows);
            return 0;
        }
        auto config = load_config(config_path);
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (workers) config.workers = *workers;
        if (seed) config.seed = *seed;
        const auto experiment = prepare(config);
        const auto outputs = run_command(*command, experiment, config.output_dir);
        std::cout << outputs.csv.string() << '\n' << outputs.summary.string() << '\n';
        return 0;
    } catch (const weakcast::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
