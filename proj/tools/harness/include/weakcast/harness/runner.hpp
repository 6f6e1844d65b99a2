#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "weakcast/harness/config.hpp"

namespace weakcast::harness {

enum class Command { simulate, recurrence_stats, estimate, divergence_curve, predict, report };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command) noexcept;

/// Shortest round-trip form; NaN and infinities print as empty / "inf" / "-inf".
std::string format_double(double value);

struct RunOutputs {
    std::filesystem::path csv;
    std::filesystem::path summary;
    nlohmann::json metrics;
    nlohmann::json oracle_targets;
};

/// Runs one experiment subcommand (anything but report) and writes
/// `<command>.csv` and `<command>.summary.json` into `out_dir`.
/// CSV rows are buffered per replica and written in replica order, so the
/// CSV depends only on the config.
RunOutputs run_command(Command command, const Experiment& experiment, const std::filesystem::path& out_dir);

struct ReportRow {
    std::string file;
    std::string command;
    std::string metric;
    std::string value;
};

/// Collects the scalar metrics and oracle targets of every *.summary.json
/// in `dir`, sorted by file name.
std::vector<ReportRow> collect_report(const std::filesystem::path& dir);
void print_report(std::ostream& os, const std::vector<ReportRow>& rows);
/// Writes report.csv into `dir` and returns its path.
std::filesystem::path write_report(const std::filesystem::path& dir, const std::vector<ReportRow>& rows);

}  // namespace weakcast::harness
