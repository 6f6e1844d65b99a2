#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "weakcast/alphabet.hpp"
#include "weakcast/errors.hpp"
#include "weakcast/schedule.hpp"
#include "weakcast/sources.hpp"

namespace weakcast::harness {

/// Invalid configuration; `path()` names the offending field ("schedule.epsilon").
class ValidationError : public ConfigError {
public:
    ValidationError(std::string path, const std::string& message)
        : ConfigError(path + ": " + message), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// Either a preset name or an inline specification.
struct SourceConfig {
    std::string preset;
    std::string kind;  // iid | markov | periodic | hmm | ryabco
    std::vector<double> pmf;
    std::size_t alphabet_size = 2;
    std::size_t order = 1;
    std::vector<std::vector<double>> rows;      // markov rows or hmm transitions
    std::vector<std::vector<double>> emission;  // hmm
    std::vector<Symbol> cycle;
    std::vector<double> delta_prefix;
    std::vector<double> values;  // optional numeric map

    friend bool operator==(const SourceConfig&, const SourceConfig&) = default;
};

struct DefaultMeasureConfig {
    std::string kind = "auto";  // auto | uniform | dirac | uniform_grid
    double at = 0.0;
    double lo = -1.0;
    double hi = 1.0;
    std::size_t points = 64;

    friend bool operator==(const DefaultMeasureConfig&, const DefaultMeasureConfig&) = default;
};

struct ScheduleConfig {
    std::string kind = "auto";  // auto | finite_default | known_entropy | real_default | fixed
    double epsilon = 0.5;
    double rate_bits = 1.0;
    int max_level = 8;
    std::size_t j_base = 32;
    int k = 1;
    std::size_t ell = 1;
    std::size_t samples = 1;
    DefaultMeasureConfig default_measure;

    friend bool operator==(const ScheduleConfig&, const ScheduleConfig&) = default;
};

struct RecurrenceConfig {
    int k_min = 1;
    int k_max = 16;
    std::size_t samples = 4;
    std::size_t path_length = 0;  // 0: largest n of the grid
    std::size_t kac_trials = 10000;
    std::vector<std::vector<Symbol>> kac_patterns;  // empty: every single symbol

    friend bool operator==(const RecurrenceConfig&, const RecurrenceConfig&) = default;
};

struct PredictConfig {
    std::string task = "classification";  // classification | regression | plug_in
    std::vector<std::vector<double>> loss;  // plug_in: loss[x][a]

    friend bool operator==(const PredictConfig&, const PredictConfig&) = default;
};

struct ExperimentConfig {
    SourceConfig source;
    std::string estimator = "pattern";  // pattern | cesaro | side_info
    std::string mode = "finite";        // finite | real
    std::string side_info = "state";    // state | copy | noise
    ScheduleConfig schedule;
    std::string model = "kt_mixture";
    std::vector<std::size_t> n_grid{1000};
    std::size_t replicas = 1;
    std::uint64_t seed = 1;
    std::string output_dir = "results";
    unsigned workers = 1;
    RecurrenceConfig recurrence;
    PredictConfig predict;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses and validates field types and ranges. Throws ValidationError.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

/// Everything an experiment needs, built from a validated config.
struct Experiment {
    ExperimentConfig config;
    OracleSource source;
    Quantizer quantizer;
    Schedule schedule;
    std::size_t side_alphabet = 0;  // side_info only
};

/// Builds the source, quantizer and schedule and validates the schedule
/// against the n grid. Throws ValidationError with the field path.
Experiment prepare(const ExperimentConfig& config);

OracleSource build_source(const SourceConfig& config);

}  // namespace weakcast::harness
