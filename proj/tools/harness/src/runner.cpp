#include "weakcast/harness/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "weakcast/cesaro.hpp"
#include "weakcast/errors.hpp"
#include "weakcast/online.hpp"
#include "weakcast/parallel.hpp"
#include "weakcast/pattern_estimator.hpp"
#include "weakcast/recurrence.hpp"
#include "weakcast/recurrence_diagnostics.hpp"
#include "weakcast/rng.hpp"
#include "weakcast/version.hpp"

namespace weakcast::harness {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::simulate, "simulate"},
    {Command::recurrence_stats, "recurrence-stats"},
    {Command::estimate, "estimate"},
    {Command::divergence_curve, "divergence-curve"},
    {Command::predict, "predict"},
    {Command::report, "report"},
};

// Oracle law of X_0 is taken from a tracker run over this many extra
// symbols before the estimation window, so HMM filters and the ryabco
// phase have settled.
constexpr std::size_t kOracleLead = 64;

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& [c, n] : kCommands)
        if (n == name) return c;
    return std::nullopt;
}

std::string_view to_string(Command command) noexcept {
    for (const auto& [c, n] : kCommands)
        if (c == command) return n;
    return "?";
}

std::string format_double(double value) {
    if (std::isnan(value)) return "";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : ""; }
std::string cell(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }
std::string cell(double v) { return format_double(v); }
std::string cell(std::size_t v) { return std::to_string(v); }
std::string cell(bool v) { return v ? "1" : "0"; }

/// One CSV line from pre-rendered cells.
struct Line {
    std::string text;

    template <class T>
    Line& operator<<(const T& v) {
        if (!text.empty()) text += ',';
        text += cell(v);
        return *this;
    }
};

using Lines = std::vector<std::string>;

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_csv(const fs::path& path, const std::string& header, const std::vector<Lines>& per_replica) {
    std::string content = header + "\n";
    for (const auto& lines : per_replica)
        for (const auto& l : lines) content += l + "\n";
    write_file(path, content);
}

json nan_to_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct MeanSe {
    double mean = std::nan("");
    double se = std::nan("");
};

MeanSe mean_se(std::span<const double> xs) {
    MeanSe out;
    if (xs.empty()) return out;
    double s = 0.0;
    for (double x : xs) s += x;
    const double n = static_cast<double>(xs.size());
    out.mean = s / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = xs.size() > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
    return out;
}

std::size_t n_max(const ExperimentConfig& c) { return c.n_grid.back(); }

std::uint64_t replica_seed(const ExperimentConfig& c, std::size_t r) { return derive_seed(c.seed, r); }

/// Side observations aligned with `gen.symbols`.
std::vector<Symbol> side_symbols(const Experiment& e, const GeneratedPath& gen, std::uint64_t seed) {
    const auto& mode = e.config.side_info;
    if (mode == "copy") return gen.symbols;
    if (mode == "noise") {
        Rng rng(derive_seed(seed, 0x5eed));
        std::vector<Symbol> ys(gen.symbols.size());
        for (auto& y : ys) y = static_cast<Symbol>(rng.bits() & 1u);
        return ys;
    }
    std::vector<Symbol> ys(gen.states.size());
    for (std::size_t t = 0; t < ys.size(); ++t) ys[t] = static_cast<Symbol>(gen.states[t]);
    return ys;
}

/// Law of X_t given Y_t and the whole past, when that is computable
/// without a joint filter.
std::vector<double> side_oracle(const Experiment& e, Symbol y, const std::vector<double>& past_only) {
    const auto& src = e.source;
    const std::size_t a = src.alphabet_size();
    const auto& mode = e.config.side_info;
    if (mode == "noise") return past_only;
    if (mode == "copy") {
        std::vector<double> p(a, 0.0);
        p[y] = 1.0;
        return p;
    }
    switch (src.kind()) {
        case SourceKind::markov: return src.rows()[y];
        case SourceKind::hmm: return src.emission()[y];
        case SourceKind::periodic: {
            std::vector<double> p(a, 0.0);
            p[src.cycle()[y]] = 1.0;
            return p;
        }
        default: throw UnsupportedSourceError("no side-information oracle for this source");
    }
}

SamplePath path_for(const Experiment& e, std::span<const Symbol> chronological) {
    return e.quantizer.is_finite() ? SamplePath::from_symbols(chronological)
                                   : to_sample_path(e.source, chronological);
}

json summary_json(Command command, const Experiment& e, const json& metrics, const json& targets, double seconds) {
    return json{{"command", std::string(to_string(command))},
                {"version", kVersion},
                {"config", config_to_json(e.config)},
                {"metrics", metrics},
                {"oracle_targets", targets},
                {"runtime_seconds", seconds}};
}

// ---------------------------------------------------------------- simulate

void run_simulate(const Experiment& e, const fs::path& csv, json& metrics, json& targets) {
    const auto& c = e.config;
    const std::size_t a = e.source.alphabet_size();
    std::vector<Lines> out(c.replicas);
    std::vector<std::vector<double>> freq(c.replicas, std::vector<double>(a, 0.0));
    parallel_for(c.replicas, c.workers, [&](std::size_t r) {
        const auto gen = generate_with_states(e.source, n_max(c), replica_seed(c, r));
        out[r].reserve(gen.symbols.size());
        for (std::size_t t = 0; t < gen.symbols.size(); ++t) {
            const Symbol x = gen.symbols[t];
            freq[r][x] += 1.0;
            Line l;
            l << r << t << static_cast<std::size_t>(x) << e.source.value_of(x) << gen.states[t];
            out[r].push_back(std::move(l.text));
        }
    });
    write_csv(csv, "replica,t,symbol,value,state", out);
    json f = json::array();
    for (std::size_t x = 0; x < a; ++x) {
        double s = 0.0;
        for (const auto& row : freq) s += row[x];
        f.push_back(s / static_cast<double>(c.replicas * n_max(c)));
    }
    metrics["symbol_frequency"] = f;
    metrics["length"] = n_max(c);
    if (!e.source.stationary().empty()) targets["stationary_state_law"] = e.source.stationary();
    const auto h = entropy_rate(e.source, 200000, c.seed);
    targets["entropy_rate_bits"] = h.value;
    if (h.approximate) targets["entropy_rate_standard_error"] = h.standard_error;
}

// -------------------------------------------------------- recurrence-stats

void run_recurrence_stats(const Experiment& e, const fs::path& csv, json& metrics, json& targets) {
    const auto& c = e.config;
    const auto& rc = c.recurrence;
    const std::size_t length = rc.path_length ? rc.path_length : n_max(c);
    const auto steps = block_growth_schedule(rc.k_min, rc.k_max, rc.samples);
    const Quantizer symbols = Quantizer::finite(e.source.alphabet());
    std::vector<Lines> out(c.replicas);
    std::vector<std::vector<GrowthPoint>> points(c.replicas);
    parallel_for(c.replicas, c.workers, [&](std::size_t r) {
        const auto path = SamplePath::from_symbols(generate_symbols(e.source, length, replica_seed(c, r)));
        points[r] = growth_rate_diagnostic(path, symbols, steps);
        for (const auto& p : points[r]) {
            Line l;
            l << r << static_cast<std::size_t>(p.k) << p.samples << p.tau_j << p.lambda << p.avg_gap
              << p.normalized_log_rate << p.truncated;
            out[r].push_back(std::move(l.text));
        }
    });
    write_csv(csv, "replica,k,J_k,tau_Jk,lambda_k,avg_gap,normalized_log_rate,truncated", out);

    json per_k = json::array();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        std::vector<double> rates;
        for (const auto& pts : points)
            if (pts[i].normalized_log_rate) rates.push_back(*pts[i].normalized_log_rate);
        const auto ms = mean_se(rates);
        per_k.push_back({{"k", steps[i].k},
                         {"mean_normalized_log_rate", nan_to_null(ms.mean)},
                         {"se", nan_to_null(ms.se)},
                         {"truncated_replicas", c.replicas - rates.size()}});
    }
    metrics["growth"] = per_k;

    std::vector<std::vector<Symbol>> patterns = rc.kac_patterns;
    if (patterns.empty())
        for (std::size_t x = 0; x < e.source.alphabet_size(); ++x) patterns.push_back({static_cast<Symbol>(x)});
    KacOptions ko;
    ko.trials = rc.kac_trials;
    ko.seed = derive_seed(c.seed, 0xacULL);
    ko.workers = c.workers;
    const auto kac = kac_diagnostic(e.source, patterns, ko);
    json rows = json::array();
    double worst = 0.0;
    for (const auto& row : kac.rows) {
        rows.push_back({{"pattern", row.pattern},
                        {"hits", row.hits},
                        {"empirical_mean", nan_to_null(row.empirical_mean)},
                        {"oracle_mean", row.oracle_mean},
                        {"relative_deviation", nan_to_null(row.relative_deviation)}});
        worst = std::max(worst, row.relative_deviation);
    }
    metrics["kac"] = {{"trials", kac.trials}, {"truncated", kac.truncated}, {"rows", rows}};
    metrics["kac_max_relative_deviation"] = worst;
    const auto h = entropy_rate(e.source, 200000, c.seed);
    targets["entropy_rate_bits"] = h.value;
}

// ---------------------------------------------------------------- estimate

void run_estimate(const Experiment& e, const fs::path& csv, json& metrics, json& targets) {
    const auto& c = e.config;
    const auto& src = e.source;
    const std::size_t a = src.alphabet_size();
    const bool finite = e.quantizer.is_finite();
    const bool side = c.estimator == "side_info";
    const bool cesaro = c.estimator == "cesaro";
    const std::size_t grid = c.n_grid.size();
    const std::optional<ModelKind> model = cesaro ? std::optional(parse_model_kind(c.model)) : std::nullopt;
    const Quantizer xq = Quantizer::finite(src.alphabet());
    const Quantizer yq = Quantizer::finite(Alphabet::of_size(std::max<std::size_t>(e.side_alphabet, 2)));

    struct Cell {
        double l1 = 0.0;
        double max_abs = 0.0;
        double mean_error = 0.0;
        bool default_used = false;
    };
    std::vector<Lines> out(c.replicas);
    std::vector<std::vector<Cell>> cells(c.replicas, std::vector<Cell>(grid));
    parallel_for(c.replicas, c.workers, [&](std::size_t r) {
        const std::uint64_t seed = replica_seed(c, r);
        const auto gen = generate_with_states(src, n_max(c) + kOracleLead + 1, seed);
        const std::size_t now = gen.symbols.size() - 1;  // index of X_0
        OracleTracker tracker(src);
        for (std::size_t t = 0; t < now; ++t) tracker.push(gen.symbols[t]);
        if (!tracker.ready()) throw UnsupportedSourceError("oracle law unavailable on this path");
        auto oracle = tracker.pmf();
        std::vector<Symbol> ys;
        if (side) {
            ys = side_symbols(e, gen, seed);
            oracle = side_oracle(e, ys[now], oracle);
        }
        for (std::size_t g = 0; g < grid; ++g) {
            const std::size_t n = c.n_grid[g];
            const std::span<const Symbol> past(gen.symbols.data() + now - n, n);
            std::vector<double> est(a, 0.0);
            std::optional<std::size_t> k, ell, J, lambda;
            bool truncated = false, defaulted = false;
            double est_mean = std::nan("");
            if (cesaro) {
                est = cesaro_estimate(*model, a, past).pmf;
            } else if (side) {
                const auto step = e.schedule.step_for(n);
                k = static_cast<std::size_t>(step.k);
                ell = step.ell;
                J = step.samples;
                const auto x_path = SamplePath::from_symbols(past);
                const auto y_path = SamplePath::from_symbols(std::span<const Symbol>(ys.data() + now - n, n));
                try {
                    const auto pe = estimate_with_side_info(x_path, y_path, ys[now], xq, yq,
                                                            {step.k, step.ell, step.samples});
                    lambda = pe.record.lambda;
                    const auto m = pe.distribution.masses();
                    est.assign(m.begin(), m.end());
                } catch (const InsufficientDataError&) {
                    truncated = defaulted = true;
                    est.assign(a, 1.0 / static_cast<double>(a));
                }
            } else {
                const auto te = estimate_truncated_detailed(path_for(e, past), e.schedule, e.quantizer);
                k = static_cast<std::size_t>(te.step.k);
                ell = te.step.ell;
                J = te.step.samples;
                if (te.record) {
                    lambda = te.record->lambda;
                    truncated = te.record->truncated;
                } else {
                    truncated = true;
                }
                defaulted = te.default_used;
                if (finite) {
                    const auto m = te.distribution.masses();
                    est.assign(m.begin(), m.end());
                } else {
                    for (std::size_t x = 0; x < a; ++x) est[x] = te.distribution.mass(src.value_of(static_cast<Symbol>(x)));
                    est_mean = te.distribution.mean();
                }
            }
            Cell& cl = cells[r][g];
            cl.default_used = defaulted;
            for (std::size_t x = 0; x < a; ++x) {
                const double d = std::abs(est[x] - oracle[x]);
                cl.l1 += d;
                cl.max_abs = std::max(cl.max_abs, d);
            }
            Line l;
            l << n << r << k << ell << J << lambda << truncated << defaulted;
            for (double v : est) l << v;
            for (double v : oracle) l << v;
            l << cl.l1;
            if (!finite) {
                double oracle_mean = 0.0;
                for (std::size_t x = 0; x < a; ++x) oracle_mean += oracle[x] * src.value_of(static_cast<Symbol>(x));
                cl.mean_error = std::abs(est_mean - oracle_mean);
                l << est_mean << oracle_mean;
            }
            out[r].push_back(std::move(l.text));
        }
    });

    std::string header = "n,replica,k,ell,J,lambda,truncated,default_used";
    for (std::size_t x = 0; x < a; ++x) header += ",est_" + std::to_string(x);
    for (std::size_t x = 0; x < a; ++x) header += ",oracle_" + std::to_string(x);
    header += ",l1_error";
    if (!finite) header += ",est_mean,oracle_mean";
    write_csv(csv, header, out);

    json per_n = json::array();
    for (std::size_t g = 0; g < grid; ++g) {
        std::vector<double> l1, mx, me;
        std::size_t defaults = 0;
        for (const auto& row : cells) {
            l1.push_back(row[g].l1);
            mx.push_back(row[g].max_abs);
            me.push_back(row[g].mean_error);
            defaults += row[g].default_used;
        }
        const auto a1 = mean_se(l1), a2 = mean_se(mx);
        json p{{"n", c.n_grid[g]},
               {"mean_l1_error", a1.mean},
               {"se_l1_error", a1.se},
               {"mean_max_abs_error", a2.mean},
               {"default_used_rate", static_cast<double>(defaults) / static_cast<double>(c.replicas)}};
        if (!finite) p["mean_abs_mean_error"] = mean_se(me).mean;
        per_n.push_back(p);
    }
    metrics["per_n"] = per_n;
    targets["l1_error"] = 0.0;
}

// -------------------------------------------------------- divergence-curve

void run_divergence(const Experiment& e, const fs::path& csv, json& metrics, json& targets) {
    const auto& c = e.config;
    DivergenceCurveOptions opt;
    opt.model = parse_model_kind(c.model);
    opt.n_grid = c.n_grid;
    opt.replicas = c.replicas;
    opt.seed = c.seed;
    opt.workers = c.workers;
    opt.oracle_lead = kOracleLead;
    const auto rows = expected_divergence_curve(e.source, opt);
    std::vector<Lines> out(c.replicas);
    // Rows come grouped by replica already; regroup to be explicit.
    for (const auto& row : rows) {
        Line l;
        l << row.n << row.replica << row.kl_bits << row.variational << row.redundancy;
        out[row.replica].push_back(std::move(l.text));
    }
    write_csv(csv, "n,replica,kl_bits,variational,model_redundancy_bits_per_symbol", out);
    json per_n = json::array();
    for (const auto& p : summarize_divergence(rows))
        per_n.push_back({{"n", p.n},
                         {"mean_kl_bits", nan_to_null(p.mean_kl_bits)},
                         {"se_kl_bits", nan_to_null(p.se_kl_bits)},
                         {"mean_variational", p.mean_variational},
                         {"mean_redundancy_bits_per_symbol", nan_to_null(p.mean_redundancy)}});
    metrics["per_n"] = per_n;
    targets["kl_bits"] = 0.0;
}

// ----------------------------------------------------------------- predict

void run_predict(const Experiment& e, const fs::path& csv, json& metrics, json& targets) {
    const auto& c = e.config;
    const auto& src = e.source;
    const auto& task = c.predict.task;
    const bool side = c.estimator == "side_info";
    if (c.estimator == "cesaro") throw ValidationError("estimator", "predict runs the pattern or side_info estimator");
    if (task == "regression" && e.quantizer.is_finite())
        throw ValidationError("predict.task", "regression needs real mode");
    if (task != "regression" && !e.quantizer.is_finite())
        throw ValidationError("predict.task", task + " needs finite mode");
    if (side && task != "classification") throw ValidationError("predict.task", "side_info predicts classes only");

    const std::size_t n = n_max(c);
    std::vector<Lines> out(c.replicas);
    std::vector<double> finals(c.replicas), risks(c.replicas, std::nan(""));
    parallel_for(c.replicas, c.workers, [&](std::size_t r) {
        const std::uint64_t seed = replica_seed(c, r);
        const auto gen = generate_with_states(src, n, seed);
        LossLedger ledger;
        if (side) {
            SideInfoClassifier clf(src.alphabet_size(), e.side_alphabet, e.schedule);
            ledger = run_online_side_info(gen.symbols, side_symbols(e, gen, seed), clf);
        } else {
            std::vector<double> xs(n);
            for (std::size_t t = 0; t < n; ++t)
                xs[t] = task == "regression" ? src.value_of(gen.symbols[t]) : static_cast<double>(gen.symbols[t]);
            if (task == "classification") {
                ClassificationPredictor p(e.quantizer, e.schedule);
                ledger = run_online(xs, p, hamming_loss);
            } else if (task == "regression") {
                RegressionPredictor p(e.quantizer, e.schedule);
                ledger = run_online(xs, p, squared_loss);
            } else {
                const auto& table = c.predict.loss;
                PlugInPredictor p(e.quantizer, e.schedule, table);
                ledger = run_online(xs, p, [&table](double x, double act) {
                    return table[static_cast<std::size_t>(x)][static_cast<std::size_t>(act)];
                });
                // Risk of the oracle plug-in action along the same path.
                OracleTracker tracker(src);
                double acc = 0.0;
                std::size_t counted = 0;
                for (std::size_t t = 0; t < n; ++t) {
                    if (tracker.ready()) {
                        const auto law = ConditionalDistribution::pmf(tracker.pmf());
                        acc += table[gen.symbols[t]][plug_in_action(law, table)];
                        ++counted;
                    }
                    tracker.push(gen.symbols[t]);
                }
                if (counted) risks[r] = acc / static_cast<double>(counted);
            }
        }
        const auto traj = ledger.trajectory();
        out[r].reserve(n);
        for (std::size_t t = 0; t < n; ++t) {
            Line l;
            l << r << t << ledger.predictions()[t] << ledger.outcomes()[t] << ledger.losses()[t] << traj[t];
            out[r].push_back(std::move(l.text));
        }
        finals[r] = traj.empty() ? std::nan("") : traj.back();
    });
    write_csv(csv, "replica,t,prediction,outcome,loss,running_avg", out);

    const auto ms = mean_se(finals);
    metrics["final_running_avg"] = nan_to_null(ms.mean);
    metrics["final_running_avg_se"] = nan_to_null(ms.se);
    metrics["per_replica_final"] = finals;
    metrics["n"] = n;
    try {
        if (task == "classification") {
            if (side && c.side_info == "state" && src.kind() == SourceKind::hmm)
                targets["oracle_bayes_rate"] = state_bayes_error_rate(src);
            else if (!side || c.side_info == "noise")
                targets["oracle_bayes_rate"] = bayes_error_rate(src);
        } else if (task == "regression") {
            targets["innovation_variance"] = innovation_variance(src);
        } else {
            targets["oracle_plug_in_risk"] = nan_to_null(mean_se(risks).mean);
        }
    } catch (const UnsupportedSourceError&) {
        // no closed form for this source; the summary omits the target
    }
}

}  // namespace

RunOutputs run_command(Command command, const Experiment& experiment, const fs::path& out_dir) {
    if (command == Command::report) throw ConfigError("report is not an experiment command");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());
    const std::string stem(to_string(command));
    RunOutputs res{out_dir / (stem + ".csv"), out_dir / (stem + ".summary.json"), json::object(), json::object()};

    const auto start = std::chrono::steady_clock::now();
    switch (command) {
        case Command::simulate: run_simulate(experiment, res.csv, res.metrics, res.oracle_targets); break;
        case Command::recurrence_stats: run_recurrence_stats(experiment, res.csv, res.metrics, res.oracle_targets); break;
        case Command::estimate: run_estimate(experiment, res.csv, res.metrics, res.oracle_targets); break;
        case Command::divergence_curve: run_divergence(experiment, res.csv, res.metrics, res.oracle_targets); break;
        case Command::predict: run_predict(experiment, res.csv, res.metrics, res.oracle_targets); break;
        case Command::report: break;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_file(res.summary, summary_json(command, experiment, res.metrics, res.oracle_targets, seconds).dump(2) + "\n");
    return res;
}

// ------------------------------------------------------------------ report

namespace {

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (j.is_number_float()) {
        out.emplace_back(prefix, format_double(j.get<double>()));
    } else if (j.is_null()) {
        out.emplace_back(prefix, "");
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

}  // namespace

std::vector<ReportRow> collect_report(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("'" + dir.string() + "' is not a directory");
    std::vector<fs::path> files;
    const std::string suffix = ".summary.json";
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<ReportRow> rows;
    for (const auto& f : files) {
        std::ifstream in(f);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw std::runtime_error("cannot parse '" + f.string() + "': " + e.what());
        }
        const std::string command = j.value("command", "");
        for (const char* section : {"metrics", "oracle_targets"}) {
            std::vector<std::pair<std::string, std::string>> flat;
            if (j.contains(section)) flatten(j[section], section, flat);
            for (auto& [metric, value] : flat)
                rows.push_back({f.filename().string(), command, std::move(metric), std::move(value)});
        }
    }
    return rows;
}

void print_report(std::ostream& os, const std::vector<ReportRow>& rows) {
    std::size_t w[4] = {4, 7, 6, 5};
    for (const auto& r : rows) {
        w[0] = std::max(w[0], r.file.size());
        w[1] = std::max(w[1], r.command.size());
        w[2] = std::max(w[2], r.metric.size());
        w[3] = std::max(w[3], r.value.size());
    }
    auto line = [&](std::string_view a, std::string_view b, std::string_view c, std::string_view d) {
        os << std::left << std::setw(static_cast<int>(w[0])) << a << "  " << std::setw(static_cast<int>(w[1])) << b
           << "  " << std::setw(static_cast<int>(w[2])) << c << "  " << d << '\n';
    };
    line("file", "command", "metric", "value");
    for (const auto& r : rows) line(r.file, r.command, r.metric, r.value);
}

fs::path write_report(const fs::path& dir, const std::vector<ReportRow>& rows) {
    std::string content = "file,command,metric,value\n";
    for (const auto& r : rows) content += r.file + "," + r.command + "," + r.metric + "," + r.value + "\n";
    const auto path = dir / "report.csv";
    write_file(path, content);
    return path;
}

}  // namespace weakcast::harness
