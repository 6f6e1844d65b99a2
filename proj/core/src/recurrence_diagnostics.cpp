#include "weakcast/recurrence_diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "weakcast/errors.hpp"
#include "weakcast/parallel.hpp"
#include "weakcast/recurrence.hpp"
#include "weakcast/rng.hpp"

namespace weakcast {

KacReport kac_diagnostic(const OracleSource& source, std::span<const std::vector<Symbol>> patterns,
                         const KacOptions& options) {
    if (patterns.empty()) throw ConfigError("kac diagnostic needs at least one pattern");
    if (options.trials == 0) throw ConfigError("kac diagnostic needs at least one trial");
    const std::size_t ell = patterns.front().size();
    if (ell == 0) throw ConfigError("kac patterns must be non-empty");

    KacReport report;
    report.trials = options.trials;
    double min_p = 1.0;
    for (const auto& pattern : patterns) {
        if (pattern.size() != ell) throw ConfigError("kac patterns must share one length");
        const double p = pattern_probability(source, pattern);
        if (!(p > 0.0))
            throw DomainError("pattern has zero probability, its recurrence time is undefined");
        min_p = std::min(min_p, p);
        KacRow row;
        row.pattern = pattern;
        row.oracle_mean = 1.0 / p;
        report.rows.push_back(std::move(row));
    }
    const std::size_t length =
        options.path_length > 0 ? options.path_length
                                : ell + static_cast<std::size_t>(std::ceil(100.0 / min_p));
    if (length <= ell) throw ConfigError("kac path length must exceed the pattern length");

    struct Outcome {
        std::optional<std::size_t> row;
        std::size_t tau = 0;
        bool truncated = false;
    };
    std::vector<Outcome> outcomes(options.trials);
    parallel_for(options.trials, options.workers, [&](std::size_t trial) {
        const auto chrono = generate_symbols(source, length, derive_seed(options.seed, trial));
        std::vector<AtomId> lags(chrono.rbegin(), chrono.rend());
        for (std::size_t r = 0; r < patterns.size(); ++r) {
            const auto& pat = patterns[r];
            if (!std::equal(pat.rbegin(), pat.rend(), lags.begin())) continue;
            const auto rec = backward_recurrences(lags, ell, 1);
            outcomes[trial].row = r;
            outcomes[trial].truncated = rec.truncated;
            if (!rec.truncated) outcomes[trial].tau = rec.taus.front();
            break;
        }
    });

    std::vector<double> sums(patterns.size(), 0.0);
    for (const auto& o : outcomes) {
        if (!o.row) continue;
        if (o.truncated) {
            ++report.truncated;
            continue;
        }
        ++report.rows[*o.row].hits;
        sums[*o.row] += static_cast<double>(o.tau);
    }
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        auto& row = report.rows[r];
        if (row.hits == 0) {
            row.empirical_mean = std::nan("");
            row.relative_deviation = std::nan("");
            continue;
        }
        row.empirical_mean = sums[r] / static_cast<double>(row.hits);
        row.relative_deviation = std::abs(row.empirical_mean - row.oracle_mean) / row.oracle_mean;
    }
    return report;
}

}  // namespace weakcast
