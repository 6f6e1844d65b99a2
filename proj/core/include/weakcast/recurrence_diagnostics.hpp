#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "weakcast/alphabet.hpp"
#include "weakcast/sources.hpp"

namespace weakcast {

struct KacRow {
    std::vector<Symbol> pattern;  // chronological, back() is X_{-1}
    std::size_t hits = 0;         // trials whose context equalled the pattern
    double empirical_mean = 0.0;  // mean first recurrence time over those trials
    double oracle_mean = 0.0;     // 1 / P(pattern)
    double relative_deviation = 0.0;
};

struct KacReport {
    std::vector<KacRow> rows;
    std::size_t trials = 0;
    std::size_t truncated = 0;  // trials whose first recurrence fell off the path
};

struct KacOptions {
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    /// 0 picks ell + 100 / min P(pattern), rounded up.
    std::size_t path_length = 0;
    unsigned workers = 1;
};

/// Monte-Carlo check of E{tau_1 | X^{-ell} = pattern} = 1/P(pattern) over
/// independent stationary paths. All patterns must share one length.
KacReport kac_diagnostic(const OracleSource& source, std::span<const std::vector<Symbol>> patterns,
                         const KacOptions& options);

}  // namespace weakcast
