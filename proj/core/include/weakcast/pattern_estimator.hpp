#pragma once

#include <optional>

#include "weakcast/alphabet.hpp"
#include "weakcast/distribution.hpp"
#include "weakcast/recurrence.hpp"
#include "weakcast/sample_path.hpp"
#include "weakcast/schedule.hpp"

namespace weakcast {

struct PatternEstimate {
    ConditionalDistribution distribution;
    RecurrenceRecord record;
};

/// Empirical conditional law of the values that followed the J most recent
/// recurrences of the quantized ell-context. Finite mode gives counts/J over
/// the alphabet; real mode gives the empirical measure on the J samples.
/// Throws InsufficientDataError when the record is truncated.
PatternEstimate estimate_fixed_k(const SamplePath& path, const Quantizer& quantizer,
                                 const PatternQuery& query, SearchEngine engine = SearchEngine::naive);

/// Same, from an already quantized lag-ordered path.
PatternEstimate estimate_fixed_k(const SamplePath& path, std::span<const AtomId> lag_codes,
                                 const Quantizer& quantizer, std::size_t ell, std::size_t samples);

struct TruncatedEstimate {
    ConditionalDistribution distribution;
    ScheduleStep step;
    std::optional<RecurrenceRecord> record;  // empty when n < ell
    bool default_used = false;
};

/// Estimate at the schedule's (k(n), ell, J) for n = path.size(), or the
/// schedule's default measure when the search depth exceeds n.
TruncatedEstimate estimate_truncated_detailed(const SamplePath& path, const Schedule& schedule,
                                              const Quantizer& quantizer);

ConditionalDistribution estimate_truncated(const SamplePath& path, const Schedule& schedule,
                                           const Quantizer& quantizer);

/// Side-information estimate. The pattern is the joint quantized block of
/// X_{-ell..-1}, Y_{-ell..-1} and the current side value Y_0; the estimate
/// averages point masses at the X values at the matched lags.
/// `x_path` and `y_path` must have equal length.
PatternEstimate estimate_with_side_info(const SamplePath& x_path, const SamplePath& y_path, double y_now,
                                        const Quantizer& x_quantizer, const Quantizer& y_quantizer,
                                        const PatternQuery& query);

}  // namespace weakcast
