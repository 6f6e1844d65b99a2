#include "weakcast/pattern_estimator.hpp"

#include <string>

#include "weakcast/errors.hpp"

namespace weakcast {

namespace {

ConditionalDistribution distribution_from_record(const SamplePath& path, const Quantizer& quantizer,
                                                 const RecurrenceRecord& record) {
    if (quantizer.is_finite()) {
        std::vector<std::size_t> counts(quantizer.alphabet().size(), 0);
        for (std::size_t tau : record.taus) ++counts[quantizer.quantize(path.lag(tau), 1)];
        return ConditionalDistribution::from_counts(counts);
    }
    std::vector<double> samples;
    samples.reserve(record.taus.size());
    for (std::size_t tau : record.taus) samples.push_back(path.lag(tau));
    return ConditionalDistribution::empirical(std::move(samples));
}

[[noreturn]] void throw_truncated(const RecurrenceRecord& record) {
    throw InsufficientDataError("found " + std::to_string(record.taus.size()) + " of " +
                                    std::to_string(record.requested_j) + " recurrences before the path ended",
                                record.taus.size(), record.requested_j);
}

}  // namespace

PatternEstimate estimate_fixed_k(const SamplePath& path, std::span<const AtomId> lag_codes,
                                 const Quantizer& quantizer, std::size_t ell, std::size_t samples) {
    if (lag_codes.size() != path.size()) throw InputError("quantized codes do not match the path");
    auto record = backward_recurrences(lag_codes, ell, samples);
    if (record.truncated) throw_truncated(record);
    auto dist = distribution_from_record(path, quantizer, record);
    return {std::move(dist), std::move(record)};
}

PatternEstimate estimate_fixed_k(const SamplePath& path, const Quantizer& quantizer,
                                 const PatternQuery& query, SearchEngine engine) {
    auto record = backward_recurrences(path, quantizer, query, engine);
    if (record.truncated) throw_truncated(record);
    auto dist = distribution_from_record(path, quantizer, record);
    return {std::move(dist), std::move(record)};
}

TruncatedEstimate estimate_truncated_detailed(const SamplePath& path, const Schedule& schedule,
                                              const Quantizer& quantizer) {
    TruncatedEstimate out{schedule.default_measure(), schedule.step_for(path.size()), std::nullopt, true};
    if (path.size() < out.step.ell || path.empty()) return out;
    const PatternQuery query{out.step.k, out.step.ell, out.step.samples};
    auto record = backward_recurrences(path, quantizer, query);
    if (!record.truncated) {
        out.distribution = distribution_from_record(path, quantizer, record);
        out.default_used = false;
    }
    out.record = std::move(record);
    return out;
}

ConditionalDistribution estimate_truncated(const SamplePath& path, const Schedule& schedule,
                                           const Quantizer& quantizer) {
    return estimate_truncated_detailed(path, schedule, quantizer).distribution;
}

PatternEstimate estimate_with_side_info(const SamplePath& x_path, const SamplePath& y_path, double y_now,
                                        const Quantizer& x_quantizer, const Quantizer& y_quantizer,
                                        const PatternQuery& query) {
    if (x_path.size() != y_path.size()) throw InputError("side-information paths must be aligned");
    if (query.ell == 0 || query.samples == 0) throw InputError("context length and J must be at least 1");
    const std::size_t n = x_path.size();
    if (n < query.ell) throw InputError("path is shorter than the context length");
    // xq[i] = [X_{-i}], yq[i] = [Y_{-i}] with yq[0] the current side value.
    std::vector<AtomId> xq(n + 1, 0);
    std::vector<AtomId> yq(n + 1);
    yq[0] = y_quantizer.quantize(y_now, query.level);
    for (std::size_t i = 1; i <= n; ++i) {
        xq[i] = x_quantizer.quantize(x_path.lag(i), query.level);
        yq[i] = y_quantizer.quantize(y_path.lag(i), query.level);
    }
    RecurrenceRecord record;
    record.ell = query.ell;
    record.requested_j = query.samples;
    const std::size_t ell = query.ell;
    for (std::size_t tau = 1; tau + ell <= n && record.taus.size() < query.samples; ++tau) {
        bool match = yq[tau] == yq[0];
        for (std::size_t i = 1; i <= ell && match; ++i) match = xq[tau + i] == xq[i] && yq[tau + i] == yq[i];
        if (match) record.taus.push_back(tau);
    }
    record.truncated = record.taus.size() < query.samples;
    if (record.truncated) throw_truncated(record);
    record.lambda = ell + record.taus.back();
    auto dist = distribution_from_record(x_path, x_quantizer, record);
    return {std::move(dist), std::move(record)};
}

}  // namespace weakcast
