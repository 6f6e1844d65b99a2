#include "weakcast/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "weakcast/errors.hpp"

namespace weakcast {

std::vector<AtomId> quantize_path(const SamplePath& path, const Quantizer& quantizer, int level) {
    quantizer.check_level(level);
    std::vector<AtomId> codes;
    codes.reserve(path.size());
    for (double x : path.storage()) codes.push_back(quantizer.quantize(x, level));
    return codes;
}

namespace {

void check_query(std::size_t length, std::size_t ell, std::size_t samples) {
    if (ell == 0) throw InputError("context length must be at least 1");
    if (samples == 0) throw InputError("sample count must be at least 1");
    if (length < ell) throw InputError("path is shorter than the context length");
}

void finish(RecurrenceRecord& rec) {
    rec.truncated = rec.taus.size() < rec.requested_j;
    if (!rec.truncated) rec.lambda = rec.ell + rec.taus.back();
}

}  // namespace

RecurrenceRecord backward_recurrences(std::span<const AtomId> lag_codes, std::size_t ell,
                                      std::size_t samples) {
    check_query(lag_codes.size(), ell, samples);
    RecurrenceRecord rec;
    rec.ell = ell;
    rec.requested_j = samples;
    rec.taus.reserve(samples);
    const std::size_t n = lag_codes.size();
    for (std::size_t t = 1; t + ell <= n && rec.taus.size() < samples; ++t) {
        std::size_t i = 0;
        while (i < ell && lag_codes[t + i] == lag_codes[i]) ++i;
        if (i == ell) rec.taus.push_back(t);
    }
    finish(rec);
    return rec;
}

RecurrenceRecord backward_recurrences(const SamplePath& path, const Quantizer& quantizer,
                                      const PatternQuery& query, SearchEngine engine) {
    check_query(path.size(), query.ell, query.samples);
    const auto codes = quantize_path(path, quantizer, query.level);
    if (engine == SearchEngine::naive) return backward_recurrences(codes, query.ell, query.samples);
    PatternIndex index(codes, quantizer.radix(query.level), query.ell);
    return index.recurrences(query.samples);
}

bool PatternPacker::fits(std::uint64_t radix, std::size_t ell) noexcept {
    if (radix < 1 || ell < 1) return false;
    std::uint64_t acc = 1;
    for (std::size_t i = 0; i < ell; ++i) {
        if (acc > std::numeric_limits<std::uint64_t>::max() / radix) return false;
        acc *= radix;
    }
    return true;
}

PatternPacker::PatternPacker(std::uint64_t radix, std::size_t ell) : radix_(radix), ell_(ell), top_(1) {
    if (!fits(radix, ell))
        throw ConfigError("pattern of length " + std::to_string(ell) + " over " +
                          std::to_string(radix) + " codes does not pack into 64 bits");
    for (std::size_t i = 1; i < ell; ++i) top_ *= radix;
}

std::uint64_t PatternPacker::pack(std::span<const AtomId> codes) const {
    std::uint64_t key = 0;
    for (std::size_t i = codes.size(); i-- > 0;) key = key * radix_ + codes[i];
    return key;
}

PatternIndex::PatternIndex(std::span<const AtomId> lag_codes, std::uint64_t radix, std::size_t ell)
    : packer_(radix, ell) {
    if (ell == 0) throw InputError("context length must be at least 1");
    if (lag_codes.size() < ell) return;
    windows_ = lag_codes.size() - ell + 1;
    keys_.resize(windows_);
    std::uint64_t key = packer_.pack(lag_codes.subspan(0, ell));
    for (std::size_t s = 0; s < windows_; ++s) {
        if (s > 0) key = packer_.roll(key, lag_codes[s - 1], lag_codes[s + ell - 1]);
        keys_[s] = key;
        starts_[key].push_back(static_cast<std::uint32_t>(s));
    }
}

RecurrenceRecord PatternIndex::recurrences(std::size_t samples, std::size_t origin) const {
    if (samples == 0) throw InputError("sample count must be at least 1");
    if (origin >= windows_) throw InputError("path is shorter than the context length");
    RecurrenceRecord rec;
    rec.ell = packer_.ell();
    rec.requested_j = samples;
    const auto& starts = starts_.at(keys_[origin]);
    auto it = std::upper_bound(starts.begin(), starts.end(), static_cast<std::uint32_t>(origin));
    for (; it != starts.end() && rec.taus.size() < samples; ++it) rec.taus.push_back(*it - origin);
    finish(rec);
    return rec;
}

RecurrenceRecord forward_recurrences(std::span<const AtomId> codes, std::size_t origin,
                                     std::size_t ell, std::size_t samples) {
    if (ell == 0) throw InputError("context length must be at least 1");
    if (samples == 0) throw InputError("sample count must be at least 1");
    if (origin < ell || origin > codes.size())
        throw InputError("origin leaves no room for the context pattern");
    RecurrenceRecord rec;
    rec.ell = ell;
    rec.requested_j = samples;
    const std::size_t base = origin - ell;
    // Window at shift t covers [base + t, origin + t); its sample X_t sits at origin + t.
    for (std::size_t t = 1; origin + t < codes.size() && rec.taus.size() < samples; ++t) {
        std::size_t i = 0;
        while (i < ell && codes[base + t + i] == codes[base + i]) ++i;
        if (i == ell) rec.taus.push_back(t);
    }
    finish(rec);
    return rec;
}

RecurrenceRecord forward_recurrences(std::span<const double> chronological, std::size_t origin,
                                     const Quantizer& quantizer, const PatternQuery& query) {
    quantizer.check_level(query.level);
    std::vector<AtomId> codes;
    codes.reserve(chronological.size());
    for (double x : chronological) codes.push_back(quantizer.quantize(x, query.level));
    return forward_recurrences(codes, origin, query.ell, query.samples);
}

double avg_inter_recurrence(const RecurrenceRecord& record) {
    if (record.truncated || record.taus.empty() || record.taus.size() != record.requested_j)
        throw InputError("average inter-recurrence time needs a complete record");
    return static_cast<double>(record.taus.back()) / static_cast<double>(record.taus.size());
}

std::vector<GrowthPoint> growth_rate_diagnostic(const SamplePath& path, const Quantizer& quantizer,
                                                std::span<const GrowthStep> schedule) {
    std::vector<GrowthPoint> curve;
    curve.reserve(schedule.size());
    int cached_level = -1;
    std::vector<AtomId> codes;
    for (const auto& step : schedule) {
        if (step.k < 1) throw ConfigError("growth schedule levels start at 1");
        GrowthPoint point;
        point.k = step.k;
        point.samples = step.samples;
        if (path.size() >= step.ell) {
            if (quantizer.is_finite() ? cached_level < 0 : cached_level != step.k) {
                codes = quantize_path(path, quantizer, step.k);
                cached_level = step.k;
            }
            const auto rec = backward_recurrences(codes, step.ell, step.samples);
            if (!rec.truncated) {
                point.truncated = false;
                point.tau_j = rec.taus.back();
                point.lambda = rec.lambda;
                point.avg_gap = avg_inter_recurrence(rec);
                point.normalized_log_rate = std::log2(*point.avg_gap) / step.k;
            }
        }
        curve.push_back(point);
    }
    return curve;
}

std::vector<GrowthStep> block_growth_schedule(int k_min, int k_max, std::size_t samples) {
    if (k_min < 1 || k_max < k_min) throw ConfigError("growth schedule needs 1 <= k_min <= k_max");
    std::vector<GrowthStep> steps;
    for (int k = k_min; k <= k_max; ++k)
        steps.push_back({k, static_cast<std::size_t>(k), samples});
    return steps;
}

}  // namespace weakcast
