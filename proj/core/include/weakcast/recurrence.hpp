#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "weakcast/alphabet.hpp"
#include "weakcast/sample_path.hpp"

namespace weakcast {

/// Parameters of one pattern search: quantizer level k, context length ell
/// and the number of recurrences J to collect.
struct PatternQuery {
    int level = 1;
    std::size_t ell = 1;
    std::size_t samples = 1;
};

/// Recurrence times tau_1 < ... < tau_J of the quantized context pattern.
/// `lambda` (= ell + tau_J, the search depth) is present only when all J
/// recurrences were found.
struct RecurrenceRecord {
    std::vector<std::size_t> taus;
    std::optional<std::size_t> lambda;
    std::size_t ell = 0;
    std::size_t requested_j = 0;
    bool truncated = true;

    friend bool operator==(const RecurrenceRecord&, const RecurrenceRecord&) = default;
};

enum class SearchEngine { naive, indexed };

/// Quantized path in storage (lag) order: element t-1 is [X_{-t}]^k.
std::vector<AtomId> quantize_path(const SamplePath& path, const Quantizer& quantizer, int level);

/// Naive backward scan over lag-ordered codes. The pattern is codes[0, ell);
/// a recurrence at lag t is a match of codes[t, t + ell). Scanning stops
/// when the window would leave the path.
RecurrenceRecord backward_recurrences(std::span<const AtomId> lag_codes, std::size_t ell,
                                      std::size_t samples);

RecurrenceRecord backward_recurrences(const SamplePath& path, const Quantizer& quantizer,
                                      const PatternQuery& query,
                                      SearchEngine engine = SearchEngine::naive);

/// Packs ell codes of the given radix into one 64-bit key (first code least
/// significant). Throws ConfigError when radix^ell does not fit.
class PatternPacker {
public:
    PatternPacker(std::uint64_t radix, std::size_t ell);

    std::uint64_t radix() const noexcept { return radix_; }
    std::size_t ell() const noexcept { return ell_; }

    std::uint64_t pack(std::span<const AtomId> codes) const;

    /// Key of the window shifted by one: drops `leaving` (the least
    /// significant code) and appends `entering` as the most significant.
    std::uint64_t roll(std::uint64_t key, AtomId leaving, AtomId entering) const noexcept {
        return (key - leaving) / radix_ + static_cast<std::uint64_t>(entering) * top_;
    }

    static bool fits(std::uint64_t radix, std::size_t ell) noexcept;

private:
    std::uint64_t radix_;
    std::size_t ell_;
    std::uint64_t top_;  // radix^(ell-1)
};

/// Index engine: every lag-ordered window of length ell grouped by its
/// packed key, built in one pass. Queries are O(J).
class PatternIndex {
public:
    PatternIndex(std::span<const AtomId> lag_codes, std::uint64_t radix, std::size_t ell);

    /// Recurrences of the pattern that starts at lag position `origin`
    /// (origin 0 is the usual X^{-ell} context).
    RecurrenceRecord recurrences(std::size_t samples, std::size_t origin = 0) const;

    std::size_t window_count() const noexcept { return windows_; }

private:
    PatternPacker packer_;
    std::size_t windows_ = 0;
    std::vector<std::uint64_t> keys_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> starts_;
};

/// Future recurrence times. `chronological[origin]` is X_0 and the pattern is
/// the ell values before it. A candidate t is accepted only if the sample
/// X_t that follows the matched window is still inside the path.
RecurrenceRecord forward_recurrences(std::span<const AtomId> chronological_codes, std::size_t origin,
                                     std::size_t ell, std::size_t samples);

RecurrenceRecord forward_recurrences(std::span<const double> chronological, std::size_t origin,
                                     const Quantizer& quantizer, const PatternQuery& query);

/// tau_J / J, the mean gap between successive recurrences.
double avg_inter_recurrence(const RecurrenceRecord& record);

struct GrowthStep {
    int k = 1;
    std::size_t ell = 1;
    std::size_t samples = 1;
};

/// One point of the normalized recurrence growth curve. Optional fields are
/// empty when the search was truncated.
struct GrowthPoint {
    int k = 0;
    std::size_t samples = 0;
    std::optional<std::size_t> tau_j;
    std::optional<std::size_t> lambda;
    std::optional<double> avg_gap;
    std::optional<double> normalized_log_rate;  // (1/k) log2(tau_J / J)
    bool truncated = true;
};

std::vector<GrowthPoint> growth_rate_diagnostic(const SamplePath& path, const Quantizer& quantizer,
                                                std::span<const GrowthStep> schedule);

/// Finite-alphabet convenience: steps (k, k, J) for k in [k_min, k_max].
std::vector<GrowthStep> block_growth_schedule(int k_min, int k_max, std::size_t samples);

}  // namespace weakcast
