#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "weakcast/alphabet.hpp"

namespace weakcast {

/// The observed past X^{-n} = (X_{-n}, ..., X_{-1}), stored most recent
/// first: logical time -t lives at storage position t - 1. Symbol-valued
/// paths hold their symbol indices as exact small integers.
class SamplePath {
public:
    SamplePath() = default;

    /// `lags[t-1]` is X_{-t}.
    static SamplePath from_lags(std::vector<double> lags);
    /// `chronological.back()` is X_{-1}.
    static SamplePath from_chronological(std::span<const double> chronological);
    static SamplePath from_symbols(std::span<const Symbol> chronological);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    /// X_{-t} for 1 <= t <= size().
    double lag(std::size_t t) const;

    std::span<const double> storage() const noexcept { return values_; }

    /// X^{-n}: the n most recent values.
    SamplePath most_recent(std::size_t n) const;

    friend bool operator==(const SamplePath&, const SamplePath&) = default;

private:
    explicit SamplePath(std::vector<double> lags) : values_(std::move(lags)) {}

    std::vector<double> values_;
};

}  // namespace weakcast
