#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace weakcast {

/// Return type of every estimator: either a pmf over symbol indices or an
/// equally weighted empirical measure on real sample values.
class ConditionalDistribution {
public:
    enum class Mode { pmf, empirical };

    /// Masses must be non-negative and sum to 1 within 1e-12.
    static ConditionalDistribution pmf(std::vector<double> masses, bool default_used = false);
    /// Exact counts/J masses.
    static ConditionalDistribution from_counts(std::span<const std::size_t> counts,
                                               bool default_used = false);
    static ConditionalDistribution uniform(std::size_t size, bool default_used = false);
    /// Each sample carries weight 1/J.
    static ConditionalDistribution empirical(std::vector<double> samples, bool default_used = false);
    static ConditionalDistribution dirac(double x, bool default_used = false);
    /// Uniform law on [lo, hi) discretized to `points` cell midpoints.
    static ConditionalDistribution uniform_grid(double lo, double hi, std::size_t points,
                                                bool default_used = false);

    Mode mode() const noexcept { return mode_; }
    bool is_pmf() const noexcept { return mode_ == Mode::pmf; }
    bool default_used() const noexcept { return default_used_; }
    ConditionalDistribution with_default_used(bool flag) const;

    /// pmf mode only.
    std::span<const double> masses() const;
    /// empirical mode only, in the order the samples were collected.
    std::span<const double> samples() const;

    /// pmf: mass of symbol x. empirical: fraction of samples equal to x.
    double mass(double x) const;
    double mean() const;

    friend bool operator==(const ConditionalDistribution&, const ConditionalDistribution&) = default;

private:
    ConditionalDistribution(Mode mode, std::vector<double> values, bool default_used)
        : mode_(mode), values_(std::move(values)), default_used_(default_used) {}

    Mode mode_;
    std::vector<double> values_;
    bool default_used_;
};

/// sum h(x) mass(x) over pmf atoms (x is the symbol index) or the sample
/// average of h in empirical mode.
double integrate(const std::function<double(double)>& h, const ConditionalDistribution& d);

/// Table form for pmf mode: h given per symbol. Throws InputError if the
/// table does not cover the support or the distribution is empirical.
double integrate(std::span<const double> table, const ConditionalDistribution& d);

}  // namespace weakcast
