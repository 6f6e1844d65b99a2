#include "weakcast/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "weakcast/errors.hpp"

namespace weakcast {

ConditionalDistribution ConditionalDistribution::pmf(std::vector<double> masses, bool default_used) {
    if (masses.empty()) throw InputError("pmf needs at least one atom");
    double sum = 0.0;
    for (double m : masses) {
        if (!std::isfinite(m) || m < 0.0) throw InputError("pmf masses must be finite and non-negative");
        sum += m;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InputError("pmf masses must sum to 1");
    return ConditionalDistribution(Mode::pmf, std::move(masses), default_used);
}

ConditionalDistribution ConditionalDistribution::from_counts(std::span<const std::size_t> counts,
                                                             bool default_used) {
    const auto total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (total == 0) throw InputError("cannot normalize zero counts");
    std::vector<double> masses(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        masses[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return ConditionalDistribution(Mode::pmf, std::move(masses), default_used);
}

ConditionalDistribution ConditionalDistribution::uniform(std::size_t size, bool default_used) {
    if (size == 0) throw InputError("uniform pmf needs at least one atom");
    return ConditionalDistribution(Mode::pmf, std::vector<double>(size, 1.0 / static_cast<double>(size)),
                                   default_used);
}

ConditionalDistribution ConditionalDistribution::empirical(std::vector<double> samples, bool default_used) {
    if (samples.empty()) throw InputError("empirical measure needs at least one sample");
    for (double x : samples)
        if (!std::isfinite(x)) throw InputError("empirical samples must be finite");
    return ConditionalDistribution(Mode::empirical, std::move(samples), default_used);
}

ConditionalDistribution ConditionalDistribution::dirac(double x, bool default_used) {
    return empirical({x}, default_used);
}

ConditionalDistribution ConditionalDistribution::uniform_grid(double lo, double hi, std::size_t points,
                                                              bool default_used) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ConfigError("uniform default needs a finite interval lo < hi");
    if (points == 0) throw ConfigError("uniform default needs at least one point");
    std::vector<double> samples(points);
    const double width = (hi - lo) / static_cast<double>(points);
    for (std::size_t i = 0; i < points; ++i) samples[i] = lo + (static_cast<double>(i) + 0.5) * width;
    return empirical(std::move(samples), default_used);
}

ConditionalDistribution ConditionalDistribution::with_default_used(bool flag) const {
    auto copy = *this;
    copy.default_used_ = flag;
    return copy;
}

std::span<const double> ConditionalDistribution::masses() const {
    if (mode_ != Mode::pmf) throw InputError("distribution is empirical, not a pmf");
    return values_;
}

std::span<const double> ConditionalDistribution::samples() const {
    if (mode_ != Mode::empirical) throw InputError("distribution is a pmf, not an empirical measure");
    return values_;
}

double ConditionalDistribution::mass(double x) const {
    if (mode_ == Mode::pmf) {
        if (x < 0 || x != std::floor(x) || x >= static_cast<double>(values_.size())) return 0.0;
        return values_[static_cast<std::size_t>(x)];
    }
    const auto hits = std::count(values_.begin(), values_.end(), x);
    return static_cast<double>(hits) / static_cast<double>(values_.size());
}

double ConditionalDistribution::mean() const {
    return integrate([](double x) { return x; }, *this);
}

double integrate(const std::function<double(double)>& h, const ConditionalDistribution& d) {
    double acc = 0.0;
    if (d.is_pmf()) {
        const auto m = d.masses();
        for (std::size_t x = 0; x < m.size(); ++x)
            if (m[x] > 0.0) acc += h(static_cast<double>(x)) * m[x];
        return acc;
    }
    const auto s = d.samples();
    for (double x : s) acc += h(x);
    return acc / static_cast<double>(s.size());
}

double integrate(std::span<const double> table, const ConditionalDistribution& d) {
    if (!d.is_pmf()) throw InputError("table integrands need a pmf");
    const auto m = d.masses();
    double acc = 0.0;
    for (std::size_t x = 0; x < m.size(); ++x) {
        if (m[x] == 0.0) continue;
        if (x >= table.size()) throw InputError("integrand table does not cover the support");
        acc += table[x] * m[x];
    }
    return acc;
}

}  // namespace weakcast
