#include "weakcast/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "weakcast/alphabet.hpp"
#include "weakcast/errors.hpp"

namespace weakcast {

namespace {

// Guards floor() against log ratios such as log_2(2^10) landing a hair
// below the integer.
constexpr double kFloorGuard = 1e-9;

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("schedule epsilon must lie in (0, 1)");
}

std::size_t floor_at_least_one(double v) {
    if (!std::isfinite(v) || v >= 1e18) throw ConfigError("schedule value overflows");
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(v + kFloorGuard)));
}

}  // namespace

std::string_view to_string(Schedule::Kind kind) noexcept {
    switch (kind) {
        case Schedule::Kind::finite_default: return "finite_default";
        case Schedule::Kind::known_entropy: return "known_entropy";
        case Schedule::Kind::real_default: return "real_default";
        case Schedule::Kind::fixed: return "fixed";
    }
    return "unknown";
}

Schedule Schedule::finite_default(std::size_t alphabet_size, double epsilon) {
    check_epsilon(epsilon);
    if (alphabet_size < 2) throw ConfigError("schedule alphabet needs at least two symbols");
    Schedule s(Kind::finite_default, ConditionalDistribution::uniform(alphabet_size, true));
    s.epsilon_ = epsilon;
    s.alphabet_size_ = alphabet_size;
    return s;
}

Schedule Schedule::known_entropy(std::size_t alphabet_size, double rate_bits, double epsilon) {
    check_epsilon(epsilon);
    if (alphabet_size < 2) throw ConfigError("schedule alphabet needs at least two symbols");
    if (!(rate_bits > 0.0) || !std::isfinite(rate_bits))
        throw ConfigError("known-entropy schedule needs a positive rate");
    Schedule s(Kind::known_entropy, ConditionalDistribution::uniform(alphabet_size, true));
    s.epsilon_ = epsilon;
    s.alphabet_size_ = alphabet_size;
    s.rate_ = rate_bits;
    return s;
}

Schedule Schedule::real_default(int max_level, std::size_t j_base, ConditionalDistribution default_measure) {
    if (max_level < 1 || max_level > IntervalFieldHierarchy::kLevelLimit)
        throw ConfigError("real-valued schedule max_level out of range");
    if (j_base < 1) throw ConfigError("real-valued schedule j_base must be at least 1");
    if (default_measure.is_pmf()) throw ConfigError("real-valued default measure must be empirical");
    Schedule s(Kind::real_default, default_measure.with_default_used(true));
    s.max_level_ = max_level;
    s.j_base_ = j_base;
    return s;
}

Schedule Schedule::fixed(ScheduleStep step, ConditionalDistribution default_measure) {
    if (step.k < 1 || step.ell < 1 || step.samples < 1)
        throw ConfigError("fixed schedule needs k, ell and J of at least 1");
    Schedule s(Kind::fixed, default_measure.with_default_used(true));
    s.fixed_ = step;
    if (default_measure.is_pmf()) s.alphabet_size_ = default_measure.masses().size();
    return s;
}

Schedule Schedule::with_default(ConditionalDistribution measure) const {
    if (kind_ == Kind::finite_default || kind_ == Kind::known_entropy) {
        if (!measure.is_pmf() || measure.masses().size() != alphabet_size_)
            throw ConfigError("finite default measure must be a pmf over the alphabet");
    }
    if (kind_ == Kind::real_default && measure.is_pmf())
        throw ConfigError("real-valued default measure must be empirical");
    Schedule copy = *this;
    copy.default_ = measure.with_default_used(true);
    return copy;
}

int Schedule::level_for(std::size_t n) const {
    if (n == 0) return 1;
    const double nn = static_cast<double>(n);
    switch (kind_) {
        case Kind::finite_default: {
            const double raw = (1.0 - epsilon_) * std::log(nn) / std::log(static_cast<double>(alphabet_size_));
            return static_cast<int>(floor_at_least_one(raw));
        }
        case Kind::known_entropy:
            return static_cast<int>(floor_at_least_one((1.0 - epsilon_) * std::log2(nn) / rate_));
        case Kind::real_default: {
            int best = 1;
            for (int k = 1; k <= max_level_; ++k) {
                if (budget(k) <= nn)
                    best = k;
                else
                    break;
            }
            return best;
        }
        case Kind::fixed: return fixed_.k;
    }
    return 1;
}

std::size_t Schedule::context_length(int k) const {
    if (k < 1) throw ConfigError("schedule level must be at least 1");
    return kind_ == Kind::fixed ? fixed_.ell : static_cast<std::size_t>(k);
}

std::size_t Schedule::sample_count(int k) const {
    if (k < 1) throw ConfigError("schedule level must be at least 1");
    const double kk = k;
    switch (kind_) {
        case Kind::finite_default:
            return floor_at_least_one(
                std::pow(static_cast<double>(alphabet_size_), kk * epsilon_ / (1.0 - epsilon_)));
        case Kind::known_entropy:
            return floor_at_least_one(std::exp2(kk * rate_ * epsilon_ / (1.0 - epsilon_)));
        case Kind::real_default: return j_base_ << k;
        case Kind::fixed: return fixed_.samples;
    }
    return 1;
}

double Schedule::slack(int k) const {
    if (k < 1) throw ConfigError("schedule level must be at least 1");
    return kind_ == Kind::real_default ? 1.0 / k : epsilon_;
}

ScheduleStep Schedule::step_for(std::size_t n) const {
    const int k = level_for(n);
    return {k, context_length(k), sample_count(k)};
}

double Schedule::budget(int k) const {
    const double kk = k;
    const double j = static_cast<double>(sample_count(k));
    switch (kind_) {
        case Kind::finite_default: return j * std::pow(static_cast<double>(alphabet_size_), kk);
        case Kind::known_entropy: return j * std::exp2(kk * rate_);
        case Kind::real_default: {
            const double atoms = static_cast<double>(IntervalFieldHierarchy::atom_count(k));
            return kk + j * std::pow(atoms, kk) / slack(k);
        }
        case Kind::fixed: return static_cast<double>(fixed_.ell + fixed_.samples);
    }
    return 0.0;
}

void Schedule::validate(std::span<const std::size_t> n_grid) const {
    if (n_grid.empty()) throw ConfigError("n grid must not be empty");
    ScheduleStep prev{};
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const std::size_t n = n_grid[i];
        const std::string at = "n = " + std::to_string(n);
        if (n == 0) throw ConfigError("n grid entries must be positive");
        if (i > 0 && n <= n_grid[i - 1]) throw ConfigError("n grid must be strictly increasing at " + at);
        const auto step = step_for(n);
        if (i > 0 && (step.k < prev.k || step.ell < prev.ell || step.samples < prev.samples))
            throw ConfigError("schedule is not monotone at " + at);
        prev = step;
        const double nn = static_cast<double>(n);
        switch (kind_) {
            case Kind::finite_default:
            case Kind::known_entropy: {
                // Below the first unclamped level the floor of 1 is in force
                // and the constraint only holds eventually.
                const double raw = kind_ == Kind::finite_default
                                       ? (1.0 - epsilon_) * std::log(nn) / std::log(static_cast<double>(alphabet_size_))
                                       : (1.0 - epsilon_) * std::log2(nn) / rate_;
                if (raw + kFloorGuard >= 1.0 && budget(step.k) > nn * (1.0 + 1e-12))
                    throw ConfigError("J_k |X|^k exceeds n at " + at);
                break;
            }
            case Kind::real_default:
                if (budget(step.k) > nn)
                    throw ConfigError("record too short for the real-valued schedule at " + at +
                                      " (needs " + std::to_string(static_cast<std::size_t>(budget(step.k))) + ")");
                break;
            case Kind::fixed: break;
        }
    }
}

}  // namespace weakcast
