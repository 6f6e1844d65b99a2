#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "weakcast/distribution.hpp"

namespace weakcast {

/// Parameters used for one record length n.
struct ScheduleStep {
    int k = 1;               // quantizer level / block index
    std::size_t ell = 1;     // context length
    std::size_t samples = 1; // J_k
};

/// Growth path (k(n), ell_k, J_k, eps_k) plus the default measure returned
/// when the search depth exceeds the available data. All formulas round
/// down with a floor of 1.
class Schedule {
public:
    enum class Kind { finite_default, known_entropy, real_default, fixed };

    /// k(n) = floor((1-eps) log_|X| n), ell_k = k, J_k = floor(|X|^(k eps/(1-eps))),
    /// default uniform over the alphabet. Then J_k |X|^k <= n.
    static Schedule finite_default(std::size_t alphabet_size, double epsilon = 0.5);

    /// k(n) = floor((1-eps) log2 n / R), ell_k = k, J_k = floor(2^(k R eps/(1-eps)))
    /// for a user-supplied R above the entropy rate.
    static Schedule known_entropy(std::size_t alphabet_size, double rate_bits, double epsilon = 0.5);

    /// Interval hierarchy: ell_k = k, eps_k = 1/k, J_k = j_base 2^k and k(n)
    /// the largest level with ell_k + J_k |atoms_k|^ell_k / eps_k <= n.
    static Schedule real_default(int max_level, std::size_t j_base = 32,
                                 ConditionalDistribution default_measure = ConditionalDistribution::dirac(0.0));

    /// Constant (k, ell, J) for every n.
    static Schedule fixed(ScheduleStep step, ConditionalDistribution default_measure);

    Kind kind() const noexcept { return kind_; }
    double epsilon() const noexcept { return epsilon_; }
    std::size_t alphabet_size() const noexcept { return alphabet_size_; }
    double rate_bits() const noexcept { return rate_; }
    int max_level() const noexcept { return max_level_; }
    std::size_t j_base() const noexcept { return j_base_; }

    int level_for(std::size_t n) const;
    std::size_t context_length(int k) const;
    std::size_t sample_count(int k) const;
    double slack(int k) const;
    ScheduleStep step_for(std::size_t n) const;

    const ConditionalDistribution& default_measure() const noexcept { return default_; }
    Schedule with_default(ConditionalDistribution measure) const;

    /// Data budget ell_k + J_k |atoms_k|^ell_k / eps_k of the real-valued
    /// schedule (J_k |X|^k for the finite ones).
    double budget(int k) const;

    /// Checks the grid is strictly increasing, the step parameters are
    /// nondecreasing along it, and the budget constraint holds at every n.
    /// Throws ConfigError naming the offending n.
    void validate(std::span<const std::size_t> n_grid) const;

private:
    Schedule(Kind kind, ConditionalDistribution default_measure)
        : kind_(kind), default_(std::move(default_measure)) {}

    Kind kind_;
    double epsilon_ = 0.5;
    std::size_t alphabet_size_ = 0;
    double rate_ = 0.0;
    int max_level_ = 0;
    std::size_t j_base_ = 0;
    ScheduleStep fixed_{};
    ConditionalDistribution default_;
};

std::string_view to_string(Schedule::Kind kind) noexcept;

}  // namespace weakcast
