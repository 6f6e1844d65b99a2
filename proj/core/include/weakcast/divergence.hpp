#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace weakcast {

/// sum p log2(p/q) with 0 log 0 = 0. Returns +infinity when q vanishes
/// somewhere p does not. Throws InputError on mismatched sizes.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// sum |p - q|, in [0, 2].
double variational_distance(std::span<const double> p, std::span<const double> q);

struct DivergenceReport {
    static constexpr double kGamma = 1.4142135623730951;  // sqrt 2, natural-log units

    double kl_bits = 0.0;
    double variational = 0.0;
    double kl_nats = 0.0;
    double abs_log_ratio_nats = 0.0;  // E_p |ln(p/q)|, infinite with the divergence
    bool lower_ok = false;            // (log2 e)/2 V^2 <= I
    bool upper_ok = false;            // I <= E|ln p/q| <= I + Gamma sqrt(I), nats
    bool pinsker_ok = false;
};

/// Checks both inequalities within an absolute tolerance. An infinite
/// divergence satisfies the first and skips the second.
DivergenceReport pinsker_check(std::span<const double> p, std::span<const double> q,
                               double tolerance = 1e-9);

/// Smallest c with 2^c >= alphabet_size^n.
std::uint64_t fixed_length_bits(std::size_t n, std::size_t alphabet_size);

struct CodeLengthModel {
    std::vector<std::uint64_t> lengths;  // l' = 1 + min(l, fixed_length_bits)
    std::vector<double> probabilities;   // 2^-l' normalized
};

/// Turns a prefix-code length table over all |X|^n blocks (lexicographic,
/// first symbol most significant) into a normalized block model. Throws
/// InputError if the lengths violate the Kraft inequality.
CodeLengthModel model_from_code_lengths(std::span<const std::uint64_t> lengths, std::size_t n,
                                        std::size_t alphabet_size);

/// Exact Kraft test on integer code lengths.
bool satisfies_kraft(std::span<const std::uint64_t> lengths);

}  // namespace weakcast
