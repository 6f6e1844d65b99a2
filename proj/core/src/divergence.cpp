#include "weakcast/divergence.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "weakcast/errors.hpp"

namespace weakcast {

namespace {

void check_sizes(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty()) throw InputError("distributions must share a non-empty alphabet");
}

}  // namespace

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    check_sizes(p, q);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
        acc += p[i] * std::log2(p[i] / q[i]);
    }
    return std::max(acc, 0.0);
}

double variational_distance(std::span<const double> p, std::span<const double> q) {
    check_sizes(p, q);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
    return acc;
}

DivergenceReport pinsker_check(std::span<const double> p, std::span<const double> q, double tolerance) {
    DivergenceReport r;
    r.kl_bits = kl_divergence(p, q);
    r.variational = variational_distance(p, q);
    r.lower_ok = std::numbers::log2e / 2.0 * r.variational * r.variational <= r.kl_bits + tolerance;
    if (std::isinf(r.kl_bits)) {
        r.kl_nats = r.kl_bits;
        r.abs_log_ratio_nats = r.kl_bits;
        r.upper_ok = true;
    } else {
        r.kl_nats = r.kl_bits * std::numbers::ln2;
        double abs_log = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (p[i] > 0.0) abs_log += p[i] * std::abs(std::log(p[i] / q[i]));
        r.abs_log_ratio_nats = abs_log;
        r.upper_ok = r.kl_nats <= abs_log + tolerance &&
                     abs_log <= r.kl_nats + DivergenceReport::kGamma * std::sqrt(r.kl_nats) + tolerance;
    }
    r.pinsker_ok = r.lower_ok && r.upper_ok;
    return r;
}

std::uint64_t fixed_length_bits(std::size_t n, std::size_t alphabet_size) {
    if (alphabet_size < 2) throw InputError("alphabet needs at least two symbols");
    if ((alphabet_size & (alphabet_size - 1)) == 0) {
        std::uint64_t bits = 0;
        while ((std::size_t{1} << bits) < alphabet_size) ++bits;
        return bits * n;
    }
    // |X|^n is never a power of two here, so n log2|X| is not an integer
    // and its ceiling is the answer. Long double keeps the margin safe.
    const long double exact = static_cast<long double>(n) * std::log2(static_cast<long double>(alphabet_size));
    return static_cast<std::uint64_t>(std::ceil(exact));
}

bool satisfies_kraft(std::span<const std::uint64_t> lengths) {
    std::vector<std::uint64_t> sorted(lengths.begin(), lengths.end());
    std::sort(sorted.begin(), sorted.end());
    // `free` counts unused codewords at the current depth; once it exceeds
    // the number of remaining lengths the rest always fit.
    std::uint64_t free = 1;
    std::uint64_t depth = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const std::uint64_t remaining = sorted.size() - i;
        while (depth < sorted[i] && free < remaining) {
            free *= 2;
            ++depth;
        }
        if (free >= remaining) return true;
        if (free == 0) return false;
        --free;
    }
    return true;
}

CodeLengthModel model_from_code_lengths(std::span<const std::uint64_t> lengths, std::size_t n,
                                        std::size_t alphabet_size) {
    if (n == 0) throw InputError("block length must be positive");
    std::uint64_t blocks = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (blocks > (std::uint64_t{1} << 26) / alphabet_size) throw InputError("block table too large");
        blocks *= alphabet_size;
    }
    if (lengths.size() != blocks)
        throw InputError("length table needs " + std::to_string(blocks) + " entries");
    if (std::find(lengths.begin(), lengths.end(), 0) != lengths.end())
        throw InputError("code lengths must be positive");
    if (!satisfies_kraft(lengths)) throw InputError("code lengths violate the Kraft inequality");
    const std::uint64_t cap = fixed_length_bits(n, alphabet_size);
    CodeLengthModel model;
    model.lengths.resize(blocks);
    model.probabilities.resize(blocks);
    const std::uint64_t shortest = 1 + std::min(*std::min_element(lengths.begin(), lengths.end()), cap);
    double total = 0.0;
    for (std::size_t i = 0; i < blocks; ++i) {
        model.lengths[i] = 1 + std::min(lengths[i], cap);
        // Scaled by 2^shortest so the largest term is 1 and nothing underflows.
        model.probabilities[i] = std::ldexp(1.0, -static_cast<int>(model.lengths[i] - shortest));
        total += model.probabilities[i];
    }
    for (double& p : model.probabilities) p /= total;
    return model;
}

}  // namespace weakcast
