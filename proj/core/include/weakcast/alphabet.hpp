#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace weakcast {

using Symbol = std::uint32_t;
using AtomId = std::uint32_t;

/// Ordered set of distinct symbol labels. Symbols are addressed by index.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> symbols);

    /// Labels "0", "1", ..., "size-1".
    static Alphabet of_size(std::size_t size);

    std::size_t size() const noexcept { return symbols_.size(); }
    const std::string& label(Symbol s) const;
    Symbol index_of(std::string_view label) const;
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

/// One atom of a level of the interval hierarchy. Tail atoms use infinite
/// endpoints. Intervals are half-open: [lo, hi).
struct Atom {
    int level = 0;
    AtomId index = 0;
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const noexcept { return lo <= x && x < hi; }
    /// "[lo,hi)" with "-inf" / "inf" for the tails.
    std::string to_string() const;
};

/// Nested dyadic partitions of the real line. Level k covers [-k, k) with
/// cells of width 2^-k plus the tails (-inf, -k) and [k, inf). All
/// breakpoints are dyadic, so level k+1 refines level k exactly.
///
/// Atom ids at level k: 0 is the left tail, 1..2k*2^k are the cells from
/// left to right, 2k*2^k + 1 is the right tail.
class IntervalFieldHierarchy {
public:
    static constexpr int kLevelLimit = 24;

    explicit IntervalFieldHierarchy(int max_level);

    int max_level() const noexcept { return max_level_; }

    /// |atoms(k)| = 2k * 2^k + 2.
    static std::uint64_t atom_count(int level);

    AtomId quantize(double x, int level) const;
    std::vector<AtomId> quantize_block(std::span<const double> segment, int level) const;
    Atom atom(int level, AtomId id) const;

    friend bool operator==(const IntervalFieldHierarchy&, const IntervalFieldHierarchy&) = default;

private:
    void check_level(int level) const;

    int max_level_;
};

/// The map from outcomes to finite patterns. In finite-alphabet mode it is
/// the identity on symbol indices (the level is ignored); in real mode it
/// is the interval hierarchy.
class Quantizer {
public:
    static Quantizer finite(Alphabet alphabet);
    static Quantizer intervals(IntervalFieldHierarchy hierarchy);

    bool is_finite() const noexcept { return std::holds_alternative<Alphabet>(impl_); }
    const Alphabet& alphabet() const;
    const IntervalFieldHierarchy& hierarchy() const;

    AtomId quantize(double x, int level) const;
    std::vector<AtomId> quantize_block(std::span<const double> segment, int level) const;

    /// Number of distinct codes quantize() can return at this level.
    std::uint64_t radix(int level) const;

    /// Validates that `level` is usable (always true in finite mode).
    void check_level(int level) const;

private:
    explicit Quantizer(std::variant<Alphabet, IntervalFieldHierarchy> impl) : impl_(std::move(impl)) {}

    std::variant<Alphabet, IntervalFieldHierarchy> impl_;
};

}  // namespace weakcast
