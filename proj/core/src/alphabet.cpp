#include "weakcast/alphabet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "weakcast/errors.hpp"

namespace weakcast {

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2) throw ConfigError("alphabet needs at least two symbols");
    std::set<std::string> seen(symbols_.begin(), symbols_.end());
    if (seen.size() != symbols_.size()) throw ConfigError("alphabet symbols must be distinct");
}

Alphabet Alphabet::of_size(std::size_t size) {
    std::vector<std::string> labels;
    labels.reserve(size);
    for (std::size_t i = 0; i < size; ++i) labels.push_back(std::to_string(i));
    return Alphabet(std::move(labels));
}

const std::string& Alphabet::label(Symbol s) const {
    if (s >= symbols_.size()) throw InputError("symbol index out of range");
    return symbols_[s];
}

Symbol Alphabet::index_of(std::string_view label) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), label);
    if (it == symbols_.end()) throw InputError("unknown symbol '" + std::string(label) + "'");
    return static_cast<Symbol>(it - symbols_.begin());
}

namespace {

std::string format_endpoint(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string Atom::to_string() const {
    return "[" + format_endpoint(lo) + "," + format_endpoint(hi) + ")";
}

IntervalFieldHierarchy::IntervalFieldHierarchy(int max_level) : max_level_(max_level) {
    if (max_level < 1 || max_level > kLevelLimit)
        throw ConfigError("hierarchy max_level must be in [1, " + std::to_string(kLevelLimit) + "]");
}

std::uint64_t IntervalFieldHierarchy::atom_count(int level) {
    if (level < 1 || level > kLevelLimit) throw ConfigError("hierarchy level out of range");
    const auto k = static_cast<std::uint64_t>(level);
    return 2 * k * (std::uint64_t{1} << k) + 2;
}

void IntervalFieldHierarchy::check_level(int level) const {
    if (level < 1 || level > max_level_)
        throw ConfigError("level " + std::to_string(level) + " outside [1, " +
                          std::to_string(max_level_) + "]");
}

AtomId IntervalFieldHierarchy::quantize(double x, int level) const {
    check_level(level);
    if (!std::isfinite(x)) throw InputError("cannot quantize a non-finite value");
    const double k = level;
    if (x < -k) return 0;
    if (x >= k) return static_cast<AtomId>(atom_count(level) - 1);
    // x * 2^k is exact in binary floating point, so the floor lands on the
    // correct dyadic cell even right next to a breakpoint.
    const double scaled = std::floor(std::ldexp(x, level));
    const auto offset = static_cast<std::int64_t>(level) * (std::int64_t{1} << level);
    return static_cast<AtomId>(static_cast<std::int64_t>(scaled) + offset + 1);
}

std::vector<AtomId> IntervalFieldHierarchy::quantize_block(std::span<const double> segment,
                                                           int level) const {
    if (segment.empty()) throw InputError("cannot quantize an empty segment");
    std::vector<AtomId> out;
    out.reserve(segment.size());
    for (double x : segment) out.push_back(quantize(x, level));
    return out;
}

Atom IntervalFieldHierarchy::atom(int level, AtomId id) const {
    check_level(level);
    const auto count = atom_count(level);
    if (id >= count) throw InputError("atom id out of range");
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double k = level;
    Atom a{level, id, 0.0, 0.0};
    if (id == 0) {
        a.lo = -inf;
        a.hi = -k;
    } else if (id == count - 1) {
        a.lo = k;
        a.hi = inf;
    } else {
        a.lo = -k + std::ldexp(static_cast<double>(id - 1), -level);
        a.hi = -k + std::ldexp(static_cast<double>(id), -level);
    }
    return a;
}

Quantizer Quantizer::finite(Alphabet alphabet) { return Quantizer(std::move(alphabet)); }

Quantizer Quantizer::intervals(IntervalFieldHierarchy hierarchy) {
    return Quantizer(std::move(hierarchy));
}

const Alphabet& Quantizer::alphabet() const {
    if (!is_finite()) throw ConfigError("quantizer is not in finite-alphabet mode");
    return std::get<Alphabet>(impl_);
}

const IntervalFieldHierarchy& Quantizer::hierarchy() const {
    if (is_finite()) throw ConfigError("quantizer is not in real-valued mode");
    return std::get<IntervalFieldHierarchy>(impl_);
}

AtomId Quantizer::quantize(double x, int level) const {
    if (const auto* a = std::get_if<Alphabet>(&impl_)) {
        if (!std::isfinite(x) || x < 0 || x != std::floor(x) || x >= static_cast<double>(a->size()))
            throw InputError("value is not a symbol index of the alphabet");
        return static_cast<AtomId>(x);
    }
    return std::get<IntervalFieldHierarchy>(impl_).quantize(x, level);
}

std::vector<AtomId> Quantizer::quantize_block(std::span<const double> segment, int level) const {
    if (segment.empty()) throw InputError("cannot quantize an empty segment");
    std::vector<AtomId> out;
    out.reserve(segment.size());
    for (double x : segment) out.push_back(quantize(x, level));
    return out;
}

std::uint64_t Quantizer::radix(int level) const {
    if (const auto* a = std::get_if<Alphabet>(&impl_)) return a->size();
    check_level(level);
    return IntervalFieldHierarchy::atom_count(level);
}

void Quantizer::check_level(int level) const {
    if (const auto* h = std::get_if<IntervalFieldHierarchy>(&impl_)) {
        if (level < 1 || level > h->max_level())
            throw ConfigError("level " + std::to_string(level) + " outside [1, " +
                              std::to_string(h->max_level()) + "]");
    }
}

}  // namespace weakcast
