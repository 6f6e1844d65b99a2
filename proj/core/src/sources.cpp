#include "weakcast/sources.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "weakcast/errors.hpp"
#include "weakcast/rng.hpp"

namespace weakcast {

namespace {

constexpr double kRowTolerance = 1e-9;

void check_pmf(std::span<const double> pmf, std::size_t size, const std::string& what) {
    if (pmf.size() != size) throw ConfigError(what + " has " + std::to_string(pmf.size()) +
                                              " entries, expected " + std::to_string(size));
    double sum = 0.0;
    for (double p : pmf) {
        if (!std::isfinite(p) || p < 0.0) throw ConfigError(what + " has a negative or non-finite entry");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kRowTolerance) throw ConfigError(what + " does not sum to 1");
}

double entropy_bits(std::span<const double> pmf) {
    double h = 0.0;
    for (double p : pmf)
        if (p > 0.0) h -= p * std::log2(p);
    return h;
}

std::uint64_t checked_power(std::size_t base, std::size_t exp) {
    std::uint64_t acc = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (acc > (std::uint64_t{1} << 24) / base) throw ConfigError("markov context table too large");
        acc *= base;
    }
    return acc;
}

double log2_sum_exp2(std::span<const double> terms) {
    const double top = *std::max_element(terms.begin(), terms.end());
    if (!std::isfinite(top)) return top;
    double acc = 0.0;
    for (double t : terms) acc += std::exp2(t - top);
    return top + std::log2(acc);
}

constexpr Symbol kA = 0;
constexpr Symbol kB = 1;

}  // namespace

std::string_view to_string(SourceKind kind) noexcept {
    switch (kind) {
        case SourceKind::iid: return "iid";
        case SourceKind::markov: return "markov";
        case SourceKind::periodic: return "periodic";
        case SourceKind::hmm: return "hmm";
        case SourceKind::ryabco: return "ryabco";
    }
    return "unknown";
}

std::vector<double> stationary_law(const std::vector<std::vector<double>>& transition) {
    const auto n = static_cast<Eigen::Index>(transition.size());
    if (n == 0) throw ConfigError("empty transition matrix");
    // Stack (P^T - I) pi = 0 on top of sum(pi) = 1 and solve in least squares.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 1, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) a(j, i) = transition[i][j];
        a(i, i) -= 1.0;
        a(n, i) = 1.0;
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
    b(n) = 1.0;
    const Eigen::VectorXd pi = a.colPivHouseholderQr().solve(b);
    std::vector<double> out(pi.data(), pi.data() + n);
    double sum = 0.0;
    for (double& p : out) {
        p = std::max(p, 0.0);
        sum += p;
    }
    for (double& p : out) p /= sum;
    return out;
}

OracleSource OracleSource::iid(std::vector<double> pmf) {
    if (pmf.size() < 2) throw ConfigError("iid source needs at least two symbols");
    check_pmf(pmf, pmf.size(), "iid marginal");
    OracleSource s(SourceKind::iid, Alphabet::of_size(pmf.size()));
    s.rows_ = {std::move(pmf)};
    s.stationary_ = {1.0};
    return s;
}

OracleSource OracleSource::markov(std::size_t alphabet_size, std::size_t order,
                                  std::vector<std::vector<double>> rows) {
    if (alphabet_size < 2) throw ConfigError("markov source needs at least two symbols");
    if (order < 1) throw ConfigError("markov order must be at least 1");
    const auto contexts = checked_power(alphabet_size, order);
    if (rows.size() != contexts)
        throw ConfigError("markov source of order " + std::to_string(order) + " needs " +
                          std::to_string(contexts) + " rows");
    for (std::size_t c = 0; c < rows.size(); ++c)
        check_pmf(rows[c], alphabet_size, "markov row " + std::to_string(c));
    OracleSource s(SourceKind::markov, Alphabet::of_size(alphabet_size));
    s.order_ = order;
    std::vector<std::vector<double>> lifted(contexts, std::vector<double>(contexts, 0.0));
    for (std::uint64_t c = 0; c < contexts; ++c)
        for (std::size_t x = 0; x < alphabet_size; ++x)
            lifted[c][(c * alphabet_size + x) % contexts] += rows[c][x];
    s.stationary_ = stationary_law(lifted);
    s.rows_ = std::move(rows);
    return s;
}

OracleSource OracleSource::periodic(std::vector<Symbol> cycle, std::size_t alphabet_size) {
    if (cycle.empty()) throw ConfigError("periodic source needs a non-empty cycle");
    for (Symbol x : cycle)
        if (x >= alphabet_size) throw ConfigError("periodic cycle symbol outside the alphabet");
    OracleSource s(SourceKind::periodic, Alphabet::of_size(alphabet_size));
    s.cycle_ = std::move(cycle);
    s.stationary_.assign(s.cycle_.size(), 1.0 / static_cast<double>(s.cycle_.size()));
    return s;
}

OracleSource OracleSource::hmm(std::vector<std::vector<double>> transition,
                               std::vector<std::vector<double>> emission) {
    const std::size_t states = transition.size();
    if (states < 1 || emission.size() != states) throw ConfigError("hmm needs matching state tables");
    const std::size_t symbols = emission.front().size();
    if (symbols < 2) throw ConfigError("hmm needs at least two output symbols");
    for (std::size_t s = 0; s < states; ++s) {
        check_pmf(transition[s], states, "hmm transition row " + std::to_string(s));
        check_pmf(emission[s], symbols, "hmm emission row " + std::to_string(s));
    }
    OracleSource src(SourceKind::hmm, Alphabet::of_size(symbols));
    src.stationary_ = stationary_law(transition);
    src.rows_ = std::move(transition);
    src.emission_ = std::move(emission);
    return src;
}

OracleSource OracleSource::ryabco(std::vector<double> delta_prefix) {
    for (double d : delta_prefix)
        if (std::abs(d - 1.0 / 3.0) > 1e-12 && std::abs(d - 2.0 / 3.0) > 1e-12)
            throw ConfigError("ryabco delta values must be 1/3 or 2/3");
    OracleSource s(SourceKind::ryabco, Alphabet({"a", "b", "c"}));
    s.delta_prefix_ = std::move(delta_prefix);
    return s;
}

OracleSource OracleSource::preset(std::string_view name) {
    if (name == "iid_fair") return iid({0.5, 0.5});
    if (name == "iid_p25") return iid({0.75, 0.25});
    if (name == "markov_stay90") return markov(2, 1, {{0.9, 0.1}, {0.1, 0.9}});
    if (name == "periodic01") return periodic({0, 1});
    if (name == "ryabco_alt") return ryabco();
    throw ConfigError("unknown source preset '" + std::string(name) + "'");
}

std::vector<std::string> OracleSource::preset_names() {
    return {"iid_fair", "iid_p25", "markov_stay90", "periodic01", "ryabco_alt"};
}

OracleSource OracleSource::with_values(std::vector<double> values) const {
    if (values.size() != alphabet_.size()) throw ConfigError("value map must cover every symbol");
    for (double v : values)
        if (!std::isfinite(v)) throw ConfigError("value map entries must be finite");
    OracleSource copy = *this;
    copy.values_ = std::move(values);
    return copy;
}

double OracleSource::value_of(Symbol s) const {
    if (s >= alphabet_.size()) throw InputError("symbol index out of range");
    return values_ ? (*values_)[s] : static_cast<double>(s);
}

double OracleSource::delta(std::size_t i) const {
    if (kind_ != SourceKind::ryabco) throw UnsupportedSourceError("delta is defined for ryabco only");
    if (i < delta_prefix_.size()) return delta_prefix_[i];
    return i % 2 == 0 ? 1.0 / 3.0 : 2.0 / 3.0;
}

GeneratedPath generate_with_states(const OracleSource& source, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    GeneratedPath out;
    out.symbols.resize(n);
    out.states.resize(n);
    const std::size_t a = source.alphabet_size();
    switch (source.kind()) {
        case SourceKind::iid:
            for (std::size_t t = 0; t < n; ++t) out.symbols[t] = static_cast<Symbol>(rng.categorical(source.rows()[0]));
            break;
        case SourceKind::markov: {
            const auto contexts = source.rows().size();
            auto ctx = rng.categorical(source.stationary());
            for (std::size_t t = 0; t < n; ++t) {
                out.states[t] = ctx;
                const auto x = rng.categorical(source.rows()[ctx]);
                out.symbols[t] = static_cast<Symbol>(x);
                ctx = (ctx * a + x) % contexts;
            }
            break;
        }
        case SourceKind::periodic: {
            const auto len = source.cycle().size();
            auto phase = std::min(len - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(len)));
            for (std::size_t t = 0; t < n; ++t) {
                out.states[t] = phase;
                out.symbols[t] = source.cycle()[phase];
                phase = (phase + 1) % len;
            }
            break;
        }
        case SourceKind::hmm: {
            auto s = rng.categorical(source.stationary());
            for (std::size_t t = 0; t < n; ++t) {
                out.states[t] = s;
                out.symbols[t] = static_cast<Symbol>(rng.categorical(source.emission()[s]));
                s = rng.categorical(source.rows()[s]);
            }
            break;
        }
        case SourceKind::ryabco: {
            std::size_t i = 0;
            while (rng.bernoulli(0.5)) ++i;
            for (std::size_t t = 0; t < n; ++t) {
                out.states[t] = i;
                const double u = rng.uniform();
                if (u < 0.5) {
                    out.symbols[t] = kA;
                    i = 0;
                } else {
                    out.symbols[t] = u < 0.5 + source.delta(i) / 2.0 ? kB : 2;
                    ++i;
                }
            }
            break;
        }
    }
    return out;
}

std::vector<Symbol> generate_symbols(const OracleSource& source, std::size_t n, std::uint64_t seed) {
    return generate_with_states(source, n, seed).symbols;
}

SamplePath to_sample_path(const OracleSource& source, std::span<const Symbol> chronological) {
    std::vector<double> lags(chronological.size());
    for (std::size_t i = 0; i < chronological.size(); ++i)
        lags[i] = source.value_of(chronological[chronological.size() - 1 - i]);
    return SamplePath::from_lags(std::move(lags));
}

SamplePath generate(const OracleSource& source, std::size_t n, std::uint64_t seed) {
    const auto symbols = generate_symbols(source, n, seed);
    return to_sample_path(source, symbols);
}

OracleTracker::OracleTracker(const OracleSource& source) : source_(&source) {
    if (source.kind() == SourceKind::hmm) alpha_ = source.stationary();
    if (source.kind() == SourceKind::periodic) phases_.assign(source.cycle().size(), true);
}

bool OracleTracker::ready() const noexcept {
    switch (source_->kind()) {
        case SourceKind::markov: return seen_ >= source_->order();
        case SourceKind::ryabco: return seen_a_;
        default: return true;
    }
}

std::vector<double> OracleTracker::pmf() const {
    if (!ready()) throw InputError("past is too short to determine the conditional law");
    const auto& src = *source_;
    const std::size_t a = src.alphabet_size();
    switch (src.kind()) {
        case SourceKind::iid: return src.rows()[0];
        case SourceKind::markov: return src.rows()[context_];
        case SourceKind::periodic: {
            std::vector<double> out(a, 0.0);
            double live = 0.0;
            for (std::size_t p = 0; p < phases_.size(); ++p)
                if (phases_[p]) {
                    out[src.cycle()[p]] += 1.0;
                    live += 1.0;
                }
            for (double& v : out) v /= live;
            return out;
        }
        case SourceKind::hmm: {
            std::vector<double> out(a, 0.0);
            for (std::size_t s = 0; s < alpha_.size(); ++s)
                for (std::size_t x = 0; x < a; ++x) out[x] += alpha_[s] * src.emission()[s][x];
            return out;
        }
        case SourceKind::ryabco: {
            const double d = src.delta(run_);
            return {0.5, d / 2.0, (1.0 - d) / 2.0};
        }
    }
    return {};
}

void OracleTracker::push(Symbol x) {
    const auto& src = *source_;
    if (x >= src.alphabet_size()) throw InputError("symbol index out of range");
    switch (src.kind()) {
        case SourceKind::iid: break;
        case SourceKind::markov:
            context_ = (context_ * src.alphabet_size() + x) % src.rows().size();
            break;
        case SourceKind::periodic: {
            const auto len = phases_.size();
            std::vector<bool> next(len, false);
            bool any = false;
            for (std::size_t p = 0; p < len; ++p)
                if (phases_[p] && src.cycle()[p] == x) {
                    next[(p + 1) % len] = true;
                    any = true;
                }
            if (!any) throw InputError("symbol sequence impossible under the periodic source");
            phases_ = std::move(next);
            break;
        }
        case SourceKind::hmm: {
            const auto states = alpha_.size();
            std::vector<double> beta(states);
            double norm = 0.0;
            for (std::size_t s = 0; s < states; ++s) {
                beta[s] = alpha_[s] * src.emission()[s][x];
                norm += beta[s];
            }
            if (norm <= 0.0) throw InputError("symbol sequence impossible under the hmm");
            std::fill(alpha_.begin(), alpha_.end(), 0.0);
            for (std::size_t s = 0; s < states; ++s)
                for (std::size_t s2 = 0; s2 < states; ++s2) alpha_[s2] += beta[s] / norm * src.rows()[s][s2];
            break;
        }
        case SourceKind::ryabco:
            if (x == kA) {
                seen_a_ = true;
                run_ = 0;
            } else {
                ++run_;
            }
            break;
    }
    ++seen_;
}

std::vector<double> oracle_conditional(const OracleSource& source, std::span<const Symbol> past) {
    OracleTracker tracker(source);
    std::size_t start = 0;
    if (source.kind() == SourceKind::markov && past.size() > source.order())
        start = past.size() - source.order();
    for (std::size_t i = start; i < past.size(); ++i) tracker.push(past[i]);
    if (!tracker.ready()) {
        if (source.kind() == SourceKind::markov)
            throw InputError("markov oracle needs the last " + std::to_string(source.order()) + " symbols");
        throw InputError("ryabco oracle needs the past back to the last 'a'");
    }
    return tracker.pmf();
}

double log2_marginal(const OracleSource& source, std::span<const Symbol> pattern) {
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    const std::size_t m = pattern.size();
    const std::size_t a = source.alphabet_size();
    for (Symbol x : pattern)
        if (x >= a) throw InputError("symbol index out of range");
    switch (source.kind()) {
        case SourceKind::iid: {
            double lp = 0.0;
            for (Symbol x : pattern) lp += std::log2(source.rows()[0][x]);
            return lp;
        }
        case SourceKind::markov: {
            const std::size_t k = source.order();
            const auto contexts = source.rows().size();
            if (m < k) {
                std::uint64_t head = 0;
                for (Symbol x : pattern) head = head * a + x;
                const auto span = checked_power(a, k - m);
                double p = 0.0;
                for (std::uint64_t c = head * span; c < (head + 1) * span; ++c) p += source.stationary()[c];
                return p > 0.0 ? std::log2(p) : neg_inf;
            }
            std::uint64_t ctx = 0;
            for (std::size_t i = 0; i < k; ++i) ctx = ctx * a + pattern[i];
            double lp = std::log2(source.stationary()[ctx]);
            for (std::size_t i = k; i < m; ++i) {
                lp += std::log2(source.rows()[ctx][pattern[i]]);
                ctx = (ctx * a + pattern[i]) % contexts;
            }
            return lp;
        }
        case SourceKind::periodic: {
            const auto len = source.cycle().size();
            std::size_t hits = 0;
            for (std::size_t p = 0; p < len; ++p) {
                bool ok = true;
                for (std::size_t t = 0; t < m && ok; ++t) ok = source.cycle()[(p + t) % len] == pattern[t];
                hits += ok;
            }
            return hits == 0 ? neg_inf : std::log2(static_cast<double>(hits) / static_cast<double>(len));
        }
        case SourceKind::hmm: {
            OracleTracker tracker(source);
            double lp = 0.0;
            for (Symbol x : pattern) {
                const double p = tracker.pmf()[x];
                if (p <= 0.0) return neg_inf;
                lp += std::log2(p);
                tracker.push(x);
            }
            return lp;
        }
        case SourceKind::ryabco: {
            const auto first_a = static_cast<std::size_t>(
                std::find(pattern.begin(), pattern.end(), kA) - pattern.begin());
            // Sum over the unknown starting state i; pi_i = 2^-(i+1).
            std::vector<double> terms;
            const std::size_t depth = 96 + first_a;
            terms.reserve(depth);
            for (std::size_t i = 0; i < depth; ++i) {
                double lp = -static_cast<double>(i + 1);
                for (std::size_t j = 0; j < first_a; ++j) {
                    const double d = source.delta(i + j);
                    lp += std::log2((pattern[j] == kB ? d : 1.0 - d) / 2.0);
                }
                terms.push_back(lp);
            }
            double lp = log2_sum_exp2(terms);
            std::size_t run = 0;
            for (std::size_t j = first_a; j < m; ++j) {
                if (pattern[j] == kA) {
                    lp -= 1.0;
                    run = 0;
                } else {
                    const double d = source.delta(run);
                    lp += std::log2((pattern[j] == kB ? d : 1.0 - d) / 2.0);
                    ++run;
                }
            }
            return lp;
        }
    }
    return neg_inf;
}

double pattern_probability(const OracleSource& source, std::span<const Symbol> pattern) {
    return std::exp2(log2_marginal(source, pattern));
}

EntropyRate entropy_rate(const OracleSource& source, std::size_t mc_length, std::uint64_t seed) {
    switch (source.kind()) {
        case SourceKind::iid: return {entropy_bits(source.rows()[0]), 0.0, false};
        case SourceKind::markov: {
            double h = 0.0;
            for (std::size_t c = 0; c < source.rows().size(); ++c)
                h += source.stationary()[c] * entropy_bits(source.rows()[c]);
            return {h, 0.0, false};
        }
        case SourceKind::periodic: return {0.0, 0.0, false};
        case SourceKind::ryabco: {
            // Given state i the next symbol has entropy 1 + h(Delta_i)/2, and
            // h(1/3) = h(2/3), so the state average is the same constant.
            const double third = 1.0 / 3.0;
            const double h = -(third * std::log2(third) + (1 - third) * std::log2(1 - third));
            return {1.0 + h / 2.0, 0.0, false};
        }
        case SourceKind::hmm: {
            if (mc_length < 1000) throw ConfigError("entropy Monte-Carlo length must be at least 1000");
            const auto path = generate_symbols(source, mc_length, seed);
            OracleTracker tracker(source);
            constexpr std::size_t batches = 100;
            const std::size_t per = mc_length / batches;
            std::vector<double> batch(batches, 0.0);
            for (std::size_t t = 0; t < batches * per; ++t) {
                batch[t / per] -= std::log2(tracker.pmf()[path[t]]);
                tracker.push(path[t]);
            }
            for (double& b : batch) b /= static_cast<double>(per);
            const double mean = std::accumulate(batch.begin(), batch.end(), 0.0) / batches;
            double var = 0.0;
            for (double b : batch) var += (b - mean) * (b - mean);
            var /= batches - 1;
            return {mean, std::sqrt(var / batches), true};
        }
    }
    return {};
}

double block_entropy_excess(const OracleSource& source, std::size_t n) {
    if (n == 0) throw InputError("block length must be positive");
    const double h = entropy_rate(source).value;
    const double nn = static_cast<double>(n);
    switch (source.kind()) {
        case SourceKind::iid: return 0.0;
        case SourceKind::markov: {
            const std::size_t k = source.order();
            const std::size_t a = source.alphabet_size();
            if (n >= k) return (entropy_bits(source.stationary()) - static_cast<double>(k) * h) / nn;
            const auto span = checked_power(a, k - n);
            std::vector<double> heads(source.rows().size() / span, 0.0);
            for (std::size_t c = 0; c < source.rows().size(); ++c) heads[c / span] += source.stationary()[c];
            return entropy_bits(heads) / nn - h;
        }
        case SourceKind::periodic: {
            const auto len = source.cycle().size();
            std::vector<std::vector<Symbol>> windows;
            std::vector<double> mass;
            for (std::size_t p = 0; p < len; ++p) {
                std::vector<Symbol> w(n);
                for (std::size_t t = 0; t < n; ++t) w[t] = source.cycle()[(p + t) % len];
                auto it = std::find(windows.begin(), windows.end(), w);
                if (it == windows.end()) {
                    windows.push_back(std::move(w));
                    mass.push_back(1.0 / static_cast<double>(len));
                } else {
                    mass[static_cast<std::size_t>(it - windows.begin())] += 1.0 / static_cast<double>(len);
                }
            }
            return entropy_bits(mass) / nn;
        }
        default:
            throw UnsupportedSourceError("block entropy is not available for " +
                                         std::string(to_string(source.kind())) + " sources");
    }
}

namespace {

double conditional_variance(const OracleSource& source, std::span<const double> pmf) {
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t x = 0; x < pmf.size(); ++x) {
        const double v = source.value_of(static_cast<Symbol>(x));
        mean += pmf[x] * v;
        second += pmf[x] * v * v;
    }
    return std::max(0.0, second - mean * mean);
}

}  // namespace

double innovation_variance(const OracleSource& source) {
    switch (source.kind()) {
        case SourceKind::iid: return conditional_variance(source, source.rows()[0]);
        case SourceKind::markov: {
            double v = 0.0;
            for (std::size_t c = 0; c < source.rows().size(); ++c)
                v += source.stationary()[c] * conditional_variance(source, source.rows()[c]);
            return v;
        }
        case SourceKind::periodic: return 0.0;
        case SourceKind::ryabco: {
            double v = 0.0;
            for (std::size_t i = 0; i < 128; ++i) {
                const double d = source.delta(i);
                const std::vector<double> pmf{0.5, d / 2.0, (1.0 - d) / 2.0};
                v += std::ldexp(1.0, -static_cast<int>(i + 1)) * conditional_variance(source, pmf);
            }
            return v;
        }
        case SourceKind::hmm:
            throw UnsupportedSourceError("innovation variance is not available for hmm sources");
    }
    return 0.0;
}

double bayes_error_rate(const OracleSource& source) {
    auto miss = [](std::span<const double> pmf) { return 1.0 - *std::max_element(pmf.begin(), pmf.end()); };
    switch (source.kind()) {
        case SourceKind::iid: return miss(source.rows()[0]);
        case SourceKind::markov: {
            double e = 0.0;
            for (std::size_t c = 0; c < source.rows().size(); ++c)
                e += source.stationary()[c] * miss(source.rows()[c]);
            return e;
        }
        case SourceKind::periodic: return 0.0;
        case SourceKind::ryabco: return 0.5;  // 'a' always has the top mass 1/2
        case SourceKind::hmm:
            throw UnsupportedSourceError("bayes error rate is not available for hmm sources");
    }
    return 0.0;
}

double state_bayes_error_rate(const OracleSource& source) {
    if (source.kind() != SourceKind::hmm) throw UnsupportedSourceError("state bayes rate needs an hmm source");
    double e = 0.0;
    for (std::size_t s = 0; s < source.stationary().size(); ++s) {
        const auto& row = source.emission()[s];
        e += source.stationary()[s] * (1.0 - *std::max_element(row.begin(), row.end()));
    }
    return e;
}

}  // namespace weakcast
