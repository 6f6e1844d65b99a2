#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weakcast/alphabet.hpp"
#include "weakcast/sample_path.hpp"

namespace weakcast {

enum class SourceKind { iid, markov, periodic, hmm, ryabco };

std::string_view to_string(SourceKind kind) noexcept;

/// A synthetic stationary process together with everything needed to
/// evaluate it exactly: conditional laws, pattern probabilities, entropy
/// rate. Immutable once built.
///
/// Markov rows are indexed by the context of the last `order` symbols read
/// as a base-|X| number with the oldest symbol most significant.
class OracleSource {
public:
    static OracleSource iid(std::vector<double> pmf);
    static OracleSource markov(std::size_t alphabet_size, std::size_t order,
                               std::vector<std::vector<double>> rows);
    /// Cycle started at a uniformly random phase.
    static OracleSource periodic(std::vector<Symbol> cycle, std::size_t alphabet_size = 2);
    /// transition[s][s'] and emission[s][x]; X_t is emitted from S_t.
    static OracleSource hmm(std::vector<std::vector<double>> transition,
                            std::vector<std::vector<double>> emission);
    /// Countable-state chain on {a, b, c}. `delta_prefix` fixes Delta_0..;
    /// beyond it Delta_i alternates 1/3 (even i), 2/3 (odd i).
    static OracleSource ryabco(std::vector<double> delta_prefix = {});

    /// iid_fair, iid_p25, markov_stay90, periodic01, ryabco_alt.
    static OracleSource preset(std::string_view name);
    static std::vector<std::string> preset_names();

    /// Copy whose symbols map to the given real values when generating
    /// numeric paths and computing regression oracles.
    OracleSource with_values(std::vector<double> values) const;

    SourceKind kind() const noexcept { return kind_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
    bool has_values() const noexcept { return values_.has_value(); }
    /// Numeric value of a symbol (its index when no value map is set).
    double value_of(Symbol s) const;

    std::size_t order() const noexcept { return order_; }
    const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    const std::vector<std::vector<double>>& emission() const noexcept { return emission_; }
    const std::vector<Symbol>& cycle() const noexcept { return cycle_; }
    /// Stationary law of the Markov context / HMM state.
    const std::vector<double>& stationary() const noexcept { return stationary_; }
    double delta(std::size_t i) const;

private:
    OracleSource(SourceKind kind, Alphabet alphabet) : kind_(kind), alphabet_(std::move(alphabet)) {}

    SourceKind kind_;
    Alphabet alphabet_;
    std::optional<std::vector<double>> values_;
    std::size_t order_ = 0;
    std::vector<std::vector<double>> rows_;       // iid: one row; markov: |X|^K rows; hmm: transitions
    std::vector<std::vector<double>> emission_;   // hmm only
    std::vector<Symbol> cycle_;
    std::vector<double> delta_prefix_;
    std::vector<double> stationary_;
};

/// Stationary law pi = pi P of a row-stochastic matrix.
std::vector<double> stationary_law(const std::vector<std::vector<double>>& transition);

/// Chronological symbols X_0..X_{n-1}, stationary from t = 0.
std::vector<Symbol> generate_symbols(const OracleSource& source, std::size_t n, std::uint64_t seed);

struct GeneratedPath {
    std::vector<Symbol> symbols;
    /// Chain state in force when X_t was emitted: Markov context index,
    /// periodic phase, HMM hidden state or ryabco run length.
    std::vector<std::uint64_t> states;
};

GeneratedPath generate_with_states(const OracleSource& source, std::size_t n, std::uint64_t seed);

/// Numeric path (values through value_of) with X_{-1} the newest symbol.
SamplePath to_sample_path(const OracleSource& source, std::span<const Symbol> chronological);
SamplePath generate(const OracleSource& source, std::size_t n, std::uint64_t seed);

/// Running exact conditional law P(X_t | X_0..X_{t-1}) fed one symbol at a
/// time. `ready()` is false while the past is too short to pin the law
/// (Markov with fewer than K symbols, ryabco before the first 'a').
class OracleTracker {
public:
    explicit OracleTracker(const OracleSource& source);

    bool ready() const noexcept;
    /// Throws InputError when not ready.
    std::vector<double> pmf() const;
    void push(Symbol x);

    /// Hidden state estimate for hmm (filtered law), empty otherwise.
    const std::vector<double>& filter() const noexcept { return alpha_; }

private:
    const OracleSource* source_;
    std::size_t seen_ = 0;
    std::uint64_t context_ = 0;
    std::vector<double> alpha_;
    std::vector<bool> phases_;
    bool seen_a_ = false;
    std::size_t run_ = 0;
};

/// P(X_0 = . | past), past given chronologically (back() is X_{-1}).
std::vector<double> oracle_conditional(const OracleSource& source, std::span<const Symbol> past);

/// log2 P(X_0..X_{m-1} = pattern) under the stationary law.
double log2_marginal(const OracleSource& source, std::span<const Symbol> pattern);
double pattern_probability(const OracleSource& source, std::span<const Symbol> pattern);

struct EntropyRate {
    double value = 0.0;
    double standard_error = 0.0;
    bool approximate = false;
};

/// Bits per symbol. hmm uses a Monte-Carlo likelihood estimate over
/// `mc_length` symbols with a batch-means standard error.
EntropyRate entropy_rate(const OracleSource& source, std::size_t mc_length = 200000,
                         std::uint64_t seed = 0x5eed);

/// H(X^n)/n - H; exact for iid, markov and periodic sources.
double block_entropy_excess(const OracleSource& source, std::size_t n);

/// E|X - E{X|X^-}|^2 with symbols mapped through value_of.
double innovation_variance(const OracleSource& source);

/// Long-run error of the best guess of X_t from the infinite past.
double bayes_error_rate(const OracleSource& source);

/// hmm only: error of guessing X_t from the current hidden state.
double state_bayes_error_rate(const OracleSource& source);

}  // namespace weakcast
