#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "weakcast/errors.hpp"
#include "weakcast/sources.hpp"

using namespace weakcast;

namespace {

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

}  // namespace

TEST_CASE("presets exist") {
    for (const auto& name : OracleSource::preset_names()) CHECK_NOTHROW(OracleSource::preset(name));
    CHECK_THROWS_AS(OracleSource::preset("nope"), ConfigError);
}

TEST_CASE("invalid sources are rejected") {
    CHECK_THROWS_AS(OracleSource::iid({0.5, 0.6}), ConfigError);
    CHECK_THROWS_AS(OracleSource::markov(2, 1, {{1.0, 0.0}}), ConfigError);
    CHECK_THROWS_AS(OracleSource::periodic({0, 2}, 2), ConfigError);
    CHECK_THROWS_AS(OracleSource::ryabco({0.5}), ConfigError);
}

TEST_CASE("stationary law solves pi P = pi") {
    const std::vector<std::vector<double>> P{{0.5, 0.5, 0.0}, {0.2, 0.3, 0.5}, {0.0, 0.6, 0.4}};
    const auto pi = stationary_law(P);
    for (std::size_t j = 0; j < 3; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < 3; ++i) s += pi[i] * P[i][j];
        CHECK(s == doctest::Approx(pi[j]).epsilon(1e-12));
    }
    CHECK(std::accumulate(pi.begin(), pi.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("generation") {
    CHECK(generate_symbols(OracleSource::periodic({0, 1}), 4, 1).size() == 4);
    const auto p = generate_symbols(OracleSource::periodic({0, 1}), 4, 3);
    CHECK(p[0] != p[1]);
    CHECK(p[0] == p[2]);

    const auto fair = generate_symbols(OracleSource::preset("iid_fair"), 1000000, 1);
    const double ones = std::accumulate(fair.begin(), fair.end(), 0.0) / 1e6;
    CHECK(std::abs(ones - 0.5) < 0.002);

    const auto mk = generate_symbols(OracleSource::preset("markov_stay90"), 1000000, 2);
    std::size_t stay = 0;
    for (std::size_t i = 1; i < mk.size(); ++i) stay += mk[i] == mk[i - 1];
    CHECK(std::abs(stay / 999999.0 - 0.9) < 0.005);

    CHECK(generate_symbols(OracleSource::preset("iid_fair"), 50, 9) ==
          generate_symbols(OracleSource::preset("iid_fair"), 50, 9));
}

TEST_CASE("oracle conditionals") {
    const auto mk = OracleSource::preset("markov_stay90");
    const std::vector<Symbol> zero{1, 0};
    const auto p = oracle_conditional(mk, zero);
    CHECK(p[0] == doctest::Approx(0.9));
    CHECK(p[1] == doctest::Approx(0.1));

    const auto per = oracle_conditional(OracleSource::preset("periodic01"), std::vector<Symbol>{0});
    CHECK(per[1] == 1.0);

    const auto ry = OracleSource::preset("ryabco_alt");
    CHECK(ry.delta(2) == doctest::Approx(1.0 / 3.0));
    const auto q = oracle_conditional(ry, std::vector<Symbol>{0, 1, 2});
    CHECK(q[0] == doctest::Approx(0.5));
    CHECK(q[1] == doctest::Approx(1.0 / 6.0));
    CHECK(q[2] == doctest::Approx(1.0 / 3.0));
    CHECK_THROWS_AS(oracle_conditional(ry, std::vector<Symbol>{1, 2}), InputError);
}

TEST_CASE("tracker matches the batch oracle on an HMM") {
    const auto hmm = OracleSource::hmm({{0.95, 0.05}, {0.1, 0.9}}, {{0.8, 0.2}, {0.3, 0.7}});
    const auto path = generate_symbols(hmm, 200, 4);
    OracleTracker tr(hmm);
    for (std::size_t t = 0; t < path.size(); ++t) {
        const auto batch = oracle_conditional(hmm, std::span<const Symbol>(path.data(), t));
        const auto inc = tr.pmf();
        CHECK(inc[0] == doctest::Approx(batch[0]).epsilon(1e-12));
        tr.push(path[t]);
    }
}

TEST_CASE("pattern probabilities add up") {
    for (const char* name : {"iid_p25", "markov_stay90", "periodic01"}) {
        const auto src = OracleSource::preset(name);
        double total = 0.0;
        for (Symbol a = 0; a < 2; ++a)
            for (Symbol b = 0; b < 2; ++b)
                for (Symbol c = 0; c < 2; ++c) total += pattern_probability(src, std::vector<Symbol>{a, b, c});
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto ry = OracleSource::preset("ryabco_alt");
    double total = 0.0;
    for (Symbol a = 0; a < 3; ++a)
        for (Symbol b = 0; b < 3; ++b) total += pattern_probability(ry, std::vector<Symbol>{a, b});
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("entropy rates") {
    CHECK(entropy_rate(OracleSource::preset("iid_fair")).value == doctest::Approx(1.0));
    CHECK(entropy_rate(OracleSource::preset("iid_p25")).value == doctest::Approx(h2(0.25)));
    CHECK(entropy_rate(OracleSource::preset("markov_stay90")).value == doctest::Approx(0.4690).epsilon(1e-4));
    CHECK(entropy_rate(OracleSource::preset("periodic01")).value == 0.0);
    const auto hmm = entropy_rate(OracleSource::hmm({{0.9, 0.1}, {0.1, 0.9}}, {{1.0, 0.0}, {0.0, 1.0}}), 100000, 3);
    CHECK(hmm.approximate);
    CHECK(std::abs(hmm.value - h2(0.1)) < 5 * hmm.standard_error + 1e-3);
}

TEST_CASE("innovation variance and Bayes rates") {
    CHECK(innovation_variance(OracleSource::preset("iid_fair").with_values({-1, 1})) == doctest::Approx(1.0));
    CHECK(innovation_variance(OracleSource::preset("markov_stay90").with_values({-1, 1})) == doctest::Approx(0.36));
    CHECK(innovation_variance(OracleSource::preset("periodic01").with_values({-1, 1})) == doctest::Approx(0.0));
    CHECK(bayes_error_rate(OracleSource::preset("markov_stay90")) == doctest::Approx(0.1));
    CHECK(bayes_error_rate(OracleSource::preset("iid_fair")) == doctest::Approx(0.5));
    CHECK(bayes_error_rate(OracleSource::preset("periodic01")) == doctest::Approx(0.0));
    const auto hmm = OracleSource::hmm({{0.9, 0.1}, {0.1, 0.9}}, {{0.8, 0.2}, {0.3, 0.7}});
    CHECK_THROWS_AS(innovation_variance(hmm), UnsupportedSourceError);
    CHECK(state_bayes_error_rate(hmm) == doctest::Approx(0.5 * 0.2 + 0.5 * 0.3));
}
