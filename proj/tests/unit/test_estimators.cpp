#include <doctest.h>

#include <cmath>
#include <vector>

#include "reference.hpp"
#include "weakcast/distribution.hpp"
#include "weakcast/errors.hpp"
#include "weakcast/pattern_estimator.hpp"
#include "weakcast/rng.hpp"
#include "weakcast/schedule.hpp"
#include "weakcast/sources.hpp"

using namespace weakcast;

namespace {

const Quantizer kBits = Quantizer::finite(Alphabet::of_size(2));

SamplePath alternating(std::size_t n) {
    std::vector<Symbol> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<Symbol>(i % 2);
    return SamplePath::from_symbols(s);
}

}  // namespace

TEST_CASE("distribution construction and integration") {
    CHECK_THROWS_AS(ConditionalDistribution::pmf({0.5, 0.6}), InputError);
    CHECK_THROWS_AS(ConditionalDistribution::pmf({1.5, -0.5}), InputError);
    const auto e = ConditionalDistribution::empirical({1.0, 3.0});
    CHECK(integrate([](double) { return 1.0; }, e) == 1.0);
    CHECK(integrate([](double x) { return x; }, e) == 2.0);
    CHECK(e.mean() == 2.0);
    const auto f = ConditionalDistribution::empirical({0.3, 0.7, 0.26});
    CHECK(integrate([](double x) { return x >= 0.25 && x < 0.5 ? 1.0 : 0.0; }, f) == doctest::Approx(2.0 / 3.0));
    const std::size_t counts[] = {1, 3};
    const auto p = ConditionalDistribution::from_counts(counts);
    CHECK(p.masses()[1] == 0.75);
    const double table[] = {10.0, 20.0};
    CHECK(integrate(table, p) == 17.5);
    CHECK_THROWS_AS(integrate(table, e), InputError);
    CHECK(ConditionalDistribution::dirac(0.0).mean() == 0.0);
    const auto g = ConditionalDistribution::uniform_grid(-1.0, 1.0, 4);
    CHECK(g.mean() == doctest::Approx(0.0));
    CHECK(g.samples().size() == 4);
}

TEST_CASE("finite default schedule") {
    const auto s = Schedule::finite_default(2, 0.5);
    CHECK(s.step_for(1).k == 1);
    for (std::size_t n : {4u, 100u, 1000u, 10000u, 100000u, 1000000u}) {
        const auto st = s.step_for(n);
        CHECK(st.ell == static_cast<std::size_t>(st.k));
        CHECK(static_cast<double>(st.samples) * std::pow(2.0, st.k) <= static_cast<double>(n));
    }
    CHECK(s.step_for(100000).k == 8);
    CHECK(s.step_for(100000).samples == 256);
    int last_k = 0;
    std::size_t last_j = 0;
    for (std::size_t n = 1; n < 1u << 20; n = n * 3 / 2 + 1) {
        const auto st = s.step_for(n);
        CHECK(st.k >= last_k);
        CHECK(st.samples >= last_j);
        last_k = st.k;
        last_j = st.samples;
    }
    CHECK(last_k >= 9);
    const std::size_t grid[] = {1000, 10000, 100000};
    CHECK_NOTHROW(s.validate(grid));
    const std::size_t bad[] = {1000, 1000};
    CHECK_THROWS_AS(s.validate(bad), ConfigError);
    CHECK_THROWS_AS(Schedule::finite_default(2, 1.0), ConfigError);
}

TEST_CASE("real default schedule meets its budget") {
    const auto s = Schedule::real_default(4, 32);
    CHECK(s.budget(1) == 385.0);
    CHECK(s.budget(2) == 82946.0);
    CHECK(s.step_for(384).k == 1);
    CHECK(s.step_for(100000).k == 2);
    for (std::size_t n : {385u, 1000u, 82946u, 100000u}) CHECK(s.budget(s.step_for(n).k) <= static_cast<double>(n));
    const std::size_t ok[] = {1000, 100000};
    CHECK_NOTHROW(s.validate(ok));
    const std::size_t small[] = {10, 1000};
    CHECK_THROWS_AS(s.validate(small), ConfigError);
}

TEST_CASE("fixed-k estimator examples") {
    const auto est = estimate_fixed_k(alternating(8), kBits, {1, 1, 3});
    CHECK(est.distribution.masses()[0] == 1.0);
    CHECK(est.distribution.masses()[1] == 0.0);
    const std::vector<Symbol> ones(20, 1);
    const auto c = estimate_fixed_k(SamplePath::from_symbols(ones), kBits, {1, 3, 5});
    CHECK(c.distribution.masses()[1] == 1.0);
    std::vector<Symbol> lone(10, 0);
    lone.back() = 1;
    CHECK_THROWS_AS(estimate_fixed_k(SamplePath::from_symbols(lone), kBits, {1, 1, 1}), InsufficientDataError);
}

TEST_CASE("fixed-k estimator on a Markov chain") {
    const auto mk = OracleSource::preset("markov_stay90");
    const auto sym = generate_symbols(mk, 1000000, 8);
    const auto est = estimate_fixed_k(SamplePath::from_symbols(sym), kBits, {1, 1, 10000});
    CHECK(std::abs(est.distribution.masses()[sym.back()] - 0.9) < 0.02);
}

TEST_CASE("fixed-k real mode returns samples in recurrence order") {
    const std::vector<double> xs{0.1, 0.9, 0.12, 0.8, 0.11, 0.95};  // X_{-1} = 0.95
    const auto q = Quantizer::intervals(IntervalFieldHierarchy(3));
    const auto est = estimate_fixed_k(SamplePath::from_chronological(xs), q, {1, 1, 2});
    REQUIRE(est.distribution.samples().size() == 2);
    CHECK(est.distribution.samples()[0] == 0.11);
    CHECK(est.distribution.samples()[1] == 0.12);
    CHECK(est.distribution.mean() == doctest::Approx(0.115));
}

TEST_CASE("truncated estimator defaults") {
    const auto s = Schedule::finite_default(2, 0.5);
    const std::vector<Symbol> one{1};
    const auto te = estimate_truncated_detailed(SamplePath::from_symbols(one), s, kBits);
    CHECK(te.default_used);
    CHECK(te.distribution.masses()[0] == 0.5);
    const auto empty = estimate_truncated_detailed(SamplePath{}, s, kBits);
    CHECK(empty.default_used);
    CHECK_FALSE(empty.record);
}

TEST_CASE("truncated estimator agrees with the reference where it searches") {
    const auto s = Schedule::finite_default(2, 0.5);
    Rng rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.bits() % 80;
        ref::Seq past(n);
        std::vector<Symbol> sym(n);
        for (std::size_t i = 0; i < n; ++i) sym[i] = past[i] = static_cast<unsigned>(rng.bits() % 2);
        const auto step = s.step_for(n);
        const auto te = estimate_truncated_detailed(SamplePath::from_symbols(sym), s, kBits);
        const auto expect = ref::fixed_k(past, 2, step.ell, step.samples);
        CHECK(te.default_used == !expect.has_value());
        const auto m = te.distribution.masses();
        const std::vector<double> want = expect ? *expect : std::vector<double>{0.5, 0.5};
        CHECK(m[0] == want[0]);
        CHECK(m[1] == want[1]);
    }
}

TEST_CASE("side information with Y = X is the fixed-k estimate at ell + 1") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 30 + rng.bits() % 60;
        std::vector<Symbol> sym(n + 1);
        for (auto& x : sym) x = static_cast<Symbol>(rng.bits() % 2);
        // X_0 = sym.back() is revealed through Y_0
        const auto ext = SamplePath::from_symbols(sym);
        const auto x_path = SamplePath::from_symbols(std::span<const Symbol>(sym.data(), n));
        for (std::size_t ell = 1; ell <= 3; ++ell) {
            for (std::size_t J = 1; J <= 3; ++J) {
                const auto plain = backward_recurrences(ext, kBits, {1, ell + 1, J});
                if (plain.truncated) {
                    CHECK_THROWS_AS(estimate_with_side_info(x_path, x_path, sym.back(), kBits, kBits, {1, ell, J}),
                                    InsufficientDataError);
                    continue;
                }
                const auto side = estimate_with_side_info(x_path, x_path, sym.back(), kBits, kBits, {1, ell, J});
                CHECK(side.record.taus == plain.taus);
                CHECK(side.distribution.masses()[sym.back()] == 1.0);
            }
        }
    }
    const std::vector<double> a{0, 1}, b{0};
    CHECK_THROWS_AS(estimate_with_side_info(SamplePath::from_chronological(a), SamplePath::from_chronological(b), 0,
                                            kBits, kBits, {1, 1, 1}),
                    InputError);
}
