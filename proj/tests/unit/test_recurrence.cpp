#include <doctest.h>

#include <cmath>
#include <vector>

#include "reference.hpp"
#include "weakcast/errors.hpp"
#include "weakcast/recurrence.hpp"
#include "weakcast/recurrence_diagnostics.hpp"
#include "weakcast/rng.hpp"
#include "weakcast/sources.hpp"

using namespace weakcast;

namespace {

SamplePath alternating(std::size_t n) {
    std::vector<Symbol> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<Symbol>(i % 2);
    return SamplePath::from_symbols(s);  // ends in 1 when n is even
}

const Quantizer kBits = Quantizer::finite(Alphabet::of_size(2));

}  // namespace

TEST_CASE("backward scan on an alternating path") {
    const auto rec = backward_recurrences(alternating(8), kBits, {1, 1, 3});
    CHECK(rec.taus == std::vector<std::size_t>{2, 4, 6});
    REQUIRE(rec.lambda);
    CHECK(*rec.lambda == 7);
    CHECK_FALSE(rec.truncated);
    CHECK(avg_inter_recurrence(rec) == 2.0);
}

TEST_CASE("backward scan on constant and absent patterns") {
    const std::vector<Symbol> zeros(10, 0);
    const auto c = backward_recurrences(SamplePath::from_symbols(zeros), kBits, {1, 1, 3});
    CHECK(c.taus == std::vector<std::size_t>{1, 2, 3});

    std::vector<Symbol> lone(10, 0);
    lone.back() = 1;
    const auto a = backward_recurrences(SamplePath::from_symbols(lone), kBits, {1, 1, 1});
    CHECK(a.truncated);
    CHECK(a.taus.empty());
    CHECK_FALSE(a.lambda);
    CHECK_THROWS_AS(avg_inter_recurrence(a), InputError);
}

TEST_CASE("average gap") {
    RecurrenceRecord r;
    r.taus = {1};
    r.requested_j = 1;
    r.truncated = false;
    CHECK(avg_inter_recurrence(r) == 1.0);
    r.taus = {5};
    CHECK(avg_inter_recurrence(r) == 5.0);
}

TEST_CASE("forward scan") {
    std::vector<AtomId> alt(12);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = static_cast<AtomId>(i % 2);
    const auto f = forward_recurrences(alt, 4, 1, 2);
    CHECK(f.taus == std::vector<std::size_t>{2, 4});
    const std::vector<AtomId> flat(8, 1);
    CHECK(forward_recurrences(flat, 3, 1, 2).taus == std::vector<std::size_t>{1, 2});
    std::vector<AtomId> lone(8, 0);
    lone[2] = 1;
    CHECK(forward_recurrences(lone, 3, 1, 1).truncated);
    // the sample X_t must exist: with origin at the last index nothing is accepted
    CHECK(forward_recurrences(flat, 7, 1, 1).truncated);
}

TEST_CASE("packer rolling matches packing") {
    Rng rng(5);
    for (std::uint64_t radix : {2u, 3u, 7u}) {
        for (std::size_t ell : {1u, 2u, 5u}) {
            PatternPacker p(radix, ell);
            std::vector<AtomId> codes(40);
            for (auto& c : codes) c = static_cast<AtomId>(rng.bits() % radix);
            auto key = p.pack(std::span<const AtomId>(codes).subspan(0, ell));
            for (std::size_t s = 1; s + ell <= codes.size(); ++s) {
                key = p.roll(key, codes[s - 1], codes[s + ell - 1]);
                CHECK(key == p.pack(std::span<const AtomId>(codes).subspan(s, ell)));
            }
        }
    }
    CHECK_FALSE(PatternPacker::fits(1u << 20, 4));
    CHECK_THROWS_AS(PatternPacker(1u << 20, 4), ConfigError);
}

TEST_CASE("engines agree with each other and the reference scan") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.bits() % 60;
        ref::Seq s(n);
        std::vector<Symbol> sym(n);
        for (std::size_t i = 0; i < n; ++i) sym[i] = s[i] = static_cast<unsigned>(rng.bits() % 2);
        const auto path = SamplePath::from_symbols(sym);
        for (std::size_t ell = 1; ell <= 4; ++ell) {
            if (ell > n) {
                CHECK_THROWS_AS(backward_recurrences(path, kBits, {1, ell, 1}), InputError);
                continue;
            }
            for (std::size_t J = 1; J <= 5; ++J) {
                const auto naive = backward_recurrences(path, kBits, {1, ell, J}, SearchEngine::naive);
                const auto indexed = backward_recurrences(path, kBits, {1, ell, J}, SearchEngine::indexed);
                const auto expect = ref::backward(s, ell, J);
                CHECK(naive == indexed);
                CHECK(naive.taus == expect.taus);
                CHECK(naive.truncated == !expect.complete);
            }
        }
    }
}

TEST_CASE("growth diagnostic on a constant path is flat zero") {
    const std::vector<Symbol> zeros(200, 0);
    const auto steps = block_growth_schedule(1, 6, 4);
    const auto pts = growth_rate_diagnostic(SamplePath::from_symbols(zeros), kBits, steps);
    REQUIRE(pts.size() == 6);
    for (const auto& p : pts) {
        REQUIRE(p.normalized_log_rate);
        CHECK(*p.normalized_log_rate == 0.0);
        CHECK(*p.tau_j == 4);
    }
}

TEST_CASE("Kac oracle means") {
    const auto fair = OracleSource::preset("iid_fair");
    const std::vector<std::vector<Symbol>> one{{1}};
    KacOptions opt;
    opt.trials = 20000;
    const auto r = kac_diagnostic(fair, one, opt);
    CHECK(r.rows[0].oracle_mean == doctest::Approx(2.0));
    CHECK(r.rows[0].relative_deviation < 0.05);
    const auto p25 = OracleSource::preset("iid_p25");
    CHECK(kac_diagnostic(p25, one, opt).rows[0].oracle_mean == doctest::Approx(4.0));
    const std::vector<std::vector<Symbol>> impossible{{0, 0}};
    CHECK_THROWS_AS(kac_diagnostic(OracleSource::preset("periodic01"), impossible, opt), DomainError);
}
