#include <doctest.h>

#include <cmath>
#include <vector>

#include "weakcast/errors.hpp"
#include "weakcast/online.hpp"
#include "weakcast/rng.hpp"
#include "weakcast/sources.hpp"

using namespace weakcast;

namespace {

const Quantizer kBits = Quantizer::finite(Alphabet::of_size(2));

Schedule bits_schedule() {
    return Schedule::finite_default(2, 0.5).with_default(ConditionalDistribution::uniform(2, true));
}

}  // namespace

TEST_CASE("decision helpers") {
    const std::vector<double> p{0.2, 0.5, 0.3}, tie{0.5, 0.5};
    CHECK(predict_class(p) == 1);
    CHECK(predict_class(tie) == 0);
    const auto half = ConditionalDistribution::pmf({0.5, 0.5});
    CHECK(plug_in_action(half, {{0, 1}, {10, 0}}) == 1);
    CHECK(plug_in_action(half, {{3, 3}, {3, 3}}) == 0);
    CHECK_THROWS_AS(plug_in_action(half, {{0, 1}}), InputError);
    CHECK_THROWS_AS(plug_in_action(half, {{0, 1}, {1}}), InputError);
    Rng rng(4);
    for (int i = 0; i < 200; ++i) {
        const double a = rng.uniform();
        const auto d = ConditionalDistribution::pmf({a, 1.0 - a});
        CHECK(plug_in_action(d, {{0, 1}, {1, 0}}) == predict_class(d.masses()));
        const std::vector<double> scaled{3 * a / 3, 3 * (1 - a) / 3};
        CHECK(predict_class(scaled) == predict_class(d.masses()));
    }
}

TEST_CASE("loss ledger") {
    LossLedger l(0.25);
    l.record(0, 1, 1.0);
    l.record(1, 1, 0.0);
    l.record(1, 0, 1.0);
    CHECK(l.steps() == 3);
    CHECK(l.running_average() == doctest::Approx(2.0 / 3.0));
    CHECK(l.running_average(2) == 0.5);
    CHECK(l.trajectory() == std::vector<double>{1.0, 0.5, 2.0 / 3.0});
    CHECK(*l.oracle_target() == 0.25);
    CHECK_THROWS_AS(l.running_average(0), InputError);
}

TEST_CASE("forecaster equals the from-scratch estimator") {
    const auto mk = OracleSource::preset("markov_stay90");
    const auto sym = generate_symbols(mk, 3000, 12);
    PatternForecaster f(kBits, bits_schedule());
    for (std::size_t t = 0; t < sym.size(); ++t) {
        const auto inc = f.forecast();
        const auto batch = estimate_truncated_detailed(SamplePath::from_symbols(std::span(sym.data(), t)),
                                                       bits_schedule(), kBits);
        CHECK(inc.distribution == batch.distribution);
        CHECK(inc.default_used == batch.default_used);
        f.push(sym[t]);
    }
}

TEST_CASE("forecaster in real mode equals the from-scratch estimator") {
    const auto src = OracleSource::preset("markov_stay90").with_values({-1.0, 1.0});
    const auto sym = generate_symbols(src, 1200, 1);
    const auto q = Quantizer::intervals(IntervalFieldHierarchy(3));
    const auto s = Schedule::real_default(3, 1);
    PatternForecaster f(q, s);
    std::vector<double> xs;
    for (Symbol x : sym) xs.push_back(src.value_of(x));
    for (std::size_t t = 0; t < xs.size(); ++t) {
        const auto batch = estimate_truncated(SamplePath::from_chronological(std::span(xs.data(), t)), s, q);
        CHECK(f.forecast().distribution == batch);
        f.push(xs[t]);
    }
}

TEST_CASE("causality: predictions ignore the future") {
    const auto sym = generate_symbols(OracleSource::preset("markov_stay90"), 2000, 3);
    std::vector<double> a(sym.begin(), sym.end()), b = a;
    Rng rng(1);
    for (std::size_t t = 1000; t < b.size(); ++t) b[t] = static_cast<double>(rng.bits() & 1);
    ClassificationPredictor pa(kBits, bits_schedule()), pb(kBits, bits_schedule());
    const auto la = run_online(a, pa, hamming_loss);
    const auto lb = run_online(b, pb, hamming_loss);
    for (std::size_t t = 0; t <= 1000; ++t) CHECK(la.predictions()[t] == lb.predictions()[t]);
}

TEST_CASE("online classification on simple sources") {
    const auto per = generate_symbols(OracleSource::preset("periodic01"), 5000, 1);
    std::vector<double> xs(per.begin(), per.end());
    ClassificationPredictor p(kBits, bits_schedule());
    const auto l = run_online(xs, p, hamming_loss);
    double late = 0.0;
    for (std::size_t t = 100; t < xs.size(); ++t) late += l.losses()[t];
    CHECK(late == 0.0);

    const auto fair = generate_symbols(OracleSource::preset("iid_fair"), 20000, 1);
    std::vector<double> fx(fair.begin(), fair.end());
    ClassificationPredictor pf(kBits, bits_schedule());
    CHECK(std::abs(run_online(fx, pf, hamming_loss).running_average() - 0.5) < 0.02);
}

TEST_CASE("regression predictor") {
    const auto s = Schedule::real_default(4, 32);
    const auto q = Quantizer::intervals(IntervalFieldHierarchy(4));
    RegressionPredictor r(q, s);
    CHECK(r.predict() == 0.0);  // Dirac-at-zero default
    CHECK(predict_regression(SamplePath{}, s, q) == 0.0);
}

TEST_CASE("side-information classifier") {
    const auto mk = OracleSource::preset("markov_stay90");
    const auto sym = generate_symbols(mk, 20000, 6);
    const auto joint = Schedule::finite_default(4, 0.5);
    SideInfoClassifier copy(2, 2, joint);
    const auto l = run_online_side_info(sym, sym, copy);
    CHECK(l.running_average() < 0.01);

    // the incremental classifier and the from-scratch form agree
    std::vector<Symbol> ys(sym.size());
    Rng rng(9);
    for (auto& y : ys) y = static_cast<Symbol>(rng.bits() & 1);
    SideInfoClassifier inc(2, 2, joint);
    for (std::size_t t = 0; t < 1500; ++t) {
        const auto guess = inc.predict(ys[t]);
        const auto xp = SamplePath::from_symbols(std::span(sym.data(), t));
        const auto yp = SamplePath::from_symbols(std::span(ys.data(), t));
        CHECK(guess == predict_class_side_info(xp, yp, ys[t], joint, kBits, kBits));
        inc.observe(sym[t], ys[t]);
    }
    const std::vector<Symbol> x2{0, 1}, y1{0};
    SideInfoClassifier c(2, 2, joint);
    CHECK_THROWS_AS(run_online_side_info(x2, y1, c), InputError);
}
