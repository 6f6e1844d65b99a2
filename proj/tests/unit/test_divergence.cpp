#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "weakcast/divergence.hpp"
#include "weakcast/errors.hpp"
#include "weakcast/rng.hpp"

using namespace weakcast;

TEST_CASE("divergence examples") {
    const std::vector<double> p{0.5, 0.5}, q{0.25, 0.75}, a{1.0, 0.0}, b{0.0, 1.0};
    CHECK(kl_divergence(p, p) == 0.0);
    CHECK(kl_divergence(p, q) == doctest::Approx(0.20752).epsilon(1e-4));
    CHECK(std::isinf(kl_divergence(a, b)));
    CHECK(variational_distance(p, p) == 0.0);
    CHECK(variational_distance(p, q) == 0.5);
    CHECK(variational_distance(a, b) == 2.0);
    const std::vector<double> three{0.2, 0.3, 0.5};
    CHECK_THROWS_AS(kl_divergence(p, three), InputError);

    const auto r = pinsker_check(p, q);
    CHECK(r.lower_ok);
    CHECK(r.upper_ok);
    CHECK(r.pinsker_ok);
    CHECK(pinsker_check(p, p).pinsker_ok);
    CHECK(pinsker_check(a, b).pinsker_ok);
}

TEST_CASE("fixed-length bits") {
    CHECK(fixed_length_bits(1, 2) == 1);
    CHECK(fixed_length_bits(10, 2) == 10);
    CHECK(fixed_length_bits(1, 3) == 2);
    CHECK(fixed_length_bits(5, 3) == 8);  // 3^5 = 243 <= 256
    CHECK(fixed_length_bits(3, 4) == 6);
}

TEST_CASE("Kraft test") {
    const std::vector<std::uint64_t> full{1, 2, 3, 3}, over{1, 1, 2}, deep{1, 64, 64, 200};
    CHECK(satisfies_kraft(full));
    CHECK_FALSE(satisfies_kraft(over));
    CHECK(satisfies_kraft(deep));
}

TEST_CASE("code-length conversion examples") {
    const std::vector<std::uint64_t> l1{1, 1};
    const auto m1 = model_from_code_lengths(l1, 1, 2);
    CHECK(m1.lengths == std::vector<std::uint64_t>{2, 2});
    CHECK(m1.probabilities[0] == 0.5);

    // the cap min(l, 1) binds at n = 1 on a binary alphabet
    const std::vector<std::uint64_t> l2{1, 3};
    const auto m2 = model_from_code_lengths(l2, 1, 2);
    CHECK(m2.lengths == std::vector<std::uint64_t>{2, 2});
    CHECK(m2.probabilities[0] == 0.5);

    // nothing binds at n = 2: Q' = (1/4, 1/8, 1/16, 1/16) normalizes to (0.4, 0.2, 0.2, 0.2)
    const std::vector<std::uint64_t> l3{1, 2, 3, 3};
    const auto m3 = model_from_code_lengths(l3, 2, 2);
    CHECK(m3.lengths == std::vector<std::uint64_t>{2, 3, 3, 3});
    CHECK(m3.probabilities[0] == doctest::Approx(0.4));
    CHECK(m3.probabilities[3] == doctest::Approx(0.2));

    const std::vector<std::uint64_t> bad{1, 1, 1, 1};
    CHECK_THROWS_AS(model_from_code_lengths(bad, 2, 2), InputError);
    CHECK_THROWS_AS(model_from_code_lengths(l1, 2, 2), InputError);
    const std::vector<std::uint64_t> zero{0, 1};
    CHECK_THROWS_AS(model_from_code_lengths(zero, 1, 2), InputError);
}

TEST_CASE("randomized Pinsker property") {
    Rng rng(99);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t a = 2 + rng.bits() % 5;
        std::vector<double> p(a), q(a);
        for (std::size_t x = 0; x < a; ++x) {
            p[x] = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
            q[x] = rng.uniform() + 1e-6;
        }
        p[0] += 1e-3;
        const double sp = std::accumulate(p.begin(), p.end(), 0.0), sq = std::accumulate(q.begin(), q.end(), 0.0);
        for (auto& v : p) v /= sp;
        for (auto& v : q) v /= sq;
        CHECK(pinsker_check(p, q).pinsker_ok);
    }
}
