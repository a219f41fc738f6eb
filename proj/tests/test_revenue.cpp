#include <doctest.h>

#include <random>

#include "support.hpp"
#include "uavdql/errors.hpp"
#include "uavdql/revenue.hpp"

using namespace uavdql;
using uavdql::testing::rel_close;

TEST_CASE("revenue examples") {
    const RevenueWeights w;
    // 120 - 450 - 215.836
    CHECK(revenue(w, 4, 6, 10.0, 2158.36) == doctest::Approx(-545.836).epsilon(1e-12));
    CHECK(revenue(w, 1, 0, 0.0, 0.0) == 30.0);
    CHECK(revenue(RevenueWeights{0, 0, 1}, 3, 5, 7.0, 100.0) == -100.0);
}

TEST_CASE("serving an already served node is a contract violation") {
    CHECK_THROWS_AS(revenue(RevenueWeights{}, 0, 3, 1.0, 1.0), ContractViolation);
    CHECK_THROWS_AS(revenue(RevenueWeights{}, 5, 3, 1.0, 1.0), DomainError);
}

TEST_CASE("revenue monotonicity and scaling properties") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::uniform_int_distribution<int> prio(1, 4);
    for (int i = 0; i < 300; ++i) {
        const RevenueWeights w{u(rng), u(rng) + 0.1, u(rng)};
        const int p = prio(rng);
        const double sum = u(rng) / 5 + 1.0;
        const double t = u(rng), e = u(rng) * 10;
        CHECK(revenue(w, p, sum, t + 1.0, e) < revenue(w, p, sum, t, e));
        CHECK(revenue(w, p, 0.0, t + 1.0, e) == revenue(w, p, 0.0, t, e));
        const double c = 0.5 + u(rng) / 10;
        const RevenueWeights scaled{c * w.w1, c * w.w2, c * w.w3};
        CHECK(rel_close(revenue(scaled, p, sum, t, e), c * revenue(w, p, sum, t, e), 1e-12));
    }
}

TEST_CASE("weight presets and explicit triples") {
    CHECK(parse_weights("default") == RevenueWeights{30, 7.5, 0.1});
    CHECK(parse_weights("dql1") == RevenueWeights{30000, 7.5, 0.1});
    CHECK(parse_weights("dql2") == RevenueWeights{30, 750, 0.1});
    CHECK(parse_weights("dql3") == RevenueWeights{30, 7.5, 100});
    CHECK(parse_weights("1,2.5,0") == RevenueWeights{1, 2.5, 0});
    CHECK_THROWS_AS(parse_weights("dql4"), DomainError);
    CHECK_THROWS_AS(parse_weights("1,2"), DomainError);
    CHECK_THROWS_AS(parse_weights("1,-2,3"), DomainError);
    CHECK_THROWS_AS(parse_weights("1,,3"), DomainError);
}
