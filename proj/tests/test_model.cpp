#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "pagame/grid.hpp"
#include "pagame/model.hpp"

#include <numeric>

using namespace pagame;
using namespace pagame::testing;

TEST_CASE("profile probabilities") {
    const Scenario r = reference_scenario();
    const auto p = profile_probs(r, 0.6);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(p[1] == doctest::Approx(0.5));

    const Scenario c = parabola_scenario();
    for (double e : {0.0, 0.37, 1.0}) {
        const auto q = profile_probs(c, e);
        CHECK(q[0] == doctest::Approx(0.3));
        CHECK(q[1] == doctest::Approx(0.7));
    }

    Scenario bad = reference_scenario();
    bad.profile.components = {Curve1D::polynomial({0.0, 2.0})};
    CHECK_THROWS_AS(profile_probs(bad, 0.9), ProbabilityRangeError);
    CHECK_NOTHROW(profile_probs(bad, 0.4));
}

TEST_CASE("probabilities within tolerance are clamped") {
    Scenario s = reference_scenario();
    s.profile.components = {Curve1D::polynomial({1.0 + 5e-10})};
    const auto p = profile_probs(s, 0.5);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
    s.profile.components = {Curve1D::polynomial({1.0 + 5e-9})};
    CHECK_THROWS_AS(profile_probs(s, 0.5), ProbabilityRangeError);
}

TEST_CASE("effort outside the interval is a domain error") {
    const Scenario r = reference_scenario();
    CHECK_THROWS_AS(profile_probs(r, 1.5), DomainError);
    CHECK_THROWS_AS(profile_probs(r, -0.1), DomainError);
}

TEST_CASE("profile derivatives") {
    const Scenario r = reference_scenario();
    const auto d1 = profile_probs_d1(r, 0.3);
    CHECK(d1[0] == doctest::Approx(0.5));
    CHECK(d1[1] == doctest::Approx(-0.5));
    const auto d2 = profile_probs_d2(r, 0.3);
    CHECK(d2[0] == 0.0);
    CHECK(d2[1] == 0.0);
}

TEST_CASE("probabilities sum to one in index order") {
    Rng rng(77);
    for (int k = 0; k < 300; ++k) {
        const auto c = random_case(rng);
        for (int j = 0; j < 20; ++j) {
            const double e = rng.uniform(c.scenario.effort.min, c.scenario.effort.max);
            const auto p = profile_probs(c.scenario, e);
            double sum = 0.0;
            for (double x : p) sum += x;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
            for (double x : p) {
                CHECK(x >= 0.0);
                CHECK(x <= 1.0);
            }
        }
    }
}

TEST_CASE("validation") {
    const Scenario r = reference_scenario();
    const std::vector<Contract> good{reference_contract()};
    CHECK(validate_scenario(r, good).empty());

    const std::vector<Contract> long_contract{{{1.0, 2.0, 3.0}}};
    const auto dim = validate_scenario(r, long_contract);
    REQUIRE(dim.size() == 1);
    CHECK(dim[0].kind == IssueKind::Dimension);
    CHECK_THROWS_AS(require_valid(r, long_contract), ValidationError);
    CHECK_THROWS_AS(require_matching(r, long_contract[0]), DimensionError);

    Scenario neg = r;
    neg.profile.components = {Curve1D::polynomial({-0.5, 1.0})};
    const auto range = validate_scenario(neg);
    REQUIRE_FALSE(range.empty());
    CHECK(range[0].kind == IssueKind::ProbabilityRange);
}

TEST_CASE("validation aggregates every problem") {
    Scenario s = reference_scenario();
    s.profile.components = {Curve1D::polynomial({-0.5, 1.0})};
    s.agent.v = Curve1D::log_affine(0.0, 1.0, 0.0);  // undefined at e = 0
    const std::vector<Contract> contracts{{{-2.0, 0.0}}};
    s.agent.u = Curve1D::log_affine(0.0, 1.0, 1.0);  // undefined at w = -2
    const auto issues = validate_scenario(s, contracts);
    CHECK(issues.size() >= 3);
    try {
        require_valid(s, contracts);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.issues() == issues);
    }
}

TEST_CASE("bad intervals and dimensions") {
    Scenario s = reference_scenario();
    s.effort = {1.0, 0.0};
    CHECK_FALSE(validate_scenario(s).empty());
    s = reference_scenario();
    s.profile.components.clear();
    const auto issues = validate_scenario(s);
    REQUIRE_FALSE(issues.empty());
    CHECK(issues[0].kind == IssueKind::Dimension);
}

TEST_CASE("validation is idempotent on generated scenarios") {
    Rng rng(5);
    for (int k = 0; k < 100; ++k) {
        const auto c = random_case(rng);
        const std::vector<Contract> w{c.contract};
        CHECK(validate_scenario(c.scenario, w).empty());
        CHECK(validate_scenario(c.scenario, w).empty());
    }
}

TEST_CASE("uniform grid ends exactly at the upper bound") {
    const auto g = uniform_grid(-0.3, 0.7, 7);
    CHECK(g.front() == -0.3);
    CHECK(g.back() == 0.7);
    CHECK(g.size() == 7);
}
