#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "pagame/analyses.hpp"

#include <cmath>

using namespace pagame;
using namespace pagame::testing;

TEST_CASE("invisible effort on a constant profile") {
    const auto report = detect_invisible_effort(parabola_scenario());
    CHECK(report.is_invisible);
    CHECK(report.max_deviation == 0.0);
    REQUIRE(report.best_response);
    REQUIRE(report.best_response->points.size() == 1);
    CHECK(report.best_response->points[0].effort == doctest::Approx(0.3).epsilon(1e-12));
    REQUIRE(report.risk);
    CHECK(report.risk->posture == RiskPosture::Averse);
    CHECK_FALSE(report.v_concave_somewhere);
}

TEST_CASE("invisible effort thresholds") {
    const auto visible = detect_invisible_effort(reference_scenario());
    CHECK_FALSE(visible.is_invisible);
    CHECK(visible.max_deviation == doctest::Approx(0.25));
    CHECK_FALSE(visible.best_response);

    Scenario almost = reference_scenario();
    almost.profile.components = {Curve1D::polynomial({0.5, 1e-12})};
    CHECK(detect_invisible_effort(almost, 1e-9).is_invisible);
    CHECK_FALSE(detect_invisible_effort(almost, 1e-13).is_invisible);
}

TEST_CASE("concave v is flagged") {
    Scenario s = parabola_scenario();
    s.agent.v = Curve1D::polynomial({0.0, 0.0, -1.0});
    const auto report = detect_invisible_effort(s);
    CHECK(report.v_concave_somewhere);
    REQUIRE(report.risk);
    CHECK(report.risk->posture == RiskPosture::Seeking);
}

TEST_CASE("invisible-effort best response agrees with the general solver") {
    Rng rng(31);
    for (int k = 0; k < 60; ++k) {
        double argmin = 0.0;
        const auto c = random_constant_profile_case(rng, &argmin);
        const auto report = detect_invisible_effort(c.scenario);
        REQUIRE(report.best_response);
        const auto br = agent_best_response(c.scenario, c.contract);
        REQUIRE(report.best_response->points.size() == br.maximizers.size());
        for (std::size_t i = 0; i < br.maximizers.size(); ++i) {
            CHECK(std::abs(report.best_response->points[i].effort - br.maximizers[i].effort) <= 1e-6);
        }
        CHECK(std::abs(br.maximizers.front().effort - argmin) <= 1e-6);
    }
}

TEST_CASE("two-outcome linear analysis of the reference scenario") {
    const auto r = two_outcome_linear_analysis(reference_scenario(), reference_contract());
    CHECK(r.slope == 0.5);
    CHECK(r.intercept == 0.2);
    CHECK(r.utility_spread == 4.0);
    CHECK(r.foc_target == doctest::Approx(2.0));
    REQUIRE(r.foc_solutions.size() == 1);
    CHECK(r.foc_solutions[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(r.foc_residuals[0]) <= 1e-10);
    REQUIRE(r.best_response.maximizers.size() == 1);
    CHECK(r.best_response.maximizers[0].effort == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.best_response.optimal_expectation == doctest::Approx(1.3));
    CHECK(r.lower_bound.expectation == doctest::Approx(0.8));
    CHECK(r.upper_bound.expectation == doctest::Approx(0.8));
    CHECK_FALSE(r.invisible);
}

TEST_CASE("equal wages leave no motivation") {
    const auto r = two_outcome_linear_analysis(reference_scenario(), Contract{{3.0, 3.0}});
    CHECK(r.foc_target == 0.0);
    REQUIRE(r.best_response.maximizers.size() == 1);
    CHECK(r.best_response.maximizers[0].effort == 0.0);
    CHECK(r.best_response.maximizers[0].kind == MaximizerKind::BoundaryMin);
}

TEST_CASE("zero slope defers to the invisible-effort report") {
    const auto r = two_outcome_linear_analysis(parabola_scenario(), reference_contract());
    CHECK(r.slope == 0.0);
    REQUIRE(r.invisible);
    CHECK(r.invisible->is_invisible);
    CHECK(r.best_response.maximizers[0].effort == doctest::Approx(0.3));
}

TEST_CASE("linear v with a matching target is flat") {
    Scenario s = reference_scenario();
    s.agent.v = Curve1D::polynomial({0.0, 2.0});
    const auto r = two_outcome_linear_analysis(s, reference_contract());
    CHECK(r.degenerate_flat);
    CHECK(r.best_response.constant_expectation);
}

TEST_CASE("two-outcome analysis refuses other scenarios") {
    Scenario three = reference_scenario();
    three.outcomes.values.push_back(0.0);
    three.profile.components.push_back(Curve1D::constant(0.1));
    CHECK_THROWS_AS(two_outcome_linear_analysis(three, Contract{{1, 2, 3}}), NotTwoOutcomeLinear);
    Scenario curved = reference_scenario();
    curved.profile.components = {Curve1D::polynomial({0.2, 0.0, 0.5})};
    CHECK_THROWS_AS(two_outcome_linear_analysis(curved, reference_contract()), NotTwoOutcomeLinear);
    Scenario expo = reference_scenario();
    expo.profile.components = {Curve1D::exp_affine(0.0, 0.5, 0.0)};
    CHECK_THROWS_AS(two_outcome_linear_analysis(expo, reference_contract()), NotTwoOutcomeLinear);
}

TEST_CASE("two-outcome analysis agrees with the general solver") {
    Rng rng(71);
    for (int k = 0; k < 200; ++k) {
        const auto c = random_two_outcome_linear_case(rng);
        const auto r = two_outcome_linear_analysis(c.scenario, c.contract);
        const auto br = agent_best_response(c.scenario, c.contract);
        REQUIRE(r.best_response.maximizers.size() == br.maximizers.size());
        for (std::size_t i = 0; i < br.maximizers.size(); ++i) {
            CHECK(std::abs(r.best_response.maximizers[i].effort - br.maximizers[i].effort) <= 1e-9);
            if (br.maximizers[i].kind == MaximizerKind::InteriorCritical) {
                const double e = br.maximizers[i].effort;
                CHECK(std::abs(r.foc_target - c.scenario.agent.v.d1(e)) <= 1e-8);
            }
        }
        for (double res : r.foc_residuals) CHECK(std::abs(res) <= 1e-10);
    }
}

TEST_CASE("degree-one p and u with convex or linear v") {
    Rng rng(17);
    for (int k = 0; k < 80; ++k) {
        auto c = random_two_outcome_linear_case(rng);
        c.scenario.agent.u = Curve1D::polynomial({rng.uniform(-1, 1), rng.uniform(0.5, 2)});
        CHECK(classify_risk(c.scenario, c.contract).posture == RiskPosture::Averse);
        c.scenario.agent.v = Curve1D::polynomial({rng.uniform(-1, 1), rng.uniform(-2, 2)});
        CHECK(classify_risk(c.scenario, c.contract).posture == RiskPosture::Neutral);
    }
}

TEST_CASE("classical assumptions") {
    const auto r = classical_assumptions_report(reference_scenario(), 0.0, 4.0);
    CHECK(r.u_increasing);
    CHECK(r.u_concave);
    CHECK_FALSE(r.v_increasing);  // v'(0) = 0
    CHECK(r.v_convex);
    CHECK(r.v_strictly_convex);
    CHECK_FALSE(r.inner_need_of_working);
    CHECK_FALSE(r.classical);
    CHECK(r.v_shape.min_d1 == 0.0);
    CHECK(r.v_shape.argmin_d1 == 0.0);

    const auto p = classical_assumptions_report(parabola_scenario(), 0.0, 4.0);
    CHECK(p.inner_need_of_working);
    CHECK_FALSE(p.v_increasing);
    CHECK(p.v_shape.min_d1 == doctest::Approx(-0.6));

    Scenario lg = reference_scenario();
    lg.agent.u = Curve1D::log_affine(0.0, 1.0, 1.0);
    lg.agent.v = Curve1D::polynomial({0.0, 1.0, 1.0});
    const auto l = classical_assumptions_report(lg, 0.0, 10.0);
    CHECK(l.u_increasing);
    CHECK(l.u_concave);
    CHECK(l.v_increasing);
    CHECK(l.classical);

    Scenario neg = reference_scenario();
    neg.agent.v = Curve1D::polynomial({-1.0, 0.0, -1.0});
    const auto n = classical_assumptions_report(neg, 0.0, 1.0);
    CHECK(n.utility_from_effort);
    CHECK(n.v_concave_somewhere);
    CHECK_FALSE(n.v_convex);

    CHECK_THROWS_AS(classical_assumptions_report(reference_scenario(), 2.0, 1.0), DomainError);
}
