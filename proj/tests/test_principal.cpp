#include <doctest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "pagame/oracle.hpp"
#include "pagame/principal.hpp"

#include <algorithm>

using namespace pagame;
using namespace pagame::testing;

namespace {

ContractFamily reference_grid() { return ContractFamily::grid({{0, 6, 1}, {0, 0, 1}}); }

std::vector<Contract> enumerate(const ContractFamily& f) {
    std::vector<Contract> out;
    for (std::size_t i = 0; i < f.size(); ++i) out.push_back(f.at(i));
    return out;
}

}  // namespace

TEST_CASE("principal expectation") {
    const Scenario r = reference_scenario();
    CHECK(principal_expectation(r, reference_contract(), 0.5) == doctest::Approx(3.8));
    CHECK(principal_expectation(r, Contract{{10, 2}}, 0.7) == 0.0);
    CHECK(principal_expectation(parabola_scenario(), Contract{{0, 0}}, 0.9) == doctest::Approx(4.4));
}

TEST_CASE("wage axes and grids") {
    CHECK(WageAxis{0, 6, 1}.count() == 7);
    CHECK(WageAxis{0, 1, 0.1}.count() == 11);
    CHECK(WageAxis{0, 0, 1}.count() == 1);
    CHECK(WageAxis{0, 1, 0.1}.at(10) == doctest::Approx(1.0));
    const auto g = ContractFamily::grid({{0, 1, 1}, {5, 7, 1}});
    CHECK(g.size() == 6);
    CHECK(g.at(0) == Contract{{0, 5}});
    CHECK(g.at(1) == Contract{{0, 6}});
    CHECK(g.at(3) == Contract{{1, 5}});
    const auto all = enumerate(g);
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK_THROWS_AS(ContractFamily::grid({{0, 1000, 1}, {0, 1000, 1}}, 1000).check_cap(), EnumerationCapExceeded);
    CHECK_THROWS_AS(ContractFamily::grid({{0, 1, 0}}), DomainError);
    CHECK_THROWS_AS(ContractFamily::list({}), DimensionError);
}

TEST_CASE("tie-break names") {
    for (auto p : {TieBreak::PrincipalFavorable, TieBreak::AgentLowestEffort, TieBreak::AgentHighestEffort}) {
        CHECK(tie_break_from_string(to_string(p)) == p);
    }
    CHECK(to_string(TieBreak::PrincipalFavorable) == "principal_favorable");
    CHECK_FALSE(tie_break_from_string("random"));
}

TEST_CASE("reference grid family") {
    const Scenario r = reference_scenario();
    const auto family = reference_grid();
    const auto g = solve_game(r, family);
    CHECK_FALSE(g.all_rejected);
    REQUIRE(g.contract);
    CHECK(*g.contract == Contract{{2, 0}});
    CHECK(g.effort == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(g.principal_payoff == doctest::Approx(3.95).epsilon(1e-12));
    CHECK(g.agent_payoff == doctest::Approx(0.525).epsilon(1e-12));
    CHECK(g.candidates == 7);
    CHECK(g.accepted_candidates == 7);

    // closed form e*(w1) = min(1, w1 / 8)
    for (int w1 = 0; w1 <= 12; ++w1) {
        const auto br = agent_best_response(r, Contract{{double(w1), 0}});
        CHECK(br.maximizers.front().effort == doctest::Approx(std::min(1.0, w1 / 8.0)).epsilon(1e-12));
    }

    const auto o = oracle::exhaustive_game(r, enumerate(family), TieBreak::PrincipalFavorable);
    CHECK(o.contract == *g.contract);
    CHECK(o.principal_payoff == doctest::Approx(g.principal_payoff).epsilon(1e-9));
}

TEST_CASE("participation failure and singleton families") {
    Scenario r = reference_scenario();
    r.agent.reservation_utility = 100.0;
    const auto none = solve_game(r, reference_grid());
    CHECK(none.all_rejected);
    CHECK_FALSE(none.contract);
    CHECK(none.accepted_candidates == 0);

    const Scenario ok = reference_scenario();
    const auto one = solve_game(ok, ContractFamily::list({reference_contract()}));
    REQUIRE(one.contract);
    CHECK(*one.contract == reference_contract());
    CHECK(one.effort == doctest::Approx(0.5));
    CHECK(one.principal_payoff == doctest::Approx(3.8));
    CHECK(one.agent_payoff == doctest::Approx(1.3));
}

TEST_CASE("tie-break policies on a flat agent") {
    Scenario r = reference_scenario();
    r.agent.v = Curve1D::polynomial({0, 2});
    const auto family = ContractFamily::list({reference_contract()});
    const auto fav = solve_game(r, family, TieBreak::PrincipalFavorable);
    CHECK(fav.effort == 1.0);
    CHECK(fav.principal_payoff == doctest::Approx(4.8));
    CHECK(solve_game(r, family, TieBreak::AgentLowestEffort).effort == 0.0);
    CHECK(solve_game(r, family, TieBreak::AgentHighestEffort).effort == 1.0);
    CHECK(solve_game(r, family, TieBreak::AgentLowestEffort).principal_payoff == doctest::Approx(2.8));
}

TEST_CASE("contract ties go to the smallest wage vector whatever the order") {
    Scenario r = reference_scenario();
    r.principal.B = Curve1D::constant(1.0);  // every contract is worth the same
    std::vector<Contract> list{{{5, 1}}, {{3, 2}}, {{3, 1}}, {{4, 0}}};
    const auto a = solve_game(r, ContractFamily::list(list));
    std::reverse(list.begin(), list.end());
    const auto b = solve_game(r, ContractFamily::list(list));
    REQUIRE(a.contract);
    CHECK(*a.contract == Contract{{3, 1}});
    CHECK(a == b);
}

TEST_CASE("enlarging the family never lowers the principal payoff") {
    Rng rng(13);
    for (int k = 0; k < 20; ++k) {
        auto c = random_case(rng);
        c.scenario.principal.B = Curve1D::polynomial({0, 1});
        c.scenario.agent.reservation_utility = -1e9;
        std::vector<Contract> small;
        for (int j = 0; j < 8; ++j) small.push_back(random_contract(rng, c.scenario.outcome_count(), kWageMax));
        auto big = small;
        for (int j = 0; j < 8; ++j) big.push_back(random_contract(rng, c.scenario.outcome_count(), kWageMax));
        const auto a = solve_game(c.scenario, ContractFamily::list(small));
        const auto b = solve_game(c.scenario, ContractFamily::list(big));
        CHECK(b.principal_payoff >= a.principal_payoff);
    }
}

TEST_CASE("solve_game is deterministic and thread-count independent") {
    Rng rng(21);
    for (int k = 0; k < 5; ++k) {
        const auto c = random_case(rng);
        std::vector<Contract> list;
        for (int j = 0; j < 40; ++j) list.push_back(random_contract(rng, c.scenario.outcome_count(), kWageMax));
        const auto family = ContractFamily::list(list);
        const auto once = solve_game(c.scenario, family);
        CHECK(once == solve_game(c.scenario, family));
        CHECK(once == solve_game(c.scenario, family, TieBreak::PrincipalFavorable, {}, 3));
    }
}

TEST_CASE("solve_game matches exhaustive enumeration on small random families") {
    Rng rng(55);
    for (int k = 0; k < 10; ++k) {
        const auto c = random_case(rng);
        std::vector<Contract> list;
        for (int j = 0; j < 30; ++j) list.push_back(random_contract(rng, c.scenario.outcome_count(), kWageMax));
        const auto g = solve_game(c.scenario, ContractFamily::list(list));
        const auto o = oracle::exhaustive_game(c.scenario, list, TieBreak::PrincipalFavorable);
        REQUIRE(g.all_rejected == o.all_rejected);
        if (g.all_rejected) continue;
        CHECK(*g.contract == o.contract);
        CHECK(g.principal_payoff == doctest::Approx(o.principal_payoff).epsilon(1e-6));
    }
}
