#pragma once

#include "pagame/curve.hpp"
#include "pagame/errors.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pagame {

/// Tolerance on p_i(e) leaving [0, 1] before it counts as an error.
inline constexpr double kProbabilityTolerance = 1e-9;

/// Number of uniform grid points used to validate a scenario.
inline constexpr std::size_t kValidationGridPoints = 2049;

/// Monetary results x_1..x_n. Indices are stable; values need not be sorted.
struct OutcomeSet {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    bool operator==(const OutcomeSet&) const = default;
};

/// Wage vector w_1..w_n aligned with the outcome set.
struct Contract {
    std::vector<double> wages;

    std::size_t size() const noexcept { return wages.size(); }
    bool operator==(const Contract&) const = default;
    auto operator<=>(const Contract&) const = default;
};

struct EffortInterval {
    double min = 0.0;
    double max = 1.0;

    double length() const noexcept { return max - min; }
    bool contains(double e) const noexcept { return e >= min && e <= max; }
    double midpoint() const noexcept { return min + 0.5 * (max - min); }
    bool operator==(const EffortInterval&) const = default;
};

/// p_1(e)..p_{n-1}(e) as curves; p_n(e) is the complement 1 - sum of the others.
struct EffortProfile {
    std::vector<Curve1D> components;

    static EffortProfile constant(std::span<const double> probabilities);
    bool operator==(const EffortProfile&) const = default;
};

struct AgentPreferences {
    Curve1D u;  // utility of the wage
    Curve1D v;  // (dis)utility of effort; may be negative or non-monotone
    double reservation_utility = 0.0;
    bool operator==(const AgentPreferences&) const = default;
};

struct PrincipalPreferences {
    Curve1D B;  // utility of the net result x - w
    bool operator==(const PrincipalPreferences&) const = default;
};

struct Scenario {
    OutcomeSet outcomes;
    EffortInterval effort;
    EffortProfile profile;
    AgentPreferences agent;
    PrincipalPreferences principal;

    std::size_t outcome_count() const noexcept { return outcomes.size(); }
    bool operator==(const Scenario&) const = default;
};

/// Outcome probabilities (p_1(e), ..., p_n(e)) at effort e.
///
/// Entries within kProbabilityTolerance of [0, 1] are clamped; anything
/// further out raises ProbabilityRangeError. The last entry is always the
/// complement of the others, so the index-order sum is 1.
std::vector<double> profile_probs(const Scenario& s, double e);

/// Allocation-free form of profile_probs; `out` must have outcome_count() entries.
void profile_probs_into(const Scenario& s, double e, std::span<double> out);

/// First and second derivatives of the probability vector in e. The last
/// entry is minus the sum of the others.
std::vector<double> profile_probs_d1(const Scenario& s, double e);
std::vector<double> profile_probs_d2(const Scenario& s, double e);
void profile_probs_d1_into(const Scenario& s, double e, std::span<double> out);
void profile_probs_d2_into(const Scenario& s, double e, std::span<double> out);

/// Every wage each outcome can be paid, used to check u and B domains
/// without materialising a whole contract family.
struct WageSupport {
    std::vector<std::vector<double>> per_outcome;
};

/// Returns every problem found (empty when the scenario is valid):
/// dimension agreement, interval sanity, p_i range and curve domains on a
/// 2049-point effort grid, u on every contract wage and B on every x_i - w_i.
std::vector<ValidationIssue> validate_scenario(const Scenario& s,
                                               std::span<const Contract> contracts = {},
                                               const WageSupport* extra_wages = nullptr);

/// Throws ValidationError carrying the full issue list when validation fails.
void require_valid(const Scenario& s, std::span<const Contract> contracts = {},
                   const WageSupport* extra_wages = nullptr);

/// Throws DimensionError unless the contract length equals the outcome count.
void require_matching(const Scenario& s, const Contract& w);

}  // namespace pagame
