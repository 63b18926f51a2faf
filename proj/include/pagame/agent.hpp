#pragma once

#include "pagame/maximize.hpp"
#include "pagame/model.hpp"

#include <string_view>
#include <vector>

namespace pagame {

/// E(e) = sum_i p_i(e) u(w_i) - v(e)
double agent_expectation(const Scenario& s, const Contract& w, double e);

/// Motivation, dE/de.
double motivation(const Scenario& s, const Contract& w, double e);

/// Persistence, d^2E/de^2.
double persistence(const Scenario& s, const Contract& w, double e);

/// Transience, the negated persistence.
double transience(const Scenario& s, const Contract& w, double e);

/// E, Mt and Prst for one contract with u(w_i) evaluated once up front.
/// Holds a reference to the scenario, which must outlive it.
class AgentObjective {
public:
    AgentObjective(const Scenario& s, const Contract& w);

    double expectation(double e) const;
    double motivation(double e) const;
    double persistence(double e) const;

    ScalarObjective as_objective() const;
    const Scenario& scenario() const noexcept { return *scenario_; }

private:
    template <class Fill>
    double weighted(double e, Fill fill) const;

    const Scenario* scenario_;
    std::vector<double> utilities_;
};

struct BestResponse {
    std::vector<Maximizer> maximizers;  // ascending by effort
    double optimal_expectation = 0.0;
    bool accepted = false;               // optimal_expectation >= reservation utility
    bool constant_expectation = false;   // E flat over the interval; maximizers are the two bounds

    bool operator==(const BestResponse&) const = default;
};

/// Solves max over [e_min, e_max] of E(e) and labels every global maximizer.
/// Rejection is reported through `accepted`; the maximizers are kept.
BestResponse agent_best_response(const Scenario& s, const Contract& w, const SolverOptions& opts = {});

enum class RiskPosture { Averse, Seeking, Neutral, Mixed };

std::string_view to_string(RiskPosture posture) noexcept;

struct RiskClassification {
    RiskPosture posture = RiskPosture::Mixed;
    double min_persistence = 0.0;
    double max_persistence = 0.0;

    bool operator==(const RiskClassification&) const = default;
};

/// Applies the sign rule (tolerance `tau`) to sampled persistence values.
RiskPosture posture_from_range(double min_persistence, double max_persistence, double tau) noexcept;

/// Contract-dependent risk posture from the sign of persistence sampled on
/// `classification_grid` points: Averse when it is below -tau_r everywhere,
/// Seeking above tau_r everywhere, Neutral within tau_r everywhere, Mixed
/// otherwise.
RiskClassification classify_risk(const Scenario& s, const Contract& w, const SolverOptions& opts = {});

}  // namespace pagame
