#include "pagame/agent.hpp"

#include "pagame/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace pagame {

namespace {

constexpr std::size_t kInlineOutcomes = 16;

}  // namespace

AgentObjective::AgentObjective(const Scenario& s, const Contract& w) : scenario_(&s) {
    require_matching(s, w);
    utilities_.reserve(w.size());
    for (double wage : w.wages) utilities_.push_back(s.agent.u.value(wage));
}

template <class Fill>
double AgentObjective::weighted(double e, Fill fill) const {
    const std::size_t n = utilities_.size();
    std::array<double, kInlineOutcomes> inline_buffer{};
    std::vector<double> heap_buffer;
    std::span<double> p;
    if (n <= kInlineOutcomes) {
        p = std::span<double>(inline_buffer.data(), n);
    } else {
        heap_buffer.resize(n);
        p = heap_buffer;
    }
    fill(*scenario_, e, p);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += p[i] * utilities_[i];
    return acc;
}

double AgentObjective::expectation(double e) const {
    return weighted(e, profile_probs_into) - scenario_->agent.v.value(e);
}

double AgentObjective::motivation(double e) const {
    return weighted(e, profile_probs_d1_into) - scenario_->agent.v.d1(e);
}

double AgentObjective::persistence(double e) const {
    return weighted(e, profile_probs_d2_into) - scenario_->agent.v.d2(e);
}

ScalarObjective AgentObjective::as_objective() const {
    return {[this](double e) { return expectation(e); }, [this](double e) { return motivation(e); },
            [this](double e) { return persistence(e); }};
}

double agent_expectation(const Scenario& s, const Contract& w, double e) {
    return AgentObjective(s, w).expectation(e);
}

double motivation(const Scenario& s, const Contract& w, double e) {
    return AgentObjective(s, w).motivation(e);
}

double persistence(const Scenario& s, const Contract& w, double e) {
    return AgentObjective(s, w).persistence(e);
}

double transience(const Scenario& s, const Contract& w, double e) {
    return -persistence(s, w, e);
}

BestResponse agent_best_response(const Scenario& s, const Contract& w, const SolverOptions& opts) {
    const AgentObjective objective(s, w);
    auto found = maximize_hybrid(objective.as_objective(), s.effort, opts);

    BestResponse br;
    br.maximizers = std::move(found.points);
    br.optimal_expectation = found.best;
    br.constant_expectation = found.constant;
    br.accepted = br.optimal_expectation >= s.agent.reservation_utility;
    return br;
}

std::string_view to_string(RiskPosture posture) noexcept {
    switch (posture) {
        case RiskPosture::Averse: return "averse";
        case RiskPosture::Seeking: return "seeking";
        case RiskPosture::Neutral: return "neutral";
        case RiskPosture::Mixed: return "mixed";
    }
    return "unknown";
}

RiskPosture posture_from_range(double lo, double hi, double tau) noexcept {
    if (hi < -tau) return RiskPosture::Averse;
    if (lo > tau) return RiskPosture::Seeking;
    if (lo >= -tau && hi <= tau) return RiskPosture::Neutral;
    return RiskPosture::Mixed;
}

RiskClassification classify_risk(const Scenario& s, const Contract& w, const SolverOptions& opts) {
    const AgentObjective objective(s, w);
    const std::size_t points = std::max<std::size_t>(opts.classification_grid, 2);
    RiskClassification rc;
    rc.min_persistence = INFINITY;
    rc.max_persistence = -INFINITY;
    for (std::size_t k = 0; k < points; ++k) {
        const double prst = objective.persistence(grid_point(s.effort.min, s.effort.max, k, points));
        rc.min_persistence = std::min(rc.min_persistence, prst);
        rc.max_persistence = std::max(rc.max_persistence, prst);
    }
    rc.posture = posture_from_range(rc.min_persistence, rc.max_persistence, opts.risk_tolerance);
    return rc;
}

}  // namespace pagame
