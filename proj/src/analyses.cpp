#include "pagame/analyses.hpp"

#include "pagame/grid.hpp"

#include <algorithm>
#include <cmath>

namespace pagame {

InvisibleEffortReport detect_invisible_effort(const Scenario& s, double epsilon, const SolverOptions& opts) {
    InvisibleEffortReport report;
    report.epsilon = epsilon;

    const auto reference = profile_probs(s, s.effort.midpoint());
    const auto grid = uniform_grid(s.effort.min, s.effort.max, kValidationGridPoints);
    double min_neg_v2 = INFINITY;
    double max_neg_v2 = -INFINITY;
    for (double e : grid) {
        const auto p = profile_probs(s, e);
        for (std::size_t i = 0; i < p.size(); ++i) {
            report.max_deviation = std::max(report.max_deviation, std::abs(p[i] - reference[i]));
        }
        const double neg_v2 = -s.agent.v.d2(e);
        min_neg_v2 = std::min(min_neg_v2, neg_v2);
        max_neg_v2 = std::max(max_neg_v2, neg_v2);
    }
    report.v_concave_somewhere = max_neg_v2 > opts.risk_tolerance;
    report.is_invisible = report.max_deviation <= epsilon;
    if (!report.is_invisible) return report;

    const Curve1D& v = s.agent.v;
    const ScalarObjective neg_v{[&v](double e) { return -v.value(e); }, [&v](double e) { return -v.d1(e); },
                                [&v](double e) { return -v.d2(e); }};
    report.best_response = maximize_hybrid(neg_v, s.effort, opts);
    report.risk = RiskClassification{posture_from_range(min_neg_v2, max_neg_v2, opts.risk_tolerance), min_neg_v2,
                                     max_neg_v2};
    return report;
}

TwoOutcomeLinearReport two_outcome_linear_analysis(const Scenario& s, const Contract& w, const SolverOptions& opts) {
    if (s.outcome_count() != 2 || s.profile.components.size() != 1) {
        throw NotTwoOutcomeLinear("two-outcome analysis needs exactly 2 outcomes, scenario has " +
                                  std::to_string(s.outcome_count()));
    }
    const Curve1D& p1 = s.profile.components.front();
    const int degree = p1.polynomial_degree();
    if (degree < 0 || degree > 1) {
        throw NotTwoOutcomeLinear("p_1 must be a polynomial of degree <= 1");
    }
    require_matching(s, w);

    const auto& coeffs = std::get<Polynomial>(p1.params()).coefficients;
    TwoOutcomeLinearReport report;
    report.intercept = coeffs[0];
    report.slope = degree == 1 ? coeffs[1] : 0.0;
    report.utility_spread = s.agent.u.value(w.wages[0]) - s.agent.u.value(w.wages[1]);
    report.foc_target = report.slope * report.utility_spread;
    if (report.slope == 0.0) {
        report.invisible = detect_invisible_effort(s, kDefaultInvisibleEpsilon, opts);
    }

    const Curve1D& v = s.agent.v;
    const double target = report.foc_target;
    const std::function<double(double)> foc = [&v, target](double e) { return target - v.d1(e); };

    // Flat case: v' matches the target on the whole scan, so E is constant.
    const std::size_t scan = std::max<std::size_t>(opts.derivative_grid, 2);
    const double flat_tol = opts.expectation_tolerance * std::max(1.0, std::abs(target));
    double worst = 0.0;
    for (std::size_t k = 0; k < scan; ++k) {
        worst = std::max(worst, std::abs(foc(grid_point(s.effort.min, s.effort.max, k, scan))));
    }
    report.degenerate_flat = worst <= flat_tol;

    if (!report.degenerate_flat) {
        auto roots = bracket_roots(foc, s.effort.min, s.effort.max, scan, opts.polish_tolerance);
        for (double r : roots) {
            if (!report.foc_solutions.empty() && r - report.foc_solutions.back() <= opts.effort_tolerance) continue;
            report.foc_solutions.push_back(r);
            report.foc_residuals.push_back(std::abs(foc(r)));
        }
    }

    const AgentObjective objective(s, w);
    const auto f = objective.as_objective();
    report.lower_bound = {s.effort.min, MaximizerKind::BoundaryMin, objective.expectation(s.effort.min)};
    report.upper_bound = {s.effort.max, MaximizerKind::BoundaryMax, objective.expectation(s.effort.max)};

    MaximizerSet found;
    if (report.degenerate_flat) {
        // Constant E: bound representatives with the flag, as in the general solver.
        found.best = std::max(report.lower_bound.expectation, report.upper_bound.expectation);
        found.constant = true;
        found.points = {report.lower_bound, report.upper_bound};
    } else {
        found = select_maximizers(f, report.foc_solutions, s.effort, opts);
    }
    report.best_response.maximizers = std::move(found.points);
    report.best_response.optimal_expectation = found.best;
    report.best_response.constant_expectation = found.constant;
    report.best_response.accepted = found.best >= s.agent.reservation_utility;
    return report;
}

namespace {

CurveShape shape_on(const Curve1D& c, const std::vector<double>& points) {
    CurveShape shape;
    shape.min_value = shape.min_d1 = shape.min_d2 = INFINITY;
    shape.max_value = shape.max_d1 = shape.max_d2 = -INFINITY;
    for (double t : points) {
        const double value = c.value(t);
        const double d1 = c.d1(t);
        const double d2 = c.d2(t);
        shape.min_value = std::min(shape.min_value, value);
        shape.max_value = std::max(shape.max_value, value);
        if (d1 < shape.min_d1) {
            shape.min_d1 = d1;
            shape.argmin_d1 = t;
        }
        shape.max_d1 = std::max(shape.max_d1, d1);
        shape.min_d2 = std::min(shape.min_d2, d2);
        shape.max_d2 = std::max(shape.max_d2, d2);
    }
    return shape;
}

constexpr double kShapeTolerance = 1e-9;

}  // namespace

ClassicalAssumptionsReport classical_assumptions_report(const Scenario& s, double wage_min, double wage_max,
                                                        std::size_t points) {
    if (!(wage_min <= wage_max)) {
        throw DomainError("wage range must satisfy min <= max");
    }
    ClassicalAssumptionsReport r;
    r.wage_min = wage_min;
    r.wage_max = wage_max;
    const std::size_t wage_points = wage_min == wage_max ? 1 : std::max<std::size_t>(points, 2);
    r.u_shape = shape_on(s.agent.u, uniform_grid(wage_min, wage_max, wage_points));
    r.v_shape = shape_on(s.agent.v, uniform_grid(s.effort.min, s.effort.max, std::max<std::size_t>(points, 2)));

    r.u_increasing = r.u_shape.min_d1 > 0.0;
    r.u_concave = r.u_shape.max_d2 <= kShapeTolerance;
    r.v_increasing = r.v_shape.min_d1 > 0.0;
    r.v_convex = r.v_shape.min_d2 >= -kShapeTolerance;
    r.v_strictly_convex = r.v_shape.min_d2 > 0.0;
    r.inner_need_of_working = r.v_shape.min_d1 < -kShapeTolerance;
    r.utility_from_effort = r.v_shape.min_value < -kShapeTolerance;
    r.v_concave_somewhere = r.v_shape.min_d2 < -kShapeTolerance;
    r.classical = r.u_increasing && r.u_concave && r.v_increasing && r.v_convex;
    return r;
}

}  // namespace pagame
