#pragma once

#include "pagame/agent.hpp"

#include <optional>
#include <vector>

namespace pagame {

inline constexpr double kDefaultInvisibleEpsilon = 1e-9;

/// Outcome distribution (nearly) independent of effort. The agent then only
/// trades off v(e), so the best response is the argmin set of v.
struct InvisibleEffortReport {
    bool is_invisible = false;
    double max_deviation = 0.0;             // max over grid and i of |p_i(e) - p_i(e_mid)|
    double epsilon = kDefaultInvisibleEpsilon;
    std::optional<MaximizerSet> best_response;    // argmin set of v, when invisible
    std::optional<RiskClassification> risk;       // from the sign of -v''
    bool v_concave_somewhere = false;       // v'' < 0 on some grid point
};

InvisibleEffortReport detect_invisible_effort(const Scenario& s, double epsilon = kDefaultInvisibleEpsilon,
                                              const SolverOptions& opts = {});

/// Two outcomes with p_1(e) = C e + h. The first-order condition for an
/// interior maximum is C (u(w_1) - u(w_2)) = v'(e).
struct TwoOutcomeLinearReport {
    double slope = 0.0;       // C
    double intercept = 0.0;   // h
    double utility_spread = 0.0;    // u(w_1) - u(w_2)
    double foc_target = 0.0;  // C (u(w_1) - u(w_2))
    std::vector<double> foc_solutions;   // roots of v'(e) = target on [e_min, e_max]
    std::vector<double> foc_residuals;
    bool degenerate_flat = false;   // v' equals the target on the whole scan
    Maximizer lower_bound;          // E at e_min
    Maximizer upper_bound;          // E at e_max
    BestResponse best_response;
    std::optional<InvisibleEffortReport> invisible;   // set when C = 0
};

/// Throws NotTwoOutcomeLinear unless n = 2 and p_1 is a polynomial of degree <= 1.
TwoOutcomeLinearReport two_outcome_linear_analysis(const Scenario& s, const Contract& w,
                                                   const SolverOptions& opts = {});

struct CurveShape {
    double min_value = 0.0, max_value = 0.0;
    double min_d1 = 0.0, max_d1 = 0.0;
    double min_d2 = 0.0, max_d2 = 0.0;
    double argmin_d1 = 0.0;   // where the first derivative is smallest
};

/// Which textbook assumptions (u' > 0, u'' <= 0, v' > 0, v'' >= 0) hold on
/// sampled grids, plus the generalized-agent flags.
struct ClassicalAssumptionsReport {
    double wage_min = 0.0, wage_max = 0.0;
    CurveShape u_shape;
    CurveShape v_shape;
    bool u_increasing = false;        // u' > 0
    bool u_concave = false;           // u'' <= 0
    bool v_increasing = false;        // v' > 0
    bool v_convex = false;            // v'' >= 0
    bool v_strictly_convex = false;   // v'' > 0
    bool inner_need_of_working = false;   // v' < 0 somewhere
    bool utility_from_effort = false;     // v < 0 somewhere
    bool v_concave_somewhere = false;     // v'' < 0 somewhere; contradicts the convex reading
    bool classical = false;           // all four textbook assumptions hold
};

ClassicalAssumptionsReport classical_assumptions_report(const Scenario& s, double wage_min, double wage_max,
                                                        std::size_t points = kValidationGridPoints);

}  // namespace pagame
