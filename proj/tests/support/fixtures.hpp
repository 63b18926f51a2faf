#pragma once

#include "pagame/model.hpp"

#include <string>

namespace pagame::testing {

/// x = (10, 2), p_1 = 0.2 + 0.5 e on [0, 1], u(w) = w, v(e) = 2 e^2, B(y) = y.
inline Scenario reference_scenario() {
    Scenario s;
    s.outcomes = {{10.0, 2.0}};
    s.effort = {0.0, 1.0};
    s.profile.components = {Curve1D::polynomial({0.2, 0.5})};
    s.agent.u = Curve1D::polynomial({0.0, 1.0});
    s.agent.v = Curve1D::polynomial({0.0, 0.0, 2.0});
    s.principal.B = Curve1D::polynomial({0.0, 1.0});
    return s;
}

inline Contract reference_contract() { return {{4.0, 0.0}}; }

/// Constant (0.3, 0.7) profile with v(e) = (e - 0.3)^2 on [0, 1].
inline Scenario parabola_scenario() {
    Scenario s = reference_scenario();
    const double p[] = {0.3, 0.7};
    s.profile = EffortProfile::constant(p);
    s.agent.v = Curve1D::polynomial({0.09, -0.6, 1.0});
    return s;
}

inline std::string data_path(const std::string& name) { return std::string(PAGAME_TEST_DATA) + "/" + name; }

}  // namespace pagame::testing
