#include "pagame/model.hpp"

#include "pagame/grid.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <sstream>

namespace pagame {

const char* to_string(IssueKind kind) noexcept {
    switch (kind) {
        case IssueKind::Domain: return "DomainError";
        case IssueKind::ProbabilityRange: return "ProbabilityRangeError";
        case IssueKind::Dimension: return "DimensionError";
    }
    return "Error";
}

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
    std::ostringstream os;
    os << "scenario validation failed with " << issues.size() << " issue(s)";
    for (const auto& issue : issues) os << "\n  " << to_string(issue.kind) << ": " << issue.message;
    return os.str();
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void check_effort(const Scenario& s, double e) {
    if (!s.effort.contains(e)) {
        throw DomainError("effort " + fmt_double(e) + " outside [" + fmt_double(s.effort.min) + ", " +
                          fmt_double(s.effort.max) + "]");
    }
}

void check_components(const Scenario& s) {
    if (s.outcome_count() < 2 || s.profile.components.size() + 1 != s.outcome_count()) {
        throw DimensionError("profile has " + std::to_string(s.profile.components.size()) +
                             " components for " + std::to_string(s.outcome_count()) + " outcomes");
    }
}

double clamp_probability(double p, std::size_t index, double e) {
    if (p >= 0.0 && p <= 1.0) return p;
    if (p >= -kProbabilityTolerance && p < 0.0) return 0.0;
    if (p > 1.0 && p <= 1.0 + kProbabilityTolerance) return 1.0;
    throw ProbabilityRangeError("p_" + std::to_string(index + 1) + "(" + fmt_double(e) +
                                ") = " + fmt_double(p) + " outside [0, 1]");
}

// Tracks the first failure and the failure count of one check over a grid.
struct FailureTally {
    std::size_t count = 0;
    double first_at = 0.0;
    std::string first_message;

    void record(double at, std::string message) {
        if (count++ == 0) {
            first_at = at;
            first_message = std::move(message);
        }
    }
};

void flush(std::vector<ValidationIssue>& out, IssueKind kind, const std::string& subject,
           const FailureTally& tally, std::size_t total, const char* variable) {
    if (tally.count == 0) return;
    std::ostringstream os;
    os << subject << ": " << tally.count << " of " << total << " sample points fail, first at "
       << variable << "=" << fmt_double(tally.first_at) << " (" << tally.first_message << ")";
    out.push_back({kind, os.str()});
}

void check_curve_on(const Curve1D& curve, const std::vector<double>& points, const std::string& subject,
                    const char* variable, std::vector<ValidationIssue>& out) {
    FailureTally tally;
    for (double t : points) {
        try {
            (void)curve.value(t);
            (void)curve.d1(t);
            (void)curve.d2(t);
        } catch (const DomainError& err) {
            tally.record(t, err.what());
        }
    }
    flush(out, IssueKind::Domain, subject, tally, points.size(), variable);
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(join_issues(issues)), issues_(std::move(issues)) {}

EffortProfile EffortProfile::constant(std::span<const double> probabilities) {
    EffortProfile profile;
    for (std::size_t i = 0; i + 1 < probabilities.size(); ++i) {
        profile.components.push_back(Curve1D::constant(probabilities[i]));
    }
    return profile;
}

void profile_probs_into(const Scenario& s, double e, std::span<double> p) {
    check_effort(s, e);
    check_components(s);
    const std::size_t n = s.outcome_count();
    if (p.size() != n) throw DimensionError("probability buffer has wrong length");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        p[i] = clamp_probability(s.profile.components[i].value(e), i, e);
        sum += p[i];
    }
    double last = 1.0 - sum;
    if (last < 0.0) {
        last = clamp_probability(last, n - 1, e);
        // Hand the clamped excess back to the largest component to keep the total at 1.
        auto largest = std::max_element(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n - 1));
        *largest -= sum - 1.0;
    }
    p[n - 1] = last;
}

namespace {

template <class Derivative>
void derivative_into(const Scenario& s, double e, std::span<double> d, Derivative derivative) {
    check_effort(s, e);
    check_components(s);
    const std::size_t n = s.outcome_count();
    if (d.size() != n) throw DimensionError("probability buffer has wrong length");
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        d[i] = derivative(s.profile.components[i], e);
        sum += d[i];
    }
    d[n - 1] = -sum;
}

}  // namespace

void profile_probs_d1_into(const Scenario& s, double e, std::span<double> out) {
    derivative_into(s, e, out, [](const Curve1D& c, double t) { return c.d1(t); });
}

void profile_probs_d2_into(const Scenario& s, double e, std::span<double> out) {
    derivative_into(s, e, out, [](const Curve1D& c, double t) { return c.d2(t); });
}

std::vector<double> profile_probs(const Scenario& s, double e) {
    std::vector<double> p(s.outcome_count());
    profile_probs_into(s, e, p);
    return p;
}

std::vector<double> profile_probs_d1(const Scenario& s, double e) {
    std::vector<double> d(s.outcome_count());
    profile_probs_d1_into(s, e, d);
    return d;
}

std::vector<double> profile_probs_d2(const Scenario& s, double e) {
    std::vector<double> d(s.outcome_count());
    profile_probs_d2_into(s, e, d);
    return d;
}

void require_matching(const Scenario& s, const Contract& w) {
    if (w.size() != s.outcome_count()) {
        throw DimensionError("contract has " + std::to_string(w.size()) + " wages for " +
                             std::to_string(s.outcome_count()) + " outcomes");
    }
}

std::vector<ValidationIssue> validate_scenario(const Scenario& s, std::span<const Contract> contracts,
                                               const WageSupport* extra_wages) {
    std::vector<ValidationIssue> issues;
    const std::size_t n = s.outcome_count();

    if (n < 2) {
        issues.push_back({IssueKind::Dimension, "outcome set needs at least 2 outcomes, got " + std::to_string(n)});
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.outcomes.values[i])) {
            issues.push_back({IssueKind::Domain, "outcome x_" + std::to_string(i + 1) + " is not finite"});
        }
    }
    const bool interval_ok = std::isfinite(s.effort.min) && std::isfinite(s.effort.max) && s.effort.min < s.effort.max;
    if (!interval_ok) {
        issues.push_back({IssueKind::Domain, "effort interval [" + fmt_double(s.effort.min) + ", " +
                                                 fmt_double(s.effort.max) + "] must be finite with min < max"});
    }
    const bool profile_ok = n >= 2 && s.profile.components.size() + 1 == n;
    if (n >= 2 && !profile_ok) {
        issues.push_back({IssueKind::Dimension, "profile has " + std::to_string(s.profile.components.size()) +
                                                    " component curves, expected " + std::to_string(n - 1)});
    }

    std::set<std::size_t> bad_contracts;
    for (std::size_t c = 0; c < contracts.size(); ++c) {
        if (contracts[c].size() != n) {
            bad_contracts.insert(c);
            issues.push_back({IssueKind::Dimension, "contract " + std::to_string(c) + " has " +
                                                        std::to_string(contracts[c].size()) + " wages for " +
                                                        std::to_string(n) + " outcomes"});
        }
    }
    if (extra_wages != nullptr && extra_wages->per_outcome.size() != n) {
        issues.push_back({IssueKind::Dimension, "contract family spans " +
                                                    std::to_string(extra_wages->per_outcome.size()) +
                                                    " outcomes, expected " + std::to_string(n)});
    }

    if (interval_ok) {
        const auto grid = uniform_grid(s.effort.min, s.effort.max, kValidationGridPoints);
        check_curve_on(s.agent.v, grid, "effort curve v", "e", issues);

        if (profile_ok) {
            std::vector<FailureTally> range(n);
            std::vector<FailureTally> domain(n - 1);
            for (double e : grid) {
                double sum = 0.0;
                bool evaluated = true;
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    const auto& curve = s.profile.components[i];
                    try {
                        const double p = curve.value(e);
                        (void)curve.d1(e);
                        (void)curve.d2(e);
                        sum += p;
                        if (p < -kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) {
                            range[i].record(e, "p=" + fmt_double(p));
                        }
                    } catch (const DomainError& err) {
                        domain[i].record(e, err.what());
                        evaluated = false;
                    }
                }
                const double last = 1.0 - sum;
                if (evaluated && (last < -kProbabilityTolerance || last > 1.0 + kProbabilityTolerance)) {
                    range[n - 1].record(e, "p=" + fmt_double(last));
                }
            }
            for (std::size_t i = 0; i + 1 < n; ++i) {
                flush(issues, IssueKind::Domain, "profile component p_" + std::to_string(i + 1), domain[i],
                      grid.size(), "e");
            }
            for (std::size_t i = 0; i < n; ++i) {
                flush(issues, IssueKind::ProbabilityRange,
                      "p_" + std::to_string(i + 1) + (i + 1 == n ? " (complement)" : "") + " outside [0, 1]",
                      range[i], grid.size(), "e");
            }
        }
    }

    // Distinct wages per outcome from the explicit contracts plus any family support.
    std::vector<std::set<double>> wages(n);
    for (std::size_t c = 0; c < contracts.size(); ++c) {
        if (bad_contracts.count(c) != 0) continue;
        for (std::size_t i = 0; i < n; ++i) wages[i].insert(contracts[c].wages[i]);
    }
    if (extra_wages != nullptr && extra_wages->per_outcome.size() == n) {
        for (std::size_t i = 0; i < n; ++i) wages[i].insert(extra_wages->per_outcome[i].begin(),
                                                            extra_wages->per_outcome[i].end());
    }
    std::set<double> all_wages;
    for (const auto& w : wages) all_wages.insert(w.begin(), w.end());
    for (double w : all_wages) {
        if (!std::isfinite(w)) {
            issues.push_back({IssueKind::Domain, "wage " + fmt_double(w) + " is not finite"});
        }
    }
    check_curve_on(s.agent.u, {all_wages.begin(), all_wages.end()}, "wage utility u", "w", issues);

    std::set<double> net_results;
    for (std::size_t i = 0; i < n; ++i) {
        for (double w : wages[i]) net_results.insert(s.outcomes.values[i] - w);
    }
    check_curve_on(s.principal.B, {net_results.begin(), net_results.end()}, "principal utility B", "x-w",
                   issues);
    return issues;
}

void require_valid(const Scenario& s, std::span<const Contract> contracts, const WageSupport* extra_wages) {
    auto issues = validate_scenario(s, contracts, extra_wages);
    if (!issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace pagame
