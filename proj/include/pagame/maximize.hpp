#pragma once

#include "pagame/model.hpp"

#include <cmath>
#include <functional>
#include <string_view>
#include <vector>

namespace pagame {

/// Search and classification tunables. Defaults are the library contract;
/// every field can be overridden from a scenario document.
struct SolverOptions {
    std::size_t derivative_grid = 1025;       // sign-change scan of the derivative
    std::size_t expectation_grid = 4097;      // dense scan of the objective
    std::size_t classification_grid = 2049;   // persistence sampling
    double polish_tolerance = 1e-12;          // bisection / golden-section bracket width
    double effort_tolerance = 1e-9;           // tau_e: candidate dedup, boundary kinds
    double expectation_tolerance = 1e-9;      // tau_E: relative tie tolerance
    double risk_tolerance = 1e-9;             // tau_r: persistence sign threshold
    double merge_radius = 1e-6;               // collapse of near-coincident maximizers

    bool operator==(const SolverOptions&) const = default;
};

enum class MaximizerKind { InteriorCritical, BoundaryMin, BoundaryMax };

std::string_view to_string(MaximizerKind kind) noexcept;

struct Maximizer {
    double effort = 0.0;
    MaximizerKind kind = MaximizerKind::InteriorCritical;
    double expectation = 0.0;

    bool operator==(const Maximizer&) const = default;
};

/// Kind implied by location alone: within tau_e of a bound is a boundary kind.
MaximizerKind kind_at(double e, EffortInterval interval, double tau_e) noexcept;

/// A scalar objective with its first and second derivatives.
struct ScalarObjective {
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
};

struct MaximizerSet {
    std::vector<Maximizer> points;  // ascending by effort
    double best = 0.0;
    bool constant = false;          // objective flat to tolerance; points are {lo, hi}
};

/// Global maximizers of f over [lo, hi].
///
/// Candidates are the two bounds, roots of f' bracketed on a
/// `derivative_grid` scan and bisected, and local maxima of a dense
/// `expectation_grid` scan of f. A dense-scan bracket is polished by
/// bisection on f' when f' changes sign across it, by golden-section
/// otherwise. Every candidate within relative tolerance of the best value
/// is returned with its kind.
MaximizerSet maximize_hybrid(const ScalarObjective& f, EffortInterval interval, const SolverOptions& opts);

/// Post-processing shared by the solvers: adds the bounds, merges candidates
/// within tau_e, keeps everything within relative tau_E of the best value
/// and labels kinds. When the value spread over the candidates and the
/// supplied [scan_min, scan_max] is within tolerance the objective counts as
/// constant and the two bounds are returned.
MaximizerSet select_maximizers(const ScalarObjective& f, std::vector<double> candidates, EffortInterval interval,
                               const SolverOptions& opts, double scan_min = INFINITY,
                               double scan_max = -INFINITY);

/// Bisection for a sign change of g on [a, b]; stops at width `tolerance`
/// or when the midpoint no longer moves. Returns the endpoint with the
/// smaller |g|.
double bisect_root(const std::function<double(double)>& g, double a, double b, double tolerance);

/// Roots of g on [lo, hi]: exact zeros at scan points plus bisected sign
/// changes between consecutive scan points. Ascending, unmerged.
std::vector<double> bracket_roots(const std::function<double(double)>& g, double lo, double hi,
                                  std::size_t scan_points, double tolerance);

}  // namespace pagame
