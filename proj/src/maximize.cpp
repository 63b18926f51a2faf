#include "pagame/maximize.hpp"

#include "pagame/grid.hpp"

#include <algorithm>
#include <cmath>

namespace pagame {

std::string_view to_string(MaximizerKind kind) noexcept {
    switch (kind) {
        case MaximizerKind::InteriorCritical: return "interior_critical";
        case MaximizerKind::BoundaryMin: return "boundary_min";
        case MaximizerKind::BoundaryMax: return "boundary_max";
    }
    return "unknown";
}

MaximizerKind kind_at(double e, EffortInterval iv, double tau_e) noexcept {
    if (std::abs(e - iv.min) <= tau_e) return MaximizerKind::BoundaryMin;
    if (std::abs(e - iv.max) <= tau_e) return MaximizerKind::BoundaryMax;
    return MaximizerKind::InteriorCritical;
}

double bisect_root(const std::function<double(double)>& g, double a, double b, double tolerance) {
    double ga = g(a);
    double gb = g(b);
    if (ga == 0.0) return a;
    if (gb == 0.0) return b;
    for (int iter = 0; iter < 400 && (b - a) > tolerance; ++iter) {
        const double mid = a + 0.5 * (b - a);
        if (mid <= a || mid >= b) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if (std::signbit(gm) == std::signbit(ga)) {
            a = mid;
            ga = gm;
        } else {
            b = mid;
            gb = gm;
        }
    }
    return std::abs(ga) <= std::abs(gb) ? a : b;
}

std::vector<double> bracket_roots(const std::function<double(double)>& g, double lo, double hi,
                                  std::size_t scan_points, double tolerance) {
    std::vector<double> roots;
    double prev_x = lo;
    double prev_g = g(lo);
    if (prev_g == 0.0) roots.push_back(lo);
    for (std::size_t k = 1; k < scan_points; ++k) {
        const double x = grid_point(lo, hi, k, scan_points);
        const double gx = g(x);
        if (gx == 0.0) {
            roots.push_back(x);
        } else if (prev_g != 0.0 && std::signbit(gx) != std::signbit(prev_g)) {
            roots.push_back(bisect_root(g, prev_x, x, tolerance));
        }
        prev_x = x;
        prev_g = gx;
    }
    return roots;
}

namespace {

double golden_section_max(const std::function<double(double)>& f, double a, double b, double tolerance) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 400 && (b - a) > tolerance; ++iter) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? c : d;
}

// Groups sorted points whose gaps stay within `radius`; picks a bound if the
// group touches one, else the point with the smallest |f'|.
std::vector<double> merge_points(const std::vector<double>& sorted, double radius, const EffortInterval& iv,
                                 double tau_e, const std::function<double(double)>& d1) {
    std::vector<double> merged;
    std::size_t start = 0;
    while (start < sorted.size()) {
        std::size_t end = start + 1;
        while (end < sorted.size() && sorted[end] - sorted[end - 1] <= radius) ++end;
        double rep = sorted[start];
        bool boundary = false;
        for (std::size_t k = start; k < end; ++k) {
            const auto kind = kind_at(sorted[k], iv, tau_e);
            if (kind == MaximizerKind::BoundaryMin) {
                rep = iv.min;
                boundary = true;
            } else if (kind == MaximizerKind::BoundaryMax) {
                rep = iv.max;
                boundary = true;
            }
        }
        if (!boundary && end - start > 1) {
            double best_slope = std::abs(d1(rep));
            for (std::size_t k = start + 1; k < end; ++k) {
                const double slope = std::abs(d1(sorted[k]));
                if (slope < best_slope) {
                    best_slope = slope;
                    rep = sorted[k];
                }
            }
        }
        merged.push_back(rep);
        start = end;
    }
    return merged;
}

}  // namespace

MaximizerSet maximize_hybrid(const ScalarObjective& f, EffortInterval iv, const SolverOptions& opts) {
    const double lo = iv.min;
    const double hi = iv.max;

    std::vector<double> candidates;
    for (double r : bracket_roots(f.d1, lo, hi, opts.derivative_grid, opts.polish_tolerance)) {
        candidates.push_back(r);
    }

    const std::size_t m = std::max<std::size_t>(opts.expectation_grid, 3);
    std::vector<double> xs(m);
    std::vector<double> ys(m);
    for (std::size_t k = 0; k < m; ++k) {
        xs[k] = grid_point(lo, hi, k, m);
        ys[k] = f.value(xs[k]);
    }
    double scan_min = ys[0];
    double scan_max = ys[0];
    for (std::size_t k = 1; k < m; ++k) {
        scan_min = std::min(scan_min, ys[k]);
        scan_max = std::max(scan_max, ys[k]);
        if (k + 1 < m && ys[k] > ys[k - 1] && ys[k] >= ys[k + 1]) {
            const double a = xs[k - 1];
            const double b = xs[k + 1];
            const double da = f.d1(a);
            const double db = f.d1(b);
            if (da > 0.0 && db < 0.0) {
                candidates.push_back(bisect_root(f.d1, a, b, opts.polish_tolerance));
            } else {
                candidates.push_back(golden_section_max(f.value, a, b, opts.polish_tolerance));
            }
        }
    }

    return select_maximizers(f, std::move(candidates), iv, opts, scan_min, scan_max);
}

MaximizerSet select_maximizers(const ScalarObjective& f, std::vector<double> candidates, EffortInterval iv,
                               const SolverOptions& opts, double scan_min, double scan_max) {
    const double lo = iv.min;
    const double hi = iv.max;
    candidates.push_back(lo);
    candidates.push_back(hi);
    std::sort(candidates.begin(), candidates.end());
    candidates = merge_points(candidates, opts.effort_tolerance, iv, opts.effort_tolerance, f.d1);

    std::vector<double> values(candidates.size());
    double best = -INFINITY;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        values[k] = f.value(candidates[k]);
        best = std::max(best, values[k]);
        scan_min = std::min(scan_min, values[k]);
        scan_max = std::max(scan_max, values[k]);
    }
    const double tie = opts.expectation_tolerance * std::max(1.0, std::abs(best));

    MaximizerSet out;
    out.best = best;
    if (scan_max - scan_min <= tie) {
        out.constant = true;
        out.points.push_back({lo, MaximizerKind::BoundaryMin, f.value(lo)});
        out.points.push_back({hi, MaximizerKind::BoundaryMax, f.value(hi)});
        return out;
    }

    std::vector<double> winners;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (values[k] >= best - tie) winners.push_back(candidates[k]);
    }
    winners = merge_points(winners, opts.merge_radius, iv, opts.effort_tolerance, f.d1);
    for (double e : winners) {
        out.points.push_back({e, kind_at(e, iv, opts.effort_tolerance), f.value(e)});
    }
    return out;
}

}  // namespace pagame
