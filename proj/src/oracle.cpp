#include "pagame/oracle.hpp"

#include "pagame/agent.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace pagame::oracle {

GridMax grid_argmax(const std::function<double(double)>& f, double lo, double hi, std::size_t points) {
    if (points < 2) throw DomainError("grid_argmax needs at least 2 points");
    GridMax best{lo, f(lo)};
    for (std::size_t k = 1; k < points; ++k) {
        const double x = k + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        const double y = f(x);
        if (y > best.value) best = {x, y};
    }
    return best;
}

double finite_diff_d1(const std::function<double(double)>& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

double finite_diff_d2(const std::function<double(double)>& f, double t, double h) {
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard & 0xffffffffu), static_cast<std::uint32_t>(shard >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& engine) {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

namespace {

std::vector<double> cumulative(const Scenario& s, double e) {
    auto cdf = profile_probs(s, e);
    for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
    cdf.back() = 1.0;
    return cdf;
}

std::size_t draw(const std::vector<double>& cdf, std::mt19937_64& engine) {
    const double u = uniform01(engine);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

}  // namespace

std::size_t sample_outcome(const Scenario& s, double e, std::mt19937_64& engine) {
    return draw(cumulative(s, e), engine);
}

SimulationResult monte_carlo_payoffs(const Scenario& s, const Contract& w, double e, std::uint64_t n,
                                     std::uint64_t seed, std::uint64_t shards, unsigned threads) {
    if (n < 1) throw DomainError("simulation needs at least one draw");
    if (shards < 1) throw DomainError("simulation needs at least one shard");
    require_matching(s, w);

    const std::size_t outcomes = s.outcome_count();
    const auto cdf = cumulative(s, e);
    std::vector<double> agent(outcomes);
    std::vector<double> principal(outcomes);
    const double effort_cost = s.agent.v.value(e);
    for (std::size_t i = 0; i < outcomes; ++i) {
        agent[i] = s.agent.u.value(w.wages[i]) - effort_cost;
        principal[i] = s.principal.B.value(s.outcomes.values[i] - w.wages[i]);
    }

    std::vector<std::vector<std::uint64_t>> counts(shards, std::vector<std::uint64_t>(outcomes, 0));
    auto run_shard = [&](std::uint64_t k) {
        const std::uint64_t quota = n / shards + (k < n % shards ? 1 : 0);
        auto engine = make_engine(seed, k);
        for (std::uint64_t d = 0; d < quota; ++d) ++counts[k][draw(cdf, engine)];
    };
    const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, shards)));
    if (workers == 1) {
        for (std::uint64_t k = 0; k < shards; ++k) run_shard(k);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                for (std::uint64_t k = t; k < shards; k += workers) run_shard(k);
            });
        }
        for (auto& th : pool) th.join();
    }

    SimulationResult r;
    r.draws = n;
    r.seed = seed;
    r.shards = shards;
    r.frequencies.assign(outcomes, 0);
    for (const auto& shard : counts) {
        for (std::size_t i = 0; i < outcomes; ++i) r.frequencies[i] += shard[i];
    }
    // Payoffs depend only on the drawn outcome, so moments follow from the counts.
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < outcomes; ++i) {
        const double c = static_cast<double>(r.frequencies[i]);
        r.mean_agent += c * agent[i];
        r.mean_principal += c * principal[i];
    }
    r.mean_agent /= dn;
    r.mean_principal /= dn;
    if (n > 1) {
        double ss_agent = 0.0;
        double ss_principal = 0.0;
        for (std::size_t i = 0; i < outcomes; ++i) {
            const double c = static_cast<double>(r.frequencies[i]);
            ss_agent += c * (agent[i] - r.mean_agent) * (agent[i] - r.mean_agent);
            ss_principal += c * (principal[i] - r.mean_principal) * (principal[i] - r.mean_principal);
        }
        r.sd_agent = std::sqrt(ss_agent / (dn - 1.0));
        r.sd_principal = std::sqrt(ss_principal / (dn - 1.0));
    }
    return r;
}

namespace {

double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double r = 0.6180339887498949;
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-12) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

std::vector<GridMax> refined_grid_maxima(const std::function<double(double)>& f, double lo, double hi,
                                         std::size_t points, double tie) {
    if (points < 3) throw DomainError("refined_grid_maxima needs at least 3 points");
    std::vector<double> xs(points);
    std::vector<double> ys(points);
    for (std::size_t k = 0; k < points; ++k) {
        xs[k] = k + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        ys[k] = f(xs[k]);
    }
    const auto [mn, mx] = std::minmax_element(ys.begin(), ys.end());
    if (*mx - *mn <= tie * std::max(1.0, std::abs(*mx))) {
        return {{lo, ys.front()}, {hi, ys.back()}};
    }

    std::vector<GridMax> found;
    for (std::size_t k = 0; k < points; ++k) {
        const bool left_ok = k == 0 || ys[k] >= ys[k - 1];
        const bool right_ok = k + 1 == points || ys[k] >= ys[k + 1];
        if (!left_ok || !right_ok) continue;
        if (k == 0 || k + 1 == points) {
            found.push_back({xs[k], ys[k]});
        }
        const double a = xs[k == 0 ? 0 : k - 1];
        const double b = xs[k + 1 == points ? k : k + 1];
        const double x = golden_max(f, a, b);
        found.push_back({x, f(x)});
    }
    double best = -INFINITY;
    for (const auto& g : found) best = std::max(best, g.value);
    const double slack = tie * std::max(1.0, std::abs(best));
    std::vector<GridMax> out;
    for (const auto& g : found) {
        if (g.value >= best - slack) out.push_back(g);
    }
    std::sort(out.begin(), out.end(), [](const GridMax& a, const GridMax& b) { return a.argmax < b.argmax; });
    // Collapse refinements of the same peak.
    std::vector<GridMax> unique;
    for (const auto& g : out) {
        if (!unique.empty() && g.argmax - unique.back().argmax <= 1e-6) {
            if (g.value > unique.back().value) unique.back() = g;
            continue;
        }
        unique.push_back(g);
    }
    return unique;
}

EnumeratedSolution exhaustive_game(const Scenario& s, const std::vector<Contract>& candidates, TieBreak policy,
                                   std::size_t grid_points) {
    struct Row {
        bool accepted = false;
        double effort = 0.0;
        double principal = 0.0;
        double agent = 0.0;
    };
    auto principal_payoff = [&s](const Contract& w, double e) {
        const auto p = profile_probs(s, e);
        double acc = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * s.principal.B.value(s.outcomes.values[i] - w.wages[i]);
        return acc;
    };

    std::vector<Row> rows(candidates.size());
    double best = -INFINITY;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const Contract& w = candidates[c];
        const auto maxima = refined_grid_maxima([&](double e) { return agent_expectation(s, w, e); }, s.effort.min,
                                                s.effort.max, grid_points);
        double top = -INFINITY;
        for (const auto& m : maxima) top = std::max(top, m.value);
        Row& row = rows[c];
        row.accepted = top >= s.agent.reservation_utility;
        if (!row.accepted) continue;

        std::size_t pick = 0;
        if (policy == TieBreak::AgentHighestEffort) {
            pick = maxima.size() - 1;
        } else if (policy == TieBreak::PrincipalFavorable) {
            double p_best = -INFINITY;
            for (std::size_t k = 0; k < maxima.size(); ++k) {
                const double p = principal_payoff(w, maxima[k].argmax);
                if (p > p_best + 1e-9 * std::max(1.0, std::abs(p_best))) {
                    p_best = p;
                    pick = k;
                }
            }
        }
        row.effort = maxima[pick].argmax;
        row.agent = maxima[pick].value;
        row.principal = principal_payoff(w, row.effort);
        best = std::max(best, row.principal);
    }

    EnumeratedSolution sol;
    const double slack = 1e-9 * std::max(1.0, std::abs(best));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const Row& row = rows[c];
        if (!row.accepted || row.principal < best - slack) continue;
        if (sol.all_rejected || candidates[c] < sol.contract) {
            sol.all_rejected = false;
            sol.contract = candidates[c];
            sol.effort = row.effort;
            sol.principal_payoff = row.principal;
            sol.agent_payoff = row.agent;
        }
    }
    return sol;
}

}  // namespace pagame::oracle
