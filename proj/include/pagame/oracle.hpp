#pragma once

// Brute-force and Monte Carlo oracles. Nothing here calls into the agent
// solver's search; the only shared pieces are the model and
// agent_expectation itself.

#include "pagame/model.hpp"
#include "pagame/principal.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace pagame::oracle {

struct GridMax {
    double argmax = 0.0;
    double value = 0.0;
};

/// Uniform grid search; ties go to the smallest abscissa.
GridMax grid_argmax(const std::function<double(double)>& f, double lo, double hi, std::size_t points);

/// (f(t+h) - f(t-h)) / 2h
double finite_diff_d1(const std::function<double(double)>& f, double t, double step);

/// (f(t+h) - 2 f(t) + f(t-h)) / h^2
double finite_diff_d2(const std::function<double(double)>& f, double t, double step);

/// Engine used for sampling. Outputs of std::mt19937_64 are fixed by the
/// C++ standard, and uniforms are built from the top 53 bits, so draws are
/// identical across platforms.
inline constexpr const char* kGeneratorName = "mt19937_64/seed_seq(seed_lo,seed_hi,shard)/u53-v1";

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t shard);

/// Uniform double in [0, 1).
double uniform01(std::mt19937_64& engine);

/// Nature's draw: outcome index (0-based) by inverse CDF over the cumulative
/// probabilities, last cumulative value forced to 1.
std::size_t sample_outcome(const Scenario& s, double e, std::mt19937_64& engine);

struct SimulationResult {
    std::uint64_t draws = 0;
    double mean_agent = 0.0;
    double mean_principal = 0.0;
    double sd_agent = 0.0;        // sample standard deviation
    double sd_principal = 0.0;
    std::vector<std::uint64_t> frequencies;
    std::uint64_t seed = 0;
    std::uint64_t shards = 1;
    std::string generator = kGeneratorName;

    bool operator==(const SimulationResult&) const = default;
};

/// n independent plays of the last two moves at a fixed contract and effort.
/// Draws are split into `shards` sub-streams seeded by (seed, shard index);
/// `threads` only changes how shards are scheduled, never the result.
SimulationResult monte_carlo_payoffs(const Scenario& s, const Contract& w, double e, std::uint64_t n,
                                     std::uint64_t seed, std::uint64_t shards = 1, unsigned threads = 1);

/// Global maximizers of f by dense grid followed by golden-section refinement
/// of every grid local maximum. Values within relative `tie` of the best are
/// all returned. A flat grid yields the two bounds.
std::vector<GridMax> refined_grid_maxima(const std::function<double(double)>& f, double lo, double hi,
                                         std::size_t points, double tie = 1e-9);

struct EnumeratedSolution {
    bool all_rejected = true;
    Contract contract;
    double effort = 0.0;
    double principal_payoff = 0.0;
    double agent_payoff = 0.0;
};

/// Backward induction by exhaustive enumeration, built only on
/// agent_expectation and refined_grid_maxima.
EnumeratedSolution exhaustive_game(const Scenario& s, const std::vector<Contract>& candidates, TieBreak policy,
                                   std::size_t grid_points = 2001);

}  // namespace pagame::oracle
