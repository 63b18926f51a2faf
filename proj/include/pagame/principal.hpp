#pragma once

#include "pagame/agent.hpp"

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace pagame {

/// sum_i p_i(e) B(x_i - w_i)
double principal_expectation(const Scenario& s, const Contract& w, double e);

/// Wages min, min + step, ... up to max for one outcome.
struct WageAxis {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;

    std::size_t count() const;
    double at(std::size_t k) const;
    bool operator==(const WageAxis&) const = default;
};

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// The finite set of contracts the principal chooses from: an explicit list
/// or the Cartesian product of per-outcome wage axes.
class ContractFamily {
public:
    static ContractFamily list(std::vector<Contract> contracts, std::size_t cap = kDefaultEnumerationCap);
    static ContractFamily grid(std::vector<WageAxis> axes, std::size_t cap = kDefaultEnumerationCap);

    /// Number of candidates, saturating at SIZE_MAX.
    std::size_t size() const;
    std::size_t cap() const noexcept { return cap_; }

    /// Grid candidates come out in lexicographic wage order.
    Contract at(std::size_t index) const;

    /// Throws EnumerationCapExceeded when size() > cap().
    void check_cap() const;

    WageSupport support() const;

    bool is_grid() const noexcept { return std::holds_alternative<std::vector<WageAxis>>(source_); }
    const std::vector<Contract>* contracts() const noexcept { return std::get_if<std::vector<Contract>>(&source_); }
    const std::vector<WageAxis>* axes() const noexcept { return std::get_if<std::vector<WageAxis>>(&source_); }

    bool operator==(const ContractFamily&) const = default;

private:
    ContractFamily(std::variant<std::vector<Contract>, std::vector<WageAxis>> source, std::size_t cap)
        : source_(std::move(source)), cap_(cap) {}

    std::variant<std::vector<Contract>, std::vector<WageAxis>> source_;
    std::size_t cap_;
};

enum class TieBreak { PrincipalFavorable, AgentLowestEffort, AgentHighestEffort };

std::string_view to_string(TieBreak policy) noexcept;
std::optional<TieBreak> tie_break_from_string(std::string_view name) noexcept;

struct GameSolution {
    bool all_rejected = false;
    std::optional<Contract> contract;
    BestResponse agent_response;
    double effort = 0.0;
    double principal_payoff = 0.0;
    double agent_payoff = 0.0;
    std::size_t candidates = 0;
    std::size_t accepted_candidates = 0;
    TieBreak tie_break = TieBreak::PrincipalFavorable;

    bool operator==(const GameSolution&) const = default;
};

/// Effort the agent settles on among its maximizers under `policy`.
/// PrincipalFavorable picks the maximizer best for the principal, lowest
/// effort among ties.
double select_effort(const Scenario& s, const Contract& w, const BestResponse& br, TieBreak policy,
                     const SolverOptions& opts = {});

/// Backward induction over a finite family: best response per candidate,
/// rejected candidates dropped, principal payoff maximised. Contracts tied
/// within relative tau_E go to the lexicographically smallest wage vector,
/// which keeps the result independent of evaluation order. `threads` > 1
/// evaluates candidates in parallel with identical output.
GameSolution solve_game(const Scenario& s, const ContractFamily& family,
                        TieBreak policy = TieBreak::PrincipalFavorable, const SolverOptions& opts = {},
                        unsigned threads = 1);

}  // namespace pagame
