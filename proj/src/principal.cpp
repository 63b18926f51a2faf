#include "pagame/principal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace pagame {

double principal_expectation(const Scenario& s, const Contract& w, double e) {
    require_matching(s, w);
    const auto p = profile_probs(s, e);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i] * s.principal.B.value(s.outcomes.values[i] - w.wages[i]);
    }
    return acc;
}

std::size_t WageAxis::count() const {
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
        throw DomainError("wage axis bounds and step must be finite");
    }
    if (max < min) throw DomainError("wage axis needs min <= max");
    if (max == min) return 1;
    if (!(step > 0.0)) throw DomainError("wage axis step must be positive");
    const double span = (max - min) / step;
    if (span >= static_cast<double>(std::numeric_limits<std::size_t>::max() / 2)) {
        return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
}

double WageAxis::at(std::size_t k) const {
    return std::min(max, min + static_cast<double>(k) * step);
}

ContractFamily ContractFamily::list(std::vector<Contract> contracts, std::size_t cap) {
    if (contracts.empty()) throw DimensionError("contract family needs at least one candidate");
    return ContractFamily(std::move(contracts), cap);
}

ContractFamily ContractFamily::grid(std::vector<WageAxis> axes, std::size_t cap) {
    if (axes.empty()) throw DimensionError("contract grid needs at least one wage axis");
    for (const auto& axis : axes) (void)axis.count();
    return ContractFamily(std::move(axes), cap);
}

std::size_t ContractFamily::size() const {
    if (const auto* list = contracts()) return list->size();
    std::size_t total = 1;
    for (const auto& axis : *axes()) {
        const std::size_t c = axis.count();
        if (total > std::numeric_limits<std::size_t>::max() / c) return std::numeric_limits<std::size_t>::max();
        total *= c;
    }
    return total;
}

void ContractFamily::check_cap() const {
    const std::size_t n = size();
    if (n > cap_) {
        throw EnumerationCapExceeded("contract family has " +
                                     (n == std::numeric_limits<std::size_t>::max() ? std::string("too many")
                                                                                    : std::to_string(n)) +
                                     " candidates, cap is " + std::to_string(cap_));
    }
}

Contract ContractFamily::at(std::size_t index) const {
    if (const auto* list = contracts()) return list->at(index);
    const auto& ax = *axes();
    Contract w;
    w.wages.resize(ax.size());
    for (std::size_t i = ax.size(); i-- > 0;) {
        const std::size_t c = ax[i].count();
        w.wages[i] = ax[i].at(index % c);
        index /= c;
    }
    return w;
}

WageSupport ContractFamily::support() const {
    WageSupport support;
    if (const auto* list = contracts()) {
        const std::size_t n = list->front().size();
        support.per_outcome.resize(n);
        for (const auto& w : *list) {
            if (w.size() != n) throw DimensionError("contracts in a family must share one length");
            for (std::size_t i = 0; i < n; ++i) support.per_outcome[i].push_back(w.wages[i]);
        }
        return support;
    }
    for (const auto& axis : *axes()) {
        auto& values = support.per_outcome.emplace_back();
        const std::size_t c = std::min(axis.count(), cap_);
        for (std::size_t k = 0; k < c; ++k) values.push_back(axis.at(k));
    }
    return support;
}

std::string_view to_string(TieBreak policy) noexcept {
    switch (policy) {
        case TieBreak::PrincipalFavorable: return "principal_favorable";
        case TieBreak::AgentLowestEffort: return "agent_lowest_effort";
        case TieBreak::AgentHighestEffort: return "agent_highest_effort";
    }
    return "unknown";
}

std::optional<TieBreak> tie_break_from_string(std::string_view name) noexcept {
    for (auto p : {TieBreak::PrincipalFavorable, TieBreak::AgentLowestEffort, TieBreak::AgentHighestEffort}) {
        if (to_string(p) == name) return p;
    }
    return std::nullopt;
}

double select_effort(const Scenario& s, const Contract& w, const BestResponse& br, TieBreak policy,
                     const SolverOptions& opts) {
    if (br.maximizers.empty()) throw DomainError("best response has no maximizer");
    switch (policy) {
        case TieBreak::AgentLowestEffort: return br.maximizers.front().effort;
        case TieBreak::AgentHighestEffort: return br.maximizers.back().effort;
        case TieBreak::PrincipalFavorable: break;
    }
    std::vector<double> payoff;
    payoff.reserve(br.maximizers.size());
    double best = -INFINITY;
    for (const auto& m : br.maximizers) {
        payoff.push_back(principal_expectation(s, w, m.effort));
        best = std::max(best, payoff.back());
    }
    const double tie = opts.expectation_tolerance * std::max(1.0, std::abs(best));
    for (std::size_t k = 0; k < payoff.size(); ++k) {
        if (payoff[k] >= best - tie) return br.maximizers[k].effort;
    }
    return br.maximizers.front().effort;
}

namespace {

struct CandidateOutcome {
    bool accepted = false;
    BestResponse response;
    double effort = 0.0;
    double principal = 0.0;
    double agent = 0.0;
};

CandidateOutcome evaluate(const Scenario& s, const Contract& w, TieBreak policy, const SolverOptions& opts) {
    CandidateOutcome out;
    out.response = agent_best_response(s, w, opts);
    out.accepted = out.response.accepted;
    if (!out.accepted) return out;
    out.effort = select_effort(s, w, out.response, policy, opts);
    out.principal = principal_expectation(s, w, out.effort);
    out.agent = agent_expectation(s, w, out.effort);
    return out;
}

}  // namespace

GameSolution solve_game(const Scenario& s, const ContractFamily& family, TieBreak policy,
                        const SolverOptions& opts, unsigned threads) {
    family.check_cap();
    const std::size_t n = family.size();
    std::vector<CandidateOutcome> outcomes(n);

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t k = 0; k < n; ++k) outcomes[k] = evaluate(s, family.at(k), policy, opts);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t k = t; k < n; k += workers) {
                        outcomes[k] = evaluate(s, family.at(k), policy, opts);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    GameSolution sol;
    sol.tie_break = policy;
    sol.candidates = n;
    double best = -INFINITY;
    for (const auto& o : outcomes) {
        if (!o.accepted) continue;
        ++sol.accepted_candidates;
        best = std::max(best, o.principal);
    }
    if (sol.accepted_candidates == 0) {
        sol.all_rejected = true;
        return sol;
    }

    // Two passes keep the choice independent of candidate order.
    const double tie = opts.expectation_tolerance * std::max(1.0, std::abs(best));
    std::optional<std::size_t> chosen;
    Contract chosen_contract;
    for (std::size_t k = 0; k < n; ++k) {
        if (!outcomes[k].accepted || outcomes[k].principal < best - tie) continue;
        Contract w = family.at(k);
        if (!chosen || w < chosen_contract) {
            chosen = k;
            chosen_contract = std::move(w);
        }
    }
    auto& o = outcomes[*chosen];
    sol.contract = std::move(chosen_contract);
    sol.agent_response = std::move(o.response);
    sol.effort = o.effort;
    sol.principal_payoff = o.principal;
    sol.agent_payoff = o.agent;
    return sol;
}

}  // namespace pagame
