#include "pagame/cli.hpp"

#include "pagame/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>

namespace pagame::cli {
namespace {

using io::Json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// `--contract` takes either an index into the document's contracts or an
// inline wage list such as "4,0" or "[4,0]".
Contract resolve_contract(const io::ScenarioDocument& doc, const std::string& spec) {
    if (spec.empty()) {
        if (doc.contracts.empty()) throw UsageError("--contract is required: the document lists no contracts");
        return doc.contracts.front();
    }
    if (all_digits(spec)) {
        const auto index = std::stoull(spec);
        if (index >= doc.contracts.size()) {
            throw UsageError("--contract index " + spec + " out of range (document has " +
                             std::to_string(doc.contracts.size()) + " contracts)");
        }
        return doc.contracts[index];
    }
    const std::string text = spec.front() == '[' ? spec : "[" + spec + "]";
    Json parsed;
    try {
        parsed = Json::parse(text);
    } catch (const Json::parse_error&) {
        throw UsageError("--contract: cannot parse wage list '" + spec + "'");
    }
    Contract w;
    if (!parsed.is_array()) throw UsageError("--contract: expected a wage list");
    for (const auto& x : parsed) {
        if (!x.is_number()) throw UsageError("--contract: wages must be numbers");
        w.wages.push_back(x.get<double>());
    }
    const std::vector<Contract> one{w};
    require_valid(doc.scenario, one);
    return w;
}

void report_failure(std::ostream& err, const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
}

Json validation_report(const std::vector<ValidationIssue>& issues) {
    Json j;
    j["valid"] = issues.empty();
    j["errors"] = io::to_json(issues);
    return j;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Principal-agent contract game solver", "pagame"};
    app.require_subcommand(1);

    std::string file;
    std::string contract_spec;
    std::size_t points = 101;
    std::string out_path;
    double effort = 0.0;
    std::uint64_t draws = 1'000'000;
    std::optional<std::uint64_t> seed;
    std::uint64_t shards = 1;
    std::string tie_break;
    std::optional<double> wage_min, wage_max;

    auto* validate = app.add_subcommand("validate", "Validate a scenario document");
    validate->add_option("file", file, "Scenario JSON")->required();

    auto add_contract = [&](CLI::App* sub) {
        sub->add_option("file", file, "Scenario JSON")->required();
        sub->add_option("--contract", contract_spec, "Contract index or inline wages, e.g. 4,0");
    };
    auto* solve_agent = app.add_subcommand("solve-agent", "Agent best response to one contract");
    add_contract(solve_agent);
    auto* classify = app.add_subcommand("classify-risk", "Contract-dependent risk posture");
    add_contract(classify);
    auto* analyze = app.add_subcommand("analyze", "Invisible-effort, two-outcome and classical-assumption reports");
    add_contract(analyze);
    analyze->add_option("--wage-min", wage_min, "Lower end of the wage range for the u checks");
    analyze->add_option("--wage-max", wage_max, "Upper end of the wage range for the u checks");
    auto* solve_game_cmd = app.add_subcommand("solve-game", "Backward induction over the contract family");
    solve_game_cmd->add_option("file", file, "Scenario JSON")->required();
    solve_game_cmd->add_option("--tie-break", tie_break,
                               "principal_favorable | agent_lowest_effort | agent_highest_effort");
    auto* sweep = app.add_subcommand("sweep", "CSV of E, Mt and Prst over a uniform effort grid");
    add_contract(sweep);
    sweep->add_option("--points", points, "Grid points")->check(CLI::Range(std::size_t{2}, std::size_t{100'000'000}));
    sweep->add_option("--out", out_path, "CSV destination (stdout when omitted)");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo play of nature's draw and payments");
    add_contract(simulate);
    simulate->add_option("--effort", effort, "Agent effort")->required();
    simulate->add_option("--n", draws, "Number of draws")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "RNG seed (document option when omitted)");
    simulate->add_option("--shards", shards, "Independent sub-streams")->check(CLI::PositiveNumber);

    try {
        // CLI11 consumes a reversed argument list without the program name.
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        if (!reversed.empty()) reversed.pop_back();
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (validate->parsed()) {
            std::vector<ValidationIssue> issues;
            Json report;
            try {
                (void)io::parse_scenario(file);
                report = validation_report(issues);
            } catch (const ValidationError& ex) {
                report = validation_report(ex.issues());
            } catch (const ParseError& ex) {
                report["valid"] = false;
                report["errors"] = Json::array({Json{{"kind", "ParseError"}, {"message", ex.what()},
                                                     {"line", ex.line()}, {"column", ex.column()}}});
            }
            io::emit_json(report, out);
            if (!report["valid"].get<bool>()) {
                for (const auto& e : report["errors"]) {
                    err << e["kind"].get<std::string>() << ": " << e["message"].get<std::string>() << '\n';
                }
                return kExitFailure;
            }
            return kExitOk;
        }

        const auto doc = io::parse_scenario(file);
        const auto& s = doc.scenario;
        const auto& opts = doc.options.solver;

        if (solve_agent->parsed()) {
            const Contract w = resolve_contract(doc, contract_spec);
            Json j;
            j["contract"] = io::to_json(w);
            const Json response = io::to_json(agent_best_response(s, w, opts));
            for (const auto& item : response.items()) j[item.key()] = item.value();
            j["reservation_utility"] = s.agent.reservation_utility;
            j["risk"] = io::to_json(classify_risk(s, w, opts));
            io::emit_json(j, out);
        } else if (classify->parsed()) {
            const Contract w = resolve_contract(doc, contract_spec);
            io::emit_json(io::to_json(classify_risk(s, w, opts)), out);
        } else if (analyze->parsed()) {
            const Contract w = resolve_contract(doc, contract_spec);
            Json j;
            j["contract"] = io::to_json(w);
            j["invisible_effort"] = io::to_json(detect_invisible_effort(s, doc.options.invisible_epsilon, opts));
            try {
                j["two_outcome_linear"] = io::to_json(two_outcome_linear_analysis(s, w, opts));
            } catch (const NotTwoOutcomeLinear& ex) {
                j["two_outcome_linear"] = Json{{"applicable", false}, {"reason", ex.what()}};
            }
            const auto [lo, hi] = std::minmax_element(w.wages.begin(), w.wages.end());
            j["classical_assumptions"] =
                io::to_json(classical_assumptions_report(s, wage_min.value_or(*lo), wage_max.value_or(*hi)));
            io::emit_json(j, out);
        } else if (solve_game_cmd->parsed()) {
            TieBreak policy = doc.options.tie_break;
            if (!tie_break.empty()) {
                const auto parsed = tie_break_from_string(tie_break);
                if (!parsed) throw UsageError("unknown --tie-break policy '" + tie_break + "'");
                policy = *parsed;
            }
            std::optional<ContractFamily> family = doc.family;
            if (!family) {
                if (doc.contracts.empty()) throw UsageError("document has neither contract_family nor contracts");
                family = ContractFamily::list(doc.contracts);
            }
            io::emit_json(io::to_json(solve_game(s, *family, policy, opts, doc.options.threads)), out);
        } else if (sweep->parsed()) {
            const Contract w = resolve_contract(doc, contract_spec);
            const std::string csv = io::sweep_csv(s, w, points);
            if (out_path.empty()) {
                out << csv;
            } else {
                io::write_file(out_path, csv);
            }
        } else if (simulate->parsed()) {
            const Contract w = resolve_contract(doc, contract_spec);
            const auto result = oracle::monte_carlo_payoffs(s, w, effort, draws, seed.value_or(doc.options.seed),
                                                            shards, doc.options.threads);
            io::emit_json(io::to_json(result), out);
        }
    } catch (const UsageError& ex) {
        report_failure(err, ex);
        return kExitUsage;
    } catch (const std::exception& ex) {
        report_failure(err, ex);
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace pagame::cli
