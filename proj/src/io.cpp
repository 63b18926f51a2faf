#include "pagame/io.hpp"

#include "pagame/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace pagame::io {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ParseError(path + ": " + message);
}

void require_object(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

void allow_keys(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            fail(path, "unknown key \"" + item.key() + "\"");
        }
    }
}

const Json& member(const Json& j, const std::string& path, const char* key) {
    const auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing required key \"") + key + "\"");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(path, "number must be finite");
    return x;
}

std::vector<double> numbers(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], path + "/" + std::to_string(k)));
    return out;
}

std::uint64_t unsigned_integer(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
        fail(path, "expected a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

double number_at(const Json& j, const std::string& path, const char* key) {
    return number(member(j, path, key), path + "/" + key);
}

Contract contract_from_json(const Json& j, const std::string& path) {
    return Contract{numbers(j, path)};
}

DocumentOptions options_from_json(const Json& j, const std::string& path) {
    require_object(j, path);
    allow_keys(j, path,
               {"derivative_grid", "expectation_grid", "classification_grid", "polish_tolerance", "effort_tolerance",
                "expectation_tolerance", "risk_tolerance", "merge_radius", "invisible_epsilon", "tie_break", "seed",
                "threads"});
    DocumentOptions o;
    auto size_opt = [&](const char* key, std::size_t& target, std::size_t minimum) {
        if (auto it = j.find(key); it != j.end()) {
            const auto v = unsigned_integer(*it, path + "/" + key);
            if (v < minimum) fail(path + "/" + key, "must be at least " + std::to_string(minimum));
            target = static_cast<std::size_t>(v);
        }
    };
    auto real_opt = [&](const char* key, double& target) {
        if (auto it = j.find(key); it != j.end()) {
            const double v = number(*it, path + "/" + key);
            if (!(v > 0.0)) fail(path + "/" + key, "must be positive");
            target = v;
        }
    };
    size_opt("derivative_grid", o.solver.derivative_grid, 2);
    size_opt("expectation_grid", o.solver.expectation_grid, 3);
    size_opt("classification_grid", o.solver.classification_grid, 2);
    real_opt("polish_tolerance", o.solver.polish_tolerance);
    real_opt("effort_tolerance", o.solver.effort_tolerance);
    real_opt("expectation_tolerance", o.solver.expectation_tolerance);
    real_opt("risk_tolerance", o.solver.risk_tolerance);
    real_opt("merge_radius", o.solver.merge_radius);
    real_opt("invisible_epsilon", o.invisible_epsilon);
    if (auto it = j.find("tie_break"); it != j.end()) {
        if (!it->is_string()) fail(path + "/tie_break", "expected a string");
        const auto policy = tie_break_from_string(it->get<std::string>());
        if (!policy) fail(path + "/tie_break", "unknown policy \"" + it->get<std::string>() + "\"");
        o.tie_break = *policy;
    }
    if (auto it = j.find("seed"); it != j.end()) o.seed = unsigned_integer(*it, path + "/seed");
    if (auto it = j.find("threads"); it != j.end()) {
        const auto t = unsigned_integer(*it, path + "/threads");
        if (t < 1) fail(path + "/threads", "must be at least 1");
        o.threads = static_cast<unsigned>(t);
    }
    return o;
}

ContractFamily family_from_json(const Json& j, const std::string& path) {
    require_object(j, path);
    allow_keys(j, path, {"contracts", "grid", "cap"});
    std::size_t cap = kDefaultEnumerationCap;
    if (auto it = j.find("cap"); it != j.end()) cap = static_cast<std::size_t>(unsigned_integer(*it, path + "/cap"));
    const bool has_list = j.contains("contracts");
    const bool has_grid = j.contains("grid");
    if (has_list == has_grid) fail(path, "exactly one of \"contracts\" or \"grid\" is required");
    try {
        if (has_list) {
            const auto& arr = j["contracts"];
            if (!arr.is_array()) fail(path + "/contracts", "expected an array of wage vectors");
            std::vector<Contract> list;
            for (std::size_t k = 0; k < arr.size(); ++k) {
                list.push_back(contract_from_json(arr[k], path + "/contracts/" + std::to_string(k)));
            }
            return ContractFamily::list(std::move(list), cap);
        }
        const auto& arr = j["grid"];
        if (!arr.is_array()) fail(path + "/grid", "expected an array of wage axes");
        std::vector<WageAxis> axes;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string p = path + "/grid/" + std::to_string(k);
            require_object(arr[k], p);
            allow_keys(arr[k], p, {"min", "max", "step"});
            WageAxis axis;
            axis.min = number_at(arr[k], p, "min");
            axis.max = number_at(arr[k], p, "max");
            axis.step = arr[k].contains("step") ? number_at(arr[k], p, "step") : 1.0;
            axes.push_back(axis);
        }
        return ContractFamily::grid(std::move(axes), cap);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& err) {
        fail(path, err.what());
    }
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
    for (std::size_t k = 0; k < end; ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

Json maximizer_json(const Maximizer& m) {
    Json j;
    j["effort"] = m.effort;
    j["kind"] = std::string(to_string(m.kind));
    j["expectation"] = m.expectation;
    return j;
}

Json shape_json(const CurveShape& s) {
    Json j;
    j["min_value"] = s.min_value;
    j["max_value"] = s.max_value;
    j["min_d1"] = s.min_d1;
    j["argmin_d1"] = s.argmin_d1;
    j["max_d1"] = s.max_d1;
    j["min_d2"] = s.min_d2;
    j["max_d2"] = s.max_d2;
    return j;
}

}  // namespace

Curve1D curve_from_json(const Json& j, const std::string& path) {
    require_object(j, path);
    const Json& fam = member(j, path, "family");
    if (!fam.is_string()) fail(path + "/family", "expected a string");
    const std::string family = fam.get<std::string>();
    try {
        if (family == "polynomial") {
            allow_keys(j, path, {"family", "coefficients"});
            return Curve1D::polynomial(numbers(member(j, path, "coefficients"), path + "/coefficients"));
        }
        if (family == "exp_affine" || family == "log_affine") {
            allow_keys(j, path, {"family", "a", "b", "c"});
            const double a = number_at(j, path, "a");
            const double b = number_at(j, path, "b");
            const double c = number_at(j, path, "c");
            return family == "exp_affine" ? Curve1D::exp_affine(a, b, c) : Curve1D::log_affine(a, b, c);
        }
        if (family == "power") {
            allow_keys(j, path, {"family", "a", "gamma", "c"});
            return Curve1D::power(number_at(j, path, "a"), number_at(j, path, "gamma"), number_at(j, path, "c"));
        }
        if (family == "tabulated") {
            allow_keys(j, path, {"family", "knots", "values"});
            return Curve1D::tabulated(numbers(member(j, path, "knots"), path + "/knots"),
                                      numbers(member(j, path, "values"), path + "/values"));
        }
    } catch (const ParseError&) {
        throw;
    } catch (const Error& err) {
        fail(path, err.what());
    }
    fail(path + "/family", "unknown curve family \"" + family + "\"");
}

Json curve_to_json(const Curve1D& c) {
    Json j;
    j["family"] = std::string(to_string(c.family()));
    std::visit(overloaded{
                   [&j](const Polynomial& p) { j["coefficients"] = p.coefficients; },
                   [&j](const ExpAffine& p) {
                       j["a"] = p.a;
                       j["b"] = p.b;
                       j["c"] = p.c;
                   },
                   [&j](const LogAffine& p) {
                       j["a"] = p.a;
                       j["b"] = p.b;
                       j["c"] = p.c;
                   },
                   [&j](const Power& p) {
                       j["a"] = p.a;
                       j["gamma"] = p.gamma;
                       j["c"] = p.c;
                   },
                   [&j](const Tabulated& t) {
                       j["knots"] = t.knots;
                       j["values"] = t.values;
                   },
               },
               c.params());
    return j;
}

ScenarioDocument parse_scenario_text(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& err) {
        const auto [line, column] = line_column(text, err.byte);
        throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + err.what(),
                         line, column);
    }

    require_object(root, "/");
    allow_keys(root, "/",
               {"schema", "outcomes", "effort", "profile", "agent", "principal", "contracts", "contract_family",
                "options"});
    const Json& schema = member(root, "/", "schema");
    if (!schema.is_number_integer() || schema.get<std::int64_t>() != kSchemaVersion) {
        fail("/schema", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
    }

    ScenarioDocument doc;
    Scenario& s = doc.scenario;
    s.outcomes.values = numbers(member(root, "/", "outcomes"), "/outcomes");

    const Json& effort = member(root, "/", "effort");
    require_object(effort, "/effort");
    allow_keys(effort, "/effort", {"min", "max"});
    s.effort.min = number_at(effort, "/effort", "min");
    s.effort.max = number_at(effort, "/effort", "max");

    const Json& profile = member(root, "/", "profile");
    if (!profile.is_array()) fail("/profile", "expected an array of component curves");
    for (std::size_t k = 0; k < profile.size(); ++k) {
        s.profile.components.push_back(curve_from_json(profile[k], "/profile/" + std::to_string(k)));
    }

    const Json& agent = member(root, "/", "agent");
    require_object(agent, "/agent");
    allow_keys(agent, "/agent", {"u", "v", "reservation_utility"});
    s.agent.u = curve_from_json(member(agent, "/agent", "u"), "/agent/u");
    s.agent.v = curve_from_json(member(agent, "/agent", "v"), "/agent/v");
    if (agent.contains("reservation_utility")) {
        s.agent.reservation_utility = number_at(agent, "/agent", "reservation_utility");
    }

    const Json& principal = member(root, "/", "principal");
    require_object(principal, "/principal");
    allow_keys(principal, "/principal", {"B"});
    s.principal.B = curve_from_json(member(principal, "/principal", "B"), "/principal/B");

    if (auto it = root.find("contracts"); it != root.end()) {
        if (!it->is_array()) fail("/contracts", "expected an array of wage vectors");
        for (std::size_t k = 0; k < it->size(); ++k) {
            doc.contracts.push_back(contract_from_json((*it)[k], "/contracts/" + std::to_string(k)));
        }
    }
    if (auto it = root.find("contract_family"); it != root.end()) {
        doc.family = family_from_json(*it, "/contract_family");
    }
    if (auto it = root.find("options"); it != root.end()) {
        doc.options = options_from_json(*it, "/options");
    }

    std::optional<WageSupport> support;
    if (doc.family) {
        try {
            support = doc.family->support();
        } catch (const DimensionError& err) {
            throw ValidationError({{IssueKind::Dimension, std::string("contract_family: ") + err.what()}});
        }
    }
    require_valid(s, doc.contracts, support ? &*support : nullptr);
    return doc;
}

ScenarioDocument parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

Json to_json(const Contract& w) {
    return Json(w.wages);
}

Json to_json(const ScenarioDocument& doc) {
    const Scenario& s = doc.scenario;
    Json j;
    j["schema"] = kSchemaVersion;
    j["outcomes"] = s.outcomes.values;
    j["effort"] = Json{{"min", s.effort.min}, {"max", s.effort.max}};
    j["profile"] = Json::array();
    for (const auto& c : s.profile.components) j["profile"].push_back(curve_to_json(c));
    j["agent"] = Json{{"u", curve_to_json(s.agent.u)},
                      {"v", curve_to_json(s.agent.v)},
                      {"reservation_utility", s.agent.reservation_utility}};
    j["principal"] = Json{{"B", curve_to_json(s.principal.B)}};
    if (!doc.contracts.empty()) {
        j["contracts"] = Json::array();
        for (const auto& w : doc.contracts) j["contracts"].push_back(to_json(w));
    }
    if (doc.family) {
        Json fam;
        if (const auto* list = doc.family->contracts()) {
            fam["contracts"] = Json::array();
            for (const auto& w : *list) fam["contracts"].push_back(to_json(w));
        } else {
            fam["grid"] = Json::array();
            for (const auto& axis : *doc.family->axes()) {
                fam["grid"].push_back(Json{{"min", axis.min}, {"max", axis.max}, {"step", axis.step}});
            }
        }
        fam["cap"] = doc.family->cap();
        j["contract_family"] = std::move(fam);
    }
    const auto& o = doc.options;
    Json opts;
    opts["derivative_grid"] = o.solver.derivative_grid;
    opts["expectation_grid"] = o.solver.expectation_grid;
    opts["classification_grid"] = o.solver.classification_grid;
    opts["polish_tolerance"] = o.solver.polish_tolerance;
    opts["effort_tolerance"] = o.solver.effort_tolerance;
    opts["expectation_tolerance"] = o.solver.expectation_tolerance;
    opts["risk_tolerance"] = o.solver.risk_tolerance;
    opts["merge_radius"] = o.solver.merge_radius;
    opts["invisible_epsilon"] = o.invisible_epsilon;
    opts["tie_break"] = std::string(to_string(o.tie_break));
    opts["seed"] = o.seed;
    opts["threads"] = o.threads;
    j["options"] = std::move(opts);
    return j;
}

Json to_json(const BestResponse& br) {
    Json j;
    j["maximizers"] = Json::array();
    for (const auto& m : br.maximizers) j["maximizers"].push_back(maximizer_json(m));
    j["optimal_expectation"] = br.optimal_expectation;
    j["accepted"] = br.accepted;
    j["constant_expectation"] = br.constant_expectation;
    return j;
}

Json to_json(const RiskClassification& rc) {
    Json j;
    j["classification"] = std::string(to_string(rc.posture));
    j["min_persistence"] = rc.min_persistence;
    j["max_persistence"] = rc.max_persistence;
    return j;
}

Json to_json(const MaximizerSet& ms) {
    Json j;
    j["points"] = Json::array();
    for (const auto& m : ms.points) j["points"].push_back(maximizer_json(m));
    j["best"] = ms.best;
    j["constant"] = ms.constant;
    return j;
}

Json to_json(const InvisibleEffortReport& r) {
    Json j;
    j["is_invisible"] = r.is_invisible;
    j["max_deviation"] = r.max_deviation;
    j["epsilon"] = r.epsilon;
    j["best_response"] = r.best_response ? to_json(*r.best_response) : Json(nullptr);
    j["risk"] = r.risk ? to_json(*r.risk) : Json(nullptr);
    j["v_concave_somewhere"] = r.v_concave_somewhere;
    return j;
}

Json to_json(const TwoOutcomeLinearReport& r) {
    Json j;
    j["slope"] = r.slope;
    j["intercept"] = r.intercept;
    j["utility_spread"] = r.utility_spread;
    j["foc_target"] = r.foc_target;
    j["foc_solutions"] = r.foc_solutions;
    j["foc_residuals"] = r.foc_residuals;
    j["degenerate_flat"] = r.degenerate_flat;
    j["lower_bound"] = maximizer_json(r.lower_bound);
    j["upper_bound"] = maximizer_json(r.upper_bound);
    j["best_response"] = to_json(r.best_response);
    j["invisible"] = r.invisible ? to_json(*r.invisible) : Json(nullptr);
    return j;
}

Json to_json(const ClassicalAssumptionsReport& r) {
    Json j;
    j["wage_range"] = Json::array({r.wage_min, r.wage_max});
    j["u_shape"] = shape_json(r.u_shape);
    j["v_shape"] = shape_json(r.v_shape);
    j["u_increasing"] = r.u_increasing;
    j["u_concave"] = r.u_concave;
    j["v_increasing"] = r.v_increasing;
    j["v_convex"] = r.v_convex;
    j["v_strictly_convex"] = r.v_strictly_convex;
    j["inner_need_of_working"] = r.inner_need_of_working;
    j["utility_from_effort"] = r.utility_from_effort;
    j["v_concave_somewhere"] = r.v_concave_somewhere;
    j["classical"] = r.classical;
    return j;
}

Json to_json(const GameSolution& g) {
    Json j;
    j["all_rejected"] = g.all_rejected;
    j["contract"] = g.contract ? to_json(*g.contract) : Json(nullptr);
    j["effort"] = g.all_rejected ? Json(nullptr) : Json(g.effort);
    j["principal_payoff"] = g.all_rejected ? Json(nullptr) : Json(g.principal_payoff);
    j["agent_payoff"] = g.all_rejected ? Json(nullptr) : Json(g.agent_payoff);
    j["agent_response"] = g.all_rejected ? Json(nullptr) : to_json(g.agent_response);
    j["candidates"] = g.candidates;
    j["accepted_candidates"] = g.accepted_candidates;
    j["tie_break"] = std::string(to_string(g.tie_break));
    return j;
}

Json to_json(const oracle::SimulationResult& r) {
    Json j;
    j["draws"] = r.draws;
    j["mean_agent"] = r.mean_agent;
    j["mean_principal"] = r.mean_principal;
    j["sd_agent"] = r.sd_agent;
    j["sd_principal"] = r.sd_principal;
    j["frequencies"] = r.frequencies;
    j["seed"] = r.seed;
    j["shards"] = r.shards;
    j["generator"] = r.generator;
    return j;
}

Json to_json(const std::vector<ValidationIssue>& issues) {
    Json arr = Json::array();
    for (const auto& issue : issues) {
        arr.push_back(Json{{"kind", to_string(issue.kind)}, {"message", issue.message}});
    }
    return arr;
}

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void emit_json(const Json& j, std::ostream& out) {
    out << j.dump(2) << '\n';
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string sweep_csv(const Scenario& s, const Contract& w, std::size_t points) {
    if (points < 2) throw DomainError("sweep needs at least 2 points");
    const AgentObjective objective(s, w);
    std::string csv = "e,expectation,motivation,persistence\n";
    for (std::size_t k = 0; k < points; ++k) {
        const double e = grid_point(s.effort.min, s.effort.max, k, points);
        csv += format_number(e) + ',' + format_number(objective.expectation(e)) + ',' +
               format_number(objective.motivation(e)) + ',' + format_number(objective.persistence(e)) + '\n';
    }
    return csv;
}

}  // namespace pagame::io
