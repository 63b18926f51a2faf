#pragma once

#include "pagame/analyses.hpp"
#include "pagame/oracle.hpp"
#include "pagame/principal.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace pagame::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Solver tunables a document may override.
struct DocumentOptions {
    SolverOptions solver;
    double invisible_epsilon = kDefaultInvisibleEpsilon;
    TieBreak tie_break = TieBreak::PrincipalFavorable;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    bool operator==(const DocumentOptions&) const = default;
};

struct ScenarioDocument {
    Scenario scenario;
    std::vector<Contract> contracts;
    std::optional<ContractFamily> family;
    DocumentOptions options;

    bool operator==(const ScenarioDocument&) const = default;
};

/// Parses and validates a scenario document. Unknown keys are rejected.
/// Throws ParseError (syntax, schema, unknown key) or ValidationError.
ScenarioDocument parse_scenario_text(std::string_view text);
ScenarioDocument parse_scenario(const std::filesystem::path& path);

Json curve_to_json(const Curve1D& c);
Curve1D curve_from_json(const Json& j, const std::string& path = "curve");

/// Full document, every option spelled out; parses back to an equal document.
Json to_json(const ScenarioDocument& doc);

Json to_json(const Contract& w);
Json to_json(const BestResponse& br);
Json to_json(const RiskClassification& rc);
Json to_json(const MaximizerSet& ms);
Json to_json(const InvisibleEffortReport& r);
Json to_json(const TwoOutcomeLinearReport& r);
Json to_json(const ClassicalAssumptionsReport& r);
Json to_json(const GameSolution& g);
Json to_json(const oracle::SimulationResult& r);
Json to_json(const std::vector<ValidationIssue>& issues);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double x);

/// Pretty JSON with a trailing newline.
void emit_json(const Json& j, std::ostream& out);

/// Writes `content` to `path`; failures raise std::runtime_error naming the path.
void write_file(const std::filesystem::path& path, std::string_view content);

/// `e,expectation,motivation,persistence` on `points` uniform efforts, '\n' line endings.
std::string sweep_csv(const Scenario& s, const Contract& w, std::size_t points);

}  // namespace pagame::io
