#include <doctest.h>

#include "fixtures.hpp"
#include "pagame/cli.hpp"
#include "pagame/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace pagame;
using namespace pagame::testing;
using pagame::io::Json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pagame");
    std::ostringstream out, err;
    const int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(std::filesystem::temp_directory_path() / "pagame_cli_test") {
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::string write(const std::string& name, const std::string& content) const {
        const auto p = path_ / name;
        std::ofstream(p) << content;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    std::filesystem::path path_;
};

const std::string kReference = data_path("reference_r.json");

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("solve-agent on the reference scenario") {
    const auto r = run({"solve-agent", kReference});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.err.empty());
    const auto j = Json::parse(r.out);
    REQUIRE(j["maximizers"].size() == 1);
    CHECK(j["maximizers"][0]["effort"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(j["maximizers"][0]["kind"] == "interior_critical");
    CHECK(j["optimal_expectation"].get<double>() == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(j["accepted"] == true);
    CHECK(j["risk"]["classification"] == "averse");
    CHECK(j["contract"] == Json::array({4.0, 0.0}));

    CHECK(run({"solve-agent", kReference, "--contract", "0"}).out == r.out);
    CHECK(run({"solve-agent", kReference, "--contract", "4,0"}).out == r.out);
    CHECK(run({"solve-agent", kReference, "--contract", "[4, 0]"}).out == r.out);
}

TEST_CASE("contract selection errors are usage errors") {
    CHECK(run({"solve-agent", kReference, "--contract", "3"}).code == cli::kExitUsage);
    CHECK(run({"solve-agent", kReference, "--contract", "4,zero"}).code == cli::kExitUsage);
    const auto wrong_length = run({"solve-agent", kReference, "--contract", "1,2,3"});
    CHECK(wrong_length.code == cli::kExitFailure);
    CHECK_FALSE(wrong_length.err.empty());
    CHECK(wrong_length.out.empty());
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"solve-agent"}).code == cli::kExitUsage);
    CHECK(run({"simulate", kReference}).code == cli::kExitUsage);  // --effort is required
    CHECK(run({"sweep", kReference, "--points", "1"}).code == cli::kExitUsage);
    CHECK(run({"solve-game", kReference, "--tie-break", "coin"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("validate") {
    TempDir tmp;
    const auto ok = run({"validate", kReference});
    CHECK(ok.code == cli::kExitOk);
    CHECK(Json::parse(ok.out)["valid"] == true);

    const auto broken = run({"validate", tmp.write("broken.json", "{\n  \"schema\": 1,\n  \"outcomes\": [1,,2]\n}\n")});
    CHECK(broken.code == cli::kExitFailure);
    const auto report = Json::parse(broken.out);
    CHECK(report["valid"] == false);
    REQUIRE(report["errors"].size() == 1);
    CHECK(report["errors"][0]["kind"] == "ParseError");
    CHECK(report["errors"][0]["line"] == 3);
    CHECK_FALSE(broken.err.empty());

    std::string text = slurp(kReference);
    text.replace(text.find("[0.2, 0.5]"), 10, "[0.2, 1.0]");
    const auto range = run({"validate", tmp.write("range.json", text)});
    CHECK(range.code == cli::kExitFailure);
    CHECK(Json::parse(range.out)["errors"][0]["kind"] == "ProbabilityRangeError");

    const auto missing = run({"validate", tmp.file("nope.json")});
    CHECK(missing.code == cli::kExitFailure);

    CHECK(run({"solve-agent", tmp.file("range.json")}).code == cli::kExitFailure);
}

TEST_CASE("classify-risk and analyze") {
    const auto risk = run({"classify-risk", kReference});
    REQUIRE(risk.code == cli::kExitOk);
    const auto rj = Json::parse(risk.out);
    CHECK(rj["classification"] == "averse");
    CHECK(rj["min_persistence"].get<double>() == doctest::Approx(-4.0));

    const auto analysis = run({"analyze", kReference, "--wage-min", "0", "--wage-max", "10"});
    REQUIRE(analysis.code == cli::kExitOk);
    const auto aj = Json::parse(analysis.out);
    CHECK(aj["invisible_effort"]["is_invisible"] == false);
    CHECK(aj["two_outcome_linear"]["foc_solutions"][0].get<double>() == doctest::Approx(0.5));
    CHECK(aj["classical_assumptions"]["wage_range"] == Json::array({0.0, 10.0}));
    CHECK(aj["classical_assumptions"]["v_strictly_convex"] == true);
}

TEST_CASE("solve-game") {
    const auto r = run({"solve-game", kReference});
    REQUIRE(r.code == cli::kExitOk);
    const auto j = Json::parse(r.out);
    CHECK(j["contract"] == Json::array({2.0, 0.0}));
    CHECK(j["effort"].get<double>() == doctest::Approx(0.25));
    CHECK(j["principal_payoff"].get<double>() == doctest::Approx(3.95));
    CHECK(j["tie_break"] == "principal_favorable");
    CHECK(Json::parse(run({"solve-game", kReference, "--tie-break", "agent_highest_effort"}).out)["tie_break"] ==
          "agent_highest_effort");
}

TEST_CASE("sweep") {
    TempDir tmp;
    const auto r = run({"sweep", kReference, "--points", "5"});
    REQUIRE(r.code == cli::kExitOk);
    CHECK(r.out.rfind("e,expectation,motivation,persistence\n"
                      "0,0.8,2,-4\n"
                      "0.25,1.175,1,-4\n"
                      "0.5,1.3,0,-4\n",
                      0) == 0);
    std::istringstream rows(r.out);
    std::string line;
    std::getline(rows, line);
    const double expected[][2] = {{0, 0.8}, {0.25, 1.175}, {0.5, 1.3}, {0.75, 1.175}, {1, 0.8}};
    for (const auto& want : expected) {
        REQUIRE(std::getline(rows, line));
        double e = 0, value = 0;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &e, &value) == 2);
        CHECK(e == want[0]);
        CHECK(value == doctest::Approx(want[1]).epsilon(1e-14));
    }
    CHECK_FALSE(std::getline(rows, line));
    const auto path = tmp.file("sweep.csv");
    const auto to_file = run({"sweep", kReference, "--points", "5", "--out", path});
    CHECK(to_file.code == cli::kExitOk);
    CHECK(to_file.out.empty());
    CHECK(slurp(path) == r.out);
    CHECK(run({"sweep", kReference, "--out", tmp.file("no/such/dir.csv")}).code == cli::kExitFailure);
}

TEST_CASE("simulate") {
    const std::vector<std::string> args{"simulate", kReference, "--effort", "0.5", "--n", "200000", "--seed", "11"};
    const auto a = run(args);
    REQUIRE(a.code == cli::kExitOk);
    CHECK(run(args).out == a.out);
    auto sharded = args;
    sharded.insert(sharded.end(), {"--shards", "4"});
    const auto b = run(sharded);
    CHECK(b.code == cli::kExitOk);
    const auto j = Json::parse(a.out);
    CHECK(j["seed"] == 11);
    CHECK(j["generator"] == oracle::kGeneratorName);
    CHECK(j["draws"] == 200000);
    CHECK(std::abs(j["mean_agent"].get<double>() - 1.3) <= 3 * j["sd_agent"].get<double>() / std::sqrt(2e5));
    CHECK(run({"simulate", kReference, "--effort", "1.5"}).code == cli::kExitFailure);
}

TEST_CASE("outputs are byte-identical across runs") {
    for (const auto& args : std::vector<std::vector<std::string>>{{"solve-agent", kReference},
                                                                 {"analyze", kReference},
                                                                 {"solve-game", kReference},
                                                                 {"sweep", kReference, "--points", "33"}}) {
        CHECK(run(args).out == run(args).out);
    }
}
