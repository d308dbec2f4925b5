#include "drgm/cli.hpp"
#include "drgm/customization.hpp"
#include "drgm/project.hpp"
#include "temp_dir.hpp"

#include <doctest.h>
#include <httplib.h>

#include <cstdlib>
#include <map>
#include <sstream>

using namespace drgm;
using drgm::testing::fixture;
using drgm::testing::read_file;
using drgm::testing::TempDir;
using drgm::testing::write_file;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string scenario(const std::string& name) { return fixture("scenarios/" + name).string(); }

/// Questionnaire input equivalent to the anemia answers file, with one
/// rejected answer first.
std::string anemia_typed_answers() {
    const std::map<std::string, std::string> given = {
        {"problem_kind", "classification_tabular"}, {"num_classes", "4"}, {"num_features", "3"},
        {"update_frequency", "never"}, {"involves_human_subjects", "yes"}, {"eu_jurisdiction", "no"},
        {"data_sensitivity", "sensitive"}, {"impacts_human_lives", "yes"},
        {"representativeness_dimensions", "demographic"}, {"domain_legal_constraints", "no"}};
    AnswerSet so_far;
    std::string input = "bogus\n";
    for (const Question& q : questionnaire()) {
        if (!is_applicable(q, so_far)) continue;
        REQUIRE(given.count(q.id));
        so_far.emplace_back(q.id, given.at(q.id));
        input += given.at(q.id) + "\n";
    }
    return input;
}

std::string anemia_csv() {
    std::ostringstream csv;
    csv << "hb,age,mcv,label\n";
    int i = 0;
    for (auto [label, n] : std::vector<std::pair<const char*, int>>{{"a", 3}, {"b", 5}, {"c", 12}, {"d", 40}}) {
        for (int k = 0; k < n; ++k, ++i) csv << 9 + i % 7 << "," << 20 + i << "," << 80 + i % 11 << "," << label << "\n";
    }
    return csv.str();
}

/// Manual values for every non-KPI leaf of the customized anemia model.
std::string manual_strategy(const std::string& from) {
    Json j = Json::parse(read_file(scenario(from)));
    j["assign"].erase("kpi_data_size");
    return dump(j);
}

}  // namespace

TEST_CASE("init creates a project once") {
    TempDir dir;
    const std::string p = (dir / "proj").string();
    Run r = run({"init", p});
    CHECK(r.code == kExitOk);
    CHECK(std::filesystem::exists(dir / "proj/model.drgm"));
    CHECK(std::filesystem::exists(dir / "proj/project.json"));
    r = run({"init", p});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.rfind("error: ", 0) == 0);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == kExitInputError);
    CHECK(run({"frobnicate"}).code == kExitInputError);
    TempDir dir;
    CHECK(run({"-C", dir.path().string(), "evaluate", "--strategy", "x.json"}).code == kExitInputError);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("interactive and file customization write identical models") {
    TempDir dir;
    const std::string a = (dir / "a").string(), b = (dir / "b").string();
    REQUIRE(run({"init", a}).code == 0);
    REQUIRE(run({"init", b}).code == 0);

    Run file = run({"-C", a, "customize", "--answers", scenario("anemia_answers.json")});
    REQUIRE(file.code == kExitOk);
    CHECK(file.out.find("Data Balancedness: high") != std::string::npos);
    CHECK(file.out.find("worst 20, threshold 40, target 400") != std::string::npos);

    Run typed = run({"-C", b, "customize", "--interactive"}, anemia_typed_answers());
    REQUIRE(typed.code == kExitOk);
    CHECK(typed.out.find("[1] ") != std::string::npos);
    CHECK(read_file(dir / "a/model.drgm") == read_file(dir / "b/model.drgm"));
    CHECK(read_file(dir / "a/answers.json") == read_file(dir / "b/answers.json"));

    CHECK(run({"-C", b, "customize", "--interactive"}, "classification_tabular\n").code == kExitInputError);
    CHECK(run({"-C", b, "customize"}).code == kExitInputError);
}

TEST_CASE("anemia workflow through the command line") {
    TempDir dir;
    const std::string p = (dir / "p").string();
    REQUIRE(run({"init", p}).code == 0);
    REQUIRE(run({"-C", p, "customize", "--answers", scenario("anemia_answers.json")}).code == 0);

    write_file(dir / "collected.csv", anemia_csv());
    Run prof = run({"-C", p, "profile", (dir / "collected.csv").string(), "--target", "label", "--preprocessed"});
    REQUIRE(prof.code == kExitOk);
    const Json profile = Json::parse(prof.out);
    CHECK(profile["row_count"] == 60);
    CHECK(profile["balancedness_percent"].get<double>() == doctest::Approx(7.5));
    CHECK(std::filesystem::exists(dir / "p/profiles/collected.json"));

    // Missing manual values name the uncovered leaf.
    write_file(dir / "empty.json", R"({"name": "collected", "assign": {}})");
    Run bad = run({"-C", p, "evaluate", "--dataset", "collected", "--strategy", (dir / "empty.json").string()});
    CHECK(bad.code == kExitInputError);
    CHECK(bad.err.find("t_identify_data_source") != std::string::npos);

    write_file(dir / "manual.json", manual_strategy("anemia_collected.json"));
    Run ev = run({"-C", p, "evaluate", "--dataset", "collected", "--strategy", (dir / "manual.json").string()});
    CHECK(ev.code == kExitUnsatisfied);
    const Json result = Json::parse(ev.out);
    CHECK(result["satisfied"] == false);
    CHECK(result["threshold"] == 70.0);
    CHECK(result["applied_strategy"]["assign"]["kpi_data_size"]["measure"] == 60.0);
    CHECK(result["applied_strategy"]["assign"]["kpi_balancedness"]["measure"] == 20.0);
    CHECK(std::filesystem::exists(dir / "p/results/collected.json"));

    Run lenient = run({"-C", p, "evaluate", "--strategy", scenario("anemia_collected.json"), "--threshold", "40"});
    CHECK(lenient.code == kExitOk);

    Run planned = run({"-C", p, "evaluate", "--strategy", scenario("anemia_planned.json")});
    CHECK(planned.code == kExitOk);

    Run cmp = run({"-C", p, "compare", "anemia_planned", "collected"});
    CHECK(cmp.code == kExitOk);
    CHECK(Json::parse(cmp.out)["selected"] == "anemia_planned");
    CHECK(std::filesystem::exists(dir / "p/decision.json"));

    CHECK(run({"-C", p, "compare", "collected"}).code == kExitUnsatisfied);
    CHECK(run({"-C", p, "compare", "ghost"}).code == kExitInputError);

    Run dot = run({"-C", p, "export", "--format", "dot", "--dataset", "collected"});
    CHECK(dot.code == kExitOk);
    CHECK(dot.out.rfind("digraph", 0) == 0);
    Run md = run({"-C", p, "export", "--format", "md", "--dataset", "collected"});
    CHECK(md.code == kExitOk);
    CHECK(md.out.find("## Verdict") != std::string::npos);
    CHECK(md.out.find("| 60 |") != std::string::npos);
    const std::string out_file = (dir / "report.json").string();
    CHECK(run({"-C", p, "export", "--format", "json", "--dataset", "collected", "-o", out_file}).code == kExitOk);
    CHECK(Json::parse(read_file(out_file))["dataset"] == "collected");
    CHECK(run({"-C", p, "export", "--format", "pdf"}).code == kExitInputError);
}

TEST_CASE("threshold precedence") {
    TempDir dir;
    const std::string p = (dir / "p").string();
    REQUIRE(run({"init", p}).code == 0);
    REQUIRE(run({"-C", p, "customize", "--answers", scenario("anemia_answers.json")}).code == 0);
    const std::string s = scenario("anemia_collected.json");

    CHECK(run({"-C", p, "evaluate", "--strategy", s}).code == kExitUnsatisfied);
    CHECK(run({"-C", p, "evaluate", "--strategy", s, "--threshold", "45"}).code == kExitOk);

    Json manifest = Json::parse(read_file(dir / "p/project.json"));
    manifest["threshold"] = 45;
    write_file(dir / "p/project.json", dump(manifest));
    CHECK(run({"-C", p, "evaluate", "--strategy", s}).code == kExitOk);

    ::setenv(kThresholdEnv, "90", 1);
    CHECK(run({"-C", p, "evaluate", "--strategy", s}).code == kExitUnsatisfied);
    CHECK(run({"-C", p, "evaluate", "--strategy", s, "--threshold", "40"}).code == kExitOk);
    ::unsetenv(kThresholdEnv);

    CHECK(run({"-C", p, "evaluate", "--strategy", s, "--threshold", "140"}).code == kExitInputError);
}

TEST_CASE("serve refuses a busy port") {
    TempDir dir;
    const std::string p = (dir / "p").string();
    REQUIRE(run({"init", p}).code == 0);
    httplib::Server holder;
    const int port = holder.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    const Run r = run({"-C", p, "serve", "--port", std::to_string(port)});
    CHECK(r.code == kExitInputError);
    CHECK(r.err.find("error: ") == 0);
}
