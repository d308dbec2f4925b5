#include "drgm/builtin.hpp"
#include "drgm/json_io.hpp"
#include "temp_dir.hpp"

#include <doctest.h>

using namespace drgm;

TEST_CASE("strategy round trip") {
    EvaluationStrategy s;
    s.name = "plan";
    s.assignments = {{"a", SatisfactionValue{40}}, {"k", KpiMeasurement{12.5}}};
    s.not_applicable = {"b"};
    const Json j = to_json(s);
    CHECK(j["assign"]["a"] == Json{{"value", 40}});
    CHECK(j["assign"]["k"] == Json{{"measure", 12.5}});
    CHECK(strategy_from_json(j) == s);
    CHECK(strategy_from_json(Json::parse(dump(j))) == s);
}

TEST_CASE("strategy without na") {
    const auto s = strategy_from_json(Json::parse(R"({"name": "x", "assign": {"a": {"value": 3}}})"));
    CHECK(s.not_applicable.empty());
    CHECK(std::get<SatisfactionValue>(s.assignments.at("a")).value == 3);
}

TEST_CASE("malformed strategy lists every problem") {
    CHECK_THROWS_WITH_AS(strategy_from_json(Json::parse(R"({"assign": 3})")),
                         "strategy: missing field 'name'; field 'assign' has the wrong type", JsonFormatError);
    CHECK_THROWS_WITH_AS(strategy_from_json(Json::array()), "strategy: expected a JSON object", JsonFormatError);
    CHECK_THROWS_WITH_AS(
        strategy_from_json(Json::parse(R"({"name": "x", "assign": {"a": {"value": 1.5}, "b": {"v": 1}}})")),
        doctest::Contains("'a' must be"), JsonFormatError);
    CHECK_THROWS_WITH_AS(
        strategy_from_json(Json::parse(R"({"name": "x", "assign": {"a": {"value": 1, "measure": 2}}})")),
        doctest::Contains("'a' must be"), JsonFormatError);
}

TEST_CASE("result round trip") {
    EvaluationResult r;
    r.strategy = "s";
    r.model_version = "1@ff";
    r.primary_actor = "data";
    r.actors = {{"data", 61.234567890123}};
    r.elements = {{"a", 1.0 / 3.0}, {"b", 100.0}};
    const Json j = to_json(r);
    CHECK(j["satisfaction"] == r.actors["data"]);
    CHECK(result_from_json(Json::parse(dump(j))) == r);
    Json broken = j;
    broken.erase("model_version");
    broken["elements"]["a"] = "high";
    try {
        result_from_json(broken);
        FAIL("expected an error");
    } catch (const JsonFormatError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("missing field 'model_version'") != std::string::npos);
        CHECK(msg.find("'a' must be a number") != std::string::npos);
    }
}

TEST_CASE("answers round trip") {
    for (const char* name : {"anemia_answers.json", "ghi_answers.json"}) {
        CAPTURE(name);
        const CustomizationAnswers a =
            answers_from_json(Json::parse(testing::read_file(testing::fixture(std::string("scenarios/") + name))));
        CHECK(answers_from_json(to_json(a)) == a);
    }
    CustomizationAnswers expert;
    expert.problem = {ProblemKind::ClassificationOther, 3, 0};
    expert.problem.expert_size_kpi = KpiDefinition{1, 2, 3, "clips"};
    CHECK(answers_from_json(to_json(expert)) == expert);
}

TEST_CASE("answers errors") {
    Json j = Json::parse(testing::read_file(testing::fixture("scenarios/anemia_answers.json")));
    j["context"]["data_sensitivity"] = "secret";
    j["context"].erase("impacts_human_lives");
    try {
        answers_from_json(j);
        FAIL("expected an error");
    } catch (const JsonFormatError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("answers.context") != std::string::npos);
        CHECK(msg.find("'impacts_human_lives'") != std::string::npos);
        CHECK(msg.find("'secret'") != std::string::npos);
    }
    CHECK_THROWS_WITH_AS(problem_from_json(Json{{"kind", "clustering"}}), doctest::Contains("clustering"),
                         JsonFormatError);
    CHECK_THROWS_AS(answers_from_json(Json{{"problem", Json::object()}}), JsonFormatError);
}

TEST_CASE("profile round trip") {
    DatasetProfile p;
    p.dataset = "d";
    p.target = "y";
    p.problem_kind = ProblemKind::Regression;
    p.preprocessing_complete = true;
    p.row_count = 10;
    p.size_measure = 10;
    p.size_unit = "data points";
    p.column_missing = {{"x", 0.25}, {"y", 0}};
    p.missing_fraction = 0.125;
    p.duplicate_fraction = 0.5;
    p.shapiro = ShapiroWilkResult{0.97, 0.4};
    p.notes = {"n1"};
    CHECK(profile_from_json(Json::parse(dump(to_json(p)))) == p);

    p.problem_kind = ProblemKind::ClassificationTabular;
    p.shapiro.reset();
    p.class_counts = {{"a", 3}, {"b", 7}};
    p.balancedness_percent = 3.0 / 7.0 * 100.0;
    CHECK(profile_from_json(to_json(p)) == p);

    Json bad = to_json(p);
    bad["class_counts"]["a"] = -1;
    CHECK_THROWS_AS(profile_from_json(bad), JsonFormatError);
}

TEST_CASE("decision round trip") {
    SelectionDecision d;
    d.satisfaction = {{"A", 72}, {"B", 65}};
    d.selected = "A";
    d.tied = {"A"};
    d.recommendation = "pick A";
    CHECK(decision_from_json(to_json(d)) == d);
    d.selected.reset();
    d.tied.clear();
    CHECK(to_json(d)["selected"].is_null());
    CHECK(decision_from_json(to_json(d)) == d);
}

TEST_CASE("model JSON lists every element and link") {
    const GoalModel m = builtin_drgm();
    const Json j = to_json(m);
    CHECK(j["elements"].size() == m.elements.size());
    CHECK(j["links"].size() == m.links.size());
    CHECK(j["fingerprint"] == model_fingerprint(m));
    CHECK(j["dsl"].is_string());
    for (std::size_t i = 1; i < j["elements"].size(); ++i) {
        CHECK(j["elements"][i - 1]["id"].get<std::string>() < j["elements"][i]["id"].get<std::string>());
    }
}

TEST_CASE("questionnaire JSON") {
    const Json j = to_json(questionnaire());
    REQUIRE(j.is_array());
    CHECK(j.size() == questionnaire().size());
    CHECK(j[0]["id"] == "problem_kind");
}

TEST_CASE("dump ends with a newline") {
    CHECK(dump(Json{{"a", 1}}) == "{\n  \"a\": 1\n}\n");
}
