#pragma once

// JSON schemas shared by the CLI, the project files and the HTTP service.

#include "drgm/customization.hpp"
#include "drgm/evaluation.hpp"
#include "drgm/profiler.hpp"
#include "drgm/reporting.hpp"

#include <json.hpp>

namespace drgm {

using Json = nlohmann::json;

/// Malformed JSON document; the message lists every offending field.
class JsonFormatError : public Error {
public:
    using Error::Error;
};

Json to_json(const KpiDefinition& kpi);
Json to_json(const GoalModel& model);
Json to_json(const EvaluationStrategy& strategy);
Json to_json(const EvaluationResult& result);
Json to_json(const CustomizationAnswers& answers);
Json to_json(const DatasetProfile& profile);
Json to_json(const SelectionDecision& decision);
Json to_json(const std::vector<Question>& questions);

/// `{ "<id>": {"value": int} | {"measure": number}, ... }`
Json assignments_to_json(const std::map<std::string, Assignment>& assignments);
std::map<std::string, Assignment> assignments_from_json(const Json& j);

/// `{ "name": str, "assign": {...}, "na": [ids] }`
EvaluationStrategy strategy_from_json(const Json& j);
EvaluationResult result_from_json(const Json& j);
MLProblemSpec problem_from_json(const Json& j);
CustomizationAnswers answers_from_json(const Json& j);
DatasetProfile profile_from_json(const Json& j);
SelectionDecision decision_from_json(const Json& j);

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& j);

}  // namespace drgm
