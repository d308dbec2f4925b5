#pragma once

#include "drgm/customization.hpp"
#include "drgm/evaluation.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drgm {

class ReportError : public Error {
public:
    using Error::Error;
};

/// Default minimum satisfaction for a dataset to be selected.
inline constexpr double kDefaultThreshold = 70.0;

/// Advice when no candidate reaches the threshold.
inline constexpr std::string_view kNoneSatisfiesAdvice =
    "additional preprocessing may be applied, or alternative datasets may need to be obtained or combined";

struct SelectionDecision {
    std::map<std::string, double> satisfaction;
    double threshold = kDefaultThreshold;
    /// Empty when no dataset satisfies the threshold.
    std::optional<std::string> selected;
    /// Datasets sharing the top qualifying score; more than one means the
    /// lexicographic tie-break decided.
    std::vector<std::string> tied;
    std::string recommendation;

    friend bool operator==(const SelectionDecision&, const SelectionDecision&) = default;
};

/// Picks the highest-scoring dataset among those at or above `threshold`;
/// ties go to the lexicographically smallest name. Throws ReportError for an
/// empty input or results produced from different model versions.
SelectionDecision compare(const std::map<std::string, EvaluationResult>& results,
                          double threshold = kDefaultThreshold);

enum class ColorBucket { Red, Yellow, Green };

/// red below 30, yellow from 30 up to 70, green from 70.
ColorBucket color_bucket(double value);
std::string_view fill_color(ColorBucket bucket);
std::string_view to_string(ColorBucket bucket);

/// Graphviz digraph of the evaluated model. Nodes are labeled
/// "name\n<value>" and filled by color bucket; decompositions are solid
/// edges, contributions dashed and labeled with their level. Each actor is
/// a cluster.
std::string export_dot(const GoalModel& model, const EvaluationResult& result);

enum class ReportFormat { Json, Markdown };

std::optional<ReportFormat> parse_report_format(std::string_view text);

struct ReportInput {
    const GoalModel* model = nullptr;
    std::string dataset;
    std::optional<EvaluationResult> result;
    std::optional<SelectionDecision> decision;
    std::optional<CustomizationAnswers> answers;
    /// KPI measurements that produced the result, by KPI id.
    std::map<std::string, double> kpi_measurements;
    double threshold = kDefaultThreshold;
};

/// Markdown sections: Summary, Customization, KPIs, Goals by Category,
/// Verdict. The JSON form carries the same content with the result and
/// decision in their export schemas.
std::string render_report(const ReportInput& input, ReportFormat format);

/// Subgoals with non-zero effective importance whose value is below the
/// threshold, ordered by value then id.
std::vector<std::string> weak_areas(const GoalModel& model, const EvaluationResult& result,
                                    double threshold = kDefaultThreshold);

}  // namespace drgm
