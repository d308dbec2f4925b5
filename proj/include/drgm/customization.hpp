#pragma once

#include "drgm/model.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace drgm {

class CustomizationError : public Error {
public:
    using Error::Error;
};

/// The problem kind has no data-size rule; an expert must supply the KPI.
class RequiresExpertInput : public CustomizationError {
public:
    using CustomizationError::CustomizationError;
};

enum class ProblemKind {
    ClassificationTabular,
    ClassificationImage,
    ClassificationOther,
    Regression,
    TimeSeriesSeasonal,
    TimeSeriesOther,
};

inline constexpr ProblemKind kAllProblemKinds[] = {
    ProblemKind::ClassificationTabular, ProblemKind::ClassificationImage, ProblemKind::ClassificationOther,
    ProblemKind::Regression,            ProblemKind::TimeSeriesSeasonal,  ProblemKind::TimeSeriesOther,
};

std::string_view to_string(ProblemKind kind);
std::optional<ProblemKind> parse_problem_kind(std::string_view text);
bool is_classification(ProblemKind kind);
bool is_time_series(ProblemKind kind);

struct MLProblemSpec {
    ProblemKind kind = ProblemKind::ClassificationTabular;
    int num_classes = 0;    ///< classification kinds only, >= 2
    int num_features = 0;
    int season_length = 0;  ///< data points per season, TimeSeriesSeasonal only
    std::string season_unit = "years";
    /// Manually supplied data-size KPI for ClassificationOther.
    std::optional<KpiDefinition> expert_size_kpi;

    friend bool operator==(const MLProblemSpec&, const MLProblemSpec&) = default;
};

enum class DataSensitivity { Sensitive, PrivateNotSensitive, Public };
enum class UpdateFrequency { Never, Irregular, Regular };
enum class RepresentativenessDimension { Spatial, Temporal, Demographic };

std::string_view to_string(DataSensitivity s);
std::string_view to_string(UpdateFrequency f);
std::string_view to_string(RepresentativenessDimension d);
std::optional<DataSensitivity> parse_sensitivity(std::string_view text);
std::optional<UpdateFrequency> parse_update_frequency(std::string_view text);
std::optional<RepresentativenessDimension> parse_dimension(std::string_view text);

struct ContextSpec {
    bool involves_human_subjects = false;
    bool impacts_human_lives = false;
    DataSensitivity data_sensitivity = DataSensitivity::Public;
    UpdateFrequency update_frequency = UpdateFrequency::Never;
    bool eu_jurisdiction = false;
    std::set<RepresentativenessDimension> representativeness_dimensions;
    bool domain_legal_constraints = false;

    friend bool operator==(const ContextSpec&, const ContextSpec&) = default;
};

/// Throws CustomizationError describing the first violated constraint.
void check_spec(const MLProblemSpec& spec);

/// Data-size KPI from the rule-of-10 table. Throws RequiresExpertInput for
/// ClassificationOther.
KpiDefinition compute_data_size_kpi(const MLProblemSpec& spec);

/// Anchors of the class-ratio balancedness KPI (percent of perfect balance).
KpiDefinition class_balance_kpi();
/// Anchors of the Shapiro-Wilk p-value KPI used for regression targets.
KpiDefinition normality_kpi();

/// First customization step: balancedness importance, KPI and treatment
/// task, plus the data-size KPI. Only accepts an uncustomized model.
GoalModel apply_problem_type(const GoalModel& model, const MLProblemSpec& spec);

/// Second customization step: freshness/management, human-subject tasks,
/// privacy/security, discrimination, representativeness, legality, and
/// finally the Data Ethics importance. Requires apply_problem_type first.
GoalModel apply_context(const GoalModel& model, const ContextSpec& spec);

/// apply_problem_type followed by apply_context.
GoalModel customize(const GoalModel& model, const MLProblemSpec& problem, const ContextSpec& context);

// ---------------------------------------------------------------------------
// Questionnaire

enum class AnswerType { Choice, Boolean, Integer, Number, Text, MultiChoice };

std::string_view to_string(AnswerType type);

/// Question shown only when an earlier answer is one of `any_of`.
struct Applicability {
    std::string question;
    std::vector<std::string> any_of;
};

struct Question {
    std::string id;
    std::string prompt;
    std::string rationale;
    AnswerType type = AnswerType::Boolean;
    std::vector<std::string> options;  ///< Choice and MultiChoice
    std::string target;                ///< e.g. "problem.kind", "context.eu_jurisdiction"
    int order = 0;
    std::optional<Applicability> when;
    std::optional<double> minimum;  ///< Integer and Number only
};

/// Fixed question flow: ML problem questions first, then context questions.
const std::vector<Question>& questionnaire();

/// Answers keyed by question id. Boolean answers are "yes"/"no"; multi-choice
/// answers are comma-separated (possibly empty).
using AnswerSet = std::vector<std::pair<std::string, std::string>>;

/// True when the question applies given the answers collected so far.
bool is_applicable(const Question& question, const AnswerSet& answers);

/// Validates one answer against its question; returns an error message or
/// an empty string.
std::string check_answer(const Question& question, std::string_view answer);

struct CustomizationAnswers {
    MLProblemSpec problem;
    ContextSpec context;

    friend bool operator==(const CustomizationAnswers&, const CustomizationAnswers&) = default;
};

/// Builds the specs from questionnaire answers. Throws CustomizationError
/// listing every applicable question without a (valid) answer.
CustomizationAnswers answers_from_questionnaire(const AnswerSet& answers);

}  // namespace drgm
