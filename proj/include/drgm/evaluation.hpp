#pragma once

#include "drgm/model.hpp"

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace drgm {

class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Analyst-chosen satisfaction for a non-KPI leaf, 0..100.
struct SatisfactionValue {
    int value = 0;
    friend bool operator==(const SatisfactionValue&, const SatisfactionValue&) = default;
};

/// Raw measurement for a KPI leaf, in the KPI's unit.
struct KpiMeasurement {
    double value = 0.0;
    friend bool operator==(const KpiMeasurement&, const KpiMeasurement&) = default;
};

using Assignment = std::variant<SatisfactionValue, KpiMeasurement>;

struct EvaluationStrategy {
    std::string name;
    std::map<std::string, Assignment> assignments;
    /// Leaves neutralized before evaluation (see apply_not_applicable).
    std::set<std::string> not_applicable;

    friend bool operator==(const EvaluationStrategy&, const EvaluationStrategy&) = default;
};

struct EvaluationResult {
    std::map<std::string, double> elements;
    std::map<std::string, double> actors;
    std::string strategy;
    /// "<version>@<fingerprint>" of the evaluated model.
    std::string model_version;
    /// Actor whose satisfaction decides selection (see primary_actor()).
    std::string primary_actor;

    /// Satisfaction of the primary actor.
    double satisfaction() const;

    friend bool operator==(const EvaluationResult&, const EvaluationResult&) = default;
};

/// Absolute tolerance for internal comparisons of satisfaction values.
inline constexpr double kTolerance = 1e-9;

/// Piecewise-linear map of a measurement onto 0..100 with worst -> 0,
/// threshold -> 50 and target -> 100. Works for decreasing KPIs
/// (target < worst); measurements beyond the anchors are clamped.
double normalize_kpi(double measured, const KpiDefinition& kpi);

/// Flags each listed leaf as not applicable (it evaluates to 100) and drops
/// every negative contribution leaving a not-applicable element, whether
/// flagged here or already in the model.
/// Throws EvaluationError if an id is unknown or not a leaf.
GoalModel apply_not_applicable(const GoalModel& model, const std::set<std::string>& leaf_ids);

/// Bottom-up quantitative propagation.
///
/// Leaves take their assigned value (KPIs through normalize_kpi);
/// not-applicable elements are 100. AND-decomposed elements take the
/// minimum of their children and OR-decomposed the maximum. Contribution
/// destinations receive clamp(sum(source * level / 100), 0, 100). Actor
/// satisfaction is the importance-weighted mean over the actor's elements
/// with non-zero effective importance.
///
/// Throws ValidationError for invalid models and EvaluationError for a
/// strategy that leaves an applicable leaf uncovered, assigns a non-leaf,
/// mismatches assignment and element kinds, or for an actor without any
/// weighted element.
EvaluationResult evaluate(const GoalModel& model, const EvaluationStrategy& strategy);

/// evaluate() on the strategy merged with `overrides`; the strategy itself is
/// not modified. Overriding anything but a leaf is an error.
EvaluationResult what_if(const GoalModel& model, const EvaluationStrategy& strategy,
                         const std::map<std::string, Assignment>& overrides);

/// The actor whose satisfaction decides dataset selection: the actor named
/// "Data" when present, otherwise the first declared actor.
const Actor& primary_actor(const GoalModel& model);

}  // namespace drgm
