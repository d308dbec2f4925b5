#pragma once

#include "drgm/model.hpp"

#include <string>
#include <vector>

namespace drgm {

/// Rule names reported by validate().
namespace rule {
inline constexpr const char* kDuplicateId = "duplicate id";
inline constexpr const char* kUnknownActor = "unknown actor";
inline constexpr const char* kDanglingReference = "dangling reference";
inline constexpr const char* kCycle = "cycle";
inline constexpr const char* kMixedIncoming = "mixed incoming link kinds";
inline constexpr const char* kKpiNotLeaf = "KPI must be a leaf";
inline constexpr const char* kKpiMissingDefinition = "KPI definition required";
inline constexpr const char* kKpiOnNonKpi = "KPI definition on non-KPI element";
inline constexpr const char* kNonMonotoneKpi = "non-monotone KPI definition";
inline constexpr const char* kSelfLink = "self link";
inline constexpr const char* kDuplicateLink = "duplicate link";
}  // namespace rule

struct Diagnostic {
    std::string subject;  ///< element id, actor id, or link id
    std::string rule;
    std::string message;

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Empty iff the model satisfies every structural invariant.
std::vector<Diagnostic> validate(const GoalModel& model);

}  // namespace drgm
