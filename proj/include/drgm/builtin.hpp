#pragma once

#include "drgm/model.hpp"

#include <array>
#include <string_view>

namespace drgm {

/// Element ids of the built-in data requirements goal model. The
/// customization engine relies on these being present.
namespace ids {
inline constexpr std::string_view kDataActor = "data";

inline constexpr std::string_view kQuantity = "data_quantity";
inline constexpr std::string_view kQuality = "data_quality";
inline constexpr std::string_view kManagement = "data_management";
inline constexpr std::string_view kEthics = "data_ethics";

inline constexpr std::string_view kAvailability = "data_availability";
inline constexpr std::string_view kAccessibility = "data_accessibility";
inline constexpr std::string_view kAccuracy = "data_accuracy";
inline constexpr std::string_view kFreshness = "data_freshness";
inline constexpr std::string_view kRepresentativeness = "data_representativeness";
inline constexpr std::string_view kBalancedness = "data_balancedness";
inline constexpr std::string_view kCompleteness = "data_completeness";
inline constexpr std::string_view kConsistency = "data_consistency";
inline constexpr std::string_view kLogging = "data_logging";
inline constexpr std::string_view kSecurity = "data_security";
inline constexpr std::string_view kDiscriminationFree = "data_discrimination_free";
inline constexpr std::string_view kLegality = "data_legality";
inline constexpr std::string_view kPrivacy = "data_privacy";
inline constexpr std::string_view kSafety = "data_safety";

inline constexpr std::string_view kSizeKpi = "kpi_data_size";
inline constexpr std::string_view kBalanceKpi = "kpi_balancedness";

inline constexpr std::string_view kIdentifySource = "t_identify_data_source";
inline constexpr std::string_view kTreatMissing = "t_treat_missing_data";
inline constexpr std::string_view kResolveInconsistencies = "t_resolve_inconsistencies";
inline constexpr std::string_view kRemoveRedundant = "t_remove_redundant_data";
inline constexpr std::string_view kHandleIncoming = "t_handle_incoming_data";
inline constexpr std::string_view kSustainableSources = "t_sustainable_sources";
inline constexpr std::string_view kCoverTargetValues = "t_cover_target_values";
inline constexpr std::string_view kConfirmLegal = "t_confirm_legal_compliance";
inline constexpr std::string_view kProtectIdentifying = "t_protect_identifying_features";
inline constexpr std::string_view kObtainConsent = "t_obtain_consent";
inline constexpr std::string_view kProtectDiscriminatory = "t_protect_discriminatory_features";

// Added by customization.
inline constexpr std::string_view kResample = "t_resample_classes";
inline constexpr std::string_view kTransformTarget = "t_transform_target";
inline constexpr std::string_view kGdprCompliance = "t_gdpr_compliance";
inline constexpr std::string_view kAuthoritativeSource = "t_authoritative_source";
inline constexpr std::string_view kSpatialRepresentativeness = "t_spatial_representativeness";
inline constexpr std::string_view kTemporalRepresentativeness = "t_temporal_representativeness";
inline constexpr std::string_view kDemographicRepresentativeness = "t_demographic_representativeness";
}  // namespace ids

/// The four requirement categories and their subgoals, in display order.
struct Category {
    std::string_view goal;
    std::array<std::string_view, 6> subgoals;
    std::size_t count;
};

const std::array<Category, 4>& categories();

/// The initial, uncustomized goal model. Parsed once from embedded DSL
/// source and copied on every call.
GoalModel builtin_drgm();

/// DSL source of builtin_drgm().
std::string_view builtin_drgm_source();

}  // namespace drgm
