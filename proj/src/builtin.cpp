#include "drgm/builtin.hpp"

#include "drgm/dsl.hpp"

namespace drgm {

namespace {

// Importances of data_quantity, data_quality, data_availability,
// data_accessibility, data_accuracy, data_completeness, data_consistency and
// data_safety are fixed for every project; the rest are defaults that the
// customization engine overwrites.
constexpr std::string_view kSource = R"drgm(# Data Requirements Goal Model (initial, uncustomized).
drgm "Data Requirements Goal Model" version "1.0"

actor data "Data" {
  # Requirement categories.
  softgoal data_quantity "Data Quantity" { importance: high }
  softgoal data_quality "Data Quality" { importance: high }
  softgoal data_management "Data Management" {
    importance: medium
    note: "Also listed as Data Maintainability in the customization sets."
  }
  softgoal data_ethics "Data Ethics" {
    importance: medium
    note: "Importance becomes the highest importance among its subgoals."
  }

  # Data Quantity.
  softgoal data_availability "Data Availability" { importance: high }
  softgoal data_accessibility "Data Accessibility" { importance: high }

  # Data Quality.
  softgoal data_accuracy "Data Accuracy" { importance: high }
  softgoal data_freshness "Data Freshness" { importance: medium }
  softgoal data_representativeness "Data Representativeness" { importance: high }
  softgoal data_balancedness "Data Balancedness" {
    importance: medium
    note: "KPI and treatment task installed per ML problem type."
  }
  softgoal data_completeness "Data Completeness" { importance: high }
  softgoal data_consistency "Data Consistency" { importance: medium }

  # Data Management.
  softgoal data_logging "Data Logging" {
    importance: medium
    note: "Importance follows Data Management."
  }
  softgoal data_security "Data Security" { importance: medium }

  # Data Ethics.
  softgoal data_discrimination_free "Data Free from Discrimination" { importance: medium }
  softgoal data_legality "Data Legality" { importance: medium }
  softgoal data_privacy "Data Privacy" { importance: medium }
  softgoal data_safety "Data Safety" { importance: medium }

  kpi kpi_data_size "Data Size" {
    kpi: (5, 10, 100, "data points")
    note: "Generic rule-of-10 anchors; replaced per ML problem type."
  }

  task t_identify_data_source "Identify Data Source" {
    note: "The data can only be reached once its source is identified."
  }
  task t_treat_missing_data "Treat Missing Data" {
    note: "Interpolation or other imputation of missing values."
  }
  task t_resolve_inconsistencies "Resolve Inconsistencies" {}
  task t_remove_redundant_data "Remove Redundant Data" {}
  task t_handle_incoming_data "Handle and Log Incoming Data with Versioning" {
    note: "Keeps new data separate from data already used for training."
  }
  task t_sustainable_sources "Obtain Data from Sustainable Sources" {}
  task t_cover_target_values "Cover All Target Classes or Value Ranges" {
    note: "Context-specific representativeness tasks join this AND-decomposition."
  }
  task t_confirm_legal_compliance "Confirm Compliance with Context-Specific Legal Constraints" {}
  task t_protect_identifying_features "Remove or Protect Identifying Information" {}
  task t_obtain_consent "Obtain Subject Consent" {}
  task t_protect_discriminatory_features "Identify and Protect Discriminatory Features" {
    note: "E.g. gender or proxies of protected attributes."
  }
}

decomp data_availability and of data_quantity
decomp data_accessibility and of data_quantity

decomp data_accuracy and of data_quality
decomp data_freshness and of data_quality
decomp data_representativeness and of data_quality
decomp data_balancedness and of data_quality
decomp data_completeness and of data_quality
decomp data_consistency and of data_quality

decomp data_logging and of data_management
decomp data_security and of data_management

decomp data_discrimination_free and of data_ethics
decomp data_legality and of data_ethics
decomp data_privacy and of data_ethics
decomp data_safety and of data_ethics

contrib kpi_data_size make to data_availability
contrib t_identify_data_source make to data_accessibility
contrib t_treat_missing_data help to data_completeness
contrib data_accuracy help to data_completeness
contrib t_resolve_inconsistencies help to data_consistency
contrib t_remove_redundant_data help to data_consistency
contrib t_handle_incoming_data help to data_freshness
contrib t_sustainable_sources help to data_freshness
contrib t_handle_incoming_data make to data_logging
decomp t_cover_target_values and of data_representativeness
contrib t_confirm_legal_compliance make to data_legality
contrib t_protect_identifying_features help to data_privacy
contrib t_obtain_consent help to data_privacy
contrib t_protect_discriminatory_features make to data_discrimination_free
)drgm";

}  // namespace

const std::array<Category, 4>& categories() {
    static const std::array<Category, 4> table = {{
        {ids::kQuantity, {ids::kAvailability, ids::kAccessibility}, 2},
        {ids::kQuality,
         {ids::kAccuracy, ids::kFreshness, ids::kRepresentativeness, ids::kBalancedness, ids::kCompleteness,
          ids::kConsistency},
         6},
        {ids::kManagement, {ids::kLogging, ids::kSecurity}, 2},
        {ids::kEthics, {ids::kDiscriminationFree, ids::kLegality, ids::kPrivacy, ids::kSafety}, 4},
    }};
    return table;
}

std::string_view builtin_drgm_source() { return kSource; }

GoalModel builtin_drgm() {
    static const GoalModel model = parse_model(kSource);
    return model;
}

}  // namespace drgm
