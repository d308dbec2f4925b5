#pragma once

#include "drgm/customization.hpp"
#include "drgm/evaluation.hpp"
#include "drgm/shapiro_wilk.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace drgm {

class ProfileError : public Error {
public:
    using Error::Error;
};

struct DatasetDescriptor {
    std::string name;
    std::filesystem::path source;
    std::string target;
    std::vector<std::string> protected_attributes;
    MLProblemSpec problem;
    /// Rows may only be counted toward the data-size KPI once every
    /// preprocessing step that removes data points has run.
    bool preprocessing_complete = false;
};

enum class ColumnType { Numeric, Categorical };

struct Dataset {
    std::vector<std::string> columns;
    std::vector<ColumnType> types;
    /// Row-major cells; an empty string is a missing cell.
    std::vector<std::vector<std::string>> rows;

    std::size_t row_count() const { return rows.size(); }
    /// Throws ProfileError when absent.
    std::size_t column_index(std::string_view name) const;
};

/// RFC-4180 CSV with a header row. A column is numeric iff every non-empty
/// cell parses as a decimal number. Throws ProfileError on ragged rows (with
/// the record number) and when `target` is non-empty but absent.
Dataset parse_csv(std::string_view text, std::string_view target = {});

/// Reads descriptor.source and parses it; errors as parse_csv, plus a
/// missing file.
Dataset ingest_csv(const DatasetDescriptor& descriptor);

enum class BalanceMetric {
    MinMaxRatio,        ///< 100 * min / max
    NormalizedEntropy,  ///< 100 * H / log(k)
};

/// Class balance in percent. Needs at least two labels, all with a positive
/// count; throws ProfileError otherwise.
double balancedness(const std::map<std::string, std::size_t>& class_counts,
                    BalanceMetric metric = BalanceMetric::MinMaxRatio);

struct DatasetProfile {
    std::string dataset;
    std::string target;
    ProblemKind problem_kind = ProblemKind::ClassificationTabular;
    bool preprocessing_complete = false;
    std::size_t row_count = 0;
    /// Value for the data-size KPI: rows, or seasons of data for seasonal
    /// time series (rows / season length, floored to one decimal).
    double size_measure = 0.0;
    std::string size_unit;
    std::map<std::string, double> column_missing;
    double missing_fraction = 0.0;
    double duplicate_fraction = 0.0;
    std::map<std::string, std::size_t> class_counts;
    std::optional<double> balancedness_percent;
    std::optional<ShapiroWilkResult> shapiro;
    std::vector<std::string> notes;

    friend bool operator==(const DatasetProfile&, const DatasetProfile&) = default;
};

/// Statistics the customized model needs. Deterministic and independent of
/// row order. Throws ProfileError for a regression target that is not
/// numeric, and propagates balancedness and Shapiro-Wilk errors.
DatasetProfile profile(const Dataset& dataset, const DatasetDescriptor& descriptor);

/// Builds an evaluation strategy: the data-size and balancedness KPIs are
/// measured from the profile unless `manual` overrides them, and every other
/// leaf comes from `manual`. Throws EvaluationError naming uncovered leaves,
/// or when the size KPI would be taken from a profile whose preprocessing is
/// not complete.
EvaluationStrategy map_profile_to_strategy(const DatasetProfile& profile, const GoalModel& model,
                                           const std::map<std::string, Assignment>& manual,
                                           const std::string& strategy_name = {});

}  // namespace drgm
