#pragma once

#include "drgm/model.hpp"
#include "drgm/validate.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace drgm {

/// Malformed token or production in DSL source. Line and column are 1-based.
class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& message);

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Well-formed source that describes an invalid model.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);

    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Parses and validates a model written in the goal-model DSL:
///
///     drgm "name" [version "tag"] [stage base|problem_type|context]
///     actor ID "name" {
///       softgoal ID "name" { importance: high  na  note: "..." }
///       kpi ID "name" { kpi: (worst, threshold, target, "unit") }
///     }
///     decomp CHILD and|or of PARENT
///     contrib SOURCE make|help|...|INT to DESTINATION
///
/// `#` starts a comment that runs to end of line.
GoalModel parse_model(std::string_view text);

/// Parses without running the validator. Only syntax errors are raised.
GoalModel parse_model_unchecked(std::string_view text);

/// Canonical rendering: actors in declaration order, elements sorted by id,
/// links sorted by (destination, source). parse_model(print_model(m)) is
/// structurally equal to m.
std::string print_model(const GoalModel& model);

}  // namespace drgm
