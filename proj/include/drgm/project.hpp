#pragma once

// A project is a plain directory:
//
//   project.json        manifest (format marker, optional threshold)
//   model.drgm          the goal model, canonical DSL
//   answers.json        customization answers, once customized
//   profiles/<n>.json   dataset profiles
//   strategies/<n>.json effective strategy behind results/<n>.json
//   results/<n>.json    evaluation results
//   decision.json       last comparison

#include "drgm/json_io.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace drgm {

class ProjectError : public Error {
public:
    using Error::Error;
};

/// A named artifact (profile, result, ...) does not exist.
class NotFoundError : public ProjectError {
public:
    using ProjectError::ProjectError;
};

inline constexpr const char* kThresholdEnv = "DRGM_THRESHOLD";

/// Names become file names: [A-Za-z0-9_.-]+, not starting with '.'.
bool valid_artifact_name(std::string_view name);

/// Request to evaluate either a full strategy or a profiled dataset plus
/// manual values for the leaves the profile cannot measure.
struct EvaluationRequest {
    std::optional<std::string> dataset;
    EvaluationStrategy strategy;  ///< assignments act as manual values with a dataset
};

/// `{"strategy": {...}}` or `{"dataset": name, "manual": {...}, "na": [...], "name": str}`.
EvaluationRequest evaluation_request_from_json(const Json& j);

class Project {
public:
    /// Creates the directory layout with the built-in model. Throws
    /// ProjectError if `root` already holds a project.
    static Project init(const std::filesystem::path& root);
    /// Throws ProjectError if `root` is not a project.
    static Project open(const std::filesystem::path& root);

    const std::filesystem::path& root() const { return root_; }
    std::filesystem::path model_path() const { return root_ / "model.drgm"; }
    std::filesystem::path manifest_path() const { return root_ / "project.json"; }
    std::filesystem::path answers_path() const { return root_ / "answers.json"; }
    std::filesystem::path decision_path() const { return root_ / "decision.json"; }
    std::filesystem::path profile_path(const std::string& name) const;
    std::filesystem::path strategy_path(const std::string& name) const;
    std::filesystem::path result_path(const std::string& name) const;

    GoalModel load_model() const;
    Json manifest() const;
    std::optional<CustomizationAnswers> load_answers() const;

    /// Re-derives the model from the built-in skeleton with `answers` and
    /// writes both model and answers. Identical answers give identical files.
    GoalModel customize(const CustomizationAnswers& answers) const;

    void save_profile(const DatasetProfile& profile) const;
    DatasetProfile load_profile(const std::string& name) const;
    std::vector<std::string> profile_names() const;

    /// Strategy actually evaluated for a request: profile-derived KPI
    /// measurements merged with manual values when a dataset is named.
    EvaluationStrategy resolve_strategy(const EvaluationRequest& request) const;
    /// Name results are stored under: the dataset, else the strategy name.
    static std::string result_name(const EvaluationRequest& request);

    /// Evaluates and, when `persist`, writes results/<n>.json and
    /// strategies/<n>.json.
    EvaluationResult evaluate(const EvaluationRequest& request, bool persist = true) const;
    void save_result(const std::string& name, const EvaluationStrategy& strategy,
                     const EvaluationResult& result) const;
    EvaluationResult load_result(const std::string& name) const;
    std::optional<EvaluationStrategy> load_strategy(const std::string& name) const;
    std::vector<std::string> result_names() const;

    /// Compares stored results; writes decision.json when `persist`.
    SelectionDecision compare(const std::vector<std::string>& names, double threshold, bool persist = true) const;
    std::optional<SelectionDecision> load_decision() const;

    /// --threshold, then $DRGM_THRESHOLD, then the manifest, then 70.
    double threshold(std::optional<double> override_value = std::nullopt) const;

private:
    explicit Project(std::filesystem::path root) : root_(std::move(root)) {}

    std::filesystem::path root_;
};

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file and renames it into place.
void write_text_file(const std::filesystem::path& path, const std::string& text);
Json read_json_file(const std::filesystem::path& path);

}  // namespace drgm
