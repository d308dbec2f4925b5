#include "drgm/project.hpp"

#include "drgm/builtin.hpp"
#include "drgm/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace drgm {

namespace {

constexpr const char* kFormatKey = "drgm_project";
constexpr int kFormatVersion = 1;

void require_name(const std::string& name, const char* what) {
    if (!valid_artifact_name(name)) {
        throw ProjectError(std::string("invalid ") + what + " name '" + name +
                           "': use letters, digits, '_', '-' and '.'");
    }
}

std::vector<std::string> json_stems(const fs::path& dir) {
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
            names.push_back(entry.path().stem().string());
        }
    }
    std::sort(names.begin(), names.end());
    return names;
}

std::optional<double> parse_double(std::string_view text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

}  // namespace

bool valid_artifact_name(std::string_view name) {
    if (name.empty() || name.size() > 128 || name.front() == '.') return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '-' || c == '.';
    });
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ProjectError("cannot write '" + path.string() + "'");
        out << text;
        if (!out.flush()) throw ProjectError("cannot write '" + path.string() + "'");
    }
    fs::rename(tmp, path);
}

Json read_json_file(const fs::path& path) {
    const std::string text = read_text_file(path);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw JsonFormatError(path.filename().string() + ": invalid JSON: " + e.what());
    }
}

EvaluationRequest evaluation_request_from_json(const Json& j) {
    if (!j.is_object()) throw JsonFormatError("evaluation request: expected a JSON object");
    EvaluationRequest req;
    if (j.contains("strategy")) {
        req.strategy = strategy_from_json(j["strategy"]);
        if (j.contains("dataset")) throw JsonFormatError("evaluation request: give either 'strategy' or 'dataset'");
        return req;
    }
    if (!j.contains("dataset") || !j["dataset"].is_string()) {
        throw JsonFormatError("evaluation request: missing field 'strategy' or 'dataset'");
    }
    req.dataset = j["dataset"].get<std::string>();
    req.strategy.name = j.value("name", *req.dataset);
    if (j.contains("manual")) req.strategy.assignments = assignments_from_json(j["manual"]);
    if (j.contains("na")) {
        if (!j["na"].is_array()) throw JsonFormatError("evaluation request: 'na' must be an array");
        for (const Json& id : j["na"]) {
            if (!id.is_string()) throw JsonFormatError("evaluation request: 'na' must list element ids");
            req.strategy.not_applicable.insert(id.get<std::string>());
        }
    }
    return req;
}

Project Project::init(const fs::path& root) {
    Project p(root);
    if (fs::exists(p.manifest_path()) || fs::exists(p.model_path())) {
        throw ProjectError("'" + root.string() + "' already contains a project");
    }
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw ProjectError("cannot create '" + root.string() + "': " + ec.message());
    for (const char* sub : {"profiles", "strategies", "results"}) fs::create_directories(root / sub);
    write_text_file(p.model_path(), print_model(builtin_drgm()));
    write_text_file(p.manifest_path(), dump(Json{{kFormatKey, kFormatVersion}}));
    return p;
}

Project Project::open(const fs::path& root) {
    Project p(root);
    if (!fs::exists(p.manifest_path())) throw ProjectError("'" + root.string() + "' is not a project (no project.json)");
    const Json m = p.manifest();
    if (!m.is_object() || m.value(kFormatKey, 0) != kFormatVersion) {
        throw ProjectError("unsupported project manifest in '" + root.string() + "'");
    }
    for (const char* sub : {"profiles", "strategies", "results"}) fs::create_directories(root / sub);
    return p;
}

fs::path Project::profile_path(const std::string& name) const {
    require_name(name, "dataset");
    return root_ / "profiles" / (name + ".json");
}

fs::path Project::strategy_path(const std::string& name) const {
    require_name(name, "strategy");
    return root_ / "strategies" / (name + ".json");
}

fs::path Project::result_path(const std::string& name) const {
    require_name(name, "result");
    return root_ / "results" / (name + ".json");
}

GoalModel Project::load_model() const { return parse_model(read_text_file(model_path())); }

Json Project::manifest() const { return read_json_file(manifest_path()); }

std::optional<CustomizationAnswers> Project::load_answers() const {
    if (!fs::exists(answers_path())) return std::nullopt;
    return answers_from_json(read_json_file(answers_path()));
}

GoalModel Project::customize(const CustomizationAnswers& answers) const {
    GoalModel model = drgm::customize(builtin_drgm(), answers.problem, answers.context);
    write_text_file(answers_path(), dump(to_json(answers)));
    write_text_file(model_path(), print_model(model));
    return model;
}

void Project::save_profile(const DatasetProfile& profile) const {
    write_text_file(profile_path(profile.dataset), dump(to_json(profile)));
}

DatasetProfile Project::load_profile(const std::string& name) const {
    const fs::path path = profile_path(name);
    if (!fs::exists(path)) throw NotFoundError("no profile for dataset '" + name + "'");
    return profile_from_json(read_json_file(path));
}

std::vector<std::string> Project::profile_names() const { return json_stems(root_ / "profiles"); }

EvaluationStrategy Project::resolve_strategy(const EvaluationRequest& request) const {
    if (!request.dataset) return request.strategy;
    const GoalModel model = load_model();
    const DatasetProfile prof = load_profile(*request.dataset);
    const GoalModel flagged = apply_not_applicable(model, request.strategy.not_applicable);
    EvaluationStrategy s = map_profile_to_strategy(prof, flagged, request.strategy.assignments,
                                                   request.strategy.name.empty() ? *request.dataset
                                                                                 : request.strategy.name);
    s.not_applicable = request.strategy.not_applicable;
    return s;
}

std::string Project::result_name(const EvaluationRequest& request) {
    if (request.dataset) return *request.dataset;
    return request.strategy.name;
}

EvaluationResult Project::evaluate(const EvaluationRequest& request, bool persist) const {
    const std::string name = result_name(request);
    if (persist) require_name(name, "result");
    const EvaluationStrategy strategy = resolve_strategy(request);
    EvaluationResult result = drgm::evaluate(load_model(), strategy);
    if (persist) save_result(name, strategy, result);
    return result;
}

void Project::save_result(const std::string& name, const EvaluationStrategy& strategy,
                          const EvaluationResult& result) const {
    write_text_file(strategy_path(name), dump(to_json(strategy)));
    Json j = to_json(result);
    j["applied_strategy"] = to_json(strategy);
    write_text_file(result_path(name), dump(j));
}

EvaluationResult Project::load_result(const std::string& name) const {
    const fs::path path = result_path(name);
    if (!fs::exists(path)) throw NotFoundError("no evaluation result for '" + name + "'");
    return result_from_json(read_json_file(path));
}

std::optional<EvaluationStrategy> Project::load_strategy(const std::string& name) const {
    const fs::path path = strategy_path(name);
    if (!fs::exists(path)) return std::nullopt;
    return strategy_from_json(read_json_file(path));
}

std::vector<std::string> Project::result_names() const { return json_stems(root_ / "results"); }

SelectionDecision Project::compare(const std::vector<std::string>& names, double threshold, bool persist) const {
    std::map<std::string, EvaluationResult> results;
    for (const std::string& n : names) results.emplace(n, load_result(n));
    SelectionDecision decision = drgm::compare(results, threshold);
    if (persist) write_text_file(decision_path(), dump(to_json(decision)));
    return decision;
}

std::optional<SelectionDecision> Project::load_decision() const {
    if (!fs::exists(decision_path())) return std::nullopt;
    return decision_from_json(read_json_file(decision_path()));
}

double Project::threshold(std::optional<double> override_value) const {
    auto check = [](double v, const std::string& source) {
        if (!(v >= 0.0 && v <= 100.0)) throw ProjectError(source + ": threshold must be within 0..100");
        return v;
    };
    if (override_value) return check(*override_value, "--threshold");
    if (const char* env = std::getenv(kThresholdEnv); env && *env) {
        auto v = parse_double(env);
        if (!v) throw ProjectError(std::string(kThresholdEnv) + ": not a number: '" + env + "'");
        return check(*v, kThresholdEnv);
    }
    const Json m = manifest();
    if (auto it = m.find("threshold"); it != m.end() && !it->is_null()) {
        if (!it->is_number()) throw ProjectError("project.json: threshold must be a number");
        return check(it->get<double>(), "project.json");
    }
    return kDefaultThreshold;
}

}  // namespace drgm
