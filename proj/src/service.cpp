#include "drgm/service.hpp"

#include "drgm/dsl.hpp"

#include <httplib.h>

#include <charconv>

namespace drgm {

namespace {

Json error_body(const std::string& message) { return Json{{"error", message}}; }

/// Runs a handler body and maps core exceptions onto HTTP statuses.
template <typename F>
ApiResponse guarded(F&& f) {
    try {
        return ApiResponse{200, f()};
    } catch (const NotFoundError& e) {
        return {404, error_body(e.what())};
    } catch (const JsonFormatError& e) {
        return {400, error_body(e.what())};
    } catch (const ParseError& e) {
        return {400, error_body(e.what())};
    } catch (const ProjectError& e) {
        return {400, error_body(e.what())};
    } catch (const Error& e) {
        return {422, error_body(e.what())};
    } catch (const Json::exception& e) {
        return {400, error_body(std::string("invalid JSON: ") + e.what())};
    }
}

Json parse_body(const std::string& body) {
    try {
        return Json::parse(body);
    } catch (const Json::parse_error& e) {
        throw JsonFormatError(std::string("request body is not valid JSON: ") + e.what());
    }
}

std::vector<std::string> split_names(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string::npos) end = text.size();
        if (end > start) out.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

CustomizationAnswers answers_from_body(const Json& j) {
    CustomizationAnswers answers;
    if (j.is_object() && j.contains("answers")) {
        const Json& raw = j["answers"];
        if (!raw.is_object()) throw JsonFormatError("'answers' must map question ids to strings");
        AnswerSet set;
        for (const auto& [id, v] : raw.items()) {
            set.emplace_back(id, v.is_string() ? v.get<std::string>() : v.dump());
        }
        answers = answers_from_questionnaire(set);
    } else {
        answers = answers_from_json(j);
    }
    return answers;
}

}  // namespace

Service::Service(Project project) : project_(std::move(project)) {}

Service::~Service() {
    if (server_) server_->stop();
}

ApiResponse Service::health() const { return {200, Json{{"status", "ok"}}}; }

ApiResponse Service::model() const {
    return guarded([&] {
        std::shared_lock lock(state_);
        return to_json(project_.load_model());
    });
}

ApiResponse Service::questionnaire() const {
    return guarded([&] { return to_json(drgm::questionnaire()); });
}

ApiResponse Service::customize(const std::string& body) {
    return guarded([&] {
        const Json j = parse_body(body);
        CustomizationAnswers answers;
        try {
            answers = answers_from_body(j);
        } catch (const JsonFormatError& e) {
            throw CustomizationError(e.what());
        }
        std::unique_lock lock(state_);
        return to_json(project_.customize(answers));
    });
}

ApiResponse Service::upload_dataset(const std::string& csv, const std::string& descriptor) {
    return guarded([&] {
        const Json d = parse_body(descriptor);
        if (!d.is_object()) throw JsonFormatError("descriptor: expected a JSON object");
        std::vector<std::string> missing;
        for (const char* key : {"name", "target"}) {
            if (!d.contains(key) || !d[key].is_string()) missing.push_back(key);
        }
        if (!missing.empty()) {
            std::string list;
            for (const auto& m : missing) list += (list.empty() ? "'" : ", '") + m + "'";
            throw JsonFormatError("descriptor: missing field " + list);
        }
        DatasetDescriptor desc;
        desc.name = d["name"].get<std::string>();
        desc.target = d["target"].get<std::string>();
        if (!valid_artifact_name(desc.name)) throw ProjectError("invalid dataset name '" + desc.name + "'");
        desc.preprocessing_complete = d.value("preprocessing_complete", false);
        if (d.contains("protected")) desc.protected_attributes = d["protected"].get<std::vector<std::string>>();

        std::unique_lock lock(state_);
        if (d.contains("problem")) {
            desc.problem = problem_from_json(d["problem"]);
        } else if (auto answers = project_.load_answers()) {
            desc.problem = answers->problem;
        } else {
            throw CustomizationError("project is not customized; supply 'problem' in the descriptor");
        }
        const DatasetProfile prof = profile(parse_csv(csv, desc.target), desc);
        project_.save_profile(prof);
        return to_json(prof);
    });
}

EvaluationResult Service::cached_evaluate(const GoalModel& model, const EvaluationStrategy& strategy) const {
    auto key = std::make_pair(print_model(model), to_json(strategy).dump());
    {
        std::lock_guard lock(cache_mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    EvaluationResult result = drgm::evaluate(model, strategy);
    std::lock_guard lock(cache_mutex_);
    cache_.emplace(std::move(key), result);
    return result;
}

ApiResponse Service::evaluate(const std::string& body) {
    return guarded([&] {
        const EvaluationRequest req = evaluation_request_from_json(parse_body(body));
        const std::string name = Project::result_name(req);
        if (!valid_artifact_name(name)) throw ProjectError("invalid result name '" + name + "'");
        std::unique_lock lock(state_);
        const EvaluationStrategy strategy = project_.resolve_strategy(req);
        const EvaluationResult result = cached_evaluate(project_.load_model(), strategy);
        project_.save_result(name, strategy, result);
        return to_json(result);
    });
}

ApiResponse Service::what_if(const std::string& body) const {
    return guarded([&] {
        const Json j = parse_body(body);
        if (!j.is_object()) throw JsonFormatError("what-if request: expected a JSON object");
        std::map<std::string, Assignment> overrides;
        if (j.contains("overrides")) overrides = assignments_from_json(j["overrides"]);
        Json base = j;
        base.erase("overrides");
        const EvaluationRequest req = evaluation_request_from_json(base);
        std::shared_lock lock(state_);
        const GoalModel model = project_.load_model();
        EvaluationStrategy strategy = project_.resolve_strategy(req);
        for (const auto& [id, a] : overrides) {
            if (!model.find(id)) throw EvaluationError("what-if override for unknown element '" + id + "'");
            if (!model.is_leaf(id)) throw EvaluationError("what-if override for '" + id + "', which is not a leaf");
            strategy.assignments[id] = a;
        }
        return to_json(cached_evaluate(model, strategy));
    });
}

ApiResponse Service::compare(const std::string& names, const std::string& threshold) const {
    return guarded([&] {
        std::optional<double> t;
        if (!threshold.empty()) {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(threshold.data(), threshold.data() + threshold.size(), v);
            if (ec != std::errc() || ptr != threshold.data() + threshold.size()) {
                throw JsonFormatError("threshold: not a number: '" + threshold + "'");
            }
            t = v;
        }
        std::shared_lock lock(state_);
        std::vector<std::string> list = split_names(names);
        if (list.empty()) list = project_.result_names();
        return to_json(project_.compare(list, project_.threshold(t), false));
    });
}

std::size_t Service::cache_size() const {
    std::lock_guard lock(cache_mutex_);
    return cache_.size();
}

namespace {

void reply(httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(dump(r.body), "application/json");
}

}  // namespace

int Service::bind(const std::string& host, int port) {
    server_ = std::make_unique<httplib::Server>();
    server_->set_default_headers({{"drgm-api", "1"}});
    // The library default enables SO_REUSEPORT, which lets a second server
    // share a busy port silently.
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });

    server_->Get("/api/health", [this](const httplib::Request&, httplib::Response& res) { reply(res, health()); });
    server_->Get("/api/model", [this](const httplib::Request&, httplib::Response& res) { reply(res, model()); });
    server_->Get("/api/questionnaire",
                 [this](const httplib::Request&, httplib::Response& res) { reply(res, questionnaire()); });
    server_->Post("/api/customize",
                  [this](const httplib::Request& req, httplib::Response& res) { reply(res, customize(req.body)); });
    server_->Post("/api/datasets", [this](const httplib::Request& req, httplib::Response& res) {
        if (!req.is_multipart_form_data() || !req.has_file("file") || !req.has_file("descriptor")) {
            reply(res, {400, error_body("expected multipart form fields 'file' and 'descriptor'")});
            return;
        }
        reply(res, upload_dataset(req.get_file_value("file").content, req.get_file_value("descriptor").content));
    });
    server_->Post("/api/evaluate",
                  [this](const httplib::Request& req, httplib::Response& res) { reply(res, evaluate(req.body)); });
    server_->Post("/api/whatif",
                  [this](const httplib::Request& req, httplib::Response& res) { reply(res, what_if(req.body)); });
    server_->Get("/api/compare", [this](const httplib::Request& req, httplib::Response& res) {
        reply(res, compare(req.get_param_value("names"), req.get_param_value("threshold")));
    });
    server_->set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            res.set_content(dump(error_body("no such endpoint")), "application/json");
        }
    });

    if (port == 0) {
        const int bound = server_->bind_to_any_port(host);
        if (bound < 0) throw ServiceError("cannot bind " + host);
        return bound;
    }
    if (!server_->bind_to_port(host, port)) {
        throw ServiceError("cannot bind " + host + ":" + std::to_string(port) + " (address in use?)");
    }
    return port;
}

void Service::listen() {
    if (!server_) throw ServiceError("listen() before bind()");
    server_->listen_after_bind();
}

void Service::stop() {
    if (server_) server_->stop();
}

void Service::wait_until_ready() const {
    if (server_) server_->wait_until_ready();
}

}  // namespace drgm
