#pragma once

#include "drgm/project.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace httplib {
class Server;
}

namespace drgm {

class ServiceError : public Error {
public:
    using Error::Error;
};

/// Response produced by a handler, independent of the HTTP transport.
struct ApiResponse {
    int status = 200;
    Json body;
};

/// JSON API over one project. Handlers are usable without a socket; serve()
/// wires them to cpp-httplib under /api.
class Service {
public:
    explicit Service(Project project);
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    ApiResponse health() const;
    ApiResponse model() const;
    ApiResponse questionnaire() const;
    /// Body: answers-file schema, or {"answers": {question id: string}}.
    ApiResponse customize(const std::string& body);
    /// `descriptor` is {"name", "target", "protected"?, "preprocessing_complete"?, "problem"?}.
    ApiResponse upload_dataset(const std::string& csv, const std::string& descriptor);
    ApiResponse evaluate(const std::string& body);
    /// Body: an evaluation request plus "overrides"; nothing is persisted.
    ApiResponse what_if(const std::string& body) const;
    /// `names` is comma-separated; `threshold` optional.
    ApiResponse compare(const std::string& names, const std::string& threshold) const;

    /// Binds to host:port (port 0 picks a free one) and returns the port.
    /// Throws ServiceError when the address is unavailable.
    int bind(const std::string& host, int port);
    /// Blocks serving requests until stop().
    void listen();
    void stop();
    void wait_until_ready() const;

    std::size_t cache_size() const;

private:
    EvaluationResult cached_evaluate(const GoalModel& model, const EvaluationStrategy& strategy) const;

    Project project_;
    /// Mutations take it exclusively, reads shared.
    mutable std::shared_mutex state_;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::pair<std::string, std::string>, EvaluationResult> cache_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace drgm
