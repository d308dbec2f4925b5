#include "drgm/cli.hpp"

#include "drgm/builtin.hpp"
#include "drgm/dsl.hpp"
#include "drgm/project.hpp"
#include "drgm/service.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <iostream>

namespace fs = std::filesystem;

namespace drgm {

namespace {

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text + ",") {
        if (c == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    return out;
}

/// Asks every applicable question on `out`, reading answers from `in`.
AnswerSet run_questionnaire(std::istream& in, std::ostream& out) {
    AnswerSet answers;
    int shown = 0;
    for (const Question& q : questionnaire()) {
        if (!is_applicable(q, answers)) continue;
        out << "\n[" << ++shown << "] " << q.prompt << "\n";
        if (!q.rationale.empty()) out << "    " << q.rationale << "\n";
        if (!q.options.empty()) {
            out << "    options: ";
            for (std::size_t i = 0; i < q.options.size(); ++i) out << (i ? ", " : "") << q.options[i];
            out << (q.type == AnswerType::MultiChoice ? " (comma-separated, empty for none)" : "") << "\n";
        } else if (q.type == AnswerType::Boolean) {
            out << "    options: yes, no\n";
        }
        for (;;) {
            out << "> " << std::flush;
            std::string line;
            if (!std::getline(in, line)) throw CustomizationError("questionnaire aborted at '" + q.id + "'");
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            while (!line.empty() && line.front() == ' ') line.erase(line.begin());
            const std::string problem = check_answer(q, line);
            if (problem.empty()) {
                answers.emplace_back(q.id, line);
                break;
            }
            out << "    " << problem << "\n";
        }
    }
    return answers;
}

void print_customized(const GoalModel& model, std::ostream& out) {
    out << "customized model (" << to_string(model.stage) << "):\n";
    for (const Category& cat : categories()) {
        const Element* goal = model.find(cat.goal);
        if (!goal) continue;
        out << "  " << goal->name << ": " << to_string(goal->effective_importance()) << "\n";
        for (std::size_t i = 0; i < cat.count; ++i) {
            const Element* sub = model.find(cat.subgoals[i]);
            if (!sub) continue;
            out << "    " << sub->name << ": " << to_string(sub->effective_importance())
                << (sub->applicable ? "" : " (n/a)") << "\n";
        }
    }
    if (const Element* kpi = model.find(ids::kSizeKpi); kpi && kpi->kpi) {
        out << "  data size KPI: worst " << kpi->kpi->worst << ", threshold " << kpi->kpi->threshold << ", target "
            << kpi->kpi->target << " (" << kpi->kpi->unit << ")\n";
    }
}

/// Result to draw or report: the named dataset, else the selected one, else
/// the only result.
std::optional<std::string> pick_result(const Project& project, const std::string& requested) {
    if (!requested.empty()) return requested;
    if (auto d = project.load_decision(); d && d->selected) return d->selected;
    const auto names = project.result_names();
    if (names.size() == 1) return names.front();
    return std::nullopt;
}

std::atomic<Service*> g_serving{nullptr};

extern "C" void stop_serving(int) {
    if (Service* s = g_serving.load()) s->stop();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dataset readiness workbench: customize the data requirements goal model, profile and "
                 "evaluate candidate datasets, and select one.",
                 "drgm"};
    app.require_subcommand(1);
    std::string project_dir = ".";
    app.add_option("-C,--project", project_dir, "Project directory")->capture_default_str();

    auto* init = app.add_subcommand("init", "Create a project with the built-in model");
    std::string init_dir;
    init->add_option("dir", init_dir, "Directory to create (defaults to --project)");

    auto* cust = app.add_subcommand("customize", "Customize the model from questionnaire answers");
    std::string answers_file;
    bool interactive = false;
    auto* answers_opt = cust->add_option("--answers", answers_file, "Answers file (JSON)");
    auto* interactive_flag = cust->add_flag("--interactive", interactive, "Ask the questions on the terminal");
    answers_opt->excludes(interactive_flag);
    cust->require_option(1);

    auto* prof = app.add_subcommand("profile", "Profile a CSV dataset");
    std::string csv_path, target, dataset_name, protected_list, spec_file;
    bool preprocessed = false;
    prof->add_option("csv", csv_path, "CSV file with a header row")->required();
    prof->add_option("--target", target, "Target column")->required();
    prof->add_option("--name", dataset_name, "Dataset name (defaults to the file stem)");
    prof->add_option("--protected", protected_list, "Comma-separated protected attribute columns");
    prof->add_flag("--preprocessed", preprocessed, "Rows are final: preprocessing that drops rows has run");
    prof->add_option("--spec", spec_file, "ML problem spec (JSON); defaults to the project's answers");

    auto* eval = app.add_subcommand("evaluate", "Evaluate a strategy or a profiled dataset");
    std::string strategy_file, eval_dataset;
    std::optional<double> eval_threshold;
    eval->add_option("--strategy", strategy_file, "Strategy file (JSON); manual values when --dataset is given");
    eval->add_option("--dataset", eval_dataset, "Profiled dataset name");
    eval->add_option("--threshold", eval_threshold, "Satisfaction threshold")->check(CLI::Range(0.0, 100.0));

    auto* cmp = app.add_subcommand("compare", "Select among evaluated datasets");
    std::vector<std::string> cmp_names;
    std::optional<double> cmp_threshold;
    cmp->add_option("names", cmp_names, "Result names (defaults to all)");
    cmp->add_option("--threshold", cmp_threshold, "Satisfaction threshold")->check(CLI::Range(0.0, 100.0));

    auto* exp = app.add_subcommand("export", "Export the model, a result or a report");
    std::string format, export_dataset, output_file;
    std::optional<double> exp_threshold;
    exp->add_option("--format", format, "dot, json or md")->required()->check(CLI::IsMember({"dot", "json", "md"}));
    exp->add_option("--dataset", export_dataset, "Result to export");
    exp->add_option("-o,--output", output_file, "Write to a file instead of stdout");
    exp->add_option("--threshold", exp_threshold, "Satisfaction threshold")->check(CLI::Range(0.0, 100.0));

    auto* serve = app.add_subcommand("serve", "Serve the JSON API on the loopback interface");
    int port = 8080;
    std::string host = "127.0.0.1";
    serve->add_option("--port", port, "TCP port")->capture_default_str()->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Bind address")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        if (*init) {
            const fs::path dir = init_dir.empty() ? fs::path(project_dir) : fs::path(init_dir);
            Project p = Project::init(dir);
            out << "initialized project in " << p.root().string() << "\n";
            return kExitOk;
        }

        Project project = Project::open(project_dir);

        if (*cust) {
            CustomizationAnswers answers;
            if (interactive) {
                answers = answers_from_questionnaire(run_questionnaire(in, out));
            } else {
                answers = answers_from_json(read_json_file(answers_file));
            }
            GoalModel model = project.customize(answers);
            print_customized(model, out);
            return kExitOk;
        }

        if (*prof) {
            DatasetDescriptor desc;
            desc.source = csv_path;
            desc.name = dataset_name.empty() ? fs::path(csv_path).stem().string() : dataset_name;
            desc.target = target;
            desc.protected_attributes = split_csv_list(protected_list);
            desc.preprocessing_complete = preprocessed;
            if (!spec_file.empty()) {
                desc.problem = problem_from_json(read_json_file(spec_file));
            } else if (auto a = project.load_answers()) {
                desc.problem = a->problem;
            } else {
                throw ProjectError("project is not customized; run customize first or pass --spec");
            }
            if (!valid_artifact_name(desc.name)) throw ProjectError("invalid dataset name '" + desc.name + "'");
            const DatasetProfile p = profile(ingest_csv(desc), desc);
            project.save_profile(p);
            out << dump(to_json(p));
            return kExitOk;
        }

        if (*eval) {
            if (strategy_file.empty() && eval_dataset.empty()) {
                throw ProjectError("evaluate needs --strategy, --dataset, or both");
            }
            EvaluationRequest req;
            if (!strategy_file.empty()) req.strategy = strategy_from_json(read_json_file(strategy_file));
            if (!eval_dataset.empty()) {
                req.dataset = eval_dataset;
                if (req.strategy.name.empty()) req.strategy.name = eval_dataset;
            }
            const double threshold = project.threshold(eval_threshold);
            const EvaluationResult result = project.evaluate(req);
            Json j = to_json(result);
            j["applied_strategy"] = to_json(project.resolve_strategy(req));
            j["threshold"] = threshold;
            j["satisfied"] = result.satisfaction() >= threshold;
            out << dump(j);
            return result.satisfaction() >= threshold ? kExitOk : kExitUnsatisfied;
        }

        if (*cmp) {
            const std::vector<std::string> names = cmp_names.empty() ? project.result_names() : cmp_names;
            const SelectionDecision d = project.compare(names, project.threshold(cmp_threshold));
            out << dump(to_json(d));
            return d.selected ? kExitOk : kExitUnsatisfied;
        }

        if (*exp) {
            const GoalModel model = project.load_model();
            const auto picked = pick_result(project, export_dataset);
            std::string document;
            if (format == "dot") {
                if (!picked) throw ProjectError("no evaluation result to draw; pass --dataset");
                document = export_dot(model, project.load_result(*picked));
            } else {
                ReportInput input;
                input.model = &model;
                input.threshold = project.threshold(exp_threshold);
                input.answers = project.load_answers();
                input.decision = project.load_decision();
                if (picked) {
                    input.dataset = *picked;
                    input.result = project.load_result(*picked);
                    if (auto s = project.load_strategy(*picked)) {
                        for (const auto& [id, a] : s->assignments) {
                            if (const auto* m = std::get_if<KpiMeasurement>(&a)) input.kpi_measurements[id] = m->value;
                        }
                    }
                }
                document = render_report(input, *parse_report_format(format));
            }
            if (output_file.empty()) {
                out << document;
            } else {
                write_text_file(output_file, document);
            }
            return kExitOk;
        }

        if (*serve) {
            Service service(project);
            const int bound = service.bind(host, port);
            out << "serving " << project.root().string() << " on http://" << host << ":" << bound << "/api\n"
                << std::flush;
            g_serving.store(&service);
            auto previous_int = std::signal(SIGINT, stop_serving);
            auto previous_term = std::signal(SIGTERM, stop_serving);
            service.listen();
            std::signal(SIGINT, previous_int);
            std::signal(SIGTERM, previous_term);
            g_serving.store(nullptr);
            return kExitOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace drgm
