#include "drgm/reporting.hpp"

#include "drgm/builtin.hpp"
#include "drgm/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace drgm {

namespace {

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string shortest(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

SelectionDecision compare(const std::map<std::string, EvaluationResult>& results, double threshold) {
    if (results.empty()) throw ReportError("nothing to compare: no evaluated datasets");
    std::set<std::string> versions;
    for (const auto& [name, result] : results) versions.insert(result.model_version);
    if (versions.size() > 1) {
        std::string list;
        for (const std::string& v : versions) list += (list.empty() ? "" : ", ") + v;
        throw ReportError("datasets were evaluated against different model versions: " + list);
    }

    SelectionDecision decision;
    decision.threshold = threshold;
    std::optional<double> best;
    for (const auto& [name, result] : results) {
        const double s = result.satisfaction();
        decision.satisfaction[name] = s;
        if (s < threshold) continue;
        // Names iterate in lexicographic order, so the first maximum wins ties.
        if (!best || s > *best) {
            best = s;
            decision.selected = name;
            decision.tied = {name};
        } else if (s == *best) {
            decision.tied.push_back(name);
        }
    }

    const std::string t = shortest(threshold);
    if (decision.selected) {
        decision.recommendation = "Select dataset '" + *decision.selected + "': satisfaction " + fixed2(*best) +
                                  " meets the threshold of " + t + " and is the highest among the candidates.";
        if (decision.tied.size() > 1) {
            std::string list;
            for (const std::string& n : decision.tied) list += (list.empty() ? "" : ", ") + n;
            decision.recommendation += " Tie between " + list + " broken by name.";
        }
    } else {
        decision.recommendation = "No dataset satisfies the Data actor at the threshold of " + t + "; " +
                                  std::string(kNoneSatisfiesAdvice) + ".";
    }
    return decision;
}

ColorBucket color_bucket(double value) {
    if (value < 30.0) return ColorBucket::Red;
    if (value < 70.0) return ColorBucket::Yellow;
    return ColorBucket::Green;
}

std::string_view fill_color(ColorBucket bucket) {
    switch (bucket) {
        case ColorBucket::Red: return "#f4a7a3";
        case ColorBucket::Yellow: return "#fce8a1";
        case ColorBucket::Green: return "#b7e1a1";
    }
    return "#ffffff";
}

std::string_view to_string(ColorBucket bucket) {
    switch (bucket) {
        case ColorBucket::Red: return "red";
        case ColorBucket::Yellow: return "yellow";
        case ColorBucket::Green: return "green";
    }
    return "green";
}

namespace {

std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string_view dot_shape(ElementKind kind) {
    switch (kind) {
        case ElementKind::Goal: return "box";
        case ElementKind::Softgoal: return "ellipse";
        case ElementKind::Task: return "hexagon";
        case ElementKind::Kpi: return "parallelogram";
    }
    return "ellipse";
}

}  // namespace

std::string export_dot(const GoalModel& model, const EvaluationResult& result) {
    std::ostringstream out;
    out << "digraph \"" << dot_escape(model.name) << "\" {\n";
    out << "  rankdir=BT;\n";
    out << "  node [style=filled, fontname=\"Helvetica\"];\n";
    out << "  edge [fontname=\"Helvetica\", fontsize=10];\n";
    for (const Actor& actor : model.actors) {
        out << "  subgraph \"cluster_" << dot_escape(actor.id) << "\" {\n";
        out << "    label=\"" << dot_escape(actor.name);
        if (auto it = result.actors.find(actor.id); it != result.actors.end()) out << "\\n" << fixed2(it->second);
        out << "\";\n";
        std::vector<const Element*> members;
        for (const Element& e : model.elements) {
            if (e.actor == actor.id) members.push_back(&e);
        }
        std::sort(members.begin(), members.end(), [](const Element* a, const Element* b) { return a->id < b->id; });
        for (const Element* e : members) {
            auto it = result.elements.find(e->id);
            const double value = it == result.elements.end() ? 0.0 : it->second;
            out << "    \"" << dot_escape(e->id) << "\" [label=\"" << dot_escape(e->name) << "\\n" << fixed2(value);
            if (!e->applicable) out << " (n/a)";
            out << "\", shape=" << dot_shape(e->kind) << ", fillcolor=\"" << fill_color(color_bucket(value)) << "\"];\n";
        }
        out << "  }\n";
    }
    std::vector<const Link*> links;
    for (const Link& l : model.links) links.push_back(&l);
    std::sort(links.begin(), links.end(), [](const Link* a, const Link* b) {
        return std::tie(link_destination(*a), link_source(*a)) < std::tie(link_destination(*b), link_source(*b));
    });
    for (const Link* l : links) {
        out << "  \"" << dot_escape(link_source(*l)) << "\" -> \"" << dot_escape(link_destination(*l)) << "\"";
        if (const auto* c = std::get_if<Contribution>(l)) {
            out << " [style=dashed, label=\"" << c->level.to_string() << "\"];\n";
        } else {
            const auto& d = std::get<Decomposition>(*l);
            out << " [style=solid, arrowhead=" << (d.type == DecompositionType::And ? "tee" : "empty") << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "md" || text == "markdown") return ReportFormat::Markdown;
    return std::nullopt;
}

std::vector<std::string> weak_areas(const GoalModel& model, const EvaluationResult& result, double threshold) {
    std::vector<std::pair<double, std::string>> weak;
    for (const Category& cat : categories()) {
        for (std::size_t i = 0; i < cat.count; ++i) {
            const Element* e = model.find(cat.subgoals[i]);
            if (!e || e->effective_importance() == Importance::None) continue;
            auto it = result.elements.find(e->id);
            if (it != result.elements.end() && it->second < threshold) weak.emplace_back(it->second, e->id);
        }
    }
    std::sort(weak.begin(), weak.end());
    std::vector<std::string> out;
    for (auto& [value, id] : weak) out.push_back(id);
    return out;
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<std::pair<std::string, std::string>> answer_rows(const CustomizationAnswers& a) {
    std::vector<std::pair<std::string, std::string>> rows;
    rows.emplace_back("ML problem kind", std::string(to_string(a.problem.kind)));
    if (is_classification(a.problem.kind)) rows.emplace_back("Classes", std::to_string(a.problem.num_classes));
    rows.emplace_back("Features", std::to_string(a.problem.num_features));
    if (a.problem.kind == ProblemKind::TimeSeriesSeasonal) {
        rows.emplace_back("Season length", std::to_string(a.problem.season_length) + " data points");
        rows.emplace_back("Season unit", a.problem.season_unit);
    }
    rows.emplace_back("Update frequency", std::string(to_string(a.context.update_frequency)));
    rows.emplace_back("Human subjects", yes_no(a.context.involves_human_subjects));
    rows.emplace_back("EU jurisdiction", yes_no(a.context.eu_jurisdiction));
    rows.emplace_back("Data sensitivity", std::string(to_string(a.context.data_sensitivity)));
    rows.emplace_back("Impacts human lives", yes_no(a.context.impacts_human_lives));
    std::string dims;
    for (auto d : a.context.representativeness_dimensions) dims += (dims.empty() ? "" : ", ") + std::string(to_string(d));
    rows.emplace_back("Representativeness dimensions", dims.empty() ? "none" : dims);
    rows.emplace_back("Domain legal constraints", yes_no(a.context.domain_legal_constraints));
    return rows;
}

std::string markdown_report(const ReportInput& in) {
    const GoalModel& model = *in.model;
    std::ostringstream out;
    out << "# Dataset Readiness Report";
    if (!in.dataset.empty()) out << ": " << in.dataset;
    out << "\n\n## Summary\n\n";
    out << "- Model: " << model.name << " (version " << (model.version.empty() ? "-" : model.version)
        << ", stage " << to_string(model.stage) << ")\n";
    out << "- Threshold: " << shortest(in.threshold) << "\n";
    if (in.result) {
        const double s = in.result->satisfaction();
        out << "- Strategy: " << in.result->strategy << "\n";
        out << "- Data actor satisfaction: " << fixed2(s) << " ("
            << (s >= in.threshold ? "satisfied" : "not satisfied") << ")\n";
        auto weak = weak_areas(model, *in.result, in.threshold);
        out << "- Weak areas: ";
        if (weak.empty()) out << "none";
        for (std::size_t i = 0; i < weak.size(); ++i) {
            out << (i ? ", " : "") << model.at(weak[i]).name << " (" << fixed2(in.result->elements.at(weak[i])) << ")";
        }
        out << "\n";
    }

    out << "\n## Customization\n\n";
    if (in.answers) {
        out << "| Question | Answer |\n|---|---|\n";
        for (const auto& [q, a] : answer_rows(*in.answers)) out << "| " << q << " | " << a << " |\n";
    } else {
        out << "No customization answers recorded.\n";
    }

    out << "\n## KPIs\n\n";
    out << "| KPI | Worst | Threshold | Target | Unit | Measured | Satisfaction |\n|---|---|---|---|---|---|---|\n";
    for (const Element& e : model.elements) {
        if (e.kind != ElementKind::Kpi || !e.kpi) continue;
        out << "| " << e.name << " | " << shortest(e.kpi->worst) << " | " << shortest(e.kpi->threshold) << " | "
            << shortest(e.kpi->target) << " | " << e.kpi->unit << " | ";
        auto m = in.kpi_measurements.find(e.id);
        out << (m != in.kpi_measurements.end() ? shortest(m->second) : std::string("-")) << " | ";
        if (!e.applicable) {
            out << "n/a";
        } else if (in.result && in.result->elements.count(e.id)) {
            out << fixed2(in.result->elements.at(e.id));
        } else {
            out << "-";
        }
        out << " |\n";
    }

    out << "\n## Goals by Category\n\n";
    for (const Category& cat : categories()) {
        const Element* goal = model.find(cat.goal);
        if (!goal) continue;
        out << "### " << goal->name << "\n\n| Goal | Importance | Satisfaction |\n|---|---|---|\n";
        auto row = [&](const Element& e) {
            out << "| " << e.name << " | " << to_string(e.effective_importance()) << " | ";
            if (!e.applicable) out << "n/a (100.00)";
            else if (in.result && in.result->elements.count(e.id)) out << fixed2(in.result->elements.at(e.id));
            else out << "-";
            out << " |\n";
        };
        row(*goal);
        for (std::size_t i = 0; i < cat.count; ++i) {
            if (const Element* sub = model.find(cat.subgoals[i])) row(*sub);
        }
        out << "\n";
    }

    out << "## Verdict\n\n";
    if (in.decision) {
        out << "| Dataset | Satisfaction |\n|---|---|\n";
        for (const auto& [name, s] : in.decision->satisfaction) {
            out << "| " << name << (in.decision->selected == name ? " (selected)" : "") << " | " << fixed2(s) << " |\n";
        }
        out << "\n" << in.decision->recommendation << "\n";
    } else if (in.result) {
        const double s = in.result->satisfaction();
        if (s >= in.threshold) {
            out << "The dataset satisfies the Data actor (" << fixed2(s) << " >= " << shortest(in.threshold) << ").\n";
        } else {
            out << "The dataset does not satisfy the Data actor (" << fixed2(s) << " < " << shortest(in.threshold)
                << "): " << kNoneSatisfiesAdvice << ".\n";
        }
    } else {
        out << "No evaluation available.\n";
    }
    return out.str();
}

Json json_report(const ReportInput& in) {
    const GoalModel& model = *in.model;
    Json j;
    j["dataset"] = in.dataset;
    j["model"] = {{"name", model.name}, {"version", model.version}, {"stage", to_string(model.stage)},
                  {"fingerprint", model_fingerprint(model)}};
    j["threshold"] = in.threshold;
    j["answers"] = in.answers ? to_json(*in.answers) : Json(nullptr);
    j["result"] = in.result ? to_json(*in.result) : Json(nullptr);
    j["decision"] = in.decision ? to_json(*in.decision) : Json(nullptr);
    Json kpis = Json::object();
    for (const Element& e : model.elements) {
        if (e.kind != ElementKind::Kpi || !e.kpi) continue;
        Json k = to_json(*e.kpi);
        k["applicable"] = e.applicable;
        auto m = in.kpi_measurements.find(e.id);
        k["measured"] = m != in.kpi_measurements.end() ? Json(m->second) : Json(nullptr);
        kpis[e.id] = k;
    }
    j["kpis"] = kpis;
    Json cats = Json::array();
    for (const Category& cat : categories()) {
        if (!model.find(cat.goal)) continue;
        Json c;
        c["goal"] = cat.goal;
        Json subs = Json::array();
        for (std::size_t i = 0; i < cat.count; ++i) {
            if (model.find(cat.subgoals[i])) subs.push_back(cat.subgoals[i]);
        }
        c["subgoals"] = subs;
        cats.push_back(c);
    }
    j["categories"] = cats;
    if (in.result) {
        Json weak = Json::array();
        for (const std::string& id : weak_areas(model, *in.result, in.threshold)) weak.push_back(id);
        j["weak_areas"] = weak;
    }
    return j;
}

}  // namespace

std::string render_report(const ReportInput& input, ReportFormat format) {
    if (!input.model) throw ReportError("report needs a model");
    if (format == ReportFormat::Markdown) return markdown_report(input);
    return dump(json_report(input));
}

}  // namespace drgm
