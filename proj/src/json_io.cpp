#include "drgm/json_io.hpp"

#include "drgm/dsl.hpp"

#include <cmath>

namespace drgm {

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

/// Collects every missing or mistyped field before throwing.
class FieldReader {
public:
    FieldReader(const Json& j, std::string what) : j_(j), what_(std::move(what)) {
        if (!j_.is_object()) throw JsonFormatError(what_ + ": expected a JSON object");
    }

    const Json* get(const char* key, Json::value_t type, bool required = true) {
        auto it = j_.find(key);
        if (it == j_.end() || it->is_null()) {
            if (required) problems_.push_back(std::string("missing field '") + key + "'");
            return nullptr;
        }
        bool ok = it->type() == type;
        if (type == Json::value_t::number_float) ok = it->is_number();
        if (type == Json::value_t::number_integer) ok = it->is_number_integer();
        if (!ok) {
            problems_.push_back(std::string("field '") + key + "' has the wrong type");
            return nullptr;
        }
        return &*it;
    }

    void problem(std::string text) { problems_.push_back(std::move(text)); }

    void finish() const {
        if (problems_.empty()) return;
        std::string msg = what_ + ": ";
        for (std::size_t i = 0; i < problems_.size(); ++i) msg += (i ? "; " : "") + problems_[i];
        throw JsonFormatError(msg);
    }

private:
    const Json& j_;
    std::string what_;
    std::vector<std::string> problems_;
};

constexpr auto kString = Json::value_t::string;
constexpr auto kNumber = Json::value_t::number_float;
constexpr auto kInt = Json::value_t::number_integer;
constexpr auto kBool = Json::value_t::boolean;
constexpr auto kObject = Json::value_t::object;
constexpr auto kArray = Json::value_t::array;

Json element_json(const Element& e) {
    Json j;
    j["id"] = e.id;
    j["name"] = e.name;
    j["kind"] = to_string(e.kind);
    j["importance"] = to_string(e.importance);
    j["effective_importance"] = to_string(e.effective_importance());
    j["actor"] = e.actor;
    j["applicable"] = e.applicable;
    j["kpi"] = e.kpi ? to_json(*e.kpi) : Json(nullptr);
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

}  // namespace

Json to_json(const KpiDefinition& kpi) {
    return {{"worst", kpi.worst}, {"threshold", kpi.threshold}, {"target", kpi.target}, {"unit", kpi.unit}};
}

Json to_json(const GoalModel& model) {
    Json j;
    j["name"] = model.name;
    j["version"] = model.version;
    j["stage"] = to_string(model.stage);
    j["fingerprint"] = model_fingerprint(model);
    Json actors = Json::array();
    for (const Actor& a : model.actors) actors.push_back({{"id", a.id}, {"name", a.name}});
    j["actors"] = actors;
    std::vector<const Element*> elements;
    for (const Element& e : model.elements) elements.push_back(&e);
    std::sort(elements.begin(), elements.end(), [](const Element* a, const Element* b) { return a->id < b->id; });
    Json ej = Json::array();
    for (const Element* e : elements) ej.push_back(element_json(*e));
    j["elements"] = ej;
    Json links = Json::array();
    for (const Link& l : model.links) {
        Json lj;
        lj["id"] = link_id(l);
        lj["source"] = link_source(l);
        lj["destination"] = link_destination(l);
        if (const auto* c = std::get_if<Contribution>(&l)) {
            lj["type"] = "contribution";
            lj["level"] = c->level.to_string();
            lj["value"] = c->level.value();
        } else {
            lj["type"] = "decomposition";
            lj["decomposition"] = std::get<Decomposition>(l).type == DecompositionType::And ? "and" : "or";
        }
        links.push_back(lj);
    }
    j["links"] = links;
    j["dsl"] = print_model(model);
    return j;
}

Json assignments_to_json(const std::map<std::string, Assignment>& assignments) {
    Json j = Json::object();
    for (const auto& [id, a] : assignments) {
        if (const auto* v = std::get_if<SatisfactionValue>(&a)) {
            j[id] = {{"value", v->value}};
        } else {
            j[id] = {{"measure", std::get<KpiMeasurement>(a).value}};
        }
    }
    return j;
}

std::map<std::string, Assignment> assignments_from_json(const Json& j) {
    if (!j.is_object()) throw JsonFormatError("assignments: expected a JSON object");
    std::map<std::string, Assignment> out;
    std::vector<std::string> problems;
    for (const auto& [id, v] : j.items()) {
        if (v.is_object() && v.size() == 1 && v.contains("value") && v["value"].is_number_integer()) {
            out[id] = SatisfactionValue{v["value"].get<int>()};
        } else if (v.is_object() && v.size() == 1 && v.contains("measure") && v["measure"].is_number()) {
            out[id] = KpiMeasurement{v["measure"].get<double>()};
        } else {
            problems.push_back("'" + id + "' must be {\"value\": integer} or {\"measure\": number}");
        }
    }
    if (!problems.empty()) {
        std::string msg = "assignments: ";
        for (std::size_t i = 0; i < problems.size(); ++i) msg += (i ? "; " : "") + problems[i];
        throw JsonFormatError(msg);
    }
    return out;
}

Json to_json(const EvaluationStrategy& strategy) {
    Json na = Json::array();
    for (const std::string& id : strategy.not_applicable) na.push_back(id);
    return {{"name", strategy.name}, {"assign", assignments_to_json(strategy.assignments)}, {"na", na}};
}

EvaluationStrategy strategy_from_json(const Json& j) {
    FieldReader r(j, "strategy");
    EvaluationStrategy s;
    if (const Json* name = r.get("name", kString)) s.name = name->get<std::string>();
    const Json* assign = r.get("assign", kObject);
    const Json* na = r.get("na", kArray, false);
    if (na) {
        for (const Json& id : *na) {
            if (!id.is_string()) r.problem("'na' must list element ids");
            else s.not_applicable.insert(id.get<std::string>());
        }
    }
    r.finish();
    s.assignments = assignments_from_json(*assign);
    return s;
}

Json to_json(const EvaluationResult& result) {
    Json elements = Json::object();
    for (const auto& [id, v] : result.elements) elements[id] = v;
    Json actors = Json::object();
    for (const auto& [id, v] : result.actors) actors[id] = v;
    return {{"strategy", result.strategy},       {"model_version", result.model_version},
            {"primary_actor", result.primary_actor}, {"satisfaction", result.satisfaction()},
            {"actors", actors},                  {"elements", elements}};
}

EvaluationResult result_from_json(const Json& j) {
    FieldReader r(j, "result");
    EvaluationResult res;
    if (const Json* v = r.get("strategy", kString)) res.strategy = v->get<std::string>();
    if (const Json* v = r.get("model_version", kString)) res.model_version = v->get<std::string>();
    if (const Json* v = r.get("primary_actor", kString)) res.primary_actor = v->get<std::string>();
    for (const char* key : {"actors", "elements"}) {
        const Json* map = r.get(key, kObject);
        if (!map) continue;
        auto& target = std::string_view(key) == "actors" ? res.actors : res.elements;
        for (const auto& [id, v] : map->items()) {
            if (!v.is_number()) r.problem(std::string(key) + " entry '" + id + "' must be a number");
            else target[id] = v.get<double>();
        }
    }
    r.finish();
    return res;
}

Json to_json(const CustomizationAnswers& a) {
    Json problem;
    problem["kind"] = to_string(a.problem.kind);
    problem["num_classes"] = a.problem.num_classes;
    problem["num_features"] = a.problem.num_features;
    problem["season_length"] = a.problem.season_length;
    problem["season_unit"] = a.problem.season_unit;
    problem["expert_size_kpi"] = a.problem.expert_size_kpi ? to_json(*a.problem.expert_size_kpi) : Json(nullptr);
    Json dims = Json::array();
    for (auto d : a.context.representativeness_dimensions) dims.push_back(to_string(d));
    Json context = {{"involves_human_subjects", a.context.involves_human_subjects},
                    {"impacts_human_lives", a.context.impacts_human_lives},
                    {"data_sensitivity", to_string(a.context.data_sensitivity)},
                    {"update_frequency", to_string(a.context.update_frequency)},
                    {"eu_jurisdiction", a.context.eu_jurisdiction},
                    {"representativeness_dimensions", dims},
                    {"domain_legal_constraints", a.context.domain_legal_constraints}};
    return {{"problem", problem}, {"context", context}};
}

namespace {

KpiDefinition kpi_from_json(const Json& j, const std::string& what) {
    FieldReader r(j, what);
    KpiDefinition k;
    if (const Json* v = r.get("worst", kNumber)) k.worst = v->get<double>();
    if (const Json* v = r.get("threshold", kNumber)) k.threshold = v->get<double>();
    if (const Json* v = r.get("target", kNumber)) k.target = v->get<double>();
    if (const Json* v = r.get("unit", kString, false)) k.unit = v->get<std::string>();
    r.finish();
    return k;
}

}  // namespace

MLProblemSpec problem_from_json(const Json& j) {
    MLProblemSpec spec;
    FieldReader p(j, "problem");
    if (const Json* v = p.get("kind", kString)) {
        auto kind = parse_problem_kind(v->get<std::string>());
        if (!kind) p.problem("unknown problem kind '" + v->get<std::string>() + "'");
        else spec.kind = *kind;
    }
    if (const Json* v = p.get("num_classes", kInt, false)) spec.num_classes = v->get<int>();
    if (const Json* v = p.get("num_features", kInt, false)) spec.num_features = v->get<int>();
    if (const Json* v = p.get("season_length", kInt, false)) spec.season_length = v->get<int>();
    if (const Json* v = p.get("season_unit", kString, false)) spec.season_unit = v->get<std::string>();
    const Json* expert = p.get("expert_size_kpi", kObject, false);
    p.finish();
    if (expert) spec.expert_size_kpi = kpi_from_json(*expert, "problem.expert_size_kpi");
    return spec;
}

CustomizationAnswers answers_from_json(const Json& j) {
    FieldReader top(j, "answers");
    const Json* pj = top.get("problem", kObject);
    const Json* cj = top.get("context", kObject);
    top.finish();

    CustomizationAnswers a;
    a.problem = problem_from_json(*pj);

    FieldReader c(*cj, "answers.context");
    if (const Json* v = c.get("involves_human_subjects", kBool)) a.context.involves_human_subjects = v->get<bool>();
    if (const Json* v = c.get("impacts_human_lives", kBool)) a.context.impacts_human_lives = v->get<bool>();
    if (const Json* v = c.get("data_sensitivity", kString)) {
        auto s = parse_sensitivity(v->get<std::string>());
        if (!s) c.problem("unknown data sensitivity '" + v->get<std::string>() + "'");
        else a.context.data_sensitivity = *s;
    }
    if (const Json* v = c.get("update_frequency", kString)) {
        auto f = parse_update_frequency(v->get<std::string>());
        if (!f) c.problem("unknown update frequency '" + v->get<std::string>() + "'");
        else a.context.update_frequency = *f;
    }
    if (const Json* v = c.get("eu_jurisdiction", kBool, false)) a.context.eu_jurisdiction = v->get<bool>();
    if (const Json* v = c.get("representativeness_dimensions", kArray, false)) {
        for (const Json& d : *v) {
            auto dim = d.is_string() ? parse_dimension(d.get<std::string>()) : std::nullopt;
            if (!dim) c.problem("unknown representativeness dimension " + d.dump());
            else a.context.representativeness_dimensions.insert(*dim);
        }
    }
    if (const Json* v = c.get("domain_legal_constraints", kBool)) a.context.domain_legal_constraints = v->get<bool>();
    c.finish();
    return a;
}

Json to_json(const DatasetProfile& p) {
    Json j;
    j["dataset"] = p.dataset;
    j["target"] = p.target;
    j["problem_kind"] = to_string(p.problem_kind);
    j["preprocessing_complete"] = p.preprocessing_complete;
    j["row_count"] = p.row_count;
    j["size_measure"] = p.size_measure;
    j["size_unit"] = p.size_unit;
    Json missing = Json::object();
    for (const auto& [col, f] : p.column_missing) missing[col] = round6(f);
    j["column_missing"] = missing;
    j["missing_fraction"] = round6(p.missing_fraction);
    j["duplicate_fraction"] = round6(p.duplicate_fraction);
    Json counts = Json::object();
    for (const auto& [label, n] : p.class_counts) counts[label] = n;
    j["class_counts"] = counts;
    j["balancedness_percent"] = p.balancedness_percent ? Json(*p.balancedness_percent) : Json(nullptr);
    j["shapiro"] = p.shapiro ? Json{{"w", p.shapiro->w}, {"p_value", p.shapiro->p_value}} : Json(nullptr);
    j["notes"] = p.notes;
    return j;
}

DatasetProfile profile_from_json(const Json& j) {
    FieldReader r(j, "profile");
    DatasetProfile p;
    if (const Json* v = r.get("dataset", kString)) p.dataset = v->get<std::string>();
    if (const Json* v = r.get("target", kString)) p.target = v->get<std::string>();
    if (const Json* v = r.get("problem_kind", kString)) {
        auto kind = parse_problem_kind(v->get<std::string>());
        if (!kind) r.problem("unknown problem kind '" + v->get<std::string>() + "'");
        else p.problem_kind = *kind;
    }
    if (const Json* v = r.get("preprocessing_complete", kBool)) p.preprocessing_complete = v->get<bool>();
    if (const Json* v = r.get("row_count", kInt)) p.row_count = v->get<std::size_t>();
    if (const Json* v = r.get("size_measure", kNumber)) p.size_measure = v->get<double>();
    if (const Json* v = r.get("size_unit", kString, false)) p.size_unit = v->get<std::string>();
    if (const Json* v = r.get("column_missing", kObject, false)) {
        for (const auto& [col, f] : v->items()) {
            if (f.is_number()) p.column_missing[col] = f.get<double>();
            else r.problem("column_missing entry '" + col + "' must be a number");
        }
    }
    if (const Json* v = r.get("missing_fraction", kNumber, false)) p.missing_fraction = v->get<double>();
    if (const Json* v = r.get("duplicate_fraction", kNumber, false)) p.duplicate_fraction = v->get<double>();
    if (const Json* v = r.get("class_counts", kObject, false)) {
        for (const auto& [label, n] : v->items()) {
            if (n.is_number_unsigned()) p.class_counts[label] = n.get<std::size_t>();
            else r.problem("class_counts entry '" + label + "' must be a non-negative integer");
        }
    }
    if (const Json* v = r.get("balancedness_percent", kNumber, false)) p.balancedness_percent = v->get<double>();
    if (const Json* v = r.get("shapiro", kObject, false)) {
        if (v->contains("w") && (*v)["w"].is_number() && v->contains("p_value") && (*v)["p_value"].is_number()) {
            p.shapiro = ShapiroWilkResult{(*v)["w"].get<double>(), (*v)["p_value"].get<double>()};
        } else {
            r.problem("shapiro must have numeric 'w' and 'p_value'");
        }
    }
    if (const Json* v = r.get("notes", kArray, false)) {
        for (const Json& n : *v) {
            if (n.is_string()) p.notes.push_back(n.get<std::string>());
        }
    }
    r.finish();
    return p;
}

Json to_json(const SelectionDecision& d) {
    Json sat = Json::object();
    for (const auto& [name, s] : d.satisfaction) sat[name] = s;
    return {{"satisfaction", sat},
            {"threshold", d.threshold},
            {"selected", d.selected ? Json(*d.selected) : Json(nullptr)},
            {"tied", d.tied},
            {"recommendation", d.recommendation}};
}

SelectionDecision decision_from_json(const Json& j) {
    FieldReader r(j, "decision");
    SelectionDecision d;
    if (const Json* v = r.get("satisfaction", kObject)) {
        for (const auto& [name, s] : v->items()) {
            if (s.is_number()) d.satisfaction[name] = s.get<double>();
            else r.problem("satisfaction entry '" + name + "' must be a number");
        }
    }
    if (const Json* v = r.get("threshold", kNumber)) d.threshold = v->get<double>();
    if (const Json* v = r.get("selected", kString, false)) d.selected = v->get<std::string>();
    if (const Json* v = r.get("tied", kArray, false)) {
        for (const Json& n : *v) {
            if (n.is_string()) d.tied.push_back(n.get<std::string>());
        }
    }
    if (const Json* v = r.get("recommendation", kString)) d.recommendation = v->get<std::string>();
    r.finish();
    return d;
}

Json to_json(const std::vector<Question>& questions) {
    Json arr = Json::array();
    for (const Question& q : questions) {
        Json j;
        j["id"] = q.id;
        j["prompt"] = q.prompt;
        j["rationale"] = q.rationale;
        j["type"] = to_string(q.type);
        j["options"] = q.options;
        j["target"] = q.target;
        j["order"] = q.order;
        j["when"] = q.when ? Json{{"question", q.when->question}, {"any_of", q.when->any_of}} : Json(nullptr);
        j["minimum"] = q.minimum ? Json(*q.minimum) : Json(nullptr);
        arr.push_back(j);
    }
    return arr;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace drgm
