#include "drgm/evaluation.hpp"

#include "drgm/dsl.hpp"
#include "drgm/validate.hpp"

#include <algorithm>

namespace drgm {

double normalize_kpi(double measured, const KpiDefinition& kpi) {
    if (measured == kpi.threshold) return 50.0;
    const bool up = kpi.increasing();
    // a is no better than b in the direction of improvement.
    auto no_better = [up](double a, double b) { return up ? a <= b : a >= b; };
    if (no_better(measured, kpi.worst)) return 0.0;
    if (no_better(kpi.target, measured)) return 100.0;
    if (no_better(measured, kpi.threshold)) return 50.0 * (measured - kpi.worst) / (kpi.threshold - kpi.worst);
    return 50.0 + 50.0 * (measured - kpi.threshold) / (kpi.target - kpi.threshold);
}

GoalModel apply_not_applicable(const GoalModel& model, const std::set<std::string>& leaf_ids) {
    GoalModel out = model;
    for (const std::string& id : leaf_ids) {
        Element* e = out.find(id);
        if (!e) throw EvaluationError("cannot flag unknown element '" + id + "' as not applicable");
        if (!out.is_leaf(id)) throw EvaluationError("cannot flag '" + id + "' as not applicable: it is not a leaf");
        e->applicable = false;
    }
    std::erase_if(out.links, [&](const Link& l) {
        const auto* c = std::get_if<Contribution>(&l);
        if (!c || c->level.value() >= 0) return false;
        const Element* source = out.find(c->source);
        return source && !source->applicable;
    });
    return out;
}

double EvaluationResult::satisfaction() const {
    auto it = actors.find(primary_actor);
    if (it == actors.end()) throw EvaluationError("result has no satisfaction for actor '" + primary_actor + "'");
    return it->second;
}

const Actor& primary_actor(const GoalModel& model) {
    if (model.actors.empty()) throw EvaluationError("model declares no actors");
    for (const Actor& a : model.actors) {
        if (a.name == "Data") return a;
    }
    return model.actors.front();
}

namespace {

void check_strategy(const GoalModel& model, const EvaluationStrategy& strategy) {
    for (const auto& [id, assignment] : strategy.assignments) {
        const Element* e = model.find(id);
        if (!e) throw EvaluationError("strategy '" + strategy.name + "' assigns unknown element '" + id + "'");
        if (!model.is_leaf(id)) {
            throw EvaluationError("strategy '" + strategy.name + "' assigns '" + id + "', which is not a leaf");
        }
        if (e->kind == ElementKind::Kpi && !std::holds_alternative<KpiMeasurement>(assignment)) {
            throw EvaluationError("KPI '" + id + "' takes a measurement, not a satisfaction value");
        }
        if (e->kind != ElementKind::Kpi) {
            const auto* sv = std::get_if<SatisfactionValue>(&assignment);
            if (!sv) throw EvaluationError("'" + id + "' is not a KPI and takes a satisfaction value, not a measurement");
            if (sv->value < 0 || sv->value > 100) {
                throw EvaluationError("satisfaction value " + std::to_string(sv->value) + " for '" + id +
                                      "' outside 0..100");
            }
        }
    }
    std::vector<std::string> uncovered;
    for (const Element& e : model.elements) {
        if (e.applicable && model.is_leaf(e.id) && !strategy.assignments.count(e.id)) uncovered.push_back(e.id);
    }
    if (!uncovered.empty()) {
        std::sort(uncovered.begin(), uncovered.end());
        std::string list;
        for (const std::string& id : uncovered) list += (list.empty() ? "" : ", ") + id;
        throw EvaluationError("strategy '" + strategy.name + "' leaves applicable leaves uncovered: " + list);
    }
}

}  // namespace

EvaluationResult evaluate(const GoalModel& input, const EvaluationStrategy& strategy) {
    if (auto diagnostics = validate(input); !diagnostics.empty()) throw ValidationError(std::move(diagnostics));
    const GoalModel model = apply_not_applicable(input, strategy.not_applicable);
    check_strategy(model, strategy);

    std::map<std::string, std::vector<const Link*>> incoming;
    for (const Link& l : model.links) incoming[link_destination(l)].push_back(&l);
    for (auto& [id, links] : incoming) {
        std::sort(links.begin(), links.end(),
                  [](const Link* a, const Link* b) { return link_source(*a) < link_source(*b); });
    }

    EvaluationResult result;
    result.strategy = strategy.name;
    result.model_version = input.version + "@" + model_fingerprint(input);
    result.primary_actor = primary_actor(model).id;

    for (const std::string& id : topological_order(model)) {
        const Element& e = model.at(id);
        double value = 0.0;
        auto in = incoming.find(id);
        if (!e.applicable) {
            value = 100.0;
        } else if (in == incoming.end()) {
            const Assignment& a = strategy.assignments.at(id);
            if (const auto* m = std::get_if<KpiMeasurement>(&a)) {
                value = normalize_kpi(m->value, *e.kpi);
            } else {
                value = std::get<SatisfactionValue>(a).value;
            }
        } else if (const auto* d = std::get_if<Decomposition>(in->second.front())) {
            value = d->type == DecompositionType::And ? 100.0 : 0.0;
            for (const Link* l : in->second) {
                const double child = result.elements.at(link_source(*l));
                value = d->type == DecompositionType::And ? std::min(value, child) : std::max(value, child);
            }
        } else {
            double sum = 0.0;
            for (const Link* l : in->second) {
                sum += result.elements.at(link_source(*l)) * std::get<Contribution>(*l).level.value() / 100.0;
            }
            value = std::clamp(sum, 0.0, 100.0);
        }
        result.elements[id] = value;
    }

    for (const Actor& actor : model.actors) {
        double weighted = 0.0;
        double total = 0.0;
        std::vector<const Element*> members;
        for (const Element& e : model.elements) {
            if (e.actor == actor.id) members.push_back(&e);
        }
        std::sort(members.begin(), members.end(), [](const Element* a, const Element* b) { return a->id < b->id; });
        for (const Element* e : members) {
            const int w = importance_weight(e->effective_importance());
            if (w == 0) continue;
            weighted += w * result.elements.at(e->id);
            total += w;
        }
        if (total == 0.0) throw EvaluationError("actor '" + actor.id + "' has no elements with non-zero importance");
        result.actors[actor.id] = weighted / total;
    }
    return result;
}

EvaluationResult what_if(const GoalModel& model, const EvaluationStrategy& strategy,
                         const std::map<std::string, Assignment>& overrides) {
    EvaluationStrategy merged = strategy;
    for (const auto& [id, assignment] : overrides) {
        if (!model.find(id)) throw EvaluationError("what-if override for unknown element '" + id + "'");
        if (!model.is_leaf(id)) throw EvaluationError("what-if override for '" + id + "', which is not a leaf");
        merged.assignments[id] = assignment;
    }
    return evaluate(model, merged);
}

}  // namespace drgm
