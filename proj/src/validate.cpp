#include "drgm/validate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace drgm {

namespace {

std::string format_number(double v) {
    std::string s = std::to_string(v);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

void check_cycles(const GoalModel& model, std::vector<Diagnostic>& out) {
    std::map<std::string, std::vector<std::string>> successors;
    std::set<std::string> known;
    for (const Element& e : model.elements) known.insert(e.id);
    for (const Link& l : model.links) {
        if (known.count(link_source(l)) && known.count(link_destination(l))) {
            successors[link_source(l)].push_back(link_destination(l));
        }
    }
    for (auto& [id, next] : successors) std::sort(next.begin(), next.end());

    enum class Mark { White, Grey, Black };
    std::map<std::string, Mark> mark;
    std::vector<std::string> stack;
    std::function<void(const std::string&)> visit = [&](const std::string& id) {
        mark[id] = Mark::Grey;
        stack.push_back(id);
        for (const std::string& next : successors[id]) {
            if (mark[next] == Mark::Grey) {
                auto start = std::find(stack.begin(), stack.end(), next);
                std::string path;
                for (auto it = start; it != stack.end(); ++it) path += *it + " -> ";
                path += next;
                out.push_back({next, rule::kCycle, "links form a cycle: " + path});
            } else if (mark[next] == Mark::White) {
                visit(next);
            }
        }
        stack.pop_back();
        mark[id] = Mark::Black;
    };
    for (const std::string& id : known) {
        if (mark[id] == Mark::White) visit(id);
    }
}

}  // namespace

std::vector<Diagnostic> validate(const GoalModel& model) {
    std::vector<Diagnostic> out;

    std::set<std::string> actor_ids;
    for (const Actor& a : model.actors) {
        if (!actor_ids.insert(a.id).second) {
            out.push_back({a.id, rule::kDuplicateId, "actor id '" + a.id + "' declared more than once"});
        }
    }

    std::set<std::string> element_ids;
    for (const Element& e : model.elements) {
        if (actor_ids.count(e.id) || !element_ids.insert(e.id).second) {
            out.push_back({e.id, rule::kDuplicateId, "id '" + e.id + "' declared more than once"});
        }
        if (!actor_ids.count(e.actor)) {
            out.push_back({e.id, rule::kUnknownActor, "element '" + e.id + "' belongs to unknown actor '" + e.actor + "'"});
        }
        if (e.kind == ElementKind::Kpi && !e.kpi) {
            out.push_back({e.id, rule::kKpiMissingDefinition, "KPI '" + e.id + "' has no (worst, threshold, target) definition"});
        }
        if (e.kind != ElementKind::Kpi && e.kpi) {
            out.push_back({e.id, rule::kKpiOnNonKpi, "element '" + e.id + "' carries a KPI definition but is not a KPI"});
        }
        if (e.kpi && !e.kpi->monotone()) {
            out.push_back({e.id, rule::kNonMonotoneKpi,
                           "KPI '" + e.id + "' anchors (" + format_number(e.kpi->worst) + ", " +
                               format_number(e.kpi->threshold) + ", " + format_number(e.kpi->target) +
                               ") are not strictly monotone"});
        }
    }

    std::map<std::string, std::set<std::size_t>> incoming_kinds;
    std::set<std::tuple<std::string, std::string>> seen_pairs;
    for (const Link& l : model.links) {
        const std::string id = link_id(l);
        const std::string& src = link_source(l);
        const std::string& dst = link_destination(l);
        for (const std::string* end : {&src, &dst}) {
            if (!element_ids.count(*end)) {
                out.push_back({id, rule::kDanglingReference, "link '" + id + "' refers to undeclared element '" + *end + "'"});
            }
        }
        if (src == dst) {
            out.push_back({id, rule::kSelfLink, "link '" + id + "' connects an element to itself"});
        }
        if (!seen_pairs.emplace(src, dst).second) {
            out.push_back({id, rule::kDuplicateLink, "more than one link from '" + src + "' to '" + dst + "'"});
        }
        const auto* d = std::get_if<Decomposition>(&l);
        incoming_kinds[dst].insert(d ? (d->type == DecompositionType::And ? 1 : 2) : 0);
        if (const Element* e = model.find(dst); e && e->kind == ElementKind::Kpi) {
            out.push_back({dst, rule::kKpiNotLeaf, "KPI must be a leaf: '" + dst + "' receives link '" + id + "'"});
        }
    }
    for (const auto& [dst, kinds] : incoming_kinds) {
        if (kinds.size() > 1) {
            out.push_back({dst, rule::kMixedIncoming,
                           "'" + dst + "' mixes incoming link kinds (contribution, AND, OR)"});
        }
    }

    check_cycles(model, out);
    return out;
}

}  // namespace drgm
