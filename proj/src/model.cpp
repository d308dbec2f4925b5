#include "drgm/model.hpp"

#include "drgm/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <queue>
#include <set>

namespace drgm {

int importance_weight(Importance level) {
    switch (level) {
        case Importance::High: return 100;
        case Importance::Medium: return 50;
        case Importance::Low: return 25;
        case Importance::None: return 0;
    }
    return 0;
}

std::string_view to_string(ElementKind kind) {
    switch (kind) {
        case ElementKind::Goal: return "goal";
        case ElementKind::Softgoal: return "softgoal";
        case ElementKind::Task: return "task";
        case ElementKind::Kpi: return "kpi";
    }
    return "softgoal";
}

std::string_view to_string(Importance level) {
    switch (level) {
        case Importance::High: return "high";
        case Importance::Medium: return "medium";
        case Importance::Low: return "low";
        case Importance::None: return "none";
    }
    return "none";
}

std::optional<ElementKind> parse_element_kind(std::string_view text) {
    if (text == "goal") return ElementKind::Goal;
    if (text == "softgoal") return ElementKind::Softgoal;
    if (text == "task") return ElementKind::Task;
    if (text == "kpi") return ElementKind::Kpi;
    return std::nullopt;
}

std::optional<Importance> parse_importance(std::string_view text) {
    if (text == "high") return Importance::High;
    if (text == "medium") return Importance::Medium;
    if (text == "low") return Importance::Low;
    if (text == "none") return Importance::None;
    return std::nullopt;
}

bool KpiDefinition::monotone() const {
    return (worst < threshold && threshold < target) || (worst > threshold && threshold > target);
}

ContributionLevel ContributionLevel::numeric(int value) {
    if (value < -100 || value > 100) {
        throw Error("contribution level " + std::to_string(value) + " outside [-100, 100]");
    }
    ContributionLevel level;
    level.value_ = value;
    level.named_ = std::nullopt;
    return level;
}

std::string ContributionLevel::to_string() const {
    if (!named_) return std::to_string(value_);
    switch (*named_) {
        case Named::Make: return "make";
        case Named::Help: return "help";
        case Named::SomePositive: return "somepositive";
        case Named::Unknown: return "unknown";
        case Named::SomeNegative: return "somenegative";
        case Named::Hurt: return "hurt";
        case Named::Break: return "break";
    }
    return std::to_string(value_);
}

std::optional<ContributionLevel> ContributionLevel::parse(std::string_view text) {
    static const std::map<std::string_view, Named> names = {
        {"make", Named::Make},       {"help", Named::Help},
        {"somepositive", Named::SomePositive}, {"unknown", Named::Unknown},
        {"somenegative", Named::SomeNegative}, {"hurt", Named::Hurt},
        {"break", Named::Break},
    };
    if (auto it = names.find(text); it != names.end()) return ContributionLevel(it->second);
    int value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || value < -100 || value > 100) return std::nullopt;
    return numeric(value);
}

const std::string& link_source(const Link& link) {
    return std::visit(
        [](const auto& l) -> const std::string& {
            if constexpr (std::is_same_v<std::decay_t<decltype(l)>, Contribution>) {
                return l.source;
            } else {
                return l.child;
            }
        },
        link);
}

const std::string& link_destination(const Link& link) {
    return std::visit(
        [](const auto& l) -> const std::string& {
            if constexpr (std::is_same_v<std::decay_t<decltype(l)>, Contribution>) {
                return l.destination;
            } else {
                return l.parent;
            }
        },
        link);
}

std::string link_id(const Link& link) {
    const char* kind = std::holds_alternative<Contribution>(link) ? "contrib" : "decomp";
    return std::string(kind) + ":" + link_source(link) + "->" + link_destination(link);
}

std::string_view to_string(CustomizationStage stage) {
    switch (stage) {
        case CustomizationStage::Base: return "base";
        case CustomizationStage::ProblemType: return "problem_type";
        case CustomizationStage::Context: return "context";
    }
    return "base";
}

std::optional<CustomizationStage> parse_stage(std::string_view text) {
    if (text == "base") return CustomizationStage::Base;
    if (text == "problem_type") return CustomizationStage::ProblemType;
    if (text == "context") return CustomizationStage::Context;
    return std::nullopt;
}

const Element* GoalModel::find(std::string_view id) const {
    auto it = std::find_if(elements.begin(), elements.end(), [&](const Element& e) { return e.id == id; });
    return it == elements.end() ? nullptr : &*it;
}

Element* GoalModel::find(std::string_view id) {
    auto it = std::find_if(elements.begin(), elements.end(), [&](const Element& e) { return e.id == id; });
    return it == elements.end() ? nullptr : &*it;
}

const Element& GoalModel::at(std::string_view id) const {
    if (const Element* e = find(id)) return *e;
    throw Error("unknown element '" + std::string(id) + "'");
}

Element& GoalModel::at(std::string_view id) {
    if (Element* e = find(id)) return *e;
    throw Error("unknown element '" + std::string(id) + "'");
}

const Actor* GoalModel::find_actor(std::string_view id) const {
    auto it = std::find_if(actors.begin(), actors.end(), [&](const Actor& a) { return a.id == id; });
    return it == actors.end() ? nullptr : &*it;
}

bool GoalModel::is_leaf(std::string_view id) const {
    return std::none_of(links.begin(), links.end(), [&](const Link& l) { return link_destination(l) == id; });
}

std::vector<const Link*> GoalModel::incoming(std::string_view id) const {
    std::vector<const Link*> out;
    for (const Link& l : links) {
        if (link_destination(l) == id) out.push_back(&l);
    }
    return out;
}

namespace {

auto link_key(const Link& l) {
    return std::make_tuple(link_destination(l), link_source(l), l.index());
}

}  // namespace

bool GoalModel::structurally_equal(const GoalModel& other) const {
    if (name != other.name || version != other.version || stage != other.stage || actors != other.actors) {
        return false;
    }
    auto sorted_elements = [](std::vector<Element> v) {
        std::sort(v.begin(), v.end(), [](const Element& a, const Element& b) { return a.id < b.id; });
        return v;
    };
    auto sorted_links = [](std::vector<Link> v) {
        std::sort(v.begin(), v.end(), [](const Link& a, const Link& b) { return link_key(a) < link_key(b); });
        return v;
    };
    return sorted_elements(elements) == sorted_elements(other.elements) &&
           sorted_links(links) == sorted_links(other.links);
}

std::vector<std::string> topological_order(const GoalModel& model) {
    std::map<std::string, int> in_degree;
    std::map<std::string, std::vector<std::string>> successors;
    for (const Element& e : model.elements) in_degree[e.id];
    for (const Link& l : model.links) {
        ++in_degree[link_destination(l)];
        successors[link_source(l)].push_back(link_destination(l));
    }
    // Min-heap on id keeps the order independent of declaration order.
    std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
    for (const auto& [id, degree] : in_degree) {
        if (degree == 0) ready.push(id);
    }
    std::vector<std::string> order;
    order.reserve(in_degree.size());
    while (!ready.empty()) {
        std::string id = ready.top();
        ready.pop();
        order.push_back(id);
        for (const std::string& next : successors[id]) {
            if (--in_degree[next] == 0) ready.push(next);
        }
    }
    if (order.size() != in_degree.size()) throw Error("link graph contains a cycle");
    return order;
}

std::string model_fingerprint(const GoalModel& model) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : print_model(model)) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace drgm
