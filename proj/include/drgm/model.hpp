#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace drgm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ElementKind { Goal, Softgoal, Task, Kpi };

enum class Importance { None, Low, Medium, High };

/// Numeric weight of a qualitative importance level (High/Medium/Low/None = 100/50/25/0).
int importance_weight(Importance level);

std::string_view to_string(ElementKind kind);
std::string_view to_string(Importance level);
std::optional<ElementKind> parse_element_kind(std::string_view text);
std::optional<Importance> parse_importance(std::string_view text);

/// Triple-point normalization spec for an indicator.
struct KpiDefinition {
    double worst = 0.0;
    double threshold = 0.0;
    double target = 0.0;
    std::string unit;

    bool increasing() const { return target > worst; }
    /// worst < threshold < target, or worst > threshold > target.
    bool monotone() const;

    friend bool operator==(const KpiDefinition&, const KpiDefinition&) = default;
};

struct Element {
    std::string id;
    std::string name;
    ElementKind kind = ElementKind::Softgoal;
    Importance importance = Importance::None;
    std::string actor;
    std::optional<KpiDefinition> kpi;
    bool applicable = true;
    std::string note;

    /// Importance that counts toward actor satisfaction. Not-applicable
    /// elements are neutralized and carry no weight.
    Importance effective_importance() const { return applicable ? importance : Importance::None; }

    friend bool operator==(const Element&, const Element&) = default;
};

/// Contribution strength in [-100, 100]. The qualitative names map onto
/// +100, +50, +25, 0, -25, -50, -100.
class ContributionLevel {
public:
    enum class Named { Make, Help, SomePositive, Unknown, SomeNegative, Hurt, Break };

    constexpr ContributionLevel() = default;
    constexpr ContributionLevel(Named named) : value_(named_value(named)), named_(named) {}
    /// Throws drgm::Error when outside [-100, 100].
    static ContributionLevel numeric(int value);

    int value() const { return value_; }
    std::optional<Named> named() const { return named_; }
    /// DSL spelling: the qualitative keyword, or the integer.
    std::string to_string() const;
    static std::optional<ContributionLevel> parse(std::string_view text);

    friend bool operator==(const ContributionLevel&, const ContributionLevel&) = default;

private:
    static constexpr int named_value(Named n) {
        switch (n) {
            case Named::Make: return 100;
            case Named::Help: return 50;
            case Named::SomePositive: return 25;
            case Named::Unknown: return 0;
            case Named::SomeNegative: return -25;
            case Named::Hurt: return -50;
            case Named::Break: return -100;
        }
        return 0;
    }

    int value_ = 0;
    std::optional<Named> named_ = Named::Unknown;
};

struct Contribution {
    std::string source;
    std::string destination;
    ContributionLevel level;

    friend bool operator==(const Contribution&, const Contribution&) = default;
};

enum class DecompositionType { And, Or };

struct Decomposition {
    std::string child;
    std::string parent;
    DecompositionType type = DecompositionType::And;

    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

using Link = std::variant<Contribution, Decomposition>;

/// Element whose value flows along the link.
const std::string& link_source(const Link& link);
/// Element that receives the link.
const std::string& link_destination(const Link& link);
/// Stable identifier used in diagnostics, e.g. "contrib:a->b".
std::string link_id(const Link& link);

struct Actor {
    std::string id;
    std::string name;

    friend bool operator==(const Actor&, const Actor&) = default;
};

/// How far the customization pipeline has progressed on a model.
enum class CustomizationStage { Base, ProblemType, Context };

std::string_view to_string(CustomizationStage stage);
std::optional<CustomizationStage> parse_stage(std::string_view text);

struct GoalModel {
    std::string name;
    std::string version;
    CustomizationStage stage = CustomizationStage::Base;
    std::vector<Actor> actors;
    std::vector<Element> elements;
    std::vector<Link> links;

    const Element* find(std::string_view id) const;
    Element* find(std::string_view id);
    /// Throws drgm::Error when absent.
    const Element& at(std::string_view id) const;
    Element& at(std::string_view id);
    const Actor* find_actor(std::string_view id) const;

    /// True when no link arrives at the element.
    bool is_leaf(std::string_view id) const;
    std::vector<const Link*> incoming(std::string_view id) const;

    /// Equality up to declaration order of elements and links.
    bool structurally_equal(const GoalModel& other) const;

    friend bool operator==(const GoalModel&, const GoalModel&) = default;
};

/// Element ids ordered so that every link source precedes its destination.
/// Ties are broken by id. Throws drgm::Error if the link graph has a cycle.
std::vector<std::string> topological_order(const GoalModel& model);

/// 64-bit FNV-1a digest of the canonical DSL rendering, as 16 hex digits.
std::string model_fingerprint(const GoalModel& model);

}  // namespace drgm
