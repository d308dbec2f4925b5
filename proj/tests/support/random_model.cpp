#include "random_model.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace drgm::testing {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::string random_text(std::mt19937_64& rng, bool awkward) {
    static const std::string plain = "abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_";
    static const std::string odd = "\"\\#{}(),:\t\n";
    std::string s;
    const int len = uniform(rng, 0, 12);
    for (int i = 0; i < len; ++i) {
        if (awkward && chance(rng, 0.2)) {
            s += odd[uniform(rng, 0, static_cast<int>(odd.size()) - 1)];
        } else {
            s += plain[uniform(rng, 0, static_cast<int>(plain.size()) - 1)];
        }
    }
    return s;
}

}  // namespace

KpiDefinition random_kpi(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> value(-1000.0, 1000.0);
    double a = value(rng), b = value(rng), c = value(rng);
    while (a == b || b == c || a == c) c = value(rng);
    std::array<double, 3> v{a, b, c};
    std::sort(v.begin(), v.end());
    if (chance(rng, 0.5)) std::reverse(v.begin(), v.end());
    // Small integers now and then, so anchors are hit exactly.
    if (chance(rng, 0.3)) {
        const double base = uniform(rng, -50, 50);
        const double step = uniform(rng, 1, 20);
        const double dir = v[0] < v[2] ? 1.0 : -1.0;
        v = {base, base + dir * step, base + dir * step * uniform(rng, 2, 10)};
    }
    return KpiDefinition{v[0], v[1], v[2], "units"};
}

RandomCase random_case(std::mt19937_64& rng, const RandomModelOptions& options) {
    RandomCase out;
    GoalModel& m = out.model;
    m.name = options.awkward_text ? random_text(rng, true) : "random";
    m.version = std::to_string(uniform(rng, 0, 99));
    m.stage = static_cast<CustomizationStage>(uniform(rng, 0, 2));

    const int actor_count = uniform(rng, 1, 2);
    for (int a = 0; a < actor_count; ++a) {
        const std::string name = a == 0 && chance(rng, 0.5) ? "Data" : random_text(rng, options.awkward_text);
        m.actors.push_back({"a" + std::to_string(a), name});
    }

    const int n = uniform(rng, actor_count, options.max_elements);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("e" + std::to_string(i));
    // Declaration order differs from the DAG order.
    std::vector<std::string> shuffled = ids;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);

    std::set<std::string> anchors;
    for (int i = 0; i < n; ++i) {
        Element e;
        e.id = ids[i];
        e.name = random_text(rng, options.awkward_text);
        e.actor = m.actors[i % actor_count].id;
        e.kind = static_cast<ElementKind>(uniform(rng, 0, 3));
        e.importance = static_cast<Importance>(uniform(rng, 0, 3));
        if (i < actor_count) {
            anchors.insert(e.id);
            if (e.importance == Importance::None) e.importance = Importance::Low;
        }
        if (chance(rng, 0.2)) e.note = random_text(rng, options.awkward_text);
        m.elements.push_back(e);
    }

    // Links only go forward in `shuffled`, so the graph is acyclic.
    for (int j = 0; j < n; ++j) {
        Element& dest = *m.find(shuffled[j]);
        if (dest.kind == ElementKind::Kpi || j == 0 || chance(rng, 0.35)) continue;
        std::vector<std::string> sources(shuffled.begin(), shuffled.begin() + j);
        std::shuffle(sources.begin(), sources.end(), rng);
        sources.resize(uniform(rng, 1, static_cast<int>(sources.size())));
        const bool decompose = chance(rng, 0.5);
        const auto type = chance(rng, 0.5) ? DecompositionType::And : DecompositionType::Or;
        for (const std::string& s : sources) {
            if (decompose) {
                m.links.push_back(Decomposition{s, dest.id, type});
            } else {
                ContributionLevel level;
                if (chance(rng, 0.5)) {
                    // Named levels are declared from make down to break.
                    const int hi = options.positive_links_only ? 2 : 6;
                    level = ContributionLevel(static_cast<ContributionLevel::Named>(uniform(rng, 0, hi)));
                } else {
                    level = ContributionLevel::numeric(uniform(rng, options.positive_links_only ? 1 : -100, 100));
                }
                m.links.push_back(Contribution{s, dest.id, level});
            }
        }
    }

    for (Element& e : m.elements) {
        if (e.kind == ElementKind::Kpi) {
            e.kpi = random_kpi(rng);
        }
        if (options.not_applicable && !anchors.count(e.id) && chance(rng, 0.1)) e.applicable = false;
    }
    std::shuffle(m.links.begin(), m.links.end(), rng);

    out.strategy.name = "s" + std::to_string(uniform(rng, 0, 999));
    for (const Element& e : m.elements) {
        if (options.not_applicable && m.is_leaf(e.id) && !anchors.count(e.id) && e.applicable && chance(rng, 0.1)) {
            out.strategy.not_applicable.insert(e.id);
        }
    }
    auto inactive = [&](const std::string& id) {
        return !m.at(id).applicable || out.strategy.not_applicable.count(id);
    };
    // Dropping negative links out of non-applicable sources can leave an
    // element without incoming links; it then needs a value too.
    for (const Element& e : m.elements) {
        bool has_incoming = false;
        for (const Link& l : m.links) {
            if (link_destination(l) != e.id) continue;
            const auto* c = std::get_if<Contribution>(&l);
            if (c && c->level.value() < 0 && inactive(c->source)) continue;
            has_incoming = true;
        }
        if (has_incoming) continue;
        if (e.kind == ElementKind::Kpi) {
            const double lo = std::min(e.kpi->worst, e.kpi->target);
            const double hi = std::max(e.kpi->worst, e.kpi->target);
            const double span = hi - lo;
            double v = std::uniform_real_distribution<double>(lo - 0.2 * span, hi + 0.2 * span)(rng);
            if (chance(rng, 0.1)) v = e.kpi->threshold;
            out.strategy.assignments[e.id] = KpiMeasurement{v};
        } else {
            out.strategy.assignments[e.id] = SatisfactionValue{uniform(rng, 0, 100)};
        }
    }
    return out;
}

}  // namespace drgm::testing
