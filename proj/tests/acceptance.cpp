// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include "context_grid.hpp"
#include "drgm/builtin.hpp"
#include "drgm/customization.hpp"
#include "drgm/dsl.hpp"
#include "drgm/json_io.hpp"
#include "drgm/reporting.hpp"
#include "drgm/shapiro_wilk.hpp"
#include "random_model.hpp"
#include "reference_eval.hpp"
#include "temp_dir.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace drgm;

namespace {

/// Collects the first few failure details of one criterion.
struct Check {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok && failures.size() < 5) failures.push_back(what);
        if (!ok) ++count;
    }
    int count = 0;
};

std::string str(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

Json scenario(const std::string& name) {
    return Json::parse(testing::read_file(testing::fixture("scenarios/" + name)));
}

GoalModel customized(const std::string& answers_file) {
    const CustomizationAnswers a = answers_from_json(scenario(answers_file));
    return customize(builtin_drgm(), a.problem, a.context);
}

EvaluationResult run_scenario(const GoalModel& m, const std::string& strategy_file) {
    return evaluate(m, strategy_from_json(scenario(strategy_file)));
}

// 1 -------------------------------------------------------------------------

void kpi_table(Check& c) {
    const KpiDefinition anemia = compute_data_size_kpi({ProblemKind::ClassificationTabular, 4, 3});
    c.expect(anemia.worst == 20 && anemia.threshold == 40 && anemia.target == 400, "anemia KPI is not (20, 40, 400)");

    auto same = [&](const KpiDefinition& k, long w, long t, long g, const std::string& label) {
        c.expect(k.worst == w && k.threshold == t && k.target == g,
                 label + ": got (" + str(k.worst) + ", " + str(k.threshold) + ", " + str(k.target) + ")");
    };
    for (long cl = 2; cl <= 10; ++cl) {
        for (long f = 0; f <= 30; ++f) {
            const std::string at = " c=" + std::to_string(cl) + " f=" + std::to_string(f);
            const int ci = static_cast<int>(cl), fi = static_cast<int>(f);
            same(compute_data_size_kpi({ProblemKind::ClassificationTabular, ci, fi}), std::max(5 * cl, 5 * f),
                 std::max(10 * cl, 10 * f), std::max(100 * cl, 100 * f), "tabular" + at);
            same(compute_data_size_kpi({ProblemKind::ClassificationImage, ci, fi}), 500 * cl, 1000 * cl, 10000 * cl,
                 "image" + at);
        }
    }
    for (long f = 0; f <= 30; ++f) {
        const std::string at = " f=" + std::to_string(f);
        const int fi = static_cast<int>(f);
        same(compute_data_size_kpi({ProblemKind::Regression, 0, fi}), 5 * f, 10 * f, 100 * f, "regression" + at);
        same(compute_data_size_kpi({ProblemKind::TimeSeriesOther, 0, fi}), std::max(40L, 5 * f),
             std::max(50L, 10 * f), std::max(100L, 100 * f), "time series" + at);
        MLProblemSpec seasonal{ProblemKind::TimeSeriesSeasonal, 0, fi};
        seasonal.season_length = 8760;
        same(compute_data_size_kpi(seasonal), 1, 2, 10, "seasonal" + at);
    }
}

// 2 -------------------------------------------------------------------------

void normalization(Check& c) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const KpiDefinition k = testing::random_kpi(rng);
        c.expect(normalize_kpi(k.worst, k) == 0.0, "worst anchor is not 0");
        c.expect(normalize_kpi(k.threshold, k) == 50.0, "threshold anchor is not 50");
        c.expect(normalize_kpi(k.target, k) == 100.0, "target anchor is not 100");
        double prev = -1.0;
        for (int s = 0; s <= 64; ++s) {
            const double x = k.worst + (k.target - k.worst) * s / 64.0;
            const double v = normalize_kpi(x, k);
            c.expect(v >= prev - 1e-9, "not monotone between anchors");
            prev = v;
        }
    }
}

// 3 -------------------------------------------------------------------------

void oracle(Check& c) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const auto rc = testing::random_case(rng);
        const EvaluationResult got = evaluate(rc.model, rc.strategy);
        const EvaluationResult want = testing::reference_evaluate(rc.model, rc.strategy);
        c.expect(got.elements == want.elements, "element values differ on case " + std::to_string(i));
        c.expect(got.actors == want.actors, "actor values differ on case " + std::to_string(i));
    }
}

// 4 -------------------------------------------------------------------------

void monotonicity(Check& c) {
    std::mt19937_64 rng(4);
    testing::RandomModelOptions options;
    options.positive_links_only = true;
    int trials = 0;
    while (trials < 1000) {
        auto rc = testing::random_case(rng, options);
        std::vector<std::string> leaves;
        for (const auto& [id, a] : rc.strategy.assignments) {
            if (std::holds_alternative<SatisfactionValue>(a) && rc.model.at(id).applicable &&
                !rc.strategy.not_applicable.count(id)) {
                leaves.push_back(id);
            }
        }
        if (leaves.empty()) continue;
        ++trials;
        const EvaluationResult before = evaluate(rc.model, rc.strategy);
        int& v = std::get<SatisfactionValue>(rc.strategy.assignments[leaves[rng() % leaves.size()]]).value;
        v = std::uniform_int_distribution<int>(v, 100)(rng);
        const EvaluationResult after = evaluate(rc.model, rc.strategy);
        for (const auto& [id, x] : before.elements) c.expect(after.elements.at(id) >= x - kTolerance, id + " dropped");
        for (const auto& [id, x] : before.actors) c.expect(after.actors.at(id) >= x - kTolerance, id + " dropped");
    }
}

// 5 -------------------------------------------------------------------------

void customization_sweep(Check& c) {
    const GoalModel base = builtin_drgm();
    const auto contexts = testing::all_contexts();
    for (ProblemKind kind : kAllProblemKinds) {
        const MLProblemSpec p = testing::small_problem(kind);
        for (const ContextSpec& ctx : contexts) {
            const GoalModel a = customize(base, p, ctx);
            const GoalModel b = customize(builtin_drgm(), p, ctx);
            c.expect(a == b && print_model(a) == print_model(b), "customization is not deterministic");
            for (auto id : {ids::kQuantity, ids::kQuality, ids::kAvailability, ids::kCompleteness,
                            ids::kAccessibility, ids::kAccuracy}) {
                c.expect(a.at(std::string(id)).importance == Importance::High, std::string(id) + " is not high");
            }
            for (auto id : {ids::kConsistency, ids::kSafety}) {
                c.expect(a.at(std::string(id)).importance == Importance::Medium, std::string(id) + " is not medium");
            }
            Importance top = Importance::None;
            for (auto id : {ids::kDiscriminationFree, ids::kLegality, ids::kPrivacy, ids::kSafety}) {
                top = std::max(top, a.at(std::string(id)).effective_importance());
            }
            c.expect(a.at(std::string(ids::kEthics)).importance == top, "ethics is not the max of its subgoals");
        }
    }
}

// 6 -------------------------------------------------------------------------

void shapiro(Check& c) {
    const Json ref = Json::parse(testing::read_file(testing::fixture("shapiro_reference.json")));
    std::set<std::size_t> sizes;
    for (const Json& s : ref["samples"]) {
        const auto values = s["values"].get<std::vector<double>>();
        const ShapiroWilkResult r = shapiro_wilk(values);
        const std::string name = s["name"].get<std::string>();
        c.expect(std::abs(r.w - s["w"].get<double>()) <= 1e-4, name + ": W " + str(r.w));
        c.expect(std::abs(r.p_value - s["p"].get<double>()) <= 1e-4, name + ": p " + str(r.p_value));
        sizes.insert(values.size());
    }
    for (std::size_t n : {10, 20, 50, 200, 1000}) c.expect(sizes.count(n), "no fixture of size " + std::to_string(n));
}

// 7 -------------------------------------------------------------------------

void round_trip(Check& c) {
    auto check = [&](const GoalModel& m, const std::string& label) {
        const std::string printed = print_model(m);
        const GoalModel back = parse_model(printed);
        c.expect(back.structurally_equal(m), label + " changes through print/parse");
        c.expect(print_model(back) == printed, label + " prints differently after a round trip");
        c.expect(print_model(m) == printed, label + " prints unstably");
    };
    check(builtin_drgm(), "built-in model");
    std::mt19937_64 rng(7);
    testing::RandomModelOptions options;
    options.awkward_text = true;
    for (int i = 0; i < 100; ++i) check(testing::random_case(rng, options).model, "model " + std::to_string(i));
}

// 8 -------------------------------------------------------------------------

void anemia(Check& c) {
    const GoalModel m = customized("anemia_answers.json");
    c.expect(m.at(std::string(ids::kBalancedness)).importance == Importance::High, "balancedness not high");
    c.expect(m.at(std::string(ids::kEthics)).importance == Importance::High, "ethics not high");
    c.expect(*m.at(std::string(ids::kSizeKpi)).kpi == KpiDefinition{20, 40, 400, "data points"}, "size KPI");

    const EvaluationStrategy collected = strategy_from_json(scenario("anemia_collected.json"));
    c.expect(std::get<KpiMeasurement>(collected.assignments.at(std::string(ids::kSizeKpi))).value == 60, "size 60");
    c.expect(std::get<KpiMeasurement>(collected.assignments.at(std::string(ids::kBalanceKpi))).value == 20,
             "balance 20");
    for (auto id : {ids::kAccuracy, ids::kSafety, ids::kResolveInconsistencies}) {
        c.expect(std::get<SatisfactionValue>(collected.assignments.at(std::string(id))).value <= 40,
                 std::string(id) + " is not degraded");
    }

    const double planned = run_scenario(m, "anemia_planned.json").satisfaction();
    const double actual = evaluate(m, collected).satisfaction();
    c.expect(planned >= 70.0, "planned dataset scores " + str(planned));
    c.expect(actual < 70.0, "collected dataset scores " + str(actual));
}

// 9 -------------------------------------------------------------------------

void ghi(Check& c) {
    const GoalModel m = customized("ghi_answers.json");
    c.expect(m.at(std::string(ids::kEthics)).importance == Importance::None, "ethics is not none");
    c.expect(m.at(std::string(ids::kFreshness)).importance == Importance::High, "freshness is not high");
    c.expect(m.at(std::string(ids::kManagement)).importance == Importance::High, "management is not high");
    const KpiDefinition size = *m.at(std::string(ids::kSizeKpi)).kpi;
    c.expect(size.worst == 1 && size.threshold == 2 && size.target == 10, "seasonal size KPI is not (1, 2, 10)");

    const EvaluationResult first = run_scenario(m, "ghi_first_city.json");
    const EvaluationResult najran = run_scenario(m, "ghi_najran.json");
    c.expect(first.elements.at(std::string(ids::kEthics)) == 100.0, "ethics is not neutralized at 100");
    c.expect(first.elements.at(std::string(ids::kSizeKpi)) == 50.0,
             "two years normalize to " + str(first.elements.at(std::string(ids::kSizeKpi))));

    c.expect(m.at(std::string(ids::kEthics)).effective_importance() == Importance::None, "ethics has weight");

    c.expect(najran.satisfaction() < first.satisfaction(),
             "Najran " + str(najran.satisfaction()) + " is not below first city " + str(first.satisfaction()));
}

// 10 ------------------------------------------------------------------------

EvaluationResult scored(double s) {
    EvaluationResult r;
    r.primary_actor = "data";
    r.actors["data"] = s;
    r.model_version = "1@fixture";
    return r;
}

void selection(Check& c) {
    SelectionDecision d = compare({{"A", scored(72)}, {"B", scored(65)}});
    c.expect(d.selected == "A", "{A:72,B:65} did not select A");
    d = compare({{"A", scored(75)}, {"B", scored(80)}});
    c.expect(d.selected == "B", "{A:75,B:80} did not select B");
    d = compare({{"A", scored(60)}});
    c.expect(!d.selected, "{A:60} selected a dataset");
    c.expect(d.recommendation.find(std::string(kNoneSatisfiesAdvice)) != std::string::npos,
             "recommendation lacks the advice: " + d.recommendation);
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        std::function<void(Check&)> run;
        double budget_seconds;
    };
    const std::vector<Criterion> criteria = {
        {1, "data-size KPI table", kpi_table, 1},
        {2, "normalization anchors and monotonicity", normalization, 1},
        {3, "propagation matches the recursive oracle", oracle, 5},
        {4, "positive monotonicity", monotonicity, 5},
        {5, "customization determinism and fixed importances", customization_sweep, 10},
        {6, "Shapiro-Wilk fidelity", shapiro, 1},
        {7, "DSL round trip", round_trip, 1},
        {8, "anemia end to end", anemia, 1},
        {9, "GHI end to end", ghi, 1},
        {10, "selection rule", selection, 1},
    };

    int failed = 0;
    for (const Criterion& cr : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > cr.budget_seconds) {
            check.expect(false, "took " + str(seconds) + " s, budget " + str(cr.budget_seconds) + " s");
        }
        const bool ok = check.count == 0;
        if (!ok) ++failed;
        std::printf("%s %2d %s (%.3f s)\n", ok ? "PASS" : "FAIL", cr.number, cr.title, seconds);
        for (const std::string& f : check.failures) std::printf("       %s\n", f.c_str());
    }
    return failed == 0 ? 0 : 1;
}
