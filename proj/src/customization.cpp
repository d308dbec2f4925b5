#include "drgm/customization.hpp"

#include "drgm/builtin.hpp"
#include "drgm/dsl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace drgm {

std::string_view to_string(ProblemKind kind) {
    switch (kind) {
        case ProblemKind::ClassificationTabular: return "classification_tabular";
        case ProblemKind::ClassificationImage: return "classification_image";
        case ProblemKind::ClassificationOther: return "classification_other";
        case ProblemKind::Regression: return "regression";
        case ProblemKind::TimeSeriesSeasonal: return "time_series_seasonal";
        case ProblemKind::TimeSeriesOther: return "time_series_other";
    }
    return "classification_tabular";
}

std::optional<ProblemKind> parse_problem_kind(std::string_view text) {
    for (ProblemKind k : kAllProblemKinds) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

bool is_classification(ProblemKind kind) {
    return kind == ProblemKind::ClassificationTabular || kind == ProblemKind::ClassificationImage ||
           kind == ProblemKind::ClassificationOther;
}

bool is_time_series(ProblemKind kind) {
    return kind == ProblemKind::TimeSeriesSeasonal || kind == ProblemKind::TimeSeriesOther;
}

std::string_view to_string(DataSensitivity s) {
    switch (s) {
        case DataSensitivity::Sensitive: return "sensitive";
        case DataSensitivity::PrivateNotSensitive: return "private_not_sensitive";
        case DataSensitivity::Public: return "public";
    }
    return "public";
}

std::string_view to_string(UpdateFrequency f) {
    switch (f) {
        case UpdateFrequency::Never: return "never";
        case UpdateFrequency::Irregular: return "irregular";
        case UpdateFrequency::Regular: return "regular";
    }
    return "never";
}

std::string_view to_string(RepresentativenessDimension d) {
    switch (d) {
        case RepresentativenessDimension::Spatial: return "spatial";
        case RepresentativenessDimension::Temporal: return "temporal";
        case RepresentativenessDimension::Demographic: return "demographic";
    }
    return "spatial";
}

std::optional<DataSensitivity> parse_sensitivity(std::string_view text) {
    for (auto s : {DataSensitivity::Sensitive, DataSensitivity::PrivateNotSensitive, DataSensitivity::Public}) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

std::optional<UpdateFrequency> parse_update_frequency(std::string_view text) {
    for (auto f : {UpdateFrequency::Never, UpdateFrequency::Irregular, UpdateFrequency::Regular}) {
        if (to_string(f) == text) return f;
    }
    return std::nullopt;
}

std::optional<RepresentativenessDimension> parse_dimension(std::string_view text) {
    for (auto d : {RepresentativenessDimension::Spatial, RepresentativenessDimension::Temporal,
                   RepresentativenessDimension::Demographic}) {
        if (to_string(d) == text) return d;
    }
    return std::nullopt;
}

void check_spec(const MLProblemSpec& spec) {
    if (is_classification(spec.kind) && spec.num_classes < 2) {
        throw CustomizationError("classification problems need at least 2 classes, got " +
                                 std::to_string(spec.num_classes));
    }
    if (!is_classification(spec.kind) && spec.num_classes != 0) {
        throw CustomizationError("num_classes only applies to classification problems");
    }
    if (spec.num_features < 0) throw CustomizationError("num_features must be non-negative");
    if (spec.kind == ProblemKind::TimeSeriesSeasonal && spec.season_length < 1) {
        throw CustomizationError("seasonal time series need a positive season_length (data points per season)");
    }
    if (spec.kind != ProblemKind::TimeSeriesSeasonal && spec.season_length != 0) {
        throw CustomizationError("season_length only applies to seasonal time series");
    }
    if (spec.expert_size_kpi && !spec.expert_size_kpi->monotone()) {
        throw CustomizationError("expert data-size KPI anchors are not strictly monotone");
    }
}

KpiDefinition compute_data_size_kpi(const MLProblemSpec& spec) {
    const double c = spec.num_classes;
    const double f = spec.num_features;
    switch (spec.kind) {
        case ProblemKind::ClassificationTabular:
            return {std::max(5 * c, 5 * f), std::max(10 * c, 10 * f), std::max(100 * c, 100 * f), "data points"};
        case ProblemKind::ClassificationImage:
            return {500 * c, 1000 * c, 10000 * c, "images"};
        case ProblemKind::ClassificationOther:
            throw RequiresExpertInput(
                "no data-size rule exists for this classification problem; consult a data science expert in the "
                "domain and supply the KPI manually");
        case ProblemKind::Regression:
            return {5 * f, 10 * f, 100 * f, "data points"};
        case ProblemKind::TimeSeriesSeasonal:
            return {1, 2, 10, spec.season_unit + " (seasons) worth of data"};
        case ProblemKind::TimeSeriesOther:
            return {std::max(40.0, 5 * f), std::max(50.0, 10 * f), std::max(100.0, 100 * f), "data points"};
    }
    throw CustomizationError("unknown problem kind");
}

KpiDefinition class_balance_kpi() { return {0, 50, 100, "percent balance (minority/majority)"}; }

KpiDefinition normality_kpi() { return {0, 0.05, 0.5, "Shapiro-Wilk p-value"}; }

namespace {

void require_skeleton(const GoalModel& model) {
    static const std::string_view required[] = {
        ids::kQuantity,         ids::kQuality,           ids::kManagement,       ids::kEthics,
        ids::kAvailability,     ids::kAccessibility,     ids::kAccuracy,         ids::kFreshness,
        ids::kRepresentativeness, ids::kBalancedness,    ids::kCompleteness,     ids::kConsistency,
        ids::kLogging,          ids::kSecurity,          ids::kDiscriminationFree, ids::kLegality,
        ids::kPrivacy,          ids::kSafety,            ids::kSizeKpi,          ids::kRemoveRedundant,
        ids::kSustainableSources, ids::kProtectIdentifying, ids::kObtainConsent, ids::kConfirmLegal,
        ids::kProtectDiscriminatory,
    };
    for (std::string_view id : required) {
        if (!model.find(id)) {
            throw CustomizationError("corrupted model: required element '" + std::string(id) + "' is missing");
        }
    }
}

void add_task(GoalModel& model, std::string_view id, std::string name, std::string note = {}) {
    if (model.find(id)) throw CustomizationError("element '" + std::string(id) + "' already exists");
    Element e;
    e.id = std::string(id);
    e.name = std::move(name);
    e.kind = ElementKind::Task;
    e.actor = std::string(ids::kDataActor);
    e.note = std::move(note);
    model.elements.push_back(std::move(e));
}

void contribute(GoalModel& model, std::string_view source, ContributionLevel level, std::string_view destination) {
    model.links.emplace_back(Contribution{std::string(source), std::string(destination), level});
}

void set_level(GoalModel& model, std::string_view source, std::string_view destination, ContributionLevel level) {
    for (Link& l : model.links) {
        if (auto* c = std::get_if<Contribution>(&l); c && c->source == source && c->destination == destination) {
            c->level = level;
            return;
        }
    }
    throw CustomizationError("corrupted model: no contribution from '" + std::string(source) + "' to '" +
                             std::string(destination) + "'");
}

void neutralize(GoalModel& model, std::string_view id) { model.at(id).applicable = false; }

}  // namespace

GoalModel apply_problem_type(const GoalModel& input, const MLProblemSpec& spec) {
    if (input.stage != CustomizationStage::Base) {
        throw CustomizationError("customization must start from the initial, uncustomized model");
    }
    require_skeleton(input);
    check_spec(spec);

    GoalModel model = input;
    Element& size = model.at(ids::kSizeKpi);
    if (spec.kind == ProblemKind::ClassificationOther) {
        if (!spec.expert_size_kpi) {
            compute_data_size_kpi(spec);  // throws RequiresExpertInput
        }
        size.kpi = spec.expert_size_kpi;
        size.note = "Expert-supplied anchors.";
    } else {
        size.kpi = compute_data_size_kpi(spec);
        size.note = "Rule-of-10 anchors for " + std::string(to_string(spec.kind)) + ".";
    }

    Element& balance = model.at(ids::kBalancedness);
    if (is_classification(spec.kind)) {
        balance.importance = Importance::High;
        Element kpi{std::string(ids::kBalanceKpi), "Class Balance", ElementKind::Kpi, Importance::None,
                    std::string(ids::kDataActor), class_balance_kpi(), true,
                    "Minority-to-majority class ratio; a 1:1 ratio is 100."};
        model.elements.push_back(std::move(kpi));
        add_task(model, ids::kResample, "Resample Classes (SMOTE, Oversampling, Undersampling)");
        contribute(model, ids::kBalanceKpi, ContributionLevel::numeric(75), ids::kBalancedness);
        contribute(model, ids::kResample, ContributionLevel::numeric(25), ids::kBalancedness);
    } else if (spec.kind == ProblemKind::Regression) {
        balance.importance = Importance::Medium;
        Element kpi{std::string(ids::kBalanceKpi), "Target Normality", ElementKind::Kpi, Importance::None,
                    std::string(ids::kDataActor), normality_kpi(), true,
                    "Shapiro-Wilk p-value of the target; above 0.05 the target is treated as normal."};
        model.elements.push_back(std::move(kpi));
        add_task(model, ids::kTransformTarget, "Transform Skewed Target");
        contribute(model, ids::kBalanceKpi, ContributionLevel::numeric(75), ids::kBalancedness);
        contribute(model, ids::kTransformTarget, ContributionLevel::numeric(25), ids::kBalancedness);
    } else {
        balance.importance = Importance::None;
        neutralize(model, ids::kBalancedness);
        neutralize(model, ids::kRemoveRedundant);
    }

    model.stage = CustomizationStage::ProblemType;
    return model;
}

GoalModel apply_context(const GoalModel& input, const ContextSpec& spec) {
    if (input.stage == CustomizationStage::Base) {
        throw CustomizationError("apply the ML problem type customization before the context customization");
    }
    if (input.stage == CustomizationStage::Context) {
        throw CustomizationError("model is already customized; start again from the initial model");
    }
    require_skeleton(input);
    GoalModel model = input;

    // Update cadence drives management, logging, freshness and sourcing.
    Importance cadence = Importance::Medium;
    switch (spec.update_frequency) {
        case UpdateFrequency::Never: cadence = Importance::Low; break;
        case UpdateFrequency::Irregular: cadence = Importance::Medium; break;
        case UpdateFrequency::Regular: cadence = Importance::High; break;
    }
    model.at(ids::kManagement).importance = cadence;
    model.at(ids::kLogging).importance = cadence;
    model.at(ids::kFreshness).importance = cadence;
    model.at(ids::kSustainableSources).importance =
        spec.update_frequency == UpdateFrequency::Never ? Importance::None : cadence;

    // Human subjects keep the de-identification and consent tasks.
    if (spec.involves_human_subjects) {
        if (spec.eu_jurisdiction) {
            add_task(model, ids::kGdprCompliance, "Comply with GDPR Consent Requirements",
                     "Checklist: lawful basis, explicit consent for identifying data, data subject rights.");
            set_level(model, ids::kConfirmLegal, ids::kLegality, ContributionLevel::Named::Help);
            contribute(model, ids::kGdprCompliance, ContributionLevel::Named::Help, ids::kLegality);
        }
    } else {
        neutralize(model, ids::kProtectIdentifying);
        neutralize(model, ids::kObtainConsent);
    }

    switch (spec.data_sensitivity) {
        case DataSensitivity::Sensitive:
            model.at(ids::kPrivacy).importance = Importance::High;
            model.at(ids::kSecurity).importance = Importance::High;
            break;
        case DataSensitivity::PrivateNotSensitive:
            model.at(ids::kPrivacy).importance = Importance::Medium;
            model.at(ids::kSecurity).importance = Importance::Medium;
            break;
        case DataSensitivity::Public:
            model.at(ids::kPrivacy).importance = Importance::None;
            model.at(ids::kSecurity).importance = Importance::None;
            neutralize(model, ids::kPrivacy);
            neutralize(model, ids::kSecurity);
            break;
    }

    if (spec.impacts_human_lives) {
        model.at(ids::kDiscriminationFree).importance = Importance::High;
        model.at(ids::kProtectDiscriminatory).note = "Remove sensitive demographic fields or designate them as protected.";
        add_task(model, ids::kAuthoritativeSource, "Obtain Data from Authoritative Sources");
        set_level(model, ids::kProtectDiscriminatory, ids::kDiscriminationFree, ContributionLevel::Named::Help);
        contribute(model, ids::kAuthoritativeSource, ContributionLevel::Named::Help, ids::kDiscriminationFree);
    } else if (!spec.involves_human_subjects) {
        model.at(ids::kDiscriminationFree).importance = Importance::None;
        neutralize(model, ids::kDiscriminationFree);
        neutralize(model, ids::kProtectDiscriminatory);
    }

    static const std::map<RepresentativenessDimension, std::pair<std::string_view, const char*>> dimension_tasks = {
        {RepresentativenessDimension::Spatial, {ids::kSpatialRepresentativeness, "Ensure Spatial Representativeness"}},
        {RepresentativenessDimension::Temporal,
         {ids::kTemporalRepresentativeness, "Ensure Temporal (Seasonal) Representativeness"}},
        {RepresentativenessDimension::Demographic,
         {ids::kDemographicRepresentativeness, "Ensure Demographic Representativeness"}},
    };
    for (RepresentativenessDimension d : spec.representativeness_dimensions) {
        const auto& [id, name] = dimension_tasks.at(d);
        add_task(model, id, name);
        model.links.emplace_back(Decomposition{std::string(id), std::string(ids::kRepresentativeness), DecompositionType::And});
    }

    const bool human_facing = spec.involves_human_subjects || spec.impacts_human_lives;
    if (spec.domain_legal_constraints) {
        model.at(ids::kLegality).importance = Importance::High;
        model.at(ids::kConfirmLegal).note = "Domain-specific legal constraints apply; consult a legal expert.";
    } else if (!human_facing && spec.data_sensitivity == DataSensitivity::Public) {
        model.at(ids::kLegality).importance = Importance::None;
        neutralize(model, ids::kLegality);
        neutralize(model, ids::kConfirmLegal);
    }

    // Ethics concerns vanish entirely for public, non-human data. Safety keeps
    // its fixed importance but is neutralized like the other ethics subgoals.
    if (!human_facing && spec.data_sensitivity == DataSensitivity::Public) {
        neutralize(model, ids::kSafety);
    }

    Importance ethics = Importance::None;
    for (std::string_view sub : {ids::kDiscriminationFree, ids::kLegality, ids::kPrivacy, ids::kSafety}) {
        ethics = std::max(ethics, model.at(sub).effective_importance());
    }
    model.at(ids::kEthics).importance = ethics;

    model.stage = CustomizationStage::Context;
    return model;
}

GoalModel customize(const GoalModel& model, const MLProblemSpec& problem, const ContextSpec& context) {
    return apply_context(apply_problem_type(model, problem), context);
}

// ---------------------------------------------------------------------------
// Questionnaire

std::string_view to_string(AnswerType type) {
    switch (type) {
        case AnswerType::Choice: return "choice";
        case AnswerType::Boolean: return "boolean";
        case AnswerType::Integer: return "integer";
        case AnswerType::Number: return "number";
        case AnswerType::Text: return "text";
        case AnswerType::MultiChoice: return "multi_choice";
    }
    return "text";
}

const std::vector<Question>& questionnaire() {
    static const std::vector<Question> questions = [] {
        std::vector<std::string> kinds;
        for (ProblemKind k : kAllProblemKinds) kinds.emplace_back(to_string(k));
        const std::vector<std::string> classification = {"classification_tabular", "classification_image",
                                                         "classification_other"};
        std::vector<Question> q = {
            {"problem_kind", "What kind of ML problem is the system solving?",
             "Balancedness importance and the data-size KPI depend on the problem type.", AnswerType::Choice, kinds,
             "problem.kind", 0, std::nullopt, std::nullopt},
            {"num_classes", "How many target classes are there?",
             "Rule of 10: roughly ten samples per class; five is the floor and one hundred the target.",
             AnswerType::Integer, {}, "problem.num_classes", 0, Applicability{"problem_kind", classification}, 2},
            {"num_features", "How many input features (predictors) does the model use?",
             "Rule of 10: roughly ten samples per predictor.", AnswerType::Integer, {}, "problem.num_features", 0,
             Applicability{"problem_kind", {"classification_tabular", "regression", "time_series_other"}}, 0},
            {"season_length", "How many data points make up one season (e.g. 8760 for hourly data over a year)?",
             "Seasonal forecasting needs one season of data at worst, two at threshold and ten at target.",
             AnswerType::Integer, {}, "problem.season_length", 0, Applicability{"problem_kind", {"time_series_seasonal"}},
             1},
            {"season_unit", "What is the seasonality period called (e.g. years)?",
             "Used as the unit of the data-size KPI.", AnswerType::Text, {}, "problem.season_unit", 0,
             Applicability{"problem_kind", {"time_series_seasonal"}}, std::nullopt},
            {"expert_size_worst", "Expert data-size KPI: worst acceptable number of samples?",
             "No data-size rule exists for this problem type; a data science expert in the domain must set it.",
             AnswerType::Number, {}, "problem.expert_size_kpi.worst", 0,
             Applicability{"problem_kind", {"classification_other"}}, std::nullopt},
            {"expert_size_threshold", "Expert data-size KPI: threshold number of samples?", "", AnswerType::Number, {},
             "problem.expert_size_kpi.threshold", 0, Applicability{"problem_kind", {"classification_other"}},
             std::nullopt},
            {"expert_size_target", "Expert data-size KPI: target number of samples?", "", AnswerType::Number, {},
             "problem.expert_size_kpi.target", 0, Applicability{"problem_kind", {"classification_other"}},
             std::nullopt},
            {"expert_size_unit", "Expert data-size KPI: unit (e.g. data points)?", "", AnswerType::Text, {},
             "problem.expert_size_kpi.unit", 0, Applicability{"problem_kind", {"classification_other"}},
             std::nullopt},
            {"update_frequency", "How often will the model be retrained on new data?",
             "Models built once need little data management; regularly updated models need fresh data from "
             "sustainable sources.",
             AnswerType::Choice, {"never", "irregular", "regular"}, "context.update_frequency", 0, std::nullopt,
             std::nullopt},
            {"involves_human_subjects", "Does the data identify or describe human subjects?",
             "Identifying information must be removed or protected and consent obtained.", AnswerType::Boolean, {},
             "context.involves_human_subjects", 0, std::nullopt, std::nullopt},
            {"eu_jurisdiction", "Are the subjects EU citizens, or will the system be used in the EU?",
             "GDPR imposes stricter consent requirements on identifying information.", AnswerType::Boolean, {},
             "context.eu_jurisdiction", 0, Applicability{"involves_human_subjects", {"yes"}}, std::nullopt},
            {"data_sensitivity", "Is the data sensitive (health, financial, academic, business records), private, or public?",
             "Sensitive data makes privacy and security highly important; public data makes them irrelevant.",
             AnswerType::Choice, {"sensitive", "private_not_sensitive", "public"}, "context.data_sensitivity", 0,
             std::nullopt, std::nullopt},
            {"impacts_human_lives", "Do the model's decisions significantly impact human lives (e.g. hiring, parole)?",
             "High-stakes decisions require data free from discrimination, from authoritative sources.",
             AnswerType::Boolean, {}, "context.impacts_human_lives", 0, std::nullopt, std::nullopt},
            {"representativeness_dimensions",
             "Which dimensions must the data represent? (comma-separated: spatial, temporal, demographic; empty for none)",
             "Data must cover the regions, seasons or demographic groups the model will serve.",
             AnswerType::MultiChoice, {"spatial", "temporal", "demographic"}, "context.representativeness_dimensions",
             0, std::nullopt, std::nullopt},
            {"domain_legal_constraints", "Does the domain impose specific legal constraints on obtaining or using the data?",
             "Some domains, such as finance, have strict legal requirements; consult a legal expert.",
             AnswerType::Boolean, {}, "context.domain_legal_constraints", 0, std::nullopt, std::nullopt},
        };
        for (std::size_t i = 0; i < q.size(); ++i) q[i].order = static_cast<int>(i);
        return q;
    }();
    return questions;
}

namespace {

const std::string* find_answer(const AnswerSet& answers, std::string_view id) {
    for (const auto& [qid, value] : answers) {
        if (qid == id) return &value;
    }
    return nullptr;
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::optional<double> parse_double(std::string_view text) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

}  // namespace

bool is_applicable(const Question& question, const AnswerSet& answers) {
    if (!question.when) return true;
    const std::string* prior = find_answer(answers, question.when->question);
    if (!prior) return false;
    const auto& any = question.when->any_of;
    return std::find(any.begin(), any.end(), *prior) != any.end();
}

std::string check_answer(const Question& question, std::string_view answer) {
    switch (question.type) {
        case AnswerType::Boolean:
            if (answer != "yes" && answer != "no") return "answer yes or no";
            return {};
        case AnswerType::Choice:
            if (std::find(question.options.begin(), question.options.end(), answer) == question.options.end()) {
                std::string opts;
                for (const auto& o : question.options) opts += (opts.empty() ? "" : ", ") + o;
                return "choose one of: " + opts;
            }
            return {};
        case AnswerType::MultiChoice:
            for (const std::string& item : split_list(answer)) {
                if (std::find(question.options.begin(), question.options.end(), item) == question.options.end()) {
                    return "unknown option '" + item + "'";
                }
            }
            return {};
        case AnswerType::Integer: {
            int v = 0;
            auto [ptr, ec] = std::from_chars(answer.data(), answer.data() + answer.size(), v);
            if (ec != std::errc() || ptr != answer.data() + answer.size()) return "enter a whole number";
            if (question.minimum && v < *question.minimum) {
                return "must be at least " + std::to_string(static_cast<int>(*question.minimum));
            }
            return {};
        }
        case AnswerType::Number:
            if (!parse_double(answer)) return "enter a number";
            return {};
        case AnswerType::Text:
            if (answer.empty()) return "enter a non-empty value";
            return {};
    }
    return {};
}

CustomizationAnswers answers_from_questionnaire(const AnswerSet& answers) {
    CustomizationAnswers out;
    std::vector<std::string> problems;
    KpiDefinition expert;
    bool has_expert = false;
    AnswerSet seen;
    for (const Question& q : questionnaire()) {
        if (!is_applicable(q, seen)) continue;
        const std::string* answer = find_answer(answers, q.id);
        if (!answer) {
            problems.push_back(q.id + ": missing answer");
            continue;
        }
        if (std::string err = check_answer(q, *answer); !err.empty()) {
            problems.push_back(q.id + ": " + err);
            continue;
        }
        seen.emplace_back(q.id, *answer);
        const std::string& a = *answer;
        const bool yes = a == "yes";
        if (q.id == "problem_kind") out.problem.kind = *parse_problem_kind(a);
        else if (q.id == "num_classes") out.problem.num_classes = std::stoi(a);
        else if (q.id == "num_features") out.problem.num_features = std::stoi(a);
        else if (q.id == "season_length") out.problem.season_length = std::stoi(a);
        else if (q.id == "season_unit") out.problem.season_unit = a;
        else if (q.id == "expert_size_worst") { expert.worst = *parse_double(a); has_expert = true; }
        else if (q.id == "expert_size_threshold") expert.threshold = *parse_double(a);
        else if (q.id == "expert_size_target") expert.target = *parse_double(a);
        else if (q.id == "expert_size_unit") expert.unit = a;
        else if (q.id == "update_frequency") out.context.update_frequency = *parse_update_frequency(a);
        else if (q.id == "involves_human_subjects") out.context.involves_human_subjects = yes;
        else if (q.id == "eu_jurisdiction") out.context.eu_jurisdiction = yes;
        else if (q.id == "data_sensitivity") out.context.data_sensitivity = *parse_sensitivity(a);
        else if (q.id == "impacts_human_lives") out.context.impacts_human_lives = yes;
        else if (q.id == "representativeness_dimensions") {
            for (const std::string& item : split_list(a)) out.context.representativeness_dimensions.insert(*parse_dimension(item));
        } else if (q.id == "domain_legal_constraints") out.context.domain_legal_constraints = yes;
    }
    if (!problems.empty()) {
        std::string msg = "incomplete answers:";
        for (const std::string& p : problems) msg += "\n  " + p;
        throw CustomizationError(msg);
    }
    if (has_expert) out.problem.expert_size_kpi = expert;
    if (out.problem.kind != ProblemKind::TimeSeriesSeasonal) out.problem.season_unit = "years";
    check_spec(out.problem);
    return out;
}

}  // namespace drgm
