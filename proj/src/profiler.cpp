#include "drgm/profiler.hpp"

#include "drgm/builtin.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace drgm {

std::size_t Dataset::column_index(std::string_view name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw ProfileError("column '" + std::string(name) + "' not found in header");
    return static_cast<std::size_t>(it - columns.begin());
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_decimal(std::string_view cell) {
    cell = trim(cell);
    if (cell.empty()) return std::nullopt;
    if (cell.front() == '+') cell.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

bool is_missing(std::string_view cell) { return trim(cell).empty(); }

// Splits RFC-4180 text into records. Quoted fields may contain commas,
// doubled quotes and line breaks; CRLF and LF both end a record.
std::vector<std::vector<std::string>> split_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t i = 0;
    auto end_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        records.push_back(std::move(record));
        record.clear();
        field_started = false;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            ++i;
            continue;
        }
        if (c == '"' && trim(field).empty()) {
            field.clear();
            quoted = true;
            field_started = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            field_started = true;
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            // Blank lines carry no record.
            if (field_started || !field.empty() || !record.empty()) end_record();
        } else {
            field += c;
            field_started = true;
        }
        ++i;
    }
    if (quoted) throw ProfileError("unterminated quoted field at end of input");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

}  // namespace

Dataset parse_csv(std::string_view text, std::string_view target) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    auto records = split_records(text);
    if (records.empty()) throw ProfileError("CSV input has no header row");

    Dataset ds;
    for (const std::string& name : records.front()) ds.columns.emplace_back(trim(name));
    const std::size_t width = ds.columns.size();
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != width) {
            throw ProfileError("row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                               " fields, header has " + std::to_string(width));
        }
        ds.rows.push_back(std::move(records[r]));
    }
    ds.types.assign(width, ColumnType::Numeric);
    for (std::size_t c = 0; c < width; ++c) {
        for (const auto& row : ds.rows) {
            if (!is_missing(row[c]) && !parse_decimal(row[c])) {
                ds.types[c] = ColumnType::Categorical;
                break;
            }
        }
    }
    if (!target.empty()) ds.column_index(target);
    return ds;
}

Dataset ingest_csv(const DatasetDescriptor& descriptor) {
    std::ifstream in(descriptor.source, std::ios::binary);
    if (!in) throw ProfileError("cannot open dataset file '" + descriptor.source.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), descriptor.target);
}

double balancedness(const std::map<std::string, std::size_t>& class_counts, BalanceMetric metric) {
    if (class_counts.size() < 2) {
        throw ProfileError("balancedness needs at least two classes, got " + std::to_string(class_counts.size()));
    }
    std::size_t lo = SIZE_MAX, hi = 0, total = 0;
    for (const auto& [label, count] : class_counts) {
        if (count == 0) throw ProfileError("class '" + label + "' has no samples");
        lo = std::min(lo, count);
        hi = std::max(hi, count);
        total += count;
    }
    if (metric == BalanceMetric::MinMaxRatio) return 100.0 * static_cast<double>(lo) / static_cast<double>(hi);
    if (lo == hi) return 100.0;
    double entropy = 0.0;
    for (const auto& [label, count] : class_counts) {
        const double p = static_cast<double>(count) / static_cast<double>(total);
        entropy -= p * std::log(p);
    }
    return 100.0 * entropy / std::log(static_cast<double>(class_counts.size()));
}

DatasetProfile profile(const Dataset& dataset, const DatasetDescriptor& descriptor) {
    DatasetProfile out;
    out.dataset = descriptor.name;
    out.target = descriptor.target;
    out.problem_kind = descriptor.problem.kind;
    out.preprocessing_complete = descriptor.preprocessing_complete;
    out.row_count = dataset.row_count();

    const std::size_t target = dataset.column_index(descriptor.target);
    for (const std::string& attr : descriptor.protected_attributes) dataset.column_index(attr);

    const double rows = static_cast<double>(out.row_count);
    std::size_t missing_total = 0;
    for (std::size_t c = 0; c < dataset.columns.size(); ++c) {
        std::size_t missing = 0;
        for (const auto& row : dataset.rows) missing += is_missing(row[c]) ? 1 : 0;
        missing_total += missing;
        out.column_missing[dataset.columns[c]] = out.row_count == 0 ? 0.0 : static_cast<double>(missing) / rows;
    }
    const double cells = rows * static_cast<double>(dataset.columns.size());
    out.missing_fraction = cells == 0.0 ? 0.0 : static_cast<double>(missing_total) / cells;

    std::set<std::string> distinct;
    for (const auto& row : dataset.rows) {
        std::string key;
        for (const std::string& cell : row) {
            key += trim(cell);
            key += '\x1f';
        }
        distinct.insert(std::move(key));
    }
    out.duplicate_fraction = out.row_count == 0 ? 0.0 : static_cast<double>(out.row_count - distinct.size()) / rows;

    const MLProblemSpec& problem = descriptor.problem;
    if (problem.kind == ProblemKind::TimeSeriesSeasonal) {
        if (problem.season_length < 1) throw ProfileError("seasonal problem spec has no season length");
        out.size_measure = static_cast<double>(out.row_count * 10 / static_cast<std::size_t>(problem.season_length)) / 10.0;
        out.size_unit = problem.season_unit + " (seasons) worth of data";
    } else {
        out.size_measure = rows;
        out.size_unit = problem.kind == ProblemKind::ClassificationImage ? "images" : "data points";
    }

    std::size_t missing_targets = 0;
    if (is_classification(problem.kind)) {
        for (const auto& row : dataset.rows) {
            std::string_view label = trim(row[target]);
            if (label.empty()) {
                ++missing_targets;
                continue;
            }
            ++out.class_counts[std::string(label)];
        }
        out.balancedness_percent = balancedness(out.class_counts);
    } else if (problem.kind == ProblemKind::Regression) {
        if (dataset.types[target] != ColumnType::Numeric) {
            throw ProfileError("regression target '" + descriptor.target + "' is not numeric");
        }
        std::vector<double> values;
        for (const auto& row : dataset.rows) {
            if (auto v = parse_decimal(row[target])) values.push_back(*v);
            else ++missing_targets;
        }
        constexpr std::size_t kMaxShapiro = 5000;
        if (values.size() > kMaxShapiro) {
            std::sort(values.begin(), values.end());
            std::vector<double> sample(kMaxShapiro);
            for (std::size_t i = 0; i < kMaxShapiro; ++i) sample[i] = values[i * values.size() / kMaxShapiro];
            out.notes.push_back("Shapiro-Wilk computed on " + std::to_string(kMaxShapiro) +
                                " evenly spaced order statistics of " + std::to_string(values.size()) + " values");
            values = std::move(sample);
        }
        out.shapiro = shapiro_wilk(values);
    }
    if (missing_targets > 0) {
        out.notes.push_back(std::to_string(missing_targets) + " rows have no target value and were excluded");
    }
    if (!descriptor.protected_attributes.empty()) {
        std::string list;
        for (const std::string& attr : descriptor.protected_attributes) list += (list.empty() ? "" : ", ") + attr;
        out.notes.push_back("protected attributes present: " + list);
    }
    if (!descriptor.preprocessing_complete) {
        out.notes.push_back("preprocessing not complete; row count cannot be used for the data-size KPI yet");
    }
    return out;
}

EvaluationStrategy map_profile_to_strategy(const DatasetProfile& profile, const GoalModel& model,
                                           const std::map<std::string, Assignment>& manual,
                                           const std::string& strategy_name) {
    EvaluationStrategy strategy;
    strategy.name = strategy_name.empty() ? profile.dataset : strategy_name;
    strategy.assignments = manual;

    std::vector<std::string> uncovered;
    for (const Element& e : model.elements) {
        if (!e.applicable || !model.is_leaf(e.id) || manual.count(e.id)) continue;
        if (e.id == ids::kSizeKpi) {
            if (!profile.preprocessing_complete) {
                throw EvaluationError("data-size KPI can only be assigned after preprocessing that removes data "
                                      "points is complete (dataset '" + profile.dataset + "')");
            }
            strategy.assignments[e.id] = KpiMeasurement{profile.size_measure};
        } else if (e.id == ids::kBalanceKpi && e.kpi == class_balance_kpi() && profile.balancedness_percent) {
            strategy.assignments[e.id] = KpiMeasurement{*profile.balancedness_percent};
        } else if (e.id == ids::kBalanceKpi && e.kpi == normality_kpi() && profile.shapiro) {
            strategy.assignments[e.id] = KpiMeasurement{profile.shapiro->p_value};
        } else {
            uncovered.push_back(e.id);
        }
    }
    if (!uncovered.empty()) {
        std::string list;
        for (const std::string& id : uncovered) {
            const Element& e = model.at(id);
            list += (list.empty() ? "" : ", ") + id + " (" + e.name + ")";
        }
        throw EvaluationError("no value for leaves the profiler cannot measure: " + list);
    }
    return strategy;
}

}  // namespace drgm
