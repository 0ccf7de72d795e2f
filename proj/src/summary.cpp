#include "tscv/metrics.hpp"
#include "tscv/runner.hpp"
#include "tscv/stats.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <tuple>

namespace tscv {

namespace {

using Values = std::vector<double>;

struct ByStrategy {
    Values wf;
    Values sw;

    Values& operator[](Strategy s) { return s == Strategy::WalkForward ? wf : sw; }
};

std::string quote_csv(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (const char c : field) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

std::string median_cell(const Values& values) {
    return values.empty() ? std::string() : format_number(median(values));
}

std::string sigma_cell(const Values& values) {
    const auto summary = aggregate(values);
    return summary ? format_number(summary->sigma) : std::string();
}

/// One-sided: SW greater than WF.
std::string p_cell(const Values& wf, const Values& sw) {
    if (wf.empty() || sw.empty()) {
        return {};
    }
    return format_number(mann_whitney_u(wf, sw, Alternative::Greater).p_value);
}

std::vector<std::string> median_row(std::string key, const ByStrategy& group) {
    return {std::move(key), median_cell(group.wf), median_cell(group.sw), p_cell(group.wf, group.sw)};
}

std::vector<std::string> spread_row(std::string key, const ByStrategy& group) {
    return {std::move(key),          median_cell(group.wf), sigma_cell(group.wf),
            median_cell(group.sw),   sigma_cell(group.sw),  p_cell(group.wf, group.sw)};
}

bool included(const ExperimentRecord& record, const std::string& dataset) {
    return dataset.empty() || record.dataset_name == dataset;
}

}  // namespace

std::string format_number(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

std::string CsvTable::to_csv() const {
    std::string out;
    const auto append_row = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += quote_csv(row[i]);
        }
        out += '\n';
    };
    append_row(header);
    for (const auto& row : rows) {
        append_row(row);
    }
    return out;
}

std::string classifier_family(std::string_view classifier_id) {
    if (classifier_id == "rocket") {
        return "DL";
    }
    if (classifier_id == "rf" || classifier_id == "logistic") {
        return "Shallow";
    }
    return "Baseline";
}

SummaryTables summarize(const std::vector<ExperimentRecord>& records, const std::string& dataset) {
    std::vector<std::string> classifier_order;
    std::map<std::string, ByStrategy> by_classifier;
    std::map<std::size_t, ByStrategy> by_k;
    std::map<std::string, ByStrategy> sens_by_classifier;
    std::map<std::size_t, ByStrategy> sens_by_k;
    std::map<std::string, ByStrategy> by_family;
    ByStrategy pooled;

    for (const auto& record : records) {
        if (!included(record, dataset)) {
            continue;
        }
        if (std::find(classifier_order.begin(), classifier_order.end(), record.classifier_id) ==
            classifier_order.end()) {
            classifier_order.push_back(record.classifier_id);
        }
        const std::string family = classifier_family(record.classifier_id);
        for (const auto& fold : record.scored_folds) {
            if (!fold.valid || !fold.auc_pr) {
                continue;
            }
            by_classifier[record.classifier_id][record.strategy].push_back(*fold.auc_pr);
            by_k[record.K][record.strategy].push_back(*fold.auc_pr);
            by_family[family][record.strategy].push_back(*fold.auc_pr);
            pooled[record.strategy].push_back(*fold.auc_pr);
        }
        if (record.sensitivity_auc) {
            sens_by_classifier[record.classifier_id][record.strategy].push_back(*record.sensitivity_auc);
            sens_by_k[record.K][record.strategy].push_back(*record.sensitivity_auc);
        }
    }

    SummaryTables tables;
    tables.family_tests.header = {"comparison", "condition", "p_value"};
    auto& shallow = by_family["Shallow"];
    auto& deep = by_family["DL"];
    for (const auto strategy : {Strategy::WalkForward, Strategy::SlidingWindow}) {
        // H1: DL exceeds Shallow.
        const Values& a = shallow[strategy];
        const Values& b = deep[strategy];
        tables.family_tests.rows.push_back(
            {"Shallow vs. DL", std::string(to_string(strategy)),
             a.empty() || b.empty() ? std::string() : format_number(mann_whitney_u(a, b, Alternative::Greater).p_value)});
    }
    for (const std::string family : {"DL", "Shallow", "Baseline"}) {
        const auto it = by_family.find(family);
        if (it != by_family.end() && (!it->second.wf.empty() || !it->second.sw.empty())) {
            tables.family_tests.rows.push_back({"WF vs. SW", family, p_cell(it->second.wf, it->second.sw)});
        }
    }
    tables.family_tests.rows.push_back({"WF vs. SW", "All", p_cell(pooled.wf, pooled.sw)});

    tables.classifier_medians.header = {"classifier", "M_WF", "M_SW", "p_value"};
    tables.classifier_sensitivity.header = {"classifier", "M_WF", "sigma_WF", "M_SW", "sigma_SW", "p_value"};
    for (const auto& id : classifier_order) {
        tables.classifier_medians.rows.push_back(median_row(id, by_classifier[id]));
        tables.classifier_sensitivity.rows.push_back(spread_row(id, sens_by_classifier[id]));
    }

    tables.k_medians.header = {"K", "M_WF", "M_SW", "p_value"};
    tables.k_sensitivity.header = {"K", "M_WF", "sigma_WF", "M_SW", "sigma_SW", "p_value"};
    std::vector<std::size_t> ks;
    for (const auto& record : records) {
        if (included(record, dataset)) {
            ks.push_back(record.K);
        }
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    for (const auto K : ks) {
        tables.k_medians.rows.push_back(median_row(std::to_string(K), by_k[K]));
        tables.k_sensitivity.rows.push_back(spread_row(std::to_string(K), sens_by_k[K]));
    }
    return tables;
}

CsvTable emit_plotdata(const std::vector<ExperimentRecord>& records) {
    using Row = std::tuple<Strategy, std::string, std::size_t, std::size_t, double, double>;
    std::vector<Row> rows;
    for (const auto& record : records) {
        for (const auto& fold : record.scored_folds) {
            if (fold.valid && fold.auc_pr) {
                rows.emplace_back(record.strategy, record.classifier_id, record.K, fold.fold.k,
                                  *fold.auc_pr, fold.positive_ratio);
            }
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a)) <
               std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b));
    });
    CsvTable table;
    table.header = {"strategy", "classifier", "K", "fold", "auc_pr", "positive_ratio"};
    for (const auto& [strategy, classifier, K, k, ap, ratio] : rows) {
        table.rows.push_back({std::string(to_string(strategy)), classifier, std::to_string(K), std::to_string(k),
                              format_number(ap), format_number(ratio)});
    }
    return table;
}

}  // namespace tscv
