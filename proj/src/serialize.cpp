#include "tscv/serialize.hpp"

#include <istream>
#include <ostream>

namespace tscv {

Json fold_to_json(const Fold& fold) {
    Json json;
    json["k"] = fold.k;
    json["train"] = {fold.train.first, fold.train.last};
    json["test"] = {fold.test.first, fold.test.last};
    return json;
}

Fold fold_from_json(const Json& json) {
    Fold fold;
    fold.k = json.at("k").get<std::size_t>();
    fold.train = IndexRange{json.at("train").at(0).get<std::size_t>(), json.at("train").at(1).get<std::size_t>()};
    fold.test = IndexRange{json.at("test").at(0).get<std::size_t>(), json.at("test").at(1).get<std::size_t>()};
    return fold;
}

Json scored_fold_to_json(const ScoredFold& fold) {
    Json json;
    json["fold"] = fold_to_json(fold.fold);
    json["scores"] = fold.scores;
    json["positive_ratio"] = fold.positive_ratio;
    json["valid"] = fold.valid;
    if (fold.auc_pr) {
        json["auc_pr"] = *fold.auc_pr;
    }
    return json;
}

ScoredFold scored_fold_from_json(const Json& json) {
    ScoredFold fold;
    fold.fold = fold_from_json(json.at("fold"));
    fold.scores = json.at("scores").get<std::vector<double>>();
    fold.positive_ratio = json.at("positive_ratio").get<double>();
    fold.valid = json.at("valid").get<bool>();
    if (json.contains("auc_pr")) {
        fold.auc_pr = json.at("auc_pr").get<double>();
    }
    return fold;
}

Json record_to_json(const ExperimentRecord& record) {
    Json json;
    json["dataset_name"] = record.dataset_name;
    json["classifier_id"] = record.classifier_id;
    json["strategy"] = std::string(to_string(record.strategy));
    json["K"] = record.K;
    json["delta"] = record.delta;
    json["seed"] = record.seed;
    Json folds = Json::array();
    for (const auto& fold : record.scored_folds) {
        folds.push_back(scored_fold_to_json(fold));
    }
    json["scored_folds"] = std::move(folds);
    if (record.median_auc_pr) {
        json["median_auc_pr"] = *record.median_auc_pr;
    }
    if (record.sensitivity_auc) {
        json["sensitivity_auc"] = *record.sensitivity_auc;
    }
    if (record.skip_reason) {
        json["skip_reason"] = *record.skip_reason;
    }
    return json;
}

ExperimentRecord record_from_json(const Json& json) {
    ExperimentRecord record;
    record.dataset_name = json.at("dataset_name").get<std::string>();
    record.classifier_id = json.at("classifier_id").get<std::string>();
    record.strategy = parse_strategy(json.at("strategy").get<std::string>());
    record.K = json.at("K").get<std::size_t>();
    record.delta = json.at("delta").get<std::size_t>();
    record.seed = json.at("seed").get<std::uint64_t>();
    for (const auto& fold : json.at("scored_folds")) {
        record.scored_folds.push_back(scored_fold_from_json(fold));
    }
    if (json.contains("median_auc_pr")) {
        record.median_auc_pr = json.at("median_auc_pr").get<double>();
    }
    if (json.contains("sensitivity_auc")) {
        record.sensitivity_auc = json.at("sensitivity_auc").get<double>();
    }
    if (json.contains("skip_reason")) {
        record.skip_reason = json.at("skip_reason").get<std::string>();
    }
    return record;
}

std::string to_json_line(const ExperimentRecord& record) {
    return record_to_json(record).dump();
}

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    for (const auto& record : records) {
        out << to_json_line(record) << '\n';
    }
}

std::vector<Json> read_json_lines(std::istream& in) {
    std::vector<Json> lines;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            lines.push_back(Json::parse(line));
        } catch (const nlohmann::json::exception& e) {
            throw IngestionError("malformed JSON at line " + std::to_string(number) + ": " + e.what());
        }
    }
    return lines;
}

std::vector<ExperimentRecord> read_records(std::istream& in) {
    std::vector<ExperimentRecord> records;
    std::size_t number = 0;
    for (const auto& json : read_json_lines(in)) {
        ++number;
        try {
            records.push_back(record_from_json(json));
        } catch (const nlohmann::json::exception& e) {
            throw IngestionError("record " + std::to_string(number) + " is not an ExperimentRecord: " + e.what());
        }
    }
    return records;
}

}  // namespace tscv
