#pragma once

#include "tscv/core.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace tscv {

using Json = nlohmann::ordered_json;

/// {"k":..,"train":[start,end],"test":[start,end]}, 1-based inclusive.
[[nodiscard]] Json fold_to_json(const Fold& fold);
[[nodiscard]] Fold fold_from_json(const Json& json);

[[nodiscard]] Json scored_fold_to_json(const ScoredFold& fold);
[[nodiscard]] ScoredFold scored_fold_from_json(const Json& json);

/// Optional fields are omitted when absent.
[[nodiscard]] Json record_to_json(const ExperimentRecord& record);
[[nodiscard]] ExperimentRecord record_from_json(const Json& json);

/// One compact JSON object, no trailing newline.
[[nodiscard]] std::string to_json_line(const ExperimentRecord& record);

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records);
/// Blank lines are skipped; malformed lines raise IngestionError with the line number.
[[nodiscard]] std::vector<ExperimentRecord> read_records(std::istream& in);
[[nodiscard]] std::vector<Json> read_json_lines(std::istream& in);

}  // namespace tscv
