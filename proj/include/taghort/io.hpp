#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "taghort/preprocess.hpp"
#include "taghort/types.hpp"

namespace taghort {

// All emitted numbers use 12 significant digits so that rereading a report
// and recomputing stays within 1e-9.
std::string format_sig12(double v);

// Rounds through the 12-significant-digit representation; applied to every
// numeric value before it is placed in a JSON document.
double round_sig12(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& table);

struct ImportanceCsv {
    std::vector<std::string> sample_ids;
    ImportanceMatrix importances;
};

// Importance file: header row `sample_id,<feature names...>`, numeric cells.
ImportanceCsv read_importance_csv(const std::filesystem::path& path);

// Descriptor file keyed by sample_id; rows are joined against `expected_ids`
// (the importance file order) and every id must appear exactly once. Only
// columns named by the config are parsed, with the kind the rule implies.
FeatureTable read_features_csv(const std::filesystem::path& path,
                               const TagDerivationConfig& config,
                               const std::vector<std::string>& expected_ids);

void write_importance_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& sample_ids,
                          const ImportanceMatrix& W);

void write_features_csv(const std::filesystem::path& path,
                        const std::vector<std::string>& sample_ids,
                        const FeatureTable& table);

} // namespace taghort
