#pragma once

#include <string>
#include <vector>

#include "taghort/types.hpp"

namespace taghort {

enum class ColumnKind { Continuous, Categorical, Binary };

struct FeatureColumn {
    std::string name;
    ColumnKind kind = ColumnKind::Continuous;
    std::vector<double> numeric;        // Continuous or Binary
    std::vector<std::string> category;  // Categorical
};

// Raw descriptor features. Values must be complete: impute or drop rows with
// missing data before building the table.
struct FeatureTable {
    std::size_t rows() const { return n_rows; }

    void add_continuous(std::string name, std::vector<double> values);
    void add_categorical(std::string name, std::vector<std::string> values);
    void add_binary(std::string name, std::vector<double> values);

    const FeatureColumn* find(const std::string& name) const;

    std::size_t n_rows = 0;
    std::vector<FeatureColumn> columns;
};

enum class TagRuleKind { Quantile, OneHot, Passthrough };

struct TagRule {
    std::string column;
    TagRuleKind kind = TagRuleKind::Quantile;
    int quantiles = 0; // Quantile rules only, >= 2
};

// Which descriptor columns become tags and how. One rule per column:
// Quantile(q) bins a continuous column, OneHot expands a categorical column,
// Passthrough turns a binary column into a yes/no tag pair.
struct TagDerivationConfig {
    void add_quantile(std::string column, int q);
    void add_onehot(std::string column);
    void add_passthrough(std::string column);

    std::vector<TagRule> rules;
};

// Interior bin edges at the i/q empirical quantiles (linear interpolation
// between order statistics), deduplicated. Throws DegenerateBins when the
// column is constant and no interior edge survives.
std::vector<double> quantile_edges(std::vector<double> values, int q);

// Expands descriptor columns into the binary tag matrix. Bin intervals are
// half-open [lo, hi): a value equal to an edge falls in the upper bin. Every
// sample satisfies exactly one tag per descriptor.
TagMatrix derive_tags(const FeatureTable& table, const TagDerivationConfig& config);

// Shortest decimal rendering used inside tag labels ("2.75", not "2.750000").
std::string format_value(double v);

} // namespace taghort
