#include "taghort/preprocess.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "taghort/errors.hpp"

namespace taghort {

namespace {

void check_new_column(const FeatureTable& table, const std::string& name,
                      std::size_t n_values) {
    if (table.find(name)) throw Error("feature table: duplicate column \"" + name + "\"");
    if (!table.columns.empty() && n_values != table.n_rows)
        throw DimensionMismatch("column \"" + name + "\" has " + std::to_string(n_values) +
                                " values, table has " + std::to_string(table.n_rows) + " rows");
}

} // namespace

void FeatureTable::add_continuous(std::string name, std::vector<double> values) {
    check_new_column(*this, name, values.size());
    for (double v : values)
        if (!std::isfinite(v))
            throw NonFinite("column \"" + name + "\" contains a non-finite value");
    n_rows = values.size();
    columns.push_back({std::move(name), ColumnKind::Continuous, std::move(values), {}});
}

void FeatureTable::add_categorical(std::string name, std::vector<std::string> values) {
    check_new_column(*this, name, values.size());
    n_rows = values.size();
    columns.push_back({std::move(name), ColumnKind::Categorical, {}, std::move(values)});
}

void FeatureTable::add_binary(std::string name, std::vector<double> values) {
    check_new_column(*this, name, values.size());
    for (double v : values)
        if (v != 0.0 && v != 1.0)
            throw NonBinary("column \"" + name + "\" contains a value outside {0,1}");
    n_rows = values.size();
    columns.push_back({std::move(name), ColumnKind::Binary, std::move(values), {}});
}

const FeatureColumn* FeatureTable::find(const std::string& name) const {
    for (const auto& col : columns)
        if (col.name == name) return &col;
    return nullptr;
}

void TagDerivationConfig::add_quantile(std::string column, int q) {
    if (q < 2) throw Error("quantile rule for \"" + column + "\" needs q >= 2");
    rules.push_back({std::move(column), TagRuleKind::Quantile, q});
}

void TagDerivationConfig::add_onehot(std::string column) {
    rules.push_back({std::move(column), TagRuleKind::OneHot, 0});
}

void TagDerivationConfig::add_passthrough(std::string column) {
    rules.push_back({std::move(column), TagRuleKind::Passthrough, 0});
}

std::string format_value(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::vector<double> quantile_edges(std::vector<double> values, int q) {
    if (q < 2) throw Error("quantile_edges: q must be >= 2");
    if (values.empty()) throw Error("quantile_edges: empty value list");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    std::vector<double> edges;
    for (int i = 1; i < q; ++i) {
        // Linear interpolation between order statistics.
        const double h = static_cast<double>(n - 1) * static_cast<double>(i) /
                         static_cast<double>(q);
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const double frac = h - std::floor(h);
        double edge = values[lo];
        if (frac > 0.0 && lo + 1 < n) edge += frac * (values[lo + 1] - values[lo]);
        // Merge duplicates and drop edges at or below the minimum: a bin that
        // no value can reach would yield a tag no cohort can ever use.
        if (edge > values.front() && (edges.empty() || edge != edges.back()))
            edges.push_back(edge);
    }
    if (edges.empty())
        throw DegenerateBins("constant column leaves no interior quantile edges");
    return edges;
}

namespace {

struct TagGroup {
    std::vector<std::string> labels;
    std::vector<std::size_t> member_tag; // per sample, index into labels
};

TagGroup expand_quantile(const FeatureColumn& col, int q) {
    TagGroup group;
    const std::vector<double> edges = quantile_edges(col.numeric, q);
    const std::string& name = col.name;
    group.labels.push_back(name + "<" + format_value(edges.front()));
    for (std::size_t b = 1; b < edges.size(); ++b)
        group.labels.push_back(format_value(edges[b - 1]) + "<=" + name + "<" +
                               format_value(edges[b]));
    group.labels.push_back(format_value(edges.back()) + "<=" + name);
    group.member_tag.reserve(col.numeric.size());
    for (double v : col.numeric) {
        // Half-open bins: a value equal to an edge belongs to the upper bin.
        const auto bin = static_cast<std::size_t>(
            std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
        group.member_tag.push_back(bin);
    }
    return group;
}

TagGroup expand_onehot(const FeatureColumn& col) {
    TagGroup group;
    std::unordered_map<std::string, std::size_t> index; // category -> tag slot
    group.member_tag.reserve(col.category.size());
    for (const auto& value : col.category) {
        auto [it, inserted] = index.try_emplace(value, group.labels.size());
        if (inserted) group.labels.push_back(col.name + "=" + value);
        group.member_tag.push_back(it->second);
    }
    return group;
}

TagGroup expand_passthrough(const FeatureColumn& col) {
    TagGroup group;
    group.labels = {col.name + "=yes", col.name + "=no"};
    group.member_tag.reserve(col.numeric.size());
    for (double v : col.numeric) group.member_tag.push_back(v == 1.0 ? 0 : 1);
    return group;
}

} // namespace

TagMatrix derive_tags(const FeatureTable& table, const TagDerivationConfig& config) {
    if (config.rules.empty()) throw Error("tag derivation config has no descriptor rules");
    std::unordered_set<std::string> seen;
    for (const auto& rule : config.rules)
        if (!seen.insert(rule.column).second)
            throw Error("descriptor \"" + rule.column + "\" has more than one rule");

    std::vector<TagGroup> groups;
    groups.reserve(config.rules.size());
    for (const auto& rule : config.rules) {
        const FeatureColumn* col = table.find(rule.column);
        if (!col) throw UnknownColumn("descriptor column \"" + rule.column + "\" not found");
        switch (rule.kind) {
        case TagRuleKind::Quantile:
            if (col->kind != ColumnKind::Continuous)
                throw KindMismatch("quantile rule on non-continuous column \"" + rule.column + "\"");
            groups.push_back(expand_quantile(*col, rule.quantiles));
            break;
        case TagRuleKind::OneHot:
            if (col->kind != ColumnKind::Categorical)
                throw KindMismatch("one-hot rule on non-categorical column \"" + rule.column + "\"");
            groups.push_back(expand_onehot(*col));
            break;
        case TagRuleKind::Passthrough:
            if (col->kind != ColumnKind::Binary)
                throw KindMismatch("passthrough rule on non-binary column \"" + rule.column + "\"");
            groups.push_back(expand_passthrough(*col));
            break;
        }
    }

    std::size_t r = 0;
    for (const auto& group : groups) r += group.labels.size();
    const std::size_t n = table.rows();

    std::vector<std::uint8_t> values(n * r, 0);
    std::vector<std::string> dictionary;
    dictionary.reserve(r);
    std::size_t offset = 0;
    for (const auto& group : groups) {
        for (const auto& label : group.labels) dictionary.push_back(label);
        for (std::size_t i = 0; i < n; ++i)
            values[i * r + offset + group.member_tag[i]] = 1;
        offset += group.labels.size();
    }
    return TagMatrix(n, r, std::move(values), std::move(dictionary));
}

} // namespace taghort
