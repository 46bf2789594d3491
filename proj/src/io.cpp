#include "taghort/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "taghort/errors.hpp"

namespace taghort {

std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

double round_sig12(double v) { return std::strtod(format_sig12(v).c_str(), nullptr); }

namespace {

// Minimal CSV field splitter with double-quote support ("" escapes a quote).
std::vector<std::string> split_line(const std::string& line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t pos = 0; pos < line.size(); ++pos) {
        const char c = line[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < line.size() && line[pos + 1] == '"') {
                    field += '"';
                    ++pos;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    if (quoted)
        throw ParseError("line " + std::to_string(line_no) + ": unterminated quoted field");
    fields.push_back(std::move(field));
    return fields;
}

double parse_double(const std::string& text, std::size_t line_no, std::size_t column,
                    const std::string& column_name) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("line " + std::to_string(line_no) + ", column " +
                         std::to_string(column + 1) + " (\"" + column_name +
                         "\"): expected a number, got \"" + text + "\"");
    return v;
}

} // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open \"" + path.string() + "\"");
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && table.header.empty()) continue;
        auto fields = split_line(line, line_no);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size())
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(table.header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
    }
    if (table.header.empty()) throw ParseError("\"" + path.string() + "\" is empty");
    return table;
}

namespace {

std::string quote_if_needed(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write \"" + path.string() + "\"");
    for (std::size_t j = 0; j < table.header.size(); ++j)
        out << (j ? "," : "") << quote_if_needed(table.header[j]);
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? "," : "") << quote_if_needed(row[j]);
        out << "\n";
    }
}

ImportanceCsv read_importance_csv(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    if (table.header.empty() || table.header[0] != "sample_id")
        throw ParseError("\"" + path.string() + "\": first column must be sample_id");
    if (table.header.size() < 2)
        throw ParseError("\"" + path.string() + "\": no importance columns");
    if (table.rows.empty()) throw ParseError("\"" + path.string() + "\": no data rows");

    std::vector<std::string> names(table.header.begin() + 1, table.header.end());
    Matrix values(table.rows.size(), names.size());
    std::vector<std::string> ids;
    ids.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        ids.push_back(row[0]);
        for (std::size_t j = 0; j < names.size(); ++j)
            values(i, j) = parse_double(row[j + 1], i + 2, j + 1, names[j]);
    }
    return ImportanceCsv{std::move(ids), ImportanceMatrix(std::move(values), std::move(names))};
}

FeatureTable read_features_csv(const std::filesystem::path& path,
                               const TagDerivationConfig& config,
                               const std::vector<std::string>& expected_ids) {
    const CsvTable table = read_csv(path);
    if (table.header.empty() || table.header[0] != "sample_id")
        throw ParseError("\"" + path.string() + "\": first column must be sample_id");

    std::unordered_map<std::string, std::size_t> column_of;
    for (std::size_t j = 0; j < table.header.size(); ++j) column_of[table.header[j]] = j;

    std::unordered_map<std::string, std::size_t> row_of;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (!row_of.emplace(table.rows[i][0], i).second)
            throw ParseError("\"" + path.string() + "\": duplicate sample_id \"" +
                             table.rows[i][0] + "\"");
    }
    if (row_of.size() != expected_ids.size())
        throw ParseError("\"" + path.string() + "\": has " + std::to_string(row_of.size()) +
                         " samples, importance file has " +
                         std::to_string(expected_ids.size()));
    std::vector<std::size_t> order;
    order.reserve(expected_ids.size());
    for (const auto& id : expected_ids) {
        const auto it = row_of.find(id);
        if (it == row_of.end())
            throw ParseError("\"" + path.string() + "\": sample_id \"" + id +
                             "\" from the importance file is missing");
        order.push_back(it->second);
    }

    FeatureTable out;
    for (const auto& rule : config.rules) {
        const auto col_it = column_of.find(rule.column);
        if (col_it == column_of.end())
            throw UnknownColumn("\"" + path.string() + "\": no column \"" + rule.column + "\"");
        const std::size_t col = col_it->second;
        if (rule.kind == TagRuleKind::OneHot) {
            std::vector<std::string> values;
            values.reserve(order.size());
            for (std::size_t i : order) values.push_back(table.rows[i][col]);
            out.add_categorical(rule.column, std::move(values));
        } else {
            std::vector<double> values;
            values.reserve(order.size());
            for (std::size_t i : order)
                values.push_back(parse_double(table.rows[i][col], i + 2, col, rule.column));
            if (rule.kind == TagRuleKind::Passthrough) {
                for (std::size_t idx = 0; idx < values.size(); ++idx)
                    if (values[idx] != 0.0 && values[idx] != 1.0)
                        throw ParseError("\"" + path.string() + "\", column \"" + rule.column +
                                         "\": value " + table.rows[order[idx]][col] +
                                         " is not 0/1");
                out.add_binary(rule.column, std::move(values));
            } else {
                out.add_continuous(rule.column, std::move(values));
            }
        }
    }
    return out;
}

void write_importance_csv(const std::filesystem::path& path,
                          const std::vector<std::string>& sample_ids,
                          const ImportanceMatrix& W) {
    CsvTable table;
    table.header.push_back("sample_id");
    for (const auto& name : W.feature_names) table.header.push_back(name);
    for (std::size_t i = 0; i < W.samples(); ++i) {
        std::vector<std::string> row;
        row.push_back(sample_ids[i]);
        for (std::size_t j = 0; j < W.features(); ++j)
            row.push_back(format_sig12(W.values(i, j)));
        table.rows.push_back(std::move(row));
    }
    write_csv(path, table);
}

void write_features_csv(const std::filesystem::path& path,
                        const std::vector<std::string>& sample_ids,
                        const FeatureTable& features) {
    CsvTable table;
    table.header.push_back("sample_id");
    for (const auto& col : features.columns) table.header.push_back(col.name);
    for (std::size_t i = 0; i < features.rows(); ++i) {
        std::vector<std::string> row;
        row.push_back(sample_ids[i]);
        for (const auto& col : features.columns) {
            if (col.kind == ColumnKind::Categorical)
                row.push_back(col.category[i]);
            else
                row.push_back(format_sig12(col.numeric[i]));
        }
        table.rows.push_back(std::move(row));
    }
    write_csv(path, table);
}

} // namespace taghort
