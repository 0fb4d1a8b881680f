#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "rankfd/errors.hpp"

namespace rankfd::cli {

namespace {

std::vector<std::vector<std::string>> parse_records(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;

    const auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    const auto end_record = [&] {
        end_field();
        // skip records that are entirely empty (trailing newline)
        if (!(record.size() == 1 && record[0].empty())) records.push_back(record);
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
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
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started && field.empty()) {
                    quoted = true;
                    field_started = true;
                } else {
                    field += c;
                }
                break;
            case ',': end_field(); break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                end_record();
                break;
            case '\n': end_record(); break;
            default:
                field += c;
                field_started = true;
                break;
        }
    }
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_data_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_double(const std::string& s, std::size_t row, const std::string& column) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    bool trailing_ok = true;
    for (const char* p = ptr; p < last; ++p)
        if (*p != ' ' && *p != '\t') trailing_ok = false;
    if (ec != std::errc{} || !trailing_ok)
        throw invalid_data_error("row " + std::to_string(row) + ": column '" +
                                 column + "' is not numeric: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

CsvTable read_csv(const std::string& path) {
    auto records = parse_records(read_file(path));
    if (records.empty()) throw invalid_data_error(path + ": empty CSV");
    CsvTable table;
    table.header = std::move(records.front());
    records.erase(records.begin());
    table.rows = std::move(records);
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        if (table.rows[r].size() != table.header.size())
            throw invalid_data_error(path + ": row " + std::to_string(r + 1) +
                                     " has " + std::to_string(table.rows[r].size()) +
                                     " fields, header has " +
                                     std::to_string(table.header.size()));
    return table;
}

LoadedDataset load_dataset(const std::string& path, const std::string& response,
                           const std::vector<std::string>& factors,
                           const std::string& levels_override) {
    if (factors.empty() || factors.size() > 2)
        throw invalid_data_error("need 1 or 2 factor columns, got " +
                                 std::to_string(factors.size()));
    const CsvTable table = read_csv(path);

    const auto column_index = [&](const std::string& name) {
        const auto it = std::find(table.header.begin(), table.header.end(), name);
        if (it == table.header.end())
            throw invalid_data_error(path + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - table.header.begin());
    };
    const std::size_t response_col = column_index(response);
    std::vector<std::size_t> factor_cols;
    for (const auto& f : factors) factor_cols.push_back(column_index(f));

    // collect observed levels per factor
    std::vector<std::vector<std::string>> levels(factors.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t f = 0; f < factors.size(); ++f) {
            const std::string& lv = table.rows[r][factor_cols[f]];
            if (lv.empty())
                throw invalid_data_error("row " + std::to_string(r + 1) +
                                         ": empty level in factor '" + factors[f] +
                                         "'");
            if (std::find(levels[f].begin(), levels[f].end(), lv) == levels[f].end())
                levels[f].push_back(lv);
        }
    }
    for (auto& lv : levels) std::sort(lv.begin(), lv.end());

    if (!levels_override.empty()) {
        const std::vector<std::string> per_factor = split(levels_override, ';');
        if (per_factor.size() != factors.size())
            throw invalid_data_error("--levels must list levels for " +
                                     std::to_string(factors.size()) + " factor(s)");
        for (std::size_t f = 0; f < factors.size(); ++f) {
            std::vector<std::string> wanted = split(per_factor[f], ',');
            std::vector<std::string> sorted_wanted = wanted;
            std::sort(sorted_wanted.begin(), sorted_wanted.end());
            if (sorted_wanted != levels[f])
                throw invalid_data_error("--levels for factor '" + factors[f] +
                                         "' does not match the observed levels");
            levels[f] = std::move(wanted);
        }
    }

    const auto level_pos = [&](std::size_t f, const std::string& lv) {
        return static_cast<std::size_t>(
            std::find(levels[f].begin(), levels[f].end(), lv) - levels[f].begin());
    };

    const std::size_t a = levels[0].size();
    const std::size_t b = factors.size() == 2 ? levels[1].size() : 1;
    std::vector<Sample> groups(a * b);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        std::size_t cell = level_pos(0, row[factor_cols[0]]);
        if (factors.size() == 2)
            cell = cell * b + level_pos(1, row[factor_cols[1]]);
        groups[cell].push_back(parse_double(row[response_col], r + 1, response));
    }

    std::vector<std::string> cell_labels;
    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            const std::size_t cell = i * b + j;
            const std::string label = factors.size() == 2
                                          ? levels[0][i] + ":" + levels[1][j]
                                          : levels[0][i];
            if (groups[cell].empty())
                throw invalid_data_error("no observations for cell (" + label + ")");
            if (groups[cell].size() < 2)
                throw insufficient_replication_error("cell (" + label +
                                                     ") has a single observation");
            cell_labels.push_back(label);
        }
    }

    std::optional<TwoWayLayout> layout;
    if (factors.size() == 2) layout = TwoWayLayout{a, b};
    return LoadedDataset{Dataset(std::move(groups), layout), factors, levels,
                         std::move(cell_labels)};
}

num::Matrix load_contrast_csv(const std::string& path) {
    const auto records = parse_records(read_file(path));
    if (records.empty()) throw invalid_contrast_error(path + ": empty contrast file");
    const std::size_t cols = records.front().size();
    num::Matrix m(records.size(), cols);
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].size() != cols)
            throw invalid_contrast_error(path + ": ragged row " +
                                         std::to_string(i + 1));
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = parse_double(records[i][j], i + 1, "contrast");
    }
    return m;
}

} // namespace rankfd::cli
