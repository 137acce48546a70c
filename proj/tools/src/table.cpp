#include "table.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace favprop::cli {

namespace {

bool looks_like_integer(const std::string& cell) {
    if (cell.empty() || cell.size() > 19) return false;
    std::size_t i = cell[0] == '-' ? 1 : 0;
    if (i == cell.size()) return false;
    if (cell[i] == '0' && cell.size() > i + 1) return false;  // no leading zeros
    return std::all_of(cell.begin() + i, cell.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

bool try_parse_real(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) return false;
    // ERANGE with +-HUGE_VAL is overflow; ERANGE on subnormals is fine
    if (errno == ERANGE && (value == HUGE_VAL || value == -HUGE_VAL)) return false;
    out = value;
    return true;
}

}  // namespace

std::string format_real(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

double parse_real(const std::string& text) {
    double value = 0.0;
    if (!try_parse_real(text, value))
        throw std::runtime_error("not a real number: '" + text + "'");
    return value;
}

std::size_t Table::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw std::runtime_error("table has no column '" + std::string(name) + "'");
}

std::vector<double> Table::numeric_column(std::string_view name) const {
    const std::size_t idx = column_index(name);
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& row : rows) values.push_back(parse_real(row.at(idx)));
    return values;
}

std::string Table::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw std::runtime_error("table row width does not match the header");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += row[c];
        }
        out += '\n';
    }
    return out;
}

Table Table::from_csv(std::string_view text) {
    Table table;
    std::size_t pos = 0;
    bool header = true;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        if (line.empty()) continue;

        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string_view::npos) {
                cells.emplace_back(line.substr(start));
                break;
            }
            cells.emplace_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (header) {
            table.columns = std::move(cells);
            header = false;
        } else {
            if (cells.size() != table.columns.size())
                throw std::runtime_error("malformed CSV: ragged row");
            table.rows.push_back(std::move(cells));
        }
    }
    if (table.columns.empty()) throw std::runtime_error("malformed CSV: no header row");
    return table;
}

nlohmann::ordered_json Table::to_json() const {
    nlohmann::ordered_json doc;
    doc["columns"] = columns;
    nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
        nlohmann::ordered_json row_json = nlohmann::ordered_json::array();
        for (const std::string& cell : row) {
            double value = 0.0;
            if (looks_like_integer(cell))
                row_json.push_back(std::stoll(cell));
            else if (try_parse_real(cell, value))
                row_json.push_back(value);
            else
                row_json.push_back(cell);
        }
        rows_json.push_back(std::move(row_json));
    }
    doc["rows"] = std::move(rows_json);
    return doc;
}

Table Table::from_json(const nlohmann::ordered_json& doc) {
    Table table;
    table.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& row_json : doc.at("rows")) {
        std::vector<std::string> row;
        row.reserve(row_json.size());
        for (const auto& cell : row_json) {
            if (cell.is_string())
                row.push_back(cell.get<std::string>());
            else if (cell.is_number_integer())
                row.push_back(std::to_string(cell.get<long long>()));
            else
                row.push_back(format_real(cell.get<double>()));
        }
        if (row.size() != table.columns.size())
            throw std::runtime_error("malformed table JSON: ragged row");
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace favprop::cli
