#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

namespace favprop::cli {

// %.17g — enough digits that parsing recovers the exact double
std::string format_real(double x);
double parse_real(const std::string& text);

// Columnar table with string cells. CSV is the canonical byte-exact form
// (header row, LF endings, '.' decimal separator); JSON carries the same
// cells typed as integer, real or string.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t column_index(std::string_view name) const;  // throws if absent
    std::vector<double> numeric_column(std::string_view name) const;

    std::string to_csv() const;
    static Table from_csv(std::string_view text);

    nlohmann::ordered_json to_json() const;  // {"columns": [...], "rows": [[...]]}
    static Table from_json(const nlohmann::ordered_json& doc);
};

}  // namespace favprop::cli
