#include "loopcount/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <json.hpp>

namespace loopcount {

std::string format_real(qreal value) {
    char buf[64];
    quadmath_snprintf(buf, sizeof buf, "%.12Qg", value);
    return buf;
}

Cell Cell::make_text(std::string s) { return {Kind::text, std::move(s), 0}; }

Cell Cell::make_count(const BigCount& value) { return {Kind::count, value.to_string(), 0}; }

Cell Cell::make_real(qreal value) {
    Cell c;
    c.kind = Kind::real;
    c.text = format_real(value);
    c.real_value = std::strtod(c.text.c_str(), nullptr);
    return c;
}

Cell Cell::make_integer(long long value) { return {Kind::integer, std::to_string(value), 0}; }

Cell Cell::make_empty() { return {}; }

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size()) throw Error("report row width mismatch");
    rows.push_back(std::move(cells));
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (size_t i = 0; i < table.columns.size(); i++) {
        if (i) out << ',';
        out << csv_escape(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); i++) {
            if (i) out << ',';
            out << csv_escape(row[i].text);
        }
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (size_t i = 0; i < row.size(); i++) {
            const Cell& c = row[i];
            const std::string& key = table.columns[i];
            switch (c.kind) {
                case Cell::Kind::text:
                case Cell::Kind::count:
                    obj[key] = c.text;
                    break;
                case Cell::Kind::real:
                    obj[key] = c.real_value;  // parsed from the canonical string
                    break;
                case Cell::Kind::integer:
                    obj[key] = std::stoll(c.text);
                    break;
                case Cell::Kind::empty:
                    obj[key] = nullptr;
                    break;
            }
        }
        rows.push_back(std::move(obj));
    }
    nlohmann::json top;
    top["rows"] = std::move(rows);
    out << top.dump(2) << '\n';
}

}  // namespace loopcount
