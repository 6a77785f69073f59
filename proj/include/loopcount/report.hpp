#pragma once
// Tabular reports with identical numeric content in CSV and JSON.  Real
// values are formatted once (12 significant digits) and both writers emit
// that canonical form; counts stay exact decimal strings.
#include <iosfwd>
#include <string>
#include <vector>

#include "loopcount/bigint.hpp"

namespace loopcount {

struct Cell {
    enum class Kind { text, count, real, integer, empty } kind = Kind::empty;
    std::string text;        // canonical rendering
    double real_value = 0;   // strtod of `text` for real cells

    static Cell make_text(std::string s);
    static Cell make_count(const BigCount& value);
    static Cell make_real(qreal value);
    static Cell make_integer(long long value);
    static Cell make_empty();
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells);
};

// Comma-separated, header row, LF line endings.  Text cells containing
// commas or quotes are quoted.
void write_csv(const Table& table, std::ostream& out);

// One top-level object with a "rows" array of objects keyed by column name.
void write_json(const Table& table, std::ostream& out);

std::string format_real(qreal value);  // 12 significant digits

}  // namespace loopcount
