#include "bibforge/table.hpp"

#include <algorithm>
#include <map>

#include "bibforge/model.hpp"

namespace bibforge {

Table to_table(const Bibliography& bib) {
    Table table;
    table.columns.push_back("bibtype");
    std::map<std::string, std::size_t> column_index;
    column_index["bibtype"] = 0;
    for (const BibRecord& rec : bib) {
        for (const auto& [name, value] : rec.fields) {
            if (!column_index.count(name)) {
                column_index[name] = table.columns.size();
                table.columns.push_back(name);
            }
        }
    }
    for (const BibRecord& rec : bib) {
        table.row_ids.push_back(rec.key);
        std::vector<std::optional<std::string>> row(table.columns.size());
        row[0] = rec.entry_type;
        for (const auto& [name, value] : rec.fields)
            row[column_index.at(name)] = value;
        table.cells.push_back(std::move(row));
    }
    return table;
}

Bibliography from_table(const Table& table, CheckLevel check, Diagnostics* diags) {
    auto type_col = std::find(table.columns.begin(), table.columns.end(), "bibtype");
    if (type_col == table.columns.end())
        throw BibError("BadTable", "table has no bibtype column");
    std::size_t type_idx = static_cast<std::size_t>(type_col - table.columns.begin());

    std::vector<BibRecord> entries;
    for (std::size_t r = 0; r < table.cells.size(); ++r) {
        const auto& row = table.cells[r];
        if (row.size() != table.columns.size())
            throw BibError("BadTable", "row width does not match column count");
        if (!row[type_idx])
            throw BibError("BadTable",
                           "row '" + table.row_ids[r] + "' has no bibtype value");
        std::vector<std::pair<std::string, std::string>> fields;
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c == type_idx || !row[c]) continue;
            fields.emplace_back(table.columns[c], *row[c]);
        }
        std::string key = r < table.row_ids.size() ? table.row_ids[r]
                                                   : "row" + std::to_string(r + 1);
        entries.push_back(make_record(*row[type_idx], key, fields, check, diags));
    }
    return Bibliography(std::move(entries));
}

namespace {

std::string csv_quote(const std::string& value) {
    bool needs = value.find_first_of(",\"\r\n") != std::string::npos || value == "NA";
    if (!needs) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

}  // namespace

std::string table_to_csv(const Table& table) {
    std::string out = "key";
    for (const std::string& col : table.columns) out += "," + csv_quote(col);
    out += "\r\n";
    for (std::size_t r = 0; r < table.cells.size(); ++r) {
        out += csv_quote(r < table.row_ids.size() ? table.row_ids[r] : "");
        for (const auto& cell : table.cells[r])
            out += "," + (cell ? csv_quote(*cell) : std::string("NA"));
        out += "\r\n";
    }
    return out;
}

namespace {

// One CSV record; `quoted[i]` records whether field i was quoted, so the
// bare NA token can be told apart from the quoted string "NA".
struct CsvRow {
    std::vector<std::string> fields;
    std::vector<bool> quoted;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool was_quoted = false;
    bool in_quotes = false;
    std::size_t i = 0;
    auto end_field = [&] {
        row.fields.push_back(field);
        row.quoted.push_back(was_quoted);
        field.clear();
        was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row = CsvRow{};
    };
    while (i < text.size()) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && field.empty() && !was_quoted) {
            in_quotes = true;
            was_quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            end_row();
            ++i;
        } else if (c == '\n') {
            end_row();
        } else {
            field.push_back(c);
        }
        ++i;
    }
    if (in_quotes) throw BibError("BadCsv", "unterminated quoted field");
    if (!field.empty() || was_quoted || !row.fields.empty()) end_row();
    return rows;
}

}  // namespace

Table table_from_csv(const std::string& csv) {
    std::vector<CsvRow> rows = parse_csv(csv);
    if (rows.empty()) throw BibError("BadCsv", "empty csv input");
    Table table;
    const CsvRow& header = rows[0];
    if (header.fields.empty() || header.fields[0] != "key")
        throw BibError("BadCsv", "first column header must be 'key'");
    for (std::size_t c = 1; c < header.fields.size(); ++c)
        table.columns.push_back(header.fields[c]);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const CsvRow& row = rows[r];
        if (row.fields.size() != header.fields.size())
            throw BibError("BadCsv", "row " + std::to_string(r + 1) +
                                         " has the wrong number of fields");
        table.row_ids.push_back(row.fields[0]);
        std::vector<std::optional<std::string>> cells;
        for (std::size_t c = 1; c < row.fields.size(); ++c) {
            if (!row.quoted[c] && row.fields[c] == "NA")
                cells.push_back(std::nullopt);
            else
                cells.push_back(row.fields[c]);
        }
        table.cells.push_back(std::move(cells));
    }
    return table;
}

}  // namespace bibforge
