#ifndef BIBFORGE_TABLE_HPP
#define BIBFORGE_TABLE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bibforge/options.hpp"
#include "bibforge/types.hpp"

namespace bibforge {

/// Tabular view: one row per entry, a "bibtype" column plus one column per
/// field occurring anywhere; row ids are entry keys.
struct Table {
    std::vector<std::string> columns;  // first column is "bibtype"
    std::vector<std::string> row_ids;
    std::vector<std::vector<std::optional<std::string>>> cells;
};

Table to_table(const Bibliography& bib);
/// Inverse of to_table up to field order; null cells dropped. The table
/// must carry a bibtype column. Propagates make_record errors per `check`.
Bibliography from_table(const Table& table, CheckLevel check,
                        Diagnostics* diags = nullptr);

/// RFC 4180 CSV with the literal `NA` null token; first column header is
/// "key".
std::string table_to_csv(const Table& table);
Table table_from_csv(const std::string& csv);

}  // namespace bibforge

#endif
