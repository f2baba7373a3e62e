#ifndef BIBFORGE_PARSER_HPP
#define BIBFORGE_PARSER_HPP

#include <string>
#include <vector>

#include "bibforge/options.hpp"
#include "bibforge/types.hpp"

namespace bibforge {

enum class InputEncoding { Utf8, Latin1Lenient };

struct ParseResult {
    Bibliography bibliography;
    Diagnostics diagnostics;
    /// Number of @entry blocks seen (excluding @string/@comment/@preamble).
    std::size_t entry_blocks = 0;
    std::size_t skipped = 0;
};

/// Parses `.bib` source text. Grammar: `@type{key, field = value, ...}`
/// with brace- or quote-delimited values, `#` concatenation, @string
/// macros, @comment, @preamble, and jan..dec month macros. Malformed
/// entries are skipped with a diagnostic (recovery at the next top-level
/// `@`). Required-field checks run per `check`; entries referencing
/// crossref/xdata parents are validated after expansion.
ParseResult parse_bib(const std::string& text, CheckLevel check,
                      InputEncoding enc = InputEncoding::Utf8);

ParseResult parse_bib_file(const std::string& path, CheckLevel check,
                           InputEncoding enc = InputEncoding::Utf8);

/// Splits on the unbraced word `and` and parses each name in the three
/// BibTeX forms. Throws BibError("EmptyName") for a zero-token name.
std::vector<PersonName> parse_name_list(const std::string& text);

/// Accepts yyyy, yyyy-mm, yyyy-mm-dd and intervals A/B with either side
/// empty. Throws BibError("InvalidDate") for any other shape.
DateSpec parse_date(const std::string& text);

/// Renders a parsed name list back to bib syntax ("family, given and ...").
std::string name_list_to_string(const std::vector<PersonName>& names);
std::string name_to_string(const PersonName& name);

/// Emits `@Type{key,\n  field = {value},\n  ...,\n}` blocks separated by
/// blank lines, fields in stored order.
std::string serialize_biblatex(const Bibliography& bib);
std::string serialize_biblatex(const BibRecord& record);

}  // namespace bibforge

#endif
