#ifndef BIBFORGE_SEARCH_HPP
#define BIBFORGE_SEARCH_HPP

#include <string>
#include <variant>
#include <vector>

#include "bibforge/options.hpp"
#include "bibforge/types.hpp"

namespace bibforge {

/// field=terms clause; matches when any term matches, inverted by
/// `negated` (a leading "!" on a term is stripped into this flag).
struct Clause {
    std::string field;
    std::vector<std::string> terms;
    bool negated = false;
};

/// Disjunction of clause-conjunctions: a group matches when all its
/// clauses match; the query matches when any group does.
struct Query {
    std::vector<std::vector<Clause>> groups;

    static Clause make_clause(const std::string& field,
                              std::vector<std::string> terms);
    /// Single-group convenience constructor.
    static Query conjunction(std::vector<Clause> clauses);
};

struct SearchResult {
    std::vector<std::size_t> indices;  // positions in the original order
    /// Matched entries taken from the expanded bibliography, so returned
    /// children carry their inherited fields.
    Bibliography matches;
};

/// Evaluates `query` against expand_all(bib). Name fields use
/// match_names, date fields match_date; other fields regex or exact
/// substring per config.
SearchResult search(const Bibliography& bib, const Query& query,
                    const ConfigOptions& config);

/// Every query name must match at least one entry name.
bool match_names(const std::vector<PersonName>& names,
                 const std::string& query_text, AuthorMatch level,
                 bool ignore_case);

/// Both specs widen to closed intervals; match iff the intervals
/// intersect. YearOnly truncates to year precision first.
bool match_date(const DateSpec& entry_date, const std::string& query_text,
                DateMatch mode);

/// Positional (negative = drop), mask, or exact-key selection.
struct PositionSelector { std::vector<long> positions; };
struct MaskSelector { std::vector<bool> mask; };
struct KeySelector { std::vector<std::string> keys; };
using SelectSpec = std::variant<PositionSelector, MaskSelector, KeySelector>;

Bibliography select(const Bibliography& bib, const SelectSpec& spec);

}  // namespace bibforge

#endif
