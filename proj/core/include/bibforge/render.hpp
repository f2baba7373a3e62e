#ifndef BIBFORGE_RENDER_HPP
#define BIBFORGE_RENDER_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibforge/options.hpp"
#include "bibforge/types.hpp"

namespace bibforge {

/// Display strings for recognized localization keys (editor -> "ed.",
/// redactor -> "Red. by", pubstate submitted -> "Submitted", ...).
class LocalizationTable {
public:
    static const LocalizationTable& defaults();
    const std::string* find(std::string_view key) const;
    void set(const std::string& key, const std::string& text) { table_[key] = text; }

private:
    std::map<std::string, std::string, std::less<>> table_;
};

/// Names joined with ", " and a final " and " when the list fits in
/// max_names; otherwise truncated with ", et al.". `family_first` renders
/// the first name as "Family, G." (authoryear/authortitle styles).
std::string format_names(const std::vector<PersonName>& names, int max_names,
                         bool first_inits, bool family_first = false);

/// Labels assigned over the printable entries of an expanded bibliography:
/// print order, alphabetic labels with suffixes, and authoryear year
/// labels with suffixes. Suffix groups are computed bibliography-wide so
/// inline citations and printed bibliographies agree.
struct LabelSet {
    std::vector<std::size_t> print_order;           // positions, xdata excluded
    std::map<std::string, std::string> alpha;       // key -> "BL04a"
    std::map<std::string, std::string> year_label;  // key -> "1988b"
};
LabelSet assign_labels(const Bibliography& expanded, const ConfigOptions& config);

/// Formats one expansion-resolved record. `label` is the numeric or
/// alphabetic prefix ("1", "BL04a"); `year_label` the authoryear year;
/// `prev` enables dashed-author replacement.
std::string format_entry(const BibRecord& record, const ConfigOptions& config,
                         const std::string& label = "",
                         const std::string& year_label = "",
                         const BibRecord* prev = nullptr);

/// expand -> sort -> label -> disambiguate -> format, entries joined by
/// blank lines. Xdata stubs are excluded from output.
std::string render_bibliography(const Bibliography& bib, const ConfigOptions& config);

/// Same pipeline restricted to `keys` (cited-set printing). Numeric
/// indices are assigned after the restriction. `anchor_ids` switches on
/// per-entry "bib-<key>" anchors in markdown/html output.
std::string render_bibliography_subset(const Bibliography& bib,
                                       const std::vector<std::string>& keys,
                                       const ConfigOptions& config,
                                       bool anchor_ids = false);

std::string html_escape(std::string_view s);
/// "Aug. 1996", "Oct. 27, 2004", "1885-1888".
std::string format_date_display(const DateSpec& date);
/// "MM/DD/YYYY" for urldate fragments.
std::string format_date_slashed(const DateSpec& date);

}  // namespace bibforge

#endif
