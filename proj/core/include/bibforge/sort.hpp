#ifndef BIBFORGE_SORT_HPP
#define BIBFORGE_SORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bibforge/options.hpp"
#include "bibforge/types.hpp"

namespace bibforge {

SortScheme parse_sort_scheme(std::string_view s);
std::string sort_scheme_name(SortScheme scheme);

/// Comparison key components for one record.
struct SortKey {
    std::string presort;  // "mm" when absent
    std::optional<std::string> sortkey_override;
    std::string name_key;
    std::string alpha_label;
    std::string title_key;
    std::string year_key;   // 4-digit; ydnt encodes 9999 - year
    std::string volume_key; // 4 digits, "0000" when absent
};

SortKey sort_key(const BibRecord& record, SortScheme scheme);

/// Stable permutation of positions ordering the bibliography by `scheme`.
/// Xdata entries sort to the front; `none` is the identity; `debug`
/// sorts by key.
std::vector<std::size_t> sort_permutation(const Bibliography& bib, SortScheme scheme);

/// Compact alphabetic label: family-name letters plus two year digits
/// ("BL04"); no suffix. The name part follows the chain shorthand ->
/// label -> shortauthor -> shorteditor -> author -> editor -> translator.
std::string alpha_label(const BibRecord& record);

/// The "Family1 and Family2"/"Family1 et al." name part used by authoryear
/// labels and citations.
std::string citation_name_part(const BibRecord& record, int max_names = 2);

/// Suffixes colliding base labels a, b, c, ... (then aa, ab, ...) in the
/// given print order; unique labels pass through unchanged.
std::vector<std::string> disambiguate(const std::vector<std::string>& base_labels);

}  // namespace bibforge

#endif
