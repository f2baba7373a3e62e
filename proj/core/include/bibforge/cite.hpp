#ifndef BIBFORGE_CITE_HPP
#define BIBFORGE_CITE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bibforge/options.hpp"
#include "bibforge/search.hpp"
#include "bibforge/types.hpp"

namespace bibforge {

enum class CiteMode { Textual, Parenthetical, Auto };

/// Tracks cited and nocited keys in insertion order.
struct CiteState {
    std::vector<std::string> cited;
    std::vector<std::string> nocited;

    void add_cited(const std::string& key);
    void add_nocited(const std::string& key);
    /// cited followed by nocited keys not already cited.
    std::vector<std::string> printable_keys() const;
};

using CiteSelector = std::variant<std::vector<std::string>, Query>;

/// Renders an inline citation and records the keys in `state`.
/// Throws BibError("UnknownKey") / BibError("EmptyMatch").
std::string cite(CiteState& state, const Bibliography& bib,
                 const CiteSelector& selector, CiteMode mode,
                 const ConfigOptions& config);

void nocite(CiteState& state, const Bibliography& bib, const CiteSelector& selector);

/// Renders exactly the cited and nocited entries with labels matching the
/// inline citations.
std::string print_bibliography(const CiteState& state, const Bibliography& bib,
                               const ConfigOptions& config);

/// URL for an entry per the preference order over {file, doi, url,
/// eprint}; std::nullopt when none of the fields resolve.
std::optional<std::string> hyperlink_target(
    const BibRecord& record,
    const std::vector<std::string>& preference = {"file", "doi", "url", "eprint"});

/// Citation directives: `[@k1; @k2]` parenthetical, `@key` textual,
/// `[-@key]` and `<!--nocite: k1, k2-->` nocite; `[[bibliography]]`
/// places the bibliography block (appended when absent).
struct ProcessedDocument {
    std::string text;
    std::string bibliography_block;
};
ProcessedDocument process_document(const std::string& text, const Bibliography& bib,
                                   const ConfigOptions& config);

}  // namespace bibforge

#endif
