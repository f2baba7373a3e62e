#ifndef BIBFORGE_CONVERT_HPP
#define BIBFORGE_CONVERT_HPP

#include <set>
#include <string>
#include <vector>

#include "bibforge/types.hpp"

namespace bibforge {

enum class BibFlavor { Biblatex, Bibtex };

struct ConvertOptions {
    /// BibTeX-illegal fields to keep anyway.
    std::set<std::string> extra_fields;
    /// Fields (in priority order) whose display form replaces a missing
    /// `note`; urldate renders "Last visited on MM/DD/YYYY".
    std::vector<std::string> note_replace_fields;
};

/// Fields legal in plain BibTeX.
const std::set<std::string>& bibtex_legal_fields();

/// Downgrades one record: report->techreport, thesis->phdthesis /
/// mastersthesis per its `type`, online->misc, journaltitle->journal,
/// institution->school for theses, date->year(+month macro) when year is
/// absent; illegal fields dropped unless kept via opts. Idempotent.
BibRecord to_bibtex_record(const BibRecord& record, const ConvertOptions& opts = {});

/// Converts every entry and serializes. Crossref parents gain a
/// `booktitle` copy of their own title so BibTeX symmetric inheritance
/// still resolves.
std::string to_bibtex(const Bibliography& bib, const ConvertOptions& opts = {});

/// Writes the bibliography to `path` in the requested flavor; returns the
/// number of entries written. Throws BibError("IoError").
std::size_t write_bib(const Bibliography& bib, const std::string& path,
                      BibFlavor flavor, const ConvertOptions& opts = {},
                      bool verbose = false);

}  // namespace bibforge

#endif
