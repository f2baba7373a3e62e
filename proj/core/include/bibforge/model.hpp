#ifndef BIBFORGE_MODEL_HPP
#define BIBFORGE_MODEL_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bibforge/options.hpp"
#include "bibforge/types.hpp"

namespace bibforge {

/// A conjunction of field requirements; each conjunct is a set of
/// alternatives (author|editor). Empty vector means no requirements.
using FieldRequirement = std::vector<std::vector<std::string>>;

/// Requirement table keyed by entry type. Unknown types validate vacuously.
FieldRequirement required_fields(std::string_view entry_type);

/// Conjuncts not satisfied by `record`; empty result means valid.
FieldRequirement missing_required_fields(const BibRecord& record);
std::string describe_requirement(const FieldRequirement& req);
/// "A bibentry of bibtype 'Manual' has to specify the field: c("author", "editor")"
std::string requirement_message(const BibRecord& record, const FieldRequirement& missing);

/// Builds a record from raw field pairs, parsing names and dates and
/// applying required-field validation per `check`.
/// Throws BibError("MissingRequiredFields") under CheckLevel::Error;
/// under Warn the record is accepted and a diagnostic appended.
BibRecord make_record(const std::string& entry_type, const std::string& key,
                      const std::vector<std::pair<std::string, std::string>>& field_pairs,
                      CheckLevel check, Diagnostics* diags = nullptr);

/// Selection of entries: positions, keys, or a precomputed index set.
struct Selector {
    std::vector<std::size_t> positions;
};

/// One update: field-name -> new raw value. Empty value removes the field.
/// The pseudo-fields "bibtype"/"entry_type" and "key" update the type/key.
using FieldUpdate = std::vector<std::pair<std::string, std::string>>;

/// Applies `updates` to the selected entries. A single update applies to
/// every selected entry; a list is matched positionally
/// (BibError("LengthMismatch") otherwise). Key collisions raise
/// BibError("DuplicateKey").
Bibliography set_fields(const Bibliography& bib, const Selector& sel,
                        const std::vector<FieldUpdate>& updates);
Bibliography set_fields(const Bibliography& bib, const Selector& sel,
                        const FieldUpdate& update);
/// Wholesale replacement of the selected entries.
Bibliography replace_entries(const Bibliography& bib, const Selector& sel,
                             const std::vector<BibRecord>& replacements);

/// One value per entry in order; std::nullopt where the field is absent.
/// "bibtype" returns entry types, "key" returns keys.
std::vector<std::optional<std::string>> get_field_column(
    const Bibliography& bib, const std::string& field_name);

void apply_update(BibRecord& record, const FieldUpdate& update);

}  // namespace bibforge

#endif
