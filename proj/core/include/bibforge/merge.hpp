#ifndef BIBFORGE_MERGE_HPP
#define BIBFORGE_MERGE_HPP

#include <set>
#include <string>

#include "bibforge/types.hpp"

namespace bibforge {

/// Append in argument order; key collisions resolved via dedupe_keys.
Bibliography concat(const std::vector<Bibliography>& parts);
Bibliography concat(const Bibliography& a, const Bibliography& b);

/// `a` followed by entries of `b` that do not duplicate an entry of `a`.
/// Duplicate = equality (case-folded, whitespace-normalized) on every
/// field in `fields_to_check` ("bibtype" and "key" allowed), a missing
/// field equal only to a missing field. Keys uniquified afterwards.
Bibliography merge(const Bibliography& a, const Bibliography& b,
                   const std::set<std::string>& fields_to_check);

/// First occurrence keeps its key; later ones get "-1", "-2", ...
/// choosing the smallest suffix not already present.
Bibliography dedupe_keys(const Bibliography& bib);

}  // namespace bibforge

#endif
