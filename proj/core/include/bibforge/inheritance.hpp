#ifndef BIBFORGE_INHERITANCE_HPP
#define BIBFORGE_INHERITANCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "bibforge/types.hpp"

namespace bibforge {

/// One crossref inheritance rule. Wildcard "*" matches any type; an empty
/// target means the field is not inherited.
struct InheritanceRule {
    std::string child_type;   // token or "*"
    std::string parent_type;  // token or "*"
    std::string source_field;
    std::string target_field;  // "" = not inherited
};

class InheritanceRules {
public:
    /// BibLaTeX-default rule set (book->inbook title renames and friends).
    static const InheritanceRules& defaults();
    /// Loads rows `child_type<TAB>parent_type<TAB>source<TAB>target` ("-"
    /// target means not inherited).
    static InheritanceRules from_tsv(const std::string& text);

    /// Target field for inheriting `field` from parent_type into
    /// child_type; std::nullopt means the field is suppressed.
    std::optional<std::string> resolve(std::string_view child_type,
                                       std::string_view parent_type,
                                       std::string_view field) const;

    void add(InheritanceRule rule) { rules_.push_back(std::move(rule)); }
    const std::vector<InheritanceRule>& rules() const { return rules_; }

private:
    std::vector<InheritanceRule> rules_;
};

/// Copies fields of referenced xdata entries into each referencing entry
/// (left-to-right, child wins, transitive). Throws
/// BibError("DanglingXData") / BibError("XDataCycle").
Bibliography resolve_xdata(const Bibliography& bib);

/// Resolves crossref parents through the rule table; child fields are
/// never overwritten. Throws BibError("DanglingCrossref").
Bibliography resolve_crossref(const Bibliography& bib,
                              const InheritanceRules& rules = InheritanceRules::defaults());

/// resolve_xdata then resolve_crossref; idempotent.
Bibliography expand_all(const Bibliography& bib,
                        const InheritanceRules& rules = InheritanceRules::defaults());

}  // namespace bibforge

#endif
