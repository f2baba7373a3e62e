#ifndef BIBFORGE_OPTIONS_HPP
#define BIBFORGE_OPTIONS_HPP

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bibforge/types.hpp"

namespace bibforge {

enum class CheckLevel { Error, Warn, Off };
enum class BibStyle { Numeric, AuthorTitle, AuthorYear, Alphabetic, Draft };
enum class OutputFormat { Text, Markdown, Html, Biblatex, Bibtex };
enum class SortScheme { Nty, Nyt, Nyvt, Anyt, Anyvt, Ynt, Ydnt, Debug, None };
enum class AuthorMatch { FamilyOnly, FamilyWithInitials, Exact };
enum class DateMatch { YearOnly, Exact };
enum class HyperlinkMode { Off, ToBib, ToDoc, External };

CheckLevel parse_check_level(std::string_view s);

/// Session-scoped option values. Defaults mirror the documented defaults;
/// `sorting` and `cite_style` are empty until set, in which case they are
/// derived from `bib_style`.
struct ConfigOptions {
    CheckLevel check_entries = CheckLevel::Error;
    BibStyle bib_style = BibStyle::Numeric;
    std::optional<BibStyle> cite_style;  // defaults to bib_style
    OutputFormat style = OutputFormat::Text;
    std::optional<SortScheme> sorting;  // defaults per bib_style
    int max_names = 3;
    bool first_inits = true;
    bool dashed = true;
    std::set<std::string> no_print_fields;
    bool use_regex = true;
    bool ignore_case = true;
    AuthorMatch match_author = AuthorMatch::FamilyOnly;
    DateMatch match_date = DateMatch::YearOnly;
    bool return_ind = false;
    std::set<std::string> merge_fields_to_check = {"title"};
    // open, close, sep, name-year sep, year sep, suffix sep
    std::optional<std::array<std::string, 6>> bibpunct;
    bool super = false;
    HyperlinkMode hyperlink = HyperlinkMode::Off;

    SortScheme effective_sorting() const;
    BibStyle effective_cite_style() const { return cite_style.value_or(bib_style); }
    std::array<std::string, 6> effective_bibpunct() const;
};

/// String-keyed registry over ConfigOptions using the dotted option names
/// (check.entries, bib.style, ...). Setting returns prior values so callers
/// can save and restore state.
class OptionsRegistry {
public:
    ConfigOptions& values() { return opts_; }
    const ConfigOptions& values() const { return opts_; }

    /// Returns the current value; throws BibError("UnknownOption").
    std::string get(const std::string& name) const;
    /// Sets one option; returns the previous value.
    std::string set(const std::string& name, const std::string& value);
    /// Sets several options; returns the previous values of those touched.
    std::map<std::string, std::string> set_all(
        const std::map<std::string, std::string>& changes);
    /// Reads all options.
    std::map<std::string, std::string> get_all() const;
    void restore_defaults() { opts_ = ConfigOptions{}; }

    static const std::vector<std::string>& known_names();

private:
    ConfigOptions opts_;
};

}  // namespace bibforge

#endif
