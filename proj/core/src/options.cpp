#include "bibforge/options.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "bibforge/sort.hpp"

namespace bibforge {

namespace {

std::string join_set(const std::set<std::string>& s) {
    std::string out;
    for (const auto& v : s) {
        if (!out.empty()) out += ",";
        out += v;
    }
    return out;
}

std::set<std::string> parse_set(const std::string& s) {
    std::set<std::string> out;
    for (const auto& part : split(s, ',')) {
        std::string t = trim(part);
        if (!t.empty()) out.insert(to_lower(t));
    }
    return out;
}

bool parse_bool(const std::string& raw) {
    std::string v = to_lower(trim(raw));
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw BibError("BadOptionValue", "expected a boolean, got '" + raw + "'");
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

BibStyle parse_bib_style(const std::string& raw) {
    std::string v = to_lower(trim(raw));
    if (v == "numeric") return BibStyle::Numeric;
    if (v == "authortitle") return BibStyle::AuthorTitle;
    if (v == "authoryear") return BibStyle::AuthorYear;
    if (v == "alphabetic") return BibStyle::Alphabetic;
    if (v == "draft") return BibStyle::Draft;
    throw BibError("BadOptionValue", "unknown style '" + raw + "'");
}

std::string bib_style_name(BibStyle s) {
    switch (s) {
        case BibStyle::Numeric: return "numeric";
        case BibStyle::AuthorTitle: return "authortitle";
        case BibStyle::AuthorYear: return "authoryear";
        case BibStyle::Alphabetic: return "alphabetic";
        case BibStyle::Draft: return "draft";
    }
    return "numeric";
}

OutputFormat parse_output_format(const std::string& raw) {
    std::string v = to_lower(trim(raw));
    if (v == "text") return OutputFormat::Text;
    if (v == "markdown") return OutputFormat::Markdown;
    if (v == "html") return OutputFormat::Html;
    if (v == "biblatex") return OutputFormat::Biblatex;
    if (v == "bibtex") return OutputFormat::Bibtex;
    throw BibError("BadOptionValue", "unknown output format '" + raw + "'");
}

std::string output_format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Text: return "text";
        case OutputFormat::Markdown: return "markdown";
        case OutputFormat::Html: return "html";
        case OutputFormat::Biblatex: return "biblatex";
        case OutputFormat::Bibtex: return "bibtex";
    }
    return "text";
}

}  // namespace

CheckLevel parse_check_level(std::string_view s) {
    std::string v = to_lower(trim(s));
    if (v == "error") return CheckLevel::Error;
    if (v == "warn") return CheckLevel::Warn;
    if (v == "off" || v == "false") return CheckLevel::Off;
    throw BibError("BadOptionValue", "unknown check level '" + std::string(s) + "'");
}

SortScheme ConfigOptions::effective_sorting() const {
    if (sorting) return *sorting;
    switch (bib_style) {
        case BibStyle::AuthorYear: return SortScheme::Nyt;
        case BibStyle::Alphabetic: return SortScheme::Anyt;
        default: return SortScheme::Nty;
    }
}

std::array<std::string, 6> ConfigOptions::effective_bibpunct() const {
    if (bibpunct) return *bibpunct;
    if (effective_cite_style() == BibStyle::AuthorYear)
        return {"(", ")", "; ", " ", ", ", ","};
    return {"[", "]", "; ", " ", ", ", ","};
}

const std::vector<std::string>& OptionsRegistry::known_names() {
    static const std::vector<std::string> kNames = {
        "check.entries", "bib.style", "cite.style", "style", "sorting",
        "max.names", "first.inits", "dashed", "no.print.fields", "use.regex",
        "ignore.case", "match.author", "match.date", "return.ind",
        "merge.fields.to.check", "bibpunct", "super", "hyperlink"};
    return kNames;
}

std::string OptionsRegistry::get(const std::string& name) const {
    const ConfigOptions& o = opts_;
    if (name == "check.entries")
        return o.check_entries == CheckLevel::Error  ? "error"
               : o.check_entries == CheckLevel::Warn ? "warn"
                                                     : "off";
    if (name == "bib.style") return bib_style_name(o.bib_style);
    if (name == "cite.style")
        return o.cite_style ? bib_style_name(*o.cite_style) : "auto";
    if (name == "style") return output_format_name(o.style);
    if (name == "sorting")
        return o.sorting ? sort_scheme_name(*o.sorting) : "auto";
    if (name == "max.names") return std::to_string(o.max_names);
    if (name == "first.inits") return bool_str(o.first_inits);
    if (name == "dashed") return bool_str(o.dashed);
    if (name == "no.print.fields") return join_set(o.no_print_fields);
    if (name == "use.regex") return bool_str(o.use_regex);
    if (name == "ignore.case") return bool_str(o.ignore_case);
    if (name == "match.author")
        return o.match_author == AuthorMatch::FamilyOnly ? "family.only"
               : o.match_author == AuthorMatch::FamilyWithInitials
                   ? "family.with.initials"
                   : "exact";
    if (name == "match.date")
        return o.match_date == DateMatch::YearOnly ? "year.only" : "exact";
    if (name == "return.ind") return bool_str(o.return_ind);
    if (name == "merge.fields.to.check") return join_set(o.merge_fields_to_check);
    if (name == "bibpunct") {
        if (!o.bibpunct) return "auto";
        std::string out;
        for (std::size_t i = 0; i < 6; ++i) {
            if (i) out += "\x1f";
            out += (*o.bibpunct)[i];
        }
        return out;
    }
    if (name == "super") return bool_str(o.super);
    if (name == "hyperlink")
        switch (o.hyperlink) {
            case HyperlinkMode::Off: return "off";
            case HyperlinkMode::ToBib: return "to.bib";
            case HyperlinkMode::ToDoc: return "to.doc";
            case HyperlinkMode::External: return "external";
        }
    throw BibError("UnknownOption", "unknown option '" + name + "'");
}

std::string OptionsRegistry::set(const std::string& name, const std::string& value) {
    std::string previous = get(name);  // validates the name
    ConfigOptions& o = opts_;
    if (name == "check.entries") {
        o.check_entries = parse_check_level(value);
    } else if (name == "bib.style") {
        o.bib_style = parse_bib_style(value);
    } else if (name == "cite.style") {
        if (to_lower(trim(value)) == "auto")
            o.cite_style.reset();
        else
            o.cite_style = parse_bib_style(value);
    } else if (name == "style") {
        o.style = parse_output_format(value);
    } else if (name == "sorting") {
        if (to_lower(trim(value)) == "auto")
            o.sorting.reset();
        else
            o.sorting = parse_sort_scheme(value);
    } else if (name == "max.names") {
        int n = std::stoi(value);
        if (n < 1) throw BibError("BadOptionValue", "max.names must be positive");
        o.max_names = n;
    } else if (name == "first.inits") {
        o.first_inits = parse_bool(value);
    } else if (name == "dashed") {
        o.dashed = parse_bool(value);
    } else if (name == "no.print.fields") {
        o.no_print_fields = parse_set(value);
    } else if (name == "use.regex") {
        o.use_regex = parse_bool(value);
    } else if (name == "ignore.case") {
        o.ignore_case = parse_bool(value);
    } else if (name == "match.author") {
        std::string v = to_lower(trim(value));
        if (v == "family.only")
            o.match_author = AuthorMatch::FamilyOnly;
        else if (v == "family.with.initials")
            o.match_author = AuthorMatch::FamilyWithInitials;
        else if (v == "exact")
            o.match_author = AuthorMatch::Exact;
        else
            throw BibError("BadOptionValue", "unknown match.author '" + value + "'");
    } else if (name == "match.date") {
        std::string v = to_lower(trim(value));
        if (v == "year.only")
            o.match_date = DateMatch::YearOnly;
        else if (v == "exact")
            o.match_date = DateMatch::Exact;
        else
            throw BibError("BadOptionValue", "unknown match.date '" + value + "'");
    } else if (name == "return.ind") {
        o.return_ind = parse_bool(value);
    } else if (name == "merge.fields.to.check") {
        o.merge_fields_to_check = parse_set(value);
    } else if (name == "bibpunct") {
        if (to_lower(trim(value)) == "auto") {
            o.bibpunct.reset();
        } else {
            auto parts = split(value, '\x1f');
            if (parts.size() != 6)
                throw BibError("BadOptionValue",
                               "bibpunct needs 6 unit-separated strings");
            std::array<std::string, 6> arr;
            std::copy(parts.begin(), parts.end(), arr.begin());
            o.bibpunct = arr;
        }
    } else if (name == "super") {
        o.super = parse_bool(value);
    } else if (name == "hyperlink") {
        std::string v = to_lower(trim(value));
        if (v == "off")
            o.hyperlink = HyperlinkMode::Off;
        else if (v == "to.bib")
            o.hyperlink = HyperlinkMode::ToBib;
        else if (v == "to.doc")
            o.hyperlink = HyperlinkMode::ToDoc;
        else if (v == "external")
            o.hyperlink = HyperlinkMode::External;
        else
            throw BibError("BadOptionValue", "unknown hyperlink mode '" + value + "'");
    }
    return previous;
}

std::map<std::string, std::string> OptionsRegistry::set_all(
    const std::map<std::string, std::string>& changes) {
    std::map<std::string, std::string> previous;
    for (const auto& [name, value] : changes) previous[name] = get(name);
    try {
        for (const auto& [name, value] : changes) set(name, value);
    } catch (...) {
        for (const auto& [name, value] : previous) set(name, value);
        throw;
    }
    return previous;
}

std::map<std::string, std::string> OptionsRegistry::get_all() const {
    std::map<std::string, std::string> out;
    for (const auto& name : known_names()) out[name] = get(name);
    return out;
}

}  // namespace bibforge
