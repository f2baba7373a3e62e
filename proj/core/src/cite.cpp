#include "bibforge/cite.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "bibforge/inheritance.hpp"
#include "bibforge/render.hpp"
#include "bibforge/sort.hpp"

namespace bibforge {

void CiteState::add_cited(const std::string& key) {
    if (std::find(cited.begin(), cited.end(), key) == cited.end()) cited.push_back(key);
}

void CiteState::add_nocited(const std::string& key) {
    if (std::find(nocited.begin(), nocited.end(), key) == nocited.end())
        nocited.push_back(key);
}

std::vector<std::string> CiteState::printable_keys() const {
    std::vector<std::string> out = cited;
    for (const std::string& key : nocited)
        if (std::find(cited.begin(), cited.end(), key) == cited.end())
            out.push_back(key);
    return out;
}

namespace {

std::vector<std::string> resolve_selector(const Bibliography& bib,
                                          const CiteSelector& selector,
                                          const ConfigOptions& config) {
    if (const auto* keys = std::get_if<std::vector<std::string>>(&selector)) {
        for (const std::string& key : *keys)
            if (!bib.find_key(key))
                throw BibError("UnknownKey", "no entry with key '" + key + "'");
        return *keys;
    }
    SearchResult result = search(bib, std::get<Query>(selector), config);
    if (result.matches.empty())
        throw BibError("EmptyMatch", "citation query matched no entries");
    std::vector<std::string> keys;
    for (const BibRecord& rec : result.matches) keys.push_back(rec.key);
    return keys;
}

// Positions of the cited keys when the current cited set is printed.
std::map<std::string, std::size_t> numeric_positions(const Bibliography& expanded,
                                                     const CiteState& state,
                                                     const ConfigOptions& config) {
    std::set<std::string> wanted;
    for (const std::string& key : state.printable_keys()) wanted.insert(key);
    std::vector<std::size_t> perm =
        sort_permutation(expanded, config.effective_sorting());
    std::map<std::string, std::size_t> out;
    std::size_t index = 0;
    for (std::size_t pos : perm) {
        const BibRecord& rec = expanded.at(pos);
        if (rec.is_xdata() || !wanted.count(rec.key)) continue;
        out[rec.key] = ++index;
    }
    return out;
}

std::string wrap_super(const std::string& inner, const ConfigOptions& config) {
    if (!config.super) return inner;
    if (config.style == OutputFormat::Html) return "<sup>" + inner + "</sup>";
    if (config.style == OutputFormat::Markdown) return "^" + inner + "^";
    return inner;
}

}  // namespace

std::string cite(CiteState& state, const Bibliography& bib,
                 const CiteSelector& selector, CiteMode mode,
                 const ConfigOptions& config) {
    std::vector<std::string> keys = resolve_selector(bib, selector, config);
    if (keys.empty()) throw BibError("EmptyMatch", "citation selected no entries");
    for (const std::string& key : keys) state.add_cited(key);

    Bibliography expanded = expand_all(bib);
    BibStyle style = config.effective_cite_style();
    if (mode == CiteMode::Auto)
        mode = style == BibStyle::AuthorYear || style == BibStyle::AuthorTitle
                   ? CiteMode::Textual
                   : CiteMode::Parenthetical;
    auto punct = config.effective_bibpunct();
    const std::string& open = punct[0];
    const std::string& close = punct[1];
    const std::string& sep = punct[2];
    const std::string& name_year_sep = punct[4];

    LabelSet labels;
    std::map<std::string, std::size_t> numbers;
    if (style == BibStyle::Numeric || style == BibStyle::Draft)
        numbers = numeric_positions(expanded, state, config);
    else
        labels = assign_labels(expanded, config);

    auto record_of = [&](const std::string& key) -> const BibRecord& {
        const BibRecord* rec = expanded.find_key(key);
        if (!rec) throw BibError("UnknownKey", "no entry with key '" + key + "'");
        return *rec;
    };

    std::string out;
    switch (style) {
        case BibStyle::Numeric:
        case BibStyle::Draft: {
            std::string inner;
            std::vector<std::size_t> nums;
            for (const std::string& key : keys) nums.push_back(numbers.at(key));
            std::sort(nums.begin(), nums.end());
            for (std::size_t n : nums) {
                if (!inner.empty()) inner += sep;
                inner += std::to_string(n);
            }
            if (mode == CiteMode::Textual) {
                std::string names;
                for (const std::string& key : keys) {
                    if (!names.empty()) names += sep;
                    names += citation_name_part(record_of(key));
                }
                out = names + " " + wrap_super(open + inner + close, config);
            } else {
                out = wrap_super(open + inner + close, config);
            }
            break;
        }
        case BibStyle::Alphabetic: {
            if (mode == CiteMode::Textual) {
                for (const std::string& key : keys) {
                    if (!out.empty()) out += sep;
                    out += citation_name_part(record_of(key)) + " " + open +
                           labels.alpha.at(key) + close;
                }
            } else {
                std::string inner;
                for (const std::string& key : keys) {
                    if (!inner.empty()) inner += sep;
                    inner += labels.alpha.at(key);
                }
                out = open + inner + close;
            }
            break;
        }
        case BibStyle::AuthorTitle: {
            for (const std::string& key : keys) {
                const BibRecord& rec = record_of(key);
                std::string piece = citation_name_part(rec);
                if (const std::string* title = rec.find("title")) {
                    std::string t = rec.get_or("shorttitle", *title);
                    piece += name_year_sep + "\"" + t + "\"";
                }
                if (mode == CiteMode::Parenthetical) piece = open + piece + close;
                if (!out.empty()) out += sep;
                out += piece;
            }
            break;
        }
        case BibStyle::AuthorYear: {
            if (mode == CiteMode::Textual) {
                for (const std::string& key : keys) {
                    const BibRecord& rec = record_of(key);
                    if (!out.empty()) out += sep;
                    out += citation_name_part(rec) + " " + open +
                           labels.year_label.at(key) + close;
                }
            } else {
                std::string inner;
                for (const std::string& key : keys) {
                    const BibRecord& rec = record_of(key);
                    if (!inner.empty()) inner += sep;
                    inner += citation_name_part(rec) + name_year_sep +
                             labels.year_label.at(key);
                }
                out = open + inner + close;
            }
            break;
        }
    }
    return out;
}

void nocite(CiteState& state, const Bibliography& bib, const CiteSelector& selector) {
    ConfigOptions defaults;
    for (const std::string& key : resolve_selector(bib, selector, defaults))
        state.add_nocited(key);
}

std::string print_bibliography(const CiteState& state, const Bibliography& bib,
                               const ConfigOptions& config) {
    return render_bibliography_subset(bib, state.printable_keys(), config,
                                      config.hyperlink != HyperlinkMode::Off);
}

std::optional<std::string> hyperlink_target(const BibRecord& record,
                                            const std::vector<std::string>& preference) {
    for (const std::string& field : preference) {
        std::string f = to_lower(field);
        const std::string* v = record.find(f);
        if (!v) continue;
        std::string value = trim(*v);
        if (value.empty()) continue;
        if (f == "doi") return "https://doi.org/" + value;
        if (f == "file" || f == "url") return value;
        if (f == "eprint") {
            std::string type = to_lower(record.get_or("eprinttype", "arxiv"));
            if (type == "arxiv") return "https://arxiv.org/abs/" + value;
            if (type == "pubmed")
                return "https://www.ncbi.nlm.nih.gov/pubmed/" + value;
            if (type == "jstor") return "https://www.jstor.org/stable/" + value;
            if (type == "googlebooks")
                return "https://books.google.com/books?id=" + value;
            continue;
        }
        return value;
    }
    return std::nullopt;
}

}  // namespace bibforge
