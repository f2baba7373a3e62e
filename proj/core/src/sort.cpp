#include "bibforge/sort.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace bibforge {

SortScheme parse_sort_scheme(std::string_view s) {
    std::string v = to_lower(trim(s));
    if (v == "nty") return SortScheme::Nty;
    if (v == "nyt") return SortScheme::Nyt;
    if (v == "nyvt") return SortScheme::Nyvt;
    if (v == "anyt") return SortScheme::Anyt;
    if (v == "anyvt") return SortScheme::Anyvt;
    if (v == "ynt") return SortScheme::Ynt;
    if (v == "ydnt") return SortScheme::Ydnt;
    if (v == "debug") return SortScheme::Debug;
    if (v == "none") return SortScheme::None;
    throw BibError("BadOptionValue", "unknown sorting scheme '" + std::string(s) + "'");
}

std::string sort_scheme_name(SortScheme scheme) {
    switch (scheme) {
        case SortScheme::Nty: return "nty";
        case SortScheme::Nyt: return "nyt";
        case SortScheme::Nyvt: return "nyvt";
        case SortScheme::Anyt: return "anyt";
        case SortScheme::Anyvt: return "anyvt";
        case SortScheme::Ynt: return "ynt";
        case SortScheme::Ydnt: return "ydnt";
        case SortScheme::Debug: return "debug";
        case SortScheme::None: return "none";
    }
    return "nty";
}

namespace {

const std::vector<PersonName>* label_names(const BibRecord& rec) {
    for (const char* field : {"shortauthor", "shorteditor", "author", "editor",
                              "translator"}) {
        auto it = rec.parsed_names.find(field);
        if (it != rec.parsed_names.end() && !it->second.empty()) return &it->second;
    }
    return nullptr;
}

const std::vector<PersonName>* sort_names(const BibRecord& rec) {
    for (const char* field : {"sortname", "author", "editor", "translator"}) {
        auto it = rec.parsed_names.find(field);
        if (it != rec.parsed_names.end() && !it->second.empty()) return &it->second;
    }
    return nullptr;
}

std::string family_display(const PersonName& n) {
    std::string out;
    for (const std::string& part : n.family) {
        if (!out.empty()) out += " ";
        out += part;
    }
    if (!n.prefix.empty()) out = n.prefix + " " + out;
    return out;
}

std::string name_sort_string(const PersonName& n) {
    std::string out;
    for (const std::string& part : n.family) {
        if (!out.empty()) out += " ";
        out += part;
    }
    if (!n.prefix.empty()) out += " " + n.prefix;
    for (const std::string& part : n.given) out += " " + part;
    if (!n.suffix.empty()) out += " " + n.suffix;
    return fold_key(out);
}

std::string pad4(int value) {
    std::ostringstream os;
    os.width(4);
    os.fill('0');
    os << std::max(0, std::min(value, 9999));
    return os.str();
}

// First `count` letters of a UTF-8 string; ASCII letters get the
// title-case treatment (first upper, rest lower).
std::string letters_prefix(const std::string& s, std::size_t count) {
    std::string out;
    std::size_t taken = 0, i = 0;
    while (i < s.size() && taken < count) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : 4;
        len = std::min(len, s.size() - i);
        if (len == 1) {
            if (!std::isalpha(c)) {
                ++i;
                continue;
            }
            char ch = taken == 0 ? static_cast<char>(std::toupper(c))
                                 : static_cast<char>(std::tolower(c));
            out.push_back(ch);
        } else {
            out += s.substr(i, len);
        }
        ++taken;
        i += len;
    }
    return out;
}

char family_initial(const PersonName& n) {
    if (n.family.empty() || n.family[0].empty()) return '?';
    unsigned char c = static_cast<unsigned char>(n.family[0][0]);
    return static_cast<char>(std::toupper(c));
}

}  // namespace

std::string alpha_label(const BibRecord& rec) {
    if (const std::string* sh = rec.find("shorthand")) return *sh;

    std::string name_part;
    if (const std::string* label = rec.find("label")) {
        name_part = *label;
    } else if (const std::vector<PersonName>* names = label_names(rec)) {
        std::size_t n = names->size();
        if (n == 1) {
            name_part = letters_prefix(family_display((*names)[0]), 3);
        } else if (n <= 3) {
            for (const PersonName& nm : *names) name_part.push_back(family_initial(nm));
        } else {
            name_part = letters_prefix(family_display((*names)[0]), 3) + "+";
        }
    } else if (const std::string* title = rec.find("title")) {
        name_part = letters_prefix(*title, 3);
    } else {
        name_part = letters_prefix(rec.key, 3);
    }

    std::string year_part;
    if (std::optional<int> year = rec.resolved_year()) {
        std::string y = pad4(*year);
        year_part = y.substr(2);
    }
    return name_part + year_part;
}

std::string citation_name_part(const BibRecord& rec, int max_names) {
    const std::vector<PersonName>* names = label_names(rec);
    if (!names) {
        if (const std::string* title = rec.find("title")) return *title;
        return rec.key;
    }
    std::size_t n = names->size();
    if (n == 1) return family_display((*names)[0]);
    if (static_cast<int>(n) > max_names)
        return family_display((*names)[0]) + " et al.";
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out += (i + 1 == n) ? " and " : ", ";
        out += family_display((*names)[i]);
    }
    return out;
}

SortKey sort_key(const BibRecord& rec, SortScheme scheme) {
    SortKey key;
    key.presort = rec.get_or("presort", "mm");
    if (const std::string* sk = rec.find("sortkey")) key.sortkey_override = fold_key(*sk);

    if (const std::vector<PersonName>* names = sort_names(rec)) {
        std::string joined;
        for (const PersonName& n : *names) {
            if (!joined.empty()) joined += "  ";
            joined += name_sort_string(n);
        }
        key.name_key = joined;
    }
    if (key.name_key.empty()) {
        // Fall back to the (sort)title so authorless entries order sanely.
        key.name_key = fold_key(rec.get_or("sorttitle", rec.get_or("title", rec.key)));
    }

    key.alpha_label = fold_key(alpha_label(rec));
    key.title_key = fold_key(rec.get_or("sorttitle", rec.get_or("title", "")));

    std::optional<int> year = rec.resolved_year();
    if (const std::string* sy = rec.find("sortyear")) {
        try {
            year = std::stoi(trim(*sy));
        } catch (...) {
        }
    }
    int y = year.value_or(9999);
    key.year_key = scheme == SortScheme::Ydnt ? pad4(9999 - y) : pad4(y);

    key.volume_key = "0000";
    if (const std::string* vol = rec.find("volume")) {
        try {
            key.volume_key = pad4(std::stoi(trim(*vol)));
        } catch (...) {
            key.volume_key = fold_key(*vol);
        }
    }
    return key;
}

namespace {

std::string composite_key(const BibRecord& rec, SortScheme scheme) {
    SortKey k = sort_key(rec, scheme);
    const char sep = '\x1f';
    std::string out = (rec.is_xdata() ? "0" : "1");
    out += sep;
    out += k.presort;
    out += sep;
    if (k.sortkey_override) {
        out += *k.sortkey_override;
        return out;
    }
    auto add = [&](const std::string& part) {
        out += part;
        out += sep;
    };
    switch (scheme) {
        case SortScheme::Nty:
            add(k.name_key); add(k.title_key); add(k.year_key);
            break;
        case SortScheme::Nyt:
            add(k.name_key); add(k.year_key); add(k.title_key);
            break;
        case SortScheme::Nyvt:
            add(k.name_key); add(k.year_key); add(k.volume_key); add(k.title_key);
            break;
        case SortScheme::Anyt:
            add(k.alpha_label); add(k.name_key); add(k.year_key); add(k.title_key);
            break;
        case SortScheme::Anyvt:
            add(k.alpha_label); add(k.name_key); add(k.year_key); add(k.volume_key);
            add(k.title_key);
            break;
        case SortScheme::Ynt:
            add(k.year_key); add(k.name_key); add(k.title_key);
            break;
        case SortScheme::Ydnt:
            add(k.year_key); add(k.name_key); add(k.title_key);
            break;
        case SortScheme::Debug:
            add(fold_key(rec.key));
            break;
        case SortScheme::None:
            break;
    }
    return out;
}

}  // namespace

std::vector<std::size_t> sort_permutation(const Bibliography& bib, SortScheme scheme) {
    std::vector<std::size_t> perm(bib.size());
    std::iota(perm.begin(), perm.end(), 0);
    if (scheme == SortScheme::None) return perm;
    std::vector<std::string> keys;
    keys.reserve(bib.size());
    for (const BibRecord& rec : bib) keys.push_back(composite_key(rec, scheme));
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    return perm;
}

std::vector<std::string> disambiguate(const std::vector<std::string>& base_labels) {
    std::map<std::string, int> counts;
    for (const std::string& label : base_labels) ++counts[label];
    std::map<std::string, int> seen;
    std::vector<std::string> out;
    out.reserve(base_labels.size());
    for (const std::string& label : base_labels) {
        if (counts[label] <= 1) {
            out.push_back(label);
            continue;
        }
        int idx = seen[label]++;
        std::string suffix;
        // a..z, then aa, ab, ...
        if (idx < 26) {
            suffix.push_back(static_cast<char>('a' + idx));
        } else {
            suffix.push_back(static_cast<char>('a' + (idx / 26) - 1));
            suffix.push_back(static_cast<char>('a' + (idx % 26)));
        }
        out.push_back(label + suffix);
    }
    return out;
}

}  // namespace bibforge
