#include "bibforge/search.hpp"

#include <algorithm>
#include <regex>

#include "bibforge/inheritance.hpp"
#include "bibforge/parser.hpp"

namespace bibforge {

Clause Query::make_clause(const std::string& field, std::vector<std::string> terms) {
    Clause clause;
    clause.field = to_lower(trim(field));
    for (std::string& term : terms) {
        if (!term.empty() && term.front() == '!') {
            clause.negated = true;
            term.erase(term.begin());
        }
    }
    clause.terms = std::move(terms);
    return clause;
}

Query Query::conjunction(std::vector<Clause> clauses) {
    Query q;
    q.groups.push_back(std::move(clauses));
    return q;
}

// ---------------------------------------------------------------------------
// Name matching

namespace {

std::string initials_of(const std::vector<std::string>& given) {
    std::string out;
    for (const std::string& g : given) {
        std::string f = fold_key(g);
        if (!f.empty()) out.push_back(f[0]);
    }
    return out;
}

std::string family_fold(const PersonName& n) {
    std::string out;
    for (const std::string& part : n.family) {
        if (!out.empty()) out += " ";
        out += part;
    }
    return fold_key(out);
}

bool one_name_matches(const PersonName& entry, const PersonName& query,
                      AuthorMatch level) {
    if (family_fold(entry) != family_fold(query)) return false;
    if (level == AuthorMatch::FamilyOnly) return true;
    std::string ei = initials_of(entry.given);
    std::string qi = initials_of(query.given);
    if (level == AuthorMatch::FamilyWithInitials)
        return qi.empty() || ei.rfind(qi, 0) == 0;
    // Exact: the full folded given names must agree (plus prefix/suffix).
    auto join_fold = [](const std::vector<std::string>& parts) {
        std::string out;
        for (const auto& p : parts) {
            if (!out.empty()) out += " ";
            out += p;
        }
        return fold_key(out);
    };
    return join_fold(entry.given) == join_fold(query.given) &&
           fold_key(entry.prefix) == fold_key(query.prefix) &&
           fold_key(entry.suffix) == fold_key(query.suffix);
}

}  // namespace

bool match_names(const std::vector<PersonName>& names, const std::string& query_text,
                 AuthorMatch level, bool /*ignore_case*/) {
    std::vector<PersonName> query_names;
    try {
        query_names = parse_name_list(query_text);
    } catch (const BibError&) {
        return false;
    }
    for (const PersonName& q : query_names) {
        bool found = std::any_of(names.begin(), names.end(), [&](const PersonName& n) {
            return one_name_matches(n, q, level);
        });
        if (!found) return false;
    }
    return !query_names.empty();
}

// ---------------------------------------------------------------------------
// Date matching

namespace {

struct DayStamp {
    int year, month, day;
    auto operator<=>(const DayStamp&) const = default;
};

// Closed-interval endpoints; open ends stretch to the representable range.
std::pair<DayStamp, DayStamp> widen(const DateSpec& spec, DateMatch mode) {
    auto lo = [&](const std::optional<DatePart>& p) -> DayStamp {
        if (!p) return {0, 1, 1};
        if (mode == DateMatch::YearOnly) return {p->year, 1, 1};
        return {p->year, p->month.value_or(1), p->day.value_or(1)};
    };
    auto hi = [&](const std::optional<DatePart>& p) -> DayStamp {
        if (!p) return {9999, 12, 31};
        if (mode == DateMatch::YearOnly) return {p->year, 12, 31};
        return {p->year, p->month.value_or(12), p->day.value_or(31)};
    };
    if (spec.kind == DateSpec::Kind::Single) return {lo(spec.start), hi(spec.start)};
    return {lo(spec.start), hi(spec.end)};
}

}  // namespace

bool match_date(const DateSpec& entry_date, const std::string& query_text,
                DateMatch mode) {
    DateSpec query;
    try {
        query = parse_date(query_text);
    } catch (const BibError&) {
        return false;
    }
    auto [alo, ahi] = widen(entry_date, mode);
    auto [blo, bhi] = widen(query, mode);
    return alo <= bhi && blo <= ahi;
}

// ---------------------------------------------------------------------------
// Search

namespace {

bool text_matches(const std::string& value, const std::string& term,
                  const ConfigOptions& config) {
    if (config.use_regex) {
        auto flags = std::regex::ECMAScript;
        if (config.ignore_case) flags |= std::regex::icase;
        try {
            return std::regex_search(value, std::regex(term, flags));
        } catch (const std::regex_error& e) {
            throw BibError("BadRegex", "invalid pattern '" + term + "': " + e.what());
        }
    }
    if (config.ignore_case) {
        std::string v = fold_key(value);
        std::string t = fold_key(term);
        return v.find(t) != std::string::npos;
    }
    return value.find(term) != std::string::npos;
}

bool clause_matches(const BibRecord& rec, const Clause& clause,
                    const ConfigOptions& config) {
    bool base = false;
    const std::string& field = clause.field;
    if (name_list_fields().count(field)) {
        auto it = rec.parsed_names.find(field);
        if (it != rec.parsed_names.end()) {
            for (const std::string& term : clause.terms) {
                if (match_names(it->second, term, config.match_author,
                                config.ignore_case)) {
                    base = true;
                    break;
                }
            }
        }
    } else if (date_fields().count(field) || field == "year") {
        std::optional<DateSpec> date;
        if (field == "date" || field == "year") {
            date = rec.resolved_date();
        } else {
            auto it = rec.parsed_dates.find(field);
            if (it != rec.parsed_dates.end()) date = it->second;
        }
        if (date) {
            for (const std::string& term : clause.terms) {
                if (match_date(*date, term, config.match_date)) {
                    base = true;
                    break;
                }
            }
        }
    } else {
        std::optional<std::string> value;
        if (field == "bibtype" || field == "entry_type")
            value = rec.entry_type;
        else if (field == "key")
            value = rec.key;
        else if (const std::string* v = rec.find(field))
            value = *v;
        if (value) {
            for (const std::string& term : clause.terms) {
                if (text_matches(*value, term, config)) {
                    base = true;
                    break;
                }
            }
        }
    }
    return clause.negated ? !base : base;
}

}  // namespace

SearchResult search(const Bibliography& bib, const Query& query,
                    const ConfigOptions& config) {
    Bibliography expanded = expand_all(bib);
    SearchResult result;
    std::vector<BibRecord> matched;
    for (std::size_t i = 0; i < expanded.size(); ++i) {
        const BibRecord& rec = expanded.at(i);
        bool any_group = false;
        for (const auto& group : query.groups) {
            bool all = true;
            for (const Clause& clause : group) {
                if (!clause_matches(rec, clause, config)) {
                    all = false;
                    break;
                }
            }
            if (all && !group.empty()) {
                any_group = true;
                break;
            }
        }
        if (any_group) {
            result.indices.push_back(i);
            matched.push_back(rec);
        }
    }
    result.matches = Bibliography(std::move(matched));
    return result;
}

// ---------------------------------------------------------------------------
// Selection

Bibliography select(const Bibliography& bib, const SelectSpec& spec) {
    std::vector<BibRecord> out;
    if (const auto* pos = std::get_if<PositionSelector>(&spec)) {
        bool has_neg = std::any_of(pos->positions.begin(), pos->positions.end(),
                                   [](long p) { return p < 0; });
        bool has_pos = std::any_of(pos->positions.begin(), pos->positions.end(),
                                   [](long p) { return p > 0; });
        if (has_neg && has_pos)
            throw BibError("BadSelector",
                           "cannot mix positive and negative positions");
        if (has_neg) {
            std::set<std::size_t> drop;
            for (long p : pos->positions) {
                std::size_t idx = static_cast<std::size_t>(-p);
                if (idx < 1 || idx > bib.size())
                    throw BibError("OutOfRange", "position out of range");
                drop.insert(idx - 1);
            }
            for (std::size_t i = 0; i < bib.size(); ++i)
                if (!drop.count(i)) out.push_back(bib.at(i));
        } else {
            for (long p : pos->positions) {
                if (p < 1 || static_cast<std::size_t>(p) > bib.size())
                    throw BibError("OutOfRange", "position out of range");
                out.push_back(bib.at(static_cast<std::size_t>(p - 1)));
            }
        }
    } else if (const auto* mask = std::get_if<MaskSelector>(&spec)) {
        if (mask->mask.size() != bib.size())
            throw BibError("LengthMismatch", "mask length does not match");
        for (std::size_t i = 0; i < bib.size(); ++i)
            if (mask->mask[i]) out.push_back(bib.at(i));
    } else {
        const auto& keys = std::get<KeySelector>(spec).keys;
        for (const std::string& key : keys) {
            const BibRecord* rec = bib.find_key(key);
            if (!rec) throw BibError("UnknownKey", "no entry with key '" + key + "'");
            out.push_back(*rec);
        }
    }
    return Bibliography(std::move(out));
}

}  // namespace bibforge
