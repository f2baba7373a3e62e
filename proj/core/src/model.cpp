#include "bibforge/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "bibforge/parser.hpp"

namespace bibforge {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = false;
    for (char c : s) {
        if (is_space(c)) {
            in_ws = true;
            continue;
        }
        if (in_ws && !out.empty()) out.push_back(' ');
        in_ws = false;
        out.push_back(c);
    }
    return out;
}

bool iequals(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    }
    return true;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string fold_key(std::string_view s) {
    // Case-fold ASCII and strip the diacritics we meet in bibliographic
    // data (Latin-1 supplement and Latin Extended-A, UTF-8 encoded).
    static const std::map<std::string, std::string> kMap = {
        {"à", "a"}, {"á", "a"}, {"â", "a"}, {"ã", "a"}, {"ä", "a"}, {"å", "a"},
        {"À", "a"}, {"Á", "a"}, {"Â", "a"}, {"Ã", "a"}, {"Ä", "a"}, {"Å", "a"},
        {"è", "e"}, {"é", "e"}, {"ê", "e"}, {"ë", "e"},
        {"È", "e"}, {"É", "e"}, {"Ê", "e"}, {"Ë", "e"},
        {"ì", "i"}, {"í", "i"}, {"î", "i"}, {"ï", "i"},
        {"Ì", "i"}, {"Í", "i"}, {"Î", "i"}, {"Ï", "i"},
        {"ò", "o"}, {"ó", "o"}, {"ô", "o"}, {"õ", "o"}, {"ö", "o"}, {"ø", "o"},
        {"Ò", "o"}, {"Ó", "o"}, {"Ô", "o"}, {"Õ", "o"}, {"Ö", "o"}, {"Ø", "o"},
        {"ù", "u"}, {"ú", "u"}, {"û", "u"}, {"ü", "u"},
        {"Ù", "u"}, {"Ú", "u"}, {"Û", "u"}, {"Ü", "u"},
        {"ý", "y"}, {"ÿ", "y"}, {"Ý", "y"},
        {"ñ", "n"}, {"Ñ", "n"}, {"ç", "c"}, {"Ç", "c"},
        {"ß", "ss"}, {"æ", "ae"}, {"Æ", "ae"}, {"œ", "oe"}, {"Œ", "oe"},
        {"š", "s"}, {"Š", "s"}, {"ž", "z"}, {"Ž", "z"},
        {"ł", "l"}, {"Ł", "l"}, {"ř", "r"}, {"Ř", "r"},
        {"č", "c"}, {"Č", "c"}, {"ě", "e"}, {"Ě", "e"},
        {"ő", "o"}, {"Ő", "o"}, {"ű", "u"}, {"Ű", "u"},
        {"ā", "a"}, {"ē", "e"}, {"ī", "i"}, {"ō", "o"}, {"ū", "u"},
    };
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (c < 0x80) {
            if (c != '{' && c != '}' && c != '\\')
                out.push_back(static_cast<char>(std::tolower(c)));
            ++i;
            continue;
        }
        std::size_t len = (c >= 0xF0) ? 4 : (c >= 0xE0) ? 3 : 2;
        len = std::min(len, s.size() - i);
        std::string ch(s.substr(i, len));
        auto it = kMap.find(ch);
        if (it != kMap.end())
            out += it->second;
        else
            out += ch;
        i += len;
    }
    return out;
}

const std::set<std::string>& name_list_fields() {
    static const std::set<std::string> kFields = {
        "author", "editor", "editora", "editorb", "editorc", "translator",
        "commentator", "annotator", "introduction", "foreword", "afterword",
        "bookauthor", "holder", "shortauthor", "shorteditor", "sortname"};
    return kFields;
}

const std::set<std::string>& date_fields() {
    static const std::set<std::string> kFields = {"date", "origdate", "urldate",
                                                  "eventdate"};
    return kFields;
}

// ---------------------------------------------------------------------------
// BibRecord

const std::string* BibRecord::find(std::string_view field) const {
    for (const auto& [name, value] : fields) {
        if (iequals(name, field)) return &value;
    }
    return nullptr;
}

std::string BibRecord::get_or(std::string_view field, std::string fallback) const {
    const std::string* v = find(field);
    return v ? *v : std::move(fallback);
}

namespace {

// Reparses the derived name/date state for one field, failing soft: an
// unparseable value keeps the raw field but clears the derived entry.
void refresh_derived(BibRecord& rec, const std::string& field,
                     const std::string& value, Diagnostics* diags) {
    if (name_list_fields().count(field)) {
        try {
            rec.parsed_names[field] = parse_name_list(value);
        } catch (const BibError& e) {
            rec.parsed_names.erase(field);
            throw;
        }
    } else if (date_fields().count(field)) {
        try {
            rec.parsed_dates[field] = parse_date(value);
        } catch (const BibError& e) {
            rec.parsed_dates.erase(field);
            if (diags)
                diags->push_back({Diagnostic::Severity::Warning, rec.key,
                                  "unparseable value in field '" + field +
                                      "': " + value});
            else
                throw;
        }
    }
}

}  // namespace

void BibRecord::set_field(const std::string& raw_name, const std::string& value) {
    std::string name = to_lower(trim(raw_name));
    if (value.empty()) {
        remove_field(name);
        return;
    }
    bool replaced = false;
    for (auto& [fname, fvalue] : fields) {
        if (fname == name) {
            fvalue = value;
            replaced = true;
            break;
        }
    }
    if (!replaced) fields.emplace_back(name, value);
    refresh_derived(*this, name, value, nullptr);
}

void BibRecord::remove_field(std::string_view field) {
    std::string name = to_lower(field);
    std::erase_if(fields, [&](const auto& p) { return p.first == name; });
    parsed_names.erase(name);
    parsed_dates.erase(name);
}

std::optional<DateSpec> BibRecord::resolved_date() const {
    auto it = parsed_dates.find("date");
    if (it != parsed_dates.end()) return it->second;
    const std::string* year = find("year");
    if (!year) return std::nullopt;
    try {
        DateSpec ds = parse_date(trim(*year));
        if (ds.kind == DateSpec::Kind::Single && ds.start && !ds.start->month) {
            if (const std::string* month = find("month")) {
                int m = 0;
                try {
                    m = std::stoi(trim(*month));
                } catch (...) {
                    static const char* kMonths[] = {"jan", "feb", "mar", "apr",
                                                    "may", "jun", "jul", "aug",
                                                    "sep", "oct", "nov", "dec"};
                    std::string low = to_lower(trim(*month)).substr(0, 3);
                    for (int i = 0; i < 12; ++i)
                        if (low == kMonths[i]) m = i + 1;
                }
                if (m >= 1 && m <= 12) ds.start->month = m;
            }
        }
        return ds;
    } catch (const BibError&) {
        return std::nullopt;
    }
}

std::optional<int> BibRecord::resolved_year() const {
    auto d = resolved_date();
    if (!d) return std::nullopt;
    if (d->start) return d->start->year;
    if (d->end) return d->end->year;
    return std::nullopt;
}

bool BibRecord::operator==(const BibRecord& other) const {
    if (entry_type != other.entry_type || key != other.key) return false;
    return fields == other.fields;
}

// ---------------------------------------------------------------------------
// Bibliography

Bibliography::Bibliography(std::vector<BibRecord> entries)
    : entries_(std::move(entries)) {
    reindex();
}

void Bibliography::reindex() {
    index_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        auto [it, inserted] = index_.emplace(entries_[i].key, i);
        if (!inserted)
            throw BibError("DuplicateKey",
                           "duplicate entry key '" + entries_[i].key + "'");
    }
}

const BibRecord* Bibliography::find_key(std::string_view key) const {
    auto it = index_.find(std::string(key));
    return it == index_.end() ? nullptr : &entries_[it->second];
}

std::optional<std::size_t> Bibliography::position_of(std::string_view key) const {
    auto it = index_.find(std::string(key));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void Bibliography::append(BibRecord record) {
    if (index_.count(record.key))
        throw BibError("DuplicateKey", "duplicate entry key '" + record.key + "'");
    index_.emplace(record.key, entries_.size());
    entries_.push_back(std::move(record));
}

void Bibliography::replace(std::size_t pos, BibRecord record) {
    if (pos >= entries_.size())
        throw BibError("OutOfRange", "position out of range");
    auto existing = index_.find(record.key);
    if (existing != index_.end() && existing->second != pos)
        throw BibError("DuplicateKey", "duplicate entry key '" + record.key + "'");
    index_.erase(entries_[pos].key);
    index_.emplace(record.key, pos);
    entries_[pos] = std::move(record);
}

// ---------------------------------------------------------------------------
// Required fields

FieldRequirement required_fields(std::string_view entry_type) {
    using Req = FieldRequirement;
    static const std::map<std::string, Req, std::less<>> kTable = {
        {"article", {{"author"}, {"title"}, {"journaltitle", "journal"}, {"date", "year"}}},
        {"book", {{"author"}, {"title"}, {"date", "year"}}},
        {"mvbook", {{"author"}, {"title"}, {"date", "year"}}},
        {"inbook", {{"author"}, {"title"}, {"booktitle"}, {"date", "year"}}},
        {"bookinbook", {{"author"}, {"title"}, {"booktitle"}, {"date", "year"}}},
        {"suppbook", {{"author"}, {"title"}, {"booktitle"}, {"date", "year"}}},
        {"booklet", {{"title"}, {"author", "editor"}, {"date", "year"}}},
        {"collection", {{"editor"}, {"title"}, {"date", "year"}}},
        {"mvcollection", {{"editor"}, {"title"}, {"date", "year"}}},
        {"incollection", {{"author"}, {"title"}, {"booktitle"}, {"date", "year"}}},
        {"manual", {{"title"}, {"author", "editor"}, {"date", "year"}}},
        {"misc", {{"title"}, {"author", "editor"}, {"date", "year"}}},
        {"online", {{"title"}, {"author", "editor"}, {"date", "year"}, {"url", "eprint"}}},
        {"electronic", {{"title"}, {"author", "editor"}, {"date", "year"}, {"url", "eprint"}}},
        {"patent", {{"author"}, {"title"}, {"number"}, {"date", "year"}}},
        {"periodical", {{"title"}, {"editor"}, {"date", "year"}}},
        {"proceedings", {{"title"}, {"editor"}, {"date", "year"}}},
        {"mvproceedings", {{"title"}, {"editor"}, {"date", "year"}}},
        {"inproceedings", {{"author"}, {"title"}, {"booktitle"}, {"date", "year"}}},
        {"conference", {{"author"}, {"title"}, {"booktitle"}, {"date", "year"}}},
        {"report", {{"author"}, {"title"}, {"type"}, {"institution"}, {"date", "year"}}},
        {"techreport", {{"author"}, {"title"}, {"institution"}, {"date", "year"}}},
        {"thesis", {{"author"}, {"title"}, {"type"}, {"institution"}, {"date", "year"}}},
        {"phdthesis", {{"author"}, {"title"}, {"institution", "school"}, {"date", "year"}}},
        {"mastersthesis", {{"author"}, {"title"}, {"institution", "school"}, {"date", "year"}}},
        {"unpublished", {{"author"}, {"title"}, {"date", "year"}}},
        {"xdata", {}},
    };
    auto it = kTable.find(entry_type);
    if (it == kTable.end()) return {};
    return it->second;
}

FieldRequirement missing_required_fields(const BibRecord& record) {
    FieldRequirement missing;
    for (const auto& conjunct : required_fields(record.entry_type)) {
        bool satisfied = false;
        for (const auto& alt : conjunct) {
            if (record.has(alt)) {
                satisfied = true;
                break;
            }
        }
        if (!satisfied) missing.push_back(conjunct);
    }
    return missing;
}

std::string describe_requirement(const FieldRequirement& req) {
    // Single alternative prints bare; alternatives print as c("a", "b").
    std::string out;
    for (std::size_t i = 0; i < req.size(); ++i) {
        if (i) out += ", ";
        if (req[i].size() == 1) {
            out += req[i][0];
            continue;
        }
        out += "c(";
        for (std::size_t j = 0; j < req[i].size(); ++j) {
            if (j) out += ", ";
            out += "\"" + req[i][j] + "\"";
        }
        out += ")";
    }
    return out;
}

std::string requirement_message(const BibRecord& record, const FieldRequirement& missing) {
    std::string type = record.entry_type;
    if (!type.empty())
        type[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(type[0])));
    return "A bibentry of bibtype '" + type + "' has to specify the field: " +
           describe_requirement(missing);
}

// ---------------------------------------------------------------------------
// Construction and updates

BibRecord make_record(const std::string& entry_type, const std::string& key,
                      const std::vector<std::pair<std::string, std::string>>& field_pairs,
                      CheckLevel check, Diagnostics* diags) {
    std::string k = trim(key);
    if (k.empty() || k.find_first_of(" \t\n\r,{}") != std::string::npos)
        throw BibError("InvalidKey", "invalid entry key '" + key + "'");

    BibRecord rec;
    rec.entry_type = to_lower(trim(entry_type));
    rec.key = k;
    for (const auto& [name, value] : field_pairs) {
        std::string v = collapse_whitespace(value);
        if (v.empty()) continue;
        rec.set_field(name, v);
    }

    if (check != CheckLevel::Off) {
        FieldRequirement missing = missing_required_fields(rec);
        if (!missing.empty()) {
            std::string subject = rec.get_or("title", rec.key);
            std::string msg = requirement_message(rec, missing);
            if (check == CheckLevel::Error)
                throw BibError("MissingRequiredFields", msg);
            if (diags)
                diags->push_back({Diagnostic::Severity::Warning, subject, msg});
        }
    }
    return rec;
}

void apply_update(BibRecord& record, const FieldUpdate& update) {
    for (const auto& [raw_name, value] : update) {
        std::string name = to_lower(trim(raw_name));
        if (name == "bibtype" || name == "entry_type") {
            record.entry_type = to_lower(trim(value));
        } else if (name == "key") {
            record.key = trim(value);
        } else {
            record.set_field(name, value);
        }
    }
}

Bibliography set_fields(const Bibliography& bib, const Selector& sel,
                        const std::vector<FieldUpdate>& updates) {
    if (updates.size() != sel.positions.size())
        throw BibError("LengthMismatch",
                       "updates length does not match selection length");
    std::vector<BibRecord> entries = bib.entries();
    for (std::size_t i = 0; i < sel.positions.size(); ++i) {
        std::size_t pos = sel.positions[i];
        if (pos >= entries.size())
            throw BibError("OutOfRange", "selection position out of range");
        apply_update(entries[pos], updates[i]);
    }
    return Bibliography(std::move(entries));  // rejects key collisions
}

Bibliography set_fields(const Bibliography& bib, const Selector& sel,
                        const FieldUpdate& update) {
    std::vector<FieldUpdate> updates(sel.positions.size(), update);
    return set_fields(bib, sel, updates);
}

Bibliography replace_entries(const Bibliography& bib, const Selector& sel,
                             const std::vector<BibRecord>& replacements) {
    if (replacements.size() != sel.positions.size())
        throw BibError("LengthMismatch",
                       "replacements length does not match selection length");
    std::vector<BibRecord> entries = bib.entries();
    for (std::size_t i = 0; i < sel.positions.size(); ++i) {
        std::size_t pos = sel.positions[i];
        if (pos >= entries.size())
            throw BibError("OutOfRange", "selection position out of range");
        entries[pos] = replacements[i];
    }
    return Bibliography(std::move(entries));
}

std::vector<std::optional<std::string>> get_field_column(
    const Bibliography& bib, const std::string& field_name) {
    std::vector<std::optional<std::string>> out;
    out.reserve(bib.size());
    std::string name = to_lower(trim(field_name));
    for (const BibRecord& rec : bib) {
        if (name == "bibtype" || name == "entry_type")
            out.emplace_back(rec.entry_type);
        else if (name == "key")
            out.emplace_back(rec.key);
        else if (const std::string* v = rec.find(name))
            out.emplace_back(*v);
        else
            out.emplace_back(std::nullopt);
    }
    return out;
}

}  // namespace bibforge
