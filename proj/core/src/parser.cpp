#include "bibforge/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "bibforge/inheritance.hpp"
#include "bibforge/model.hpp"

namespace bibforge {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string latin1_to_utf8(const std::string& in) {
    std::string out;
    out.reserve(in.size());
    for (unsigned char c : in) {
        if (c < 0x80) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back(static_cast<char>(0xC0 | (c >> 6)));
            out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
        }
    }
    return out;
}

// True when the byte string looks like valid UTF-8 throughout.
bool looks_utf8(const std::string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3
                          : (c & 0xF8) == 0xF0              ? 4
                                                            : 0;
        if (len == 0 || i + len > s.size()) return false;
        for (std::size_t j = 1; j < len; ++j)
            if ((static_cast<unsigned char>(s[i + j]) & 0xC0) != 0x80) return false;
        i += len;
    }
    return true;
}

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    bool done() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }
    int line_at(std::size_t p) const {
        return 1 + static_cast<int>(std::count(text.begin(), text.begin() + std::min(p, text.size()), '\n'));
    }
    int line() const { return line_at(pos); }

    void skip_ws() {
        while (!done() && is_space(peek())) ++pos;
    }
};

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
           c == ':' || c == '.' || c == '+' || c == '/';
}

std::string read_ident(Cursor& cur) {
    std::size_t start = cur.pos;
    while (!cur.done() && is_ident_char(cur.peek())) ++cur.pos;
    return cur.text.substr(start, cur.pos - start);
}

// Reads a {...} group starting at '{'; returns inner content.
std::string read_braced(Cursor& cur) {
    std::size_t start = ++cur.pos;  // skip '{'
    int depth = 1;
    while (!cur.done()) {
        char c = cur.peek();
        if (c == '{') ++depth;
        if (c == '}') {
            if (--depth == 0) {
                std::string out = cur.text.substr(start, cur.pos - start);
                ++cur.pos;
                return out;
            }
        }
        ++cur.pos;
    }
    throw BibError("UnbalancedBraces", "unterminated brace group");
}

std::string read_quoted(Cursor& cur) {
    std::size_t start = ++cur.pos;  // skip '"'
    int depth = 0;
    while (!cur.done()) {
        char c = cur.peek();
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (c == '"' && depth == 0) {
            std::string out = cur.text.substr(start, cur.pos - start);
            ++cur.pos;
            return out;
        }
        ++cur.pos;
    }
    throw BibError("UnbalancedQuotes", "unterminated quoted value");
}

const std::map<std::string, std::string>& month_macros() {
    static const std::map<std::string, std::string> kMonths = {
        {"jan", "1"}, {"feb", "2"}, {"mar", "3"},  {"apr", "4"},
        {"may", "5"}, {"jun", "6"}, {"jul", "7"},  {"aug", "8"},
        {"sep", "9"}, {"oct", "10"}, {"nov", "11"}, {"dec", "12"}};
    return kMonths;
}

// One value expression: concatenation of braced/quoted/bare parts via '#'.
std::string read_value(Cursor& cur, const std::map<std::string, std::string>& macros,
                       Diagnostics* diags) {
    std::string out;
    while (true) {
        cur.skip_ws();
        if (cur.done()) throw BibError("UnexpectedEof", "unexpected end of input in value");
        char c = cur.peek();
        if (c == '{') {
            out += read_braced(cur);
        } else if (c == '"') {
            out += read_quoted(cur);
        } else if (is_ident_char(c)) {
            std::size_t at = cur.pos;
            std::string token = read_ident(cur);
            bool numeric = !token.empty() &&
                           std::all_of(token.begin(), token.end(), [](unsigned char ch) {
                               return std::isdigit(ch) != 0;
                           });
            if (numeric) {
                out += token;
            } else {
                std::string low = to_lower(token);
                auto it = macros.find(low);
                if (it != macros.end()) {
                    out += it->second;
                } else {
                    auto mit = month_macros().find(low);
                    if (mit != month_macros().end()) {
                        out += mit->second;
                    } else {
                        if (diags)
                            diags->push_back({Diagnostic::Severity::Warning, token,
                                              "undefined string macro '" + token + "'",
                                              cur.line_at(at)});
                        out += token;
                    }
                }
            }
        } else {
            throw BibError("BadValue", std::string("unexpected character '") + c +
                                           "' in field value");
        }
        cur.skip_ws();
        if (!cur.done() && cur.peek() == '#') {
            ++cur.pos;
            continue;
        }
        return out;
    }
}

struct RawEntry {
    std::string type;
    std::string key;
    std::vector<std::pair<std::string, std::string>> fields;
    int line = 0;
};

// Parses the body of one @type{...} block with the cursor just past the
// type token. Returns nullopt for @comment/@preamble/@string blocks (the
// latter fills `macros`).
std::optional<RawEntry> read_block(Cursor& cur, const std::string& type,
                                   std::map<std::string, std::string>& macros,
                                   Diagnostics* diags) {
    cur.skip_ws();
    if (cur.done() || (cur.peek() != '{' && cur.peek() != '('))
        throw BibError("BadEntry", "expected '{' after entry type");
    char open = cur.peek();
    char close = open == '{' ? '}' : ')';
    ++cur.pos;

    std::string low = to_lower(type);
    if (low == "comment") {
        // Consume to the balanced close and discard.
        int depth = 1;
        while (!cur.done()) {
            char c = cur.peek();
            if (c == open) ++depth;
            if (c == close && --depth == 0) {
                ++cur.pos;
                return std::nullopt;
            }
            ++cur.pos;
        }
        throw BibError("UnexpectedEof", "unterminated @comment block");
    }
    if (low == "preamble") {
        read_value(cur, macros, diags);
        cur.skip_ws();
        if (cur.done() || cur.peek() != close)
            throw BibError("BadEntry", "unterminated @preamble block");
        ++cur.pos;
        return std::nullopt;
    }
    if (low == "string") {
        cur.skip_ws();
        std::string name = to_lower(read_ident(cur));
        if (name.empty()) throw BibError("BadEntry", "@string without a macro name");
        cur.skip_ws();
        if (cur.done() || cur.peek() != '=')
            throw BibError("BadEntry", "@string without '='");
        ++cur.pos;
        macros[name] = read_value(cur, macros, diags);
        cur.skip_ws();
        if (cur.done() || cur.peek() != close)
            throw BibError("BadEntry", "unterminated @string block");
        ++cur.pos;
        return std::nullopt;
    }

    RawEntry entry;
    entry.type = low;
    entry.line = cur.line();
    cur.skip_ws();
    std::size_t key_start = cur.pos;
    while (!cur.done() && cur.peek() != ',' && cur.peek() != close &&
           !is_space(cur.peek()))
        ++cur.pos;
    entry.key = cur.text.substr(key_start, cur.pos - key_start);
    cur.skip_ws();
    if (cur.done()) throw BibError("UnexpectedEof", "unterminated entry");
    if (cur.peek() == ',') ++cur.pos;

    while (true) {
        cur.skip_ws();
        if (cur.done()) throw BibError("UnexpectedEof", "unterminated entry");
        if (cur.peek() == close) {
            ++cur.pos;
            break;
        }
        std::string fname = read_ident(cur);
        if (fname.empty())
            throw BibError("BadEntry", "expected a field name in entry '" + entry.key + "'");
        cur.skip_ws();
        if (cur.done() || cur.peek() != '=')
            throw BibError("BadEntry", "expected '=' after field '" + fname + "'");
        ++cur.pos;
        std::string value = read_value(cur, macros, diags);
        entry.fields.emplace_back(to_lower(fname), value);
        cur.skip_ws();
        if (!cur.done() && cur.peek() == ',') {
            ++cur.pos;
            continue;
        }
    }
    return entry;
}

// Builds a record leniently: field-level parse failures keep the raw value
// and add a warning instead of rejecting the whole entry.
BibRecord build_record(const RawEntry& raw, Diagnostics& diags) {
    std::string key = trim(raw.key);
    if (key.empty() || key.find_first_of(" \t\n\r,{}") != std::string::npos)
        throw BibError("InvalidKey", "invalid entry key '" + raw.key + "'");
    BibRecord rec;
    rec.entry_type = raw.type;
    rec.key = key;
    for (const auto& [name, value] : raw.fields) {
        std::string v = collapse_whitespace(value);
        if (v.empty()) continue;
        try {
            rec.set_field(name, v);
        } catch (const BibError& e) {
            diags.push_back({Diagnostic::Severity::Warning, rec.key,
                             "could not interpret field '" + name + "': " + e.what(),
                             raw.line});
        }
    }
    return rec;
}

}  // namespace

ParseResult parse_bib(const std::string& raw_text, CheckLevel check, InputEncoding enc) {
    std::string text = raw_text;
    if (enc == InputEncoding::Latin1Lenient && !looks_utf8(text))
        text = latin1_to_utf8(text);
    // Strip a UTF-8 byte-order mark if present.
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);

    ParseResult result;
    Cursor cur{text};
    std::map<std::string, std::string> macros;
    std::vector<BibRecord> kept;
    std::vector<bool> deferred;  // per kept entry: validate after expansion
    std::map<std::string, bool> seen_keys;

    while (!cur.done()) {
        if (cur.peek() != '@') {
            ++cur.pos;
            continue;
        }
        std::size_t at = cur.pos;
        ++cur.pos;
        std::string type = read_ident(cur);
        std::string low = to_lower(type);
        bool directive = low == "string" || low == "comment" || low == "preamble";
        if (!directive) ++result.entry_blocks;
        try {
            std::optional<RawEntry> raw = read_block(cur, type, macros, &result.diagnostics);
            if (!raw) continue;
            BibRecord rec = build_record(*raw, result.diagnostics);
            if (seen_keys.count(rec.key)) {
                result.diagnostics.push_back(
                    {Diagnostic::Severity::Warning, rec.key,
                     "duplicate entry key '" + rec.key + "'; keeping the first",
                     raw->line});
                ++result.skipped;
                continue;
            }
            seen_keys[rec.key] = true;
            bool defer = check != CheckLevel::Off &&
                         (rec.has("crossref") || rec.has("xdata"));
            if (check != CheckLevel::Off && !defer) {
                FieldRequirement missing = missing_required_fields(rec);
                if (!missing.empty()) {
                    std::string subject = rec.get_or("title", rec.key);
                    std::string msg;
                    if (check == CheckLevel::Error) {
                        msg = "Ignoring entry titled \"" + subject + "\" because " +
                              requirement_message(rec, missing);
                        result.diagnostics.push_back(
                            {Diagnostic::Severity::Error, subject, msg, raw->line});
                        ++result.skipped;
                        seen_keys.erase(rec.key);
                        continue;
                    }
                    msg = "Entry titled \"" + subject + "\": " +
                          requirement_message(rec, missing);
                    result.diagnostics.push_back(
                        {Diagnostic::Severity::Warning, subject, msg, raw->line});
                }
            }
            deferred.push_back(defer);
            kept.push_back(std::move(rec));
        } catch (const BibError& e) {
            result.diagnostics.push_back({Diagnostic::Severity::Error, "",
                                          std::string("skipping malformed entry: ") +
                                              e.what(),
                                          cur.line_at(at)});
            if (!directive) ++result.skipped;
            // Recover at the next '@' that starts a line after the failed
            // block began; an unterminated value may have consumed it.
            std::size_t next = cur.text.find("\n@", at);
            cur.pos = next == std::string::npos ? cur.text.size() : next + 1;
        }
    }

    // Entries referencing crossref/xdata parents are validated only after
    // inheritance, since the inherited fields may satisfy the requirements.
    bool any_deferred =
        std::any_of(deferred.begin(), deferred.end(), [](bool b) { return b; });
    if (any_deferred) {
        Bibliography staged{kept};
        Bibliography expanded = staged;
        try {
            expanded = expand_all(staged);
        } catch (const BibError& e) {
            result.diagnostics.push_back({Diagnostic::Severity::Warning, "",
                                          std::string("could not resolve inheritance: ") +
                                              e.what()});
        }
        std::vector<BibRecord> filtered;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (!deferred[i]) {
                filtered.push_back(std::move(kept[i]));
                continue;
            }
            const BibRecord* exp = expanded.find_key(kept[i].key);
            const BibRecord& view = exp ? *exp : kept[i];
            FieldRequirement missing = missing_required_fields(view);
            if (missing.empty()) {
                filtered.push_back(std::move(kept[i]));
                continue;
            }
            std::string subject = view.get_or("title", view.key);
            if (check == CheckLevel::Error) {
                std::string msg = "Ignoring entry titled \"" + subject +
                                  "\" because " + requirement_message(view, missing);
                result.diagnostics.push_back(
                    {Diagnostic::Severity::Error, subject, msg});
                ++result.skipped;
            } else {
                std::string msg = "Entry titled \"" + subject + "\": " +
                                  requirement_message(view, missing);
                result.diagnostics.push_back(
                    {Diagnostic::Severity::Warning, subject, msg});
                filtered.push_back(std::move(kept[i]));
            }
        }
        kept = std::move(filtered);
    }

    result.bibliography = Bibliography(std::move(kept));
    return result;
}

ParseResult parse_bib_file(const std::string& path, CheckLevel check, InputEncoding enc) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BibError("IoError", "cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_bib(buf.str(), check, enc);
}

// ---------------------------------------------------------------------------
// Names

namespace {

struct NameToken {
    std::string text;
    bool braced = false;  // was a {...} group; treated as uppercase
};

// True when the token's first letter is lowercase (von-part marker).
bool starts_lower(const NameToken& tok) {
    if (tok.braced) return false;
    for (char c : tok.text) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalpha(u)) return std::islower(u) != 0;
        if (u >= 0x80) return false;  // non-ASCII letters count as uppercase-ish
    }
    return false;
}

std::string join_tokens(const std::vector<NameToken>& toks, std::size_t b, std::size_t e) {
    std::string out;
    for (std::size_t i = b; i < e; ++i) {
        if (!out.empty()) out += " ";
        out += toks[i].text;
    }
    return out;
}

std::vector<std::string> token_texts(const std::vector<NameToken>& toks, std::size_t b,
                                     std::size_t e) {
    std::vector<std::string> out;
    for (std::size_t i = b; i < e; ++i) out.push_back(toks[i].text);
    return out;
}

// Splits one name into tokens and comma positions; braces are atomic and
// stripped from the stored token.
std::vector<std::vector<NameToken>> tokenize_name(const std::string& text) {
    std::vector<std::vector<NameToken>> parts(1);
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (c == ',') {
            parts.emplace_back();
            ++i;
            continue;
        }
        if (c == '{') {
            int depth = 1;
            std::size_t start = ++i;
            while (i < text.size() && depth > 0) {
                if (text[i] == '{') ++depth;
                if (text[i] == '}') --depth;
                ++i;
            }
            if (depth > 0) throw BibError("UnbalancedBraces", "unbalanced braces in name");
            parts.back().push_back({text.substr(start, i - 1 - start), true});
            continue;
        }
        std::size_t start = i;
        int depth = 0;
        while (i < text.size()) {
            char d = text[i];
            if (d == '{') ++depth;
            if (d == '}') --depth;
            if (depth == 0 && (is_space(d) || d == ',')) break;
            ++i;
        }
        parts.back().push_back({text.substr(start, i - start), false});
    }
    return parts;
}

PersonName parse_one_name(const std::string& text) {
    std::vector<std::vector<NameToken>> parts = tokenize_name(text);
    // Drop empty comma-parts at the edges caused by stray commas.
    while (parts.size() > 3) {
        // Merge extras into the last part rather than failing outright.
        for (auto& tok : parts[3]) parts[2].push_back(tok);
        parts.erase(parts.begin() + 3);
    }
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    if (total == 0) throw BibError("EmptyName", "empty personal name");

    PersonName name;
    if (parts.size() == 1) {
        // First von Last
        const auto& toks = parts[0];
        std::size_t n = toks.size();
        std::size_t von_begin = n, von_end = n;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (starts_lower(toks[i])) {
                von_begin = i;
                break;
            }
        }
        if (von_begin < n) {
            von_end = von_begin + 1;
            for (std::size_t i = von_begin; i + 1 < n; ++i)
                if (starts_lower(toks[i])) von_end = i + 1;
        }
        if (von_begin < n) {
            name.given = token_texts(toks, 0, von_begin);
            name.prefix = join_tokens(toks, von_begin, von_end);
            name.family = token_texts(toks, von_end, n);
        } else {
            if (n == 1) {
                name.family = token_texts(toks, 0, 1);
            } else {
                name.given = token_texts(toks, 0, n - 1);
                name.family = token_texts(toks, n - 1, n);
            }
        }
    } else {
        // von Last, [Jr,] First
        const auto& toks = parts[0];
        std::size_t n = toks.size();
        std::size_t von_end = 0;
        while (von_end + 1 < n && starts_lower(toks[von_end])) ++von_end;
        name.prefix = join_tokens(toks, 0, von_end);
        name.family = token_texts(toks, von_end, n);
        if (parts.size() == 2) {
            name.given = token_texts(parts[1], 0, parts[1].size());
        } else {
            name.suffix = join_tokens(parts[1], 0, parts[1].size());
            name.given = token_texts(parts[2], 0, parts[2].size());
        }
    }
    if (name.family.empty()) throw BibError("EmptyName", "name without a family part");
    return name;
}

// Splits a name list on the unbraced word "and" (case-insensitive).
std::vector<std::string> split_name_list(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    int depth = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (depth == 0 && is_space(c)) {
            // Check for the separator word.
            std::size_t j = i;
            while (j < text.size() && is_space(text[j])) ++j;
            if (j + 3 <= text.size() && iequals(text.substr(j, 3), "and") &&
                (j + 3 == text.size() || is_space(text[j + 3]))) {
                out.push_back(text.substr(start, i - start));
                i = j + 3;
                start = i;
                continue;
            }
        }
        ++i;
    }
    out.push_back(text.substr(start));
    return out;
}

}  // namespace

std::vector<PersonName> parse_name_list(const std::string& text) {
    std::vector<PersonName> names;
    for (const std::string& part : split_name_list(text)) {
        std::string t = trim(part);
        if (t.empty()) throw BibError("EmptyName", "empty name in name list");
        names.push_back(parse_one_name(t));
    }
    return names;
}

namespace {

std::string brace_token(const std::string& tok) {
    if (tok.find(' ') != std::string::npos || tok.find(',') != std::string::npos)
        return "{" + tok + "}";
    return tok;
}

std::string join_braced(const std::vector<std::string>& toks) {
    std::string out;
    for (const auto& t : toks) {
        if (!out.empty()) out += " ";
        out += brace_token(t);
    }
    return out;
}

}  // namespace

std::string name_to_string(const PersonName& name) {
    std::string last = join_braced(name.family);
    if (!name.prefix.empty()) last = name.prefix + " " + last;
    std::string given = join_braced(name.given);
    if (!name.suffix.empty()) return last + ", " + name.suffix + ", " + given;
    if (!given.empty()) return last + ", " + given;
    if (!name.prefix.empty()) return last + ",";  // keep the von part parseable
    return last;
}

std::string name_list_to_string(const std::vector<PersonName>& names) {
    std::string out;
    for (const auto& n : names) {
        if (!out.empty()) out += " and ";
        out += name_to_string(n);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dates

namespace {

DatePart parse_date_part(const std::string& text) {
    std::vector<std::string> parts = split(text, '-');
    if (parts.empty() || parts.size() > 3)
        throw BibError("InvalidDate", "invalid date '" + text + "'");
    auto to_int = [&](const std::string& s, std::size_t width_lo, std::size_t width_hi) {
        if (s.size() < width_lo || s.size() > width_hi ||
            !std::all_of(s.begin(), s.end(),
                         [](unsigned char c) { return std::isdigit(c) != 0; }))
            throw BibError("InvalidDate", "invalid date '" + text + "'");
        return std::stoi(s);
    };
    DatePart part;
    part.year = to_int(parts[0], 4, 4);
    if (parts.size() >= 2) {
        part.month = to_int(parts[1], 1, 2);
        if (*part.month < 1 || *part.month > 12)
            throw BibError("InvalidDate", "invalid month in date '" + text + "'");
    }
    if (parts.size() == 3) {
        part.day = to_int(parts[2], 1, 2);
        if (*part.day < 1 || *part.day > 31)
            throw BibError("InvalidDate", "invalid day in date '" + text + "'");
    }
    return part;
}

}  // namespace

DateSpec parse_date(const std::string& raw) {
    std::string text = trim(raw);
    if (text.empty()) throw BibError("InvalidDate", "empty date");
    std::size_t slash = text.find('/');
    DateSpec spec;
    if (slash == std::string::npos) {
        spec.kind = DateSpec::Kind::Single;
        spec.start = parse_date_part(text);
        return spec;
    }
    if (text.find('/', slash + 1) != std::string::npos)
        throw BibError("InvalidDate", "invalid date interval '" + raw + "'");
    spec.kind = DateSpec::Kind::Interval;
    std::string a = trim(text.substr(0, slash));
    std::string b = trim(text.substr(slash + 1));
    if (a.empty() && b.empty())
        throw BibError("InvalidDate", "empty date interval '" + raw + "'");
    if (!a.empty()) spec.start = parse_date_part(a);
    if (!b.empty()) spec.end = parse_date_part(b);
    return spec;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string pretty_type(const std::string& type) {
    static const std::map<std::string, std::string> kPretty = {
        {"article", "Article"},         {"book", "Book"},
        {"mvbook", "MvBook"},           {"inbook", "InBook"},
        {"bookinbook", "BookInBook"},   {"suppbook", "SuppBook"},
        {"booklet", "Booklet"},         {"collection", "Collection"},
        {"mvcollection", "MvCollection"}, {"incollection", "InCollection"},
        {"manual", "Manual"},           {"misc", "Misc"},
        {"online", "Online"},           {"electronic", "Electronic"},
        {"patent", "Patent"},           {"periodical", "Periodical"},
        {"proceedings", "Proceedings"}, {"mvproceedings", "MvProceedings"},
        {"inproceedings", "InProceedings"}, {"conference", "Conference"},
        {"report", "Report"},           {"techreport", "TechReport"},
        {"resreport", "ResReport"},     {"thesis", "Thesis"},
        {"phdthesis", "PhdThesis"},     {"mastersthesis", "MastersThesis"},
        {"unpublished", "Unpublished"}, {"xdata", "XData"},
        {"set", "Set"},                 {"string", "String"},
    };
    auto it = kPretty.find(type);
    if (it != kPretty.end()) return it->second;
    if (type.empty()) return type;
    std::string out = type;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

}  // namespace

std::string serialize_biblatex(const BibRecord& record) {
    std::string out = "@" + pretty_type(record.entry_type) + "{" + record.key + ",\n";
    for (const auto& [name, value] : record.fields)
        out += "  " + name + " = {" + value + "},\n";
    out += "}\n";
    return out;
}

std::string serialize_biblatex(const Bibliography& bib) {
    std::string out;
    for (const BibRecord& rec : bib) {
        if (!out.empty()) out += "\n";
        out += serialize_biblatex(rec);
    }
    return out;
}

}  // namespace bibforge
