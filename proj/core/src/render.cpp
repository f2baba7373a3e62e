#include "bibforge/render.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include "bibforge/inheritance.hpp"
#include "bibforge/sort.hpp"

namespace bibforge {

namespace {

constexpr const char* kDashToken = "\xE2\x80\x94\xE2\x80\x93\xE2\x80\x94";  // "—–—"

}  // namespace

// ---------------------------------------------------------------------------
// Localization

const LocalizationTable& LocalizationTable::defaults() {
    static const LocalizationTable kTable = [] {
        LocalizationTable t;
        t.set("editor", "ed.");
        t.set("editors", "eds.");
        t.set("byeditor", "Ed. by");
        t.set("bytranslator", "Trans.  by");
        t.set("redactor", "Red. by");
        t.set("commentator", "With a comment. by");
        t.set("annotator", "With annots. by");
        t.set("introduction", "With an intro. by");
        t.set("foreword", "With a forew. by");
        t.set("afterword", "With an afterw. by");
        t.set("founder", "Founded by");
        t.set("compiler", "Comp. by");
        t.set("mathesis", "MA Thesis");
        t.set("phdthesis", "PhD Thesis");
        t.set("techreport", "Tech. rep.");
        t.set("resreport", "Research rep.");
        t.set("submitted", "Submitted");
        t.set("inpress", "In press");
        t.set("inpreparation", "In preparation");
        t.set("visited", "visited on");
        t.set("visitedcap", "Visited on");
        return t;
    }();
    return kTable;
}

const std::string* LocalizationTable::find(std::string_view key) const {
    auto it = table_.find(key);
    return it == table_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Small formatting helpers

std::string html_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s.compare(i, 3, "\xE2\x80\x9C") == 0) {
            out += "&ldquo;";
            i += 3;
        } else if (s.compare(i, 3, "\xE2\x80\x9D") == 0) {
            out += "&rdquo;";
            i += 3;
        } else {
            char c = s[i];
            if (c == '&')
                out += "&amp;";
            else if (c == '<')
                out += "&lt;";
            else if (c == '>')
                out += "&gt;";
            else
                out.push_back(c);
            ++i;
        }
    }
    return out;
}

namespace {

const char* kMonthAbbrev[] = {"Jan.", "Feb.", "Mar.", "Apr.", "May", "Jun.",
                              "Jul.", "Aug.", "Sep.", "Oct.", "Nov.", "Dec."};

std::string part_display(const DatePart& p) {
    if (p.month && p.day) {
        return std::string(kMonthAbbrev[*p.month - 1]) + " " + std::to_string(*p.day) +
               ", " + std::to_string(p.year);
    }
    if (p.month) return std::string(kMonthAbbrev[*p.month - 1]) + " " + std::to_string(p.year);
    return std::to_string(p.year);
}

}  // namespace

std::string format_date_display(const DateSpec& date) {
    if (date.kind == DateSpec::Kind::Single)
        return date.start ? part_display(*date.start) : "";
    std::string a = date.start ? std::to_string(date.start->year) : "";
    std::string b = date.end ? std::to_string(date.end->year) : "";
    return a + "-" + b;
}

std::string format_date_slashed(const DateSpec& date) {
    const DatePart* p = date.start ? &*date.start : (date.end ? &*date.end : nullptr);
    if (!p) return "";
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d/%02d/%04d", p->month.value_or(1),
                  p->day.value_or(1), p->year);
    return buf;
}

namespace {

// First UTF-8 character of a string.
std::string first_char(const std::string& s) {
    if (s.empty()) return "";
    unsigned char c = static_cast<unsigned char>(s[0]);
    std::size_t len = c < 0x80 ? 1 : (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : 4;
    return s.substr(0, std::min(len, s.size()));
}

std::string given_display(const PersonName& n, bool first_inits) {
    std::string out;
    for (const std::string& g : n.given) {
        if (!out.empty()) out += " ";
        if (first_inits) {
            // "Mathew" -> "M."; a token already an initial stays as-is.
            std::string init = first_char(g);
            out += init;
            if (!(g.size() == init.size() + 1 && g.back() == '.')) out += ".";
            else out += ".";
        } else {
            out += g;
        }
    }
    return out;
}

std::string family_part(const PersonName& n) {
    std::string out;
    for (const std::string& f : n.family) {
        if (!out.empty()) out += " ";
        out += f;
    }
    return out;
}

std::string one_name(const PersonName& n, bool first_inits, bool family_first) {
    std::string given = given_display(n, first_inits);
    std::string family = family_part(n);
    std::string prefix = n.prefix;
    if (family_first) {
        std::string out = family;
        if (!prefix.empty()) out = prefix + " " + out;
        if (!given.empty()) out += ", " + given;
        if (!n.suffix.empty()) out += ", " + n.suffix;
        return out;
    }
    std::string out;
    if (!given.empty()) out = given + " ";
    if (!prefix.empty()) out += prefix + " ";
    out += family;
    if (!n.suffix.empty()) out += ", " + n.suffix;
    return out;
}

}  // namespace

std::string format_names(const std::vector<PersonName>& names, int max_names,
                         bool first_inits, bool family_first) {
    if (names.empty()) return "";
    std::size_t n = names.size();
    bool truncate = static_cast<int>(n) > max_names;
    std::size_t shown = truncate ? static_cast<std::size_t>(max_names) : n;
    std::string out;
    for (std::size_t i = 0; i < shown; ++i) {
        if (i > 0) out += (!truncate && i + 1 == shown) ? " and " : ", ";
        out += one_name(names[i], first_inits, family_first && i == 0);
    }
    if (truncate) out += ", et al.";
    return out;
}

// ---------------------------------------------------------------------------
// Entry formatting

namespace {

struct Style {
    const ConfigOptions& cfg;
    bool html;
    const LocalizationTable& loc;

    std::string plain(const std::string& s) const { return html ? html_escape(s) : s; }
    std::string emph(const std::string& s) const {
        return html ? "<EM>" + html_escape(s) + "</EM>" : "_" + s + "_";
    }
    std::string open_quote() const { return html ? "&ldquo;" : "\""; }
    std::string close_quote() const { return html ? "&rdquo;" : "\""; }
    std::string localize(const std::string& key) const {
        const std::string* v = loc.find(key);
        return v ? *v : key;
    }
};

bool is_quoted_title_type(const std::string& type) {
    return type == "article" || type == "inbook" || type == "incollection" ||
           type == "inproceedings" || type == "conference" || type == "bookinbook" ||
           type == "suppbook" || type == "suppcollection" || type == "inreference" ||
           type == "thesis" || type == "phdthesis" || type == "mastersthesis" ||
           type == "unpublished" || type == "suppperiodical";
}

bool is_in_type(const std::string& type) {
    return type == "inbook" || type == "incollection" || type == "inproceedings" ||
           type == "conference" || type == "bookinbook" || type == "suppbook" ||
           type == "suppcollection" || type == "inreference";
}

bool is_thesis_type(const std::string& type) {
    return type == "thesis" || type == "phdthesis" || type == "mastersthesis";
}

bool is_report_type(const std::string& type) {
    return type == "report" || type == "techreport";
}

std::string ordinal(const std::string& raw) {
    std::string v = trim(raw);
    bool numeric = !v.empty() && std::all_of(v.begin(), v.end(), [](unsigned char c) {
                       return std::isdigit(c) != 0;
                   });
    if (!numeric) return v;
    int n = std::stoi(v);
    int mod100 = n % 100;
    const char* suffix = "th";
    if (mod100 < 11 || mod100 > 13) {
        switch (n % 10) {
            case 1: suffix = "st"; break;
            case 2: suffix = "nd"; break;
            case 3: suffix = "rd"; break;
        }
    }
    return v + suffix;
}

// Appends "." unless the piece already ends in terminal punctuation.
void push_sentence(std::vector<std::string>& out, std::string piece) {
    if (piece.empty()) return;
    char last = piece.back();
    if (last != '.' && last != '!' && last != '?') piece += ".";
    out.push_back(std::move(piece));
}

std::string join_title(const BibRecord& rec, const char* title_field,
                       const char* subtitle_field) {
    std::string title = rec.get_or(title_field);
    std::string subtitle = rec.get_or(subtitle_field);
    if (title.empty()) return subtitle;
    if (subtitle.empty()) return title;
    return title + ". " + subtitle;
}

std::string quoted_title(const Style& st, const std::string& text) {
    return st.open_quote() + st.plain(text) + st.close_quote();
}

const std::vector<PersonName>* names_of(const BibRecord& rec, const char* field) {
    auto it = rec.parsed_names.find(field);
    if (it == rec.parsed_names.end() || it->second.empty()) return nullptr;
    return &it->second;
}

std::string fmt_names(const Style& st, const std::vector<PersonName>& names,
                      bool family_first = false) {
    return st.plain(format_names(names, st.cfg.max_names, st.cfg.first_inits,
                                 family_first));
}

// "Ed. by X.", "Trans.  by Y.", ... contributor sentences in display order.
void contributor_sentences(const Style& st, const BibRecord& rec,
                           std::vector<std::string>& out, bool skip_editor) {
    if (!skip_editor) {
        if (const auto* eds = names_of(rec, "editor"))
            push_sentence(out, st.localize("byeditor") + " " + fmt_names(st, *eds));
    }
    // editora/b/c annotated by their editor*type fields.
    for (const char* suffix : {"a", "b", "c"}) {
        std::string field = std::string("editor") + suffix;
        if (const auto* eds = names_of(rec, field.c_str())) {
            std::string type = to_lower(rec.get_or(field + "type", "editor"));
            std::string intro = type == "editor" ? st.localize("byeditor")
                                                 : st.localize(type);
            push_sentence(out, intro + " " + fmt_names(st, *eds));
        }
    }
    if (const auto* tr = names_of(rec, "translator"))
        push_sentence(out, st.localize("bytranslator") + " " + fmt_names(st, *tr));
    if (const auto* c = names_of(rec, "commentator"))
        push_sentence(out, st.localize("commentator") + " " + fmt_names(st, *c));
    if (const auto* a = names_of(rec, "annotator"))
        push_sentence(out, st.localize("annotator") + " " + fmt_names(st, *a));
    if (const auto* i = names_of(rec, "introduction"))
        push_sentence(out, st.localize("introduction") + " " + fmt_names(st, *i));
    if (const auto* f = names_of(rec, "foreword"))
        push_sentence(out, st.localize("foreword") + " " + fmt_names(st, *f));
    if (const auto* a = names_of(rec, "afterword"))
        push_sentence(out, st.localize("afterword") + " " + fmt_names(st, *a));
}

void edition_volume_series(const Style& st, const BibRecord& rec,
                           std::vector<std::string>& out, bool volume_in_title) {
    if (const std::string* ed = rec.find("edition"))
        push_sentence(out, st.plain(ordinal(*ed)) + " ed");
    if (!volume_in_title) {
        if (const std::string* vol = rec.find("volume"))
            push_sentence(out, "Vol. " + st.plain(*vol));
    }
    if (const std::string* vols = rec.find("volumes"))
        push_sentence(out, st.plain(*vols) + " vols");
    if (const std::string* series = rec.find("series")) {
        std::string s = st.plain(*series);
        if (const std::string* num = rec.find("number");
            num && !is_report_type(rec.entry_type) && rec.entry_type != "article")
            s += " " + st.plain(*num);
        push_sentence(out, s);
    }
}

std::string year_string(const BibRecord& rec) {
    std::optional<int> y = rec.resolved_year();
    return y ? std::to_string(*y) : "";
}

// "LOCATION: PUBLISHER, YEAR, pp. PAGES." (any part may be absent).
std::string venue_sentence(const Style& st, const BibRecord& rec,
                           const std::string& publisher, bool with_year,
                           bool with_pages) {
    std::string out;
    if (const std::string* loc = rec.find("location"))
        out += st.plain(*loc);
    else if (const std::string* addr = rec.find("address"))
        out += st.plain(*addr);
    if (!publisher.empty()) {
        if (!out.empty()) out += ": ";
        out += st.plain(publisher);
    }
    if (with_year) {
        std::string y = year_string(rec);
        if (!y.empty()) {
            if (!out.empty()) out += ", ";
            out += y;
        }
    }
    if (with_pages) {
        if (const std::string* pages = rec.find("pages")) {
            if (!out.empty()) out += ", ";
            out += "pp. " + st.plain(*pages);
        }
    }
    return out;
}

std::string publisher_of(const BibRecord& rec) {
    for (const char* f : {"publisher", "organization", "institution", "school"})
        if (const std::string* v = rec.find(f)) return *v;
    return "";
}

void extras_sentences(const Style& st, const BibRecord& rec,
                      std::vector<std::string>& out) {
    if (const std::string* isbn = rec.find("isbn"))
        push_sentence(out, "ISBN: " + st.plain(*isbn));
    if (const std::string* issn = rec.find("issn"))
        push_sentence(out, "ISSN: " + st.plain(*issn));
    if (const std::string* doi = rec.find("doi"))
        push_sentence(out, "DOI: " + st.plain(*doi));
    if (const std::string* eprint = rec.find("eprint")) {
        std::string type = to_lower(rec.get_or("eprinttype", "arxiv"));
        std::string head;
        if (type == "arxiv")
            head = "arXiv";
        else if (type == "pubmed")
            head = "PMID";
        else if (type == "jstor")
            head = "JSTOR";
        else if (type == "googlebooks")
            head = "Google Books";
        else
            head = rec.get_or("eprinttype", "eprint");
        std::string piece = head + ": " + st.plain(*eprint);
        if (type == "arxiv") {
            if (const std::string* cls = rec.find("eprintclass"))
                piece += " [" + st.plain(*cls) + "]";
        }
        push_sentence(out, piece);
    }
    auto urldate_it = rec.parsed_dates.find("urldate");
    bool have_urldate = urldate_it != rec.parsed_dates.end();
    if (const std::string* url = rec.find("url")) {
        std::string piece;
        if (st.html)
            piece = "&lt;URL: " + html_escape(*url) + "&gt;";
        else
            piece = "<URL: " + *url + ">";
        if (have_urldate)
            piece += " (" + st.localize("visited") + " " +
                     format_date_slashed(urldate_it->second) + ")";
        push_sentence(out, piece);
        have_urldate = false;  // consumed
    }
    if (have_urldate)
        push_sentence(out, "(" + st.localize("visitedcap") + " " +
                               format_date_slashed(urldate_it->second) + ")");
    if (const std::string* ps = rec.find("pubstate")) {
        const std::string* text = st.loc.find(to_lower(*ps));
        push_sentence(out, text ? *text : st.plain(*ps));
    }
}

// The italicized title block for book-like entries, handling a maintitle
// with a volume-specific title: "_MAIN_. Vol. 1.: _TITLE_."
void italic_title_sentences(const Style& st, const BibRecord& rec,
                            std::vector<std::string>& out, bool& volume_in_title) {
    std::string title = join_title(rec, "title", "subtitle");
    volume_in_title = false;
    if (const std::string* main = rec.find("maintitle")) {
        std::string block = st.emph(join_title(rec, "maintitle", "mainsubtitle"));
        if (const std::string* vol = rec.find("volume")) {
            block += ". Vol. " + st.plain(*vol) + ".:";
            volume_in_title = true;
        }
        if (!title.empty()) block += " " + st.emph(title);
        push_sentence(out, block);
    } else if (!title.empty()) {
        push_sentence(out, st.emph(title));
    }
}

// The "In: ..." block for in-book style children.
void in_book_sentence(const Style& st, const BibRecord& rec,
                      std::vector<std::string>& out, bool& volume_in_title) {
    std::string piece = "In:";
    volume_in_title = false;
    if (const auto* ba = names_of(rec, "bookauthor")) {
        piece += " " + fmt_names(st, *ba);
        if (piece.back() != '.') piece += ".";
    }
    if (const std::string* main = rec.find("maintitle")) {
        (void)main;
        // The book author's period gets an extra space before a maintitle.
        piece += "  " + st.emph(join_title(rec, "maintitle", "mainsubtitle"));
        if (const std::string* vol = rec.find("volume")) {
            piece += ". Vol. " + st.plain(*vol) + ".:";
            volume_in_title = true;
        }
        std::string bt = join_title(rec, "booktitle", "booksubtitle");
        if (!bt.empty()) piece += " " + st.emph(bt);
    } else {
        std::string bt = join_title(rec, "booktitle", "booksubtitle");
        if (!bt.empty()) piece += " " + st.emph(bt);
    }
    push_sentence(out, piece);
}

}  // namespace

std::string format_entry(const BibRecord& input, const ConfigOptions& config,
                         const std::string& label, const std::string& year_label,
                         const BibRecord* prev) {
    Style st{config, config.style == OutputFormat::Html, LocalizationTable::defaults()};
    BibRecord rec = input;
    for (const std::string& f : config.no_print_fields) rec.remove_field(f);

    const std::string& type = rec.entry_type;
    BibStyle bib_style = config.bib_style;
    bool family_first =
        bib_style == BibStyle::AuthorYear || bib_style == BibStyle::AuthorTitle;

    std::vector<std::string> sentences;

    // --- head: authors / editors ---------------------------------------
    const std::vector<PersonName>* head_names = names_of(rec, "author");
    bool editor_head = false;
    if (!head_names) {
        head_names = names_of(rec, "editor");
        editor_head = head_names != nullptr;
    }
    if (bib_style == BibStyle::AuthorYear) {
        std::string names_text;
        if (head_names) {
            bool same_as_prev = false;
            if (config.dashed && prev) {
                const std::vector<PersonName>* prev_names = names_of(*prev, "author");
                if (!prev_names) prev_names = names_of(*prev, "editor");
                same_as_prev = prev_names && *prev_names == *head_names;
            }
            names_text = same_as_prev ? kDashToken
                                      : fmt_names(st, *head_names, family_first);
            if (editor_head && !same_as_prev)
                names_text += ", " + st.localize(head_names->size() > 1 ? "editors"
                                                                        : "editor");
        }
        std::string head = names_text;
        std::string yl = year_label.empty() ? year_string(rec) : year_label;
        if (!yl.empty()) {
            if (!head.empty()) head += " ";
            head += "(" + yl + ")";
        }
        // "Nietzsche, F. (1988a)." -- always terminate the head.
        if (!head.empty()) sentences.push_back(head + ".");
    } else if (head_names) {
        std::string head = fmt_names(st, *head_names, family_first);
        if (editor_head)
            head += ", " + st.localize(head_names->size() > 1 ? "editors" : "editor");
        push_sentence(sentences, head);
    }

    // --- body ------------------------------------------------------------
    bool skip_date_parens = bib_style == BibStyle::AuthorYear;
    if (type == "article" || type == "suppperiodical") {
        push_sentence(sentences, quoted_title(st, join_title(rec, "title", "subtitle")));
        if (const std::string* v = rec.find("version"))
            push_sentence(sentences, "Version " + st.plain(*v));
        std::string journal = rec.get_or("journaltitle", rec.get_or("journal"));
        std::string piece;
        if (!journal.empty()) piece = "In: " + st.emph(journal);
        if (const std::string* vol = rec.find("volume")) {
            piece += piece.empty() ? "" : " ";
            piece += st.plain(*vol);
            if (const std::string* num = rec.find("number"))
                piece += "." + st.plain(*num);
        } else if (const std::string* num = rec.find("number")) {
            piece += piece.empty() ? "" : " ";
            piece += st.plain(*num);
        }
        if (!skip_date_parens) {
            if (auto date = rec.resolved_date()) {
                piece += piece.empty() ? "(" : " (";
                piece += format_date_display(*date) + ")";
            }
        }
        if (const std::string* pages = rec.find("pages"))
            piece += ", pp. " + st.plain(*pages);
        push_sentence(sentences, piece);
        extras_sentences(st, rec, sentences);
    } else if (is_in_type(type)) {
        push_sentence(sentences, quoted_title(st, join_title(rec, "title", "subtitle")));
        if (const std::string* v = rec.find("version"))
            push_sentence(sentences, "Version " + st.plain(*v));
        bool volume_in_title = false;
        in_book_sentence(st, rec, sentences, volume_in_title);
        contributor_sentences(st, rec, sentences, /*skip_editor=*/editor_head);
        edition_volume_series(st, rec, sentences, volume_in_title);
        if (const std::string* note = rec.find("note"))
            push_sentence(sentences, st.plain(*note));
        std::string venue = venue_sentence(st, rec, publisher_of(rec),
                                           /*with_year=*/!skip_date_parens,
                                           /*with_pages=*/true);
        push_sentence(sentences, venue);
        extras_sentences(st, rec, sentences);
    } else if (is_thesis_type(type)) {
        push_sentence(sentences, quoted_title(st, join_title(rec, "title", "subtitle")));
        std::string kind;
        if (type == "phdthesis")
            kind = st.localize("phdthesis");
        else if (type == "mastersthesis")
            kind = st.localize("mathesis");
        else
            kind = st.localize(to_lower(rec.get_or("type", "phdthesis")));
        push_sentence(sentences, kind);
        if (const std::string* note = rec.find("note"))
            push_sentence(sentences, st.plain(*note));
        std::string inst = rec.get_or("institution", rec.get_or("school"));
        push_sentence(sentences,
                      venue_sentence(st, rec, inst, !skip_date_parens, false));
        extras_sentences(st, rec, sentences);
    } else if (type == "periodical") {
        std::string piece = st.emph(join_title(rec, "title", "subtitle"));
        if (const std::string* vol = rec.find("volume")) {
            piece += " " + st.plain(*vol);
            if (const std::string* num = rec.find("number"))
                piece += "." + st.plain(*num);
        }
        if (!skip_date_parens) {
            std::string y = year_string(rec);
            if (!y.empty()) piece += " (" + y + ")";
        }
        std::string issue = join_title(rec, "issuetitle", "issuesubtitle");
        if (!issue.empty()) piece += ": " + st.emph(issue);
        push_sentence(sentences, piece);
        extras_sentences(st, rec, sentences);
    } else if (type == "unpublished") {
        push_sentence(sentences, quoted_title(st, join_title(rec, "title", "subtitle")));
        if (const std::string* note = rec.find("note"))
            push_sentence(sentences, st.plain(*note));
        if (!skip_date_parens) {
            if (auto date = rec.resolved_date())
                push_sentence(sentences, format_date_display(*date));
        }
        extras_sentences(st, rec, sentences);
    } else {
        // Book-like: book, mvbook, collection, proceedings, manual, misc,
        // online, booklet, report, patent, ...
        bool volume_in_title = false;
        italic_title_sentences(st, rec, sentences, volume_in_title);
        contributor_sentences(st, rec, sentences, /*skip_editor=*/editor_head);
        edition_volume_series(st, rec, sentences, volume_in_title);
        if (is_report_type(type) || type == "resreport" ||
            (type == "report" && rec.has("type"))) {
            std::string kind = type == "report"
                                   ? st.localize(to_lower(rec.get_or("type", "techreport")))
                                   : st.localize(type);
            if (const std::string* num = rec.find("number"))
                kind += " " + st.plain(*num);
            push_sentence(sentences, kind);
        }
        if (const std::string* note = rec.find("note"))
            push_sentence(sentences, st.plain(*note));
        std::string publisher = publisher_of(rec);
        bool have_venue = !publisher.empty() || rec.has("location") || rec.has("address");
        if (have_venue) {
            push_sentence(sentences, venue_sentence(st, rec, publisher,
                                                    !skip_date_parens, false));
        } else if (!skip_date_parens) {
            if (auto date = rec.resolved_date())
                push_sentence(sentences, format_date_display(*date));
        }
        extras_sentences(st, rec, sentences);
    }

    std::string body;
    for (const std::string& s : sentences) {
        if (!body.empty()) body += " ";
        body += s;
    }

    std::string prefix;
    if (!label.empty() && bib_style != BibStyle::AuthorYear &&
        bib_style != BibStyle::AuthorTitle)
        prefix = "[" + label + "] ";
    return prefix + body;
}

// ---------------------------------------------------------------------------
// Label assignment and bibliography rendering

LabelSet assign_labels(const Bibliography& expanded, const ConfigOptions& config) {
    LabelSet out;
    std::vector<std::size_t> perm =
        sort_permutation(expanded, config.effective_sorting());
    for (std::size_t pos : perm)
        if (!expanded.at(pos).is_xdata()) out.print_order.push_back(pos);

    // Alphabetic labels, disambiguated in print order.
    std::vector<std::string> bases;
    bases.reserve(out.print_order.size());
    for (std::size_t pos : out.print_order) bases.push_back(alpha_label(expanded.at(pos)));
    std::vector<std::string> labels = disambiguate(bases);
    for (std::size_t i = 0; i < out.print_order.size(); ++i)
        out.alpha[expanded.at(out.print_order[i]).key] = labels[i];

    // Author-year labels: suffix within (name part, year) collision groups.
    std::vector<std::string> ay_bases;
    std::vector<std::string> years;
    for (std::size_t pos : out.print_order) {
        const BibRecord& rec = expanded.at(pos);
        std::string year;
        if (auto y = rec.resolved_year()) year = std::to_string(*y);
        years.push_back(year);
        ay_bases.push_back(citation_name_part(rec) + "\x1f" + year);
    }
    std::vector<std::string> ay_labels = disambiguate(ay_bases);
    for (std::size_t i = 0; i < out.print_order.size(); ++i) {
        std::string suffix = ay_labels[i].substr(ay_bases[i].size());
        out.year_label[expanded.at(out.print_order[i]).key] = years[i] + suffix;
    }
    return out;
}

namespace {

std::string render_positions(const Bibliography& expanded,
                             const std::vector<std::size_t>& order,
                             const LabelSet& labels, const ConfigOptions& config,
                             bool anchor_ids) {
    std::string out;
    const BibRecord* prev = nullptr;
    std::size_t index = 0;
    for (std::size_t pos : order) {
        const BibRecord& rec = expanded.at(pos);
        ++index;
        std::string label;
        switch (config.bib_style) {
            case BibStyle::Numeric: label = std::to_string(index); break;
            case BibStyle::Alphabetic: {
                auto it = labels.alpha.find(rec.key);
                label = it == labels.alpha.end() ? alpha_label(rec) : it->second;
                break;
            }
            case BibStyle::Draft: label = rec.key; break;
            default: break;
        }
        std::string year_label;
        if (auto it = labels.year_label.find(rec.key); it != labels.year_label.end())
            year_label = it->second;
        std::string text = format_entry(rec, config, label, year_label, prev);
        if (config.style == OutputFormat::Html) {
            std::string anchor =
                anchor_ids ? "<a name=\"bib-" + rec.key + "\"></a>" : "";
            text = "<p>" + anchor + "<cite>" + text + "</cite></p>";
        } else if (config.style == OutputFormat::Markdown && anchor_ids) {
            text = "<a name=\"bib-" + rec.key + "\"></a>" + text;
        }
        if (!out.empty()) out += "\n\n";
        out += text;
        prev = &rec;
    }
    return out;
}

}  // namespace

std::string render_bibliography(const Bibliography& bib, const ConfigOptions& config) {
    Bibliography expanded = expand_all(bib);
    LabelSet labels = assign_labels(expanded, config);
    return render_positions(expanded, labels.print_order, labels, config, false);
}

std::string render_bibliography_subset(const Bibliography& bib,
                                       const std::vector<std::string>& keys,
                                       const ConfigOptions& config, bool anchor_ids) {
    Bibliography expanded = expand_all(bib);
    LabelSet labels = assign_labels(expanded, config);
    std::set<std::string> wanted(keys.begin(), keys.end());
    std::vector<std::size_t> order;
    for (std::size_t pos : labels.print_order)
        if (wanted.count(expanded.at(pos).key)) order.push_back(pos);
    return render_positions(expanded, order, labels, config, anchor_ids);
}

}  // namespace bibforge
