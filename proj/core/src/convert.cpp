#include "bibforge/convert.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "bibforge/parser.hpp"
#include "bibforge/render.hpp"

namespace bibforge {

namespace {

const char* kMonthMacros[] = {"jan", "feb", "mar", "apr", "may", "jun",
                              "jul", "aug", "sep", "oct", "nov", "dec"};

bool is_month_macro(const std::string& v) {
    return std::find(std::begin(kMonthMacros), std::end(kMonthMacros), v) !=
           std::end(kMonthMacros);
}

// "3" / "03" / "mar" / "March" -> "mar"; anything else passes through.
std::string month_macro(const std::string& raw) {
    std::string v = to_lower(trim(raw));
    if (v.size() >= 3) {
        std::string head = v.substr(0, 3);
        if (is_month_macro(head)) return head;
    }
    try {
        int m = std::stoi(v);
        if (m >= 1 && m <= 12) return kMonthMacros[m - 1];
    } catch (...) {
    }
    return raw;
}

std::string bibtex_type(const BibRecord& rec) {
    const std::string& t = rec.entry_type;
    if (t == "online" || t == "electronic" || t == "www") return "misc";
    if (t == "report") {
        std::string type = to_lower(rec.get_or("type", "techreport"));
        return type == "techreport" || type == "resreport" ? "techreport" : "techreport";
    }
    if (t == "thesis") {
        std::string type = to_lower(rec.get_or("type", "phdthesis"));
        return type == "mathesis" ? "mastersthesis" : "phdthesis";
    }
    if (t == "collection" || t == "mvbook" || t == "mvcollection" || t == "reference")
        return "book";
    if (t == "mvproceedings") return "proceedings";
    if (t == "inreference" || t == "bookinbook" || t == "suppbook") return "inbook";
    if (t == "suppcollection") return "incollection";
    if (t == "suppperiodical") return "article";
    if (t == "periodical" || t == "set" || t == "xdata") return "misc";
    return t;
}

}  // namespace

const std::set<std::string>& bibtex_legal_fields() {
    static const std::set<std::string> kFields = {
        "address",      "annote",   "author",   "booktitle", "chapter",
        "crossref",     "edition",  "editor",   "howpublished", "institution",
        "journal",      "key",      "month",    "note",      "number",
        "organization", "pages",    "publisher", "school",   "series",
        "title",        "type",     "volume",   "year",
        // kept despite being post-classic: widely understood by styles
        "doi",          "url",      "eprint",
    };
    return kFields;
}

BibRecord to_bibtex_record(const BibRecord& record, const ConvertOptions& opts) {
    std::string new_type = bibtex_type(record);
    bool thesis = new_type == "phdthesis" || new_type == "mastersthesis";
    bool drop_type_field =
        record.entry_type == "thesis" || record.entry_type == "report";

    // Which field, if any, becomes the note.
    std::string note_source;
    if (!record.has("note")) {
        for (const std::string& f : opts.note_replace_fields) {
            if (record.has(f)) {
                note_source = to_lower(f);
                break;
            }
        }
    }

    // Fields that keep their name stay in source order; converted fields
    // (year/month derived from date, renamed fields, the synthesized note)
    // are appended after them, note last.
    std::vector<std::pair<std::string, std::string>> out_fields;
    std::vector<std::pair<std::string, std::string>> derived;
    std::vector<std::pair<std::string, std::string>> renamed;
    std::vector<std::pair<std::string, std::string>> note_field;
    bool have_year = record.has("year");
    for (const auto& [name, value] : record.fields) {
        if (name == note_source) {
            std::string text = value;
            if (name == "urldate") {
                auto it = record.parsed_dates.find("urldate");
                if (it != record.parsed_dates.end())
                    text = "Last visited on " + format_date_slashed(it->second);
            }
            note_field.emplace_back("note", text);
            continue;
        }
        std::string new_name = name;
        if (name == "journaltitle") new_name = "journal";
        else if (name == "location") new_name = "address";
        else if (name == "institution" && thesis) new_name = "school";
        else if (name == "type" && drop_type_field) continue;
        else if (name == "date" && !have_year) {
            auto it = record.parsed_dates.find("date");
            if (it != record.parsed_dates.end() && it->second.start) {
                const DatePart& p = *it->second.start;
                derived.emplace_back("year", std::to_string(p.year));
                if (p.month)
                    derived.emplace_back("month", kMonthMacros[*p.month - 1]);
                continue;
            }
        } else if (name == "month") {
            out_fields.emplace_back("month", month_macro(value));
            continue;
        }
        if (!bibtex_legal_fields().count(new_name) && !opts.extra_fields.count(new_name))
            continue;
        if (new_name != name)
            renamed.emplace_back(new_name, value);
        else
            out_fields.emplace_back(new_name, value);
    }
    out_fields.insert(out_fields.end(), derived.begin(), derived.end());
    out_fields.insert(out_fields.end(), renamed.begin(), renamed.end());
    out_fields.insert(out_fields.end(), note_field.begin(), note_field.end());

    BibRecord out;
    out.entry_type = new_type;
    out.key = record.key;
    for (const auto& [name, value] : out_fields) out.set_field(name, value);
    return out;
}

namespace {

std::string serialize_bibtex(const BibRecord& rec) {
    // Same block shape as the biblatex serializer, but @PhdThesis-style
    // names and month macros left unbraced.
    std::string block = serialize_biblatex(rec);
    // Patch month macro values: "  month = {mar}," -> "  month = mar,".
    std::string needle_prefix = "  month = {";
    std::size_t pos = block.find(needle_prefix);
    if (pos != std::string::npos) {
        std::size_t close = block.find("},", pos);
        if (close != std::string::npos) {
            std::string value =
                block.substr(pos + needle_prefix.size(),
                             close - pos - needle_prefix.size());
            if (is_month_macro(value))
                block = block.substr(0, pos) + "  month = " + value + "," +
                        block.substr(close + 2);
        }
    }
    return block;
}

}  // namespace

std::string to_bibtex(const Bibliography& bib, const ConvertOptions& opts) {
    // BibTeX inheritance is symmetric on booktitle; give crossref parents
    // a booktitle so child lookups still resolve after conversion.
    std::set<std::string> parents;
    for (const BibRecord& rec : bib)
        if (const std::string* ref = rec.find("crossref")) parents.insert(trim(*ref));

    std::string out;
    for (const BibRecord& rec : bib) {
        BibRecord source = rec;
        if (parents.count(rec.key) && !rec.has("booktitle")) {
            if (const std::string* title = rec.find("title"))
                source.set_field("booktitle", *title);
        }
        BibRecord converted = to_bibtex_record(source, opts);
        if (!out.empty()) out += "\n";
        out += serialize_bibtex(converted);
    }
    return out;
}

std::size_t write_bib(const Bibliography& bib, const std::string& path,
                      BibFlavor flavor, const ConvertOptions& opts, bool verbose) {
    std::string text = flavor == BibFlavor::Bibtex ? to_bibtex(bib, opts)
                                                   : serialize_biblatex(bib);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BibError("IoError", "cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw BibError("IoError", "failed writing '" + path + "'");
    if (verbose)
        std::cerr << "Wrote " << bib.size() << " entries to " << path << "\n";
    return bib.size();
}

}  // namespace bibforge
