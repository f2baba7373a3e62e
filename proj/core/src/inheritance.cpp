#include "bibforge/inheritance.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace bibforge {

namespace {

bool type_matches(const std::string& pattern, std::string_view type) {
    return pattern == "*" || iequals(pattern, type);
}

// Fields that stay with the entry they were written on.
const std::set<std::string>& never_inherited() {
    static const std::set<std::string> kFields = {
        "crossref",  "xdata",     "entryset",  "entrysubtype", "execute",
        "ids",       "label",     "options",   "presort",      "related",
        "relatedoptions", "relatedstring", "relatedtype", "shorthand",
        "shorthandintro", "sortkey", "sortname", "sorttitle", "sortyear",
        "indextitle", "indexsorttitle"};
    return kFields;
}

}  // namespace

const InheritanceRules& InheritanceRules::defaults() {
    static const InheritanceRules kDefaults = [] {
        InheritanceRules r;
        auto add = [&](const char* child, const char* parent, const char* src,
                       const char* dst) { r.add({child, parent, src, dst}); };
        // book -> in-book children: retitle and keep the book author apart.
        for (const char* child : {"inbook", "bookinbook", "suppbook"}) {
            add(child, "book", "title", "booktitle");
            add(child, "book", "subtitle", "booksubtitle");
            add(child, "book", "titleaddon", "booktitleaddon");
            add(child, "book", "author", "bookauthor");
            add(child, "book", "shorttitle", "");
            add(child, "mvbook", "title", "maintitle");
            add(child, "mvbook", "subtitle", "mainsubtitle");
            add(child, "mvbook", "titleaddon", "maintitleaddon");
            add(child, "mvbook", "author", "bookauthor");
            add(child, "mvbook", "shorttitle", "");
        }
        add("book", "mvbook", "title", "maintitle");
        add("book", "mvbook", "subtitle", "mainsubtitle");
        add("book", "mvbook", "titleaddon", "maintitleaddon");
        add("book", "mvbook", "shorttitle", "");
        for (const char* child : {"incollection", "suppcollection", "inreference"}) {
            for (const char* parent : {"collection", "reference"}) {
                add(child, parent, "title", "booktitle");
                add(child, parent, "subtitle", "booksubtitle");
                add(child, parent, "titleaddon", "booktitleaddon");
                add(child, parent, "shorttitle", "");
            }
            add(child, "mvcollection", "title", "maintitle");
            add(child, "mvcollection", "subtitle", "mainsubtitle");
            add(child, "mvcollection", "titleaddon", "maintitleaddon");
            add(child, "mvcollection", "shorttitle", "");
        }
        add("collection", "mvcollection", "title", "maintitle");
        add("collection", "mvcollection", "subtitle", "mainsubtitle");
        add("collection", "mvcollection", "titleaddon", "maintitleaddon");
        add("collection", "mvcollection", "shorttitle", "");
        add("inproceedings", "proceedings", "title", "booktitle");
        add("inproceedings", "proceedings", "subtitle", "booksubtitle");
        add("inproceedings", "proceedings", "titleaddon", "booktitleaddon");
        add("inproceedings", "proceedings", "shorttitle", "");
        add("proceedings", "mvproceedings", "title", "maintitle");
        add("proceedings", "mvproceedings", "subtitle", "mainsubtitle");
        add("proceedings", "mvproceedings", "titleaddon", "maintitleaddon");
        for (const char* child : {"article", "suppperiodical"}) {
            add(child, "periodical", "title", "journaltitle");
            add(child, "periodical", "subtitle", "journalsubtitle");
            add(child, "periodical", "shorttitle", "shortjournal");
        }
        for (const auto& field : never_inherited()) add("*", "*", field.c_str(), "");
        return r;
    }();
    return kDefaults;
}

InheritanceRules InheritanceRules::from_tsv(const std::string& text) {
    InheritanceRules rules;
    for (const std::string& line : split(text, '\n')) {
        std::string row = trim(line);
        if (row.empty() || row[0] == '#') continue;
        std::vector<std::string> cols = split(row, '\t');
        if (cols.size() != 4)
            throw BibError("BadRuleTable", "expected 4 tab-separated columns: " + row);
        std::string target = trim(cols[3]);
        if (target == "-") target.clear();
        rules.add({to_lower(trim(cols[0])), to_lower(trim(cols[1])),
                   to_lower(trim(cols[2])), to_lower(target)});
    }
    return rules;
}

std::optional<std::string> InheritanceRules::resolve(std::string_view child_type,
                                                     std::string_view parent_type,
                                                     std::string_view field) const {
    for (const InheritanceRule& rule : rules_) {
        if (!iequals(rule.source_field, field)) continue;
        if (!type_matches(rule.child_type, child_type)) continue;
        if (!type_matches(rule.parent_type, parent_type)) continue;
        if (rule.target_field.empty()) return std::nullopt;
        return rule.target_field;
    }
    return std::string(field);  // no rule: inherit under the same name
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_keys(const std::string& value) {
    std::vector<std::string> out;
    for (const std::string& part : split(value, ',')) {
        std::string k = trim(part);
        if (!k.empty()) out.push_back(k);
    }
    return out;
}

// Copies the data fields of `source` into `target` without overwriting.
void inherit_verbatim(BibRecord& target, const BibRecord& source) {
    for (const auto& [name, value] : source.fields) {
        if (never_inherited().count(name)) continue;
        if (!target.has(name)) target.set_field(name, value);
    }
}

}  // namespace

Bibliography resolve_xdata(const Bibliography& bib) {
    // Expand xdata references transitively, memoizing fully-expanded
    // records and detecting reference cycles.
    std::map<std::string, BibRecord> done;
    std::set<std::string> visiting;

    std::function<BibRecord(const BibRecord&)> expand = [&](const BibRecord& rec) {
        auto memo = done.find(rec.key);
        if (memo != done.end()) return memo->second;
        const std::string* refs = rec.find("xdata");
        if (!refs) {
            done.emplace(rec.key, rec);
            return rec;
        }
        if (!visiting.insert(rec.key).second)
            throw BibError("XDataCycle",
                           "xdata reference cycle through entry '" + rec.key + "'");
        BibRecord out = rec;
        out.remove_field("xdata");
        for (const std::string& key : split_keys(*refs)) {
            const BibRecord* parent = bib.find_key(key);
            if (!parent)
                throw BibError("DanglingXData", "entry '" + rec.key +
                                                    "' references missing xdata entry '" +
                                                    key + "'");
            inherit_verbatim(out, expand(*parent));
        }
        visiting.erase(rec.key);
        done.emplace(rec.key, out);
        return out;
    };

    std::vector<BibRecord> entries;
    entries.reserve(bib.size());
    for (const BibRecord& rec : bib) entries.push_back(expand(rec));
    return Bibliography(std::move(entries));
}

Bibliography resolve_crossref(const Bibliography& bib, const InheritanceRules& rules) {
    std::map<std::string, BibRecord> done;
    std::set<std::string> visiting;

    std::function<BibRecord(const BibRecord&)> expand = [&](const BibRecord& rec) {
        auto memo = done.find(rec.key);
        if (memo != done.end()) return memo->second;
        const std::string* ref = rec.find("crossref");
        if (!ref) {
            done.emplace(rec.key, rec);
            return rec;
        }
        if (!visiting.insert(rec.key).second)
            throw BibError("CrossrefCycle",
                           "crossref cycle through entry '" + rec.key + "'");
        const BibRecord* parent_raw = bib.find_key(trim(*ref));
        if (!parent_raw)
            throw BibError("DanglingCrossref",
                           "entry '" + rec.key + "' references missing entry '" +
                               trim(*ref) + "'");
        BibRecord parent = expand(*parent_raw);
        BibRecord out = rec;
        for (const auto& [name, value] : parent.fields) {
            std::optional<std::string> target =
                rules.resolve(out.entry_type, parent.entry_type, name);
            if (!target) continue;
            if (!out.has(*target)) out.set_field(*target, value);
        }
        visiting.erase(rec.key);
        done.emplace(rec.key, out);
        return out;
    };

    std::vector<BibRecord> entries;
    entries.reserve(bib.size());
    for (const BibRecord& rec : bib) entries.push_back(expand(rec));
    return Bibliography(std::move(entries));
}

Bibliography expand_all(const Bibliography& bib, const InheritanceRules& rules) {
    return resolve_crossref(resolve_xdata(bib), rules);
}

}  // namespace bibforge
