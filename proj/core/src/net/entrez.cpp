#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "bibforge/net.hpp"

namespace bibforge::net {

namespace {

// --- just-enough XML scanning for the fixed E-Utility response shapes ----

std::string xml_unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '&') {
            if (s.compare(i, 5, "&amp;") == 0) { out += "&"; i += 5; continue; }
            if (s.compare(i, 4, "&lt;") == 0) { out += "<"; i += 4; continue; }
            if (s.compare(i, 4, "&gt;") == 0) { out += ">"; i += 4; continue; }
            if (s.compare(i, 6, "&quot;") == 0) { out += "\""; i += 6; continue; }
            if (s.compare(i, 6, "&apos;") == 0) { out += "'"; i += 6; continue; }
        }
        out.push_back(s[i++]);
    }
    return out;
}

// Inner text of every <tag ...>...</tag> occurrence, in document order.
// Tags of the same name are assumed not to nest (true for these schemas).
std::vector<std::string> xml_all(const std::string& body, const std::string& tag) {
    std::vector<std::string> out;
    std::string open_exact = "<" + tag + ">";
    std::string open_attr = "<" + tag + " ";
    std::string close = "</" + tag + ">";
    std::size_t i = 0;
    while (i < body.size()) {
        std::size_t a = body.find(open_exact, i);
        std::size_t b = body.find(open_attr, i);
        std::size_t start = std::min(a, b);
        if (start == std::string::npos) break;
        std::size_t content = body.find('>', start);
        if (content == std::string::npos) break;
        ++content;
        std::size_t end = body.find(close, content);
        if (end == std::string::npos) break;
        out.push_back(body.substr(content, end - content));
        i = end + close.size();
    }
    return out;
}

std::string xml_first(const std::string& body, const std::string& tag) {
    std::vector<std::string> all = xml_all(body, tag);
    return all.empty() ? "" : all[0];
}

// Inner text of the first <tag ...ATTR...> whose start tag contains `attr`.
std::string xml_first_with_attr(const std::string& body, const std::string& tag,
                                const std::string& attr) {
    std::string open_attr = "<" + tag + " ";
    std::string close = "</" + tag + ">";
    std::size_t i = 0;
    while (i < body.size()) {
        std::size_t start = body.find(open_attr, i);
        if (start == std::string::npos) break;
        std::size_t gt = body.find('>', start);
        if (gt == std::string::npos) break;
        std::string start_tag = body.substr(start, gt - start);
        std::size_t end = body.find(close, gt);
        if (end == std::string::npos) break;
        if (start_tag.find(attr) != std::string::npos)
            return body.substr(gt + 1, end - gt - 1);
        i = end + close.size();
    }
    return "";
}

Params base_params(const NetConfig& cfg) {
    Params params;
    if (!cfg.api_key.empty()) params.emplace_back("api_key", cfg.api_key);
    return params;
}

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const std::string& id : ids) {
        if (!out.empty()) out += ",";
        out += trim(id);
    }
    return out;
}

std::string strip_trailing_period(std::string s) {
    s = trim(s);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

// First title word with more than three letters, so articles and short
// acronyms ("The", "AIC") do not end up in generated keys.
std::string first_title_word(const std::string& title) {
    std::string word;
    std::string fallback;
    for (std::size_t i = 0; i <= title.size(); ++i) {
        if (i < title.size() && std::isalpha(static_cast<unsigned char>(title[i]))) {
            word.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(title[i]))));
            continue;
        }
        if (word.size() > 3) return word;
        if (fallback.empty()) fallback = word;
        word.clear();
    }
    return fallback;
}

BibRecord record_from_article(const std::string& block) {
    std::string pmid = xml_first(block, "PMID");
    std::string title = strip_trailing_period(xml_unescape(xml_first(block, "ArticleTitle")));
    std::string journal;
    std::string volume, number, year;
    if (std::string jblock = xml_first(block, "Journal"); !jblock.empty()) {
        journal = xml_unescape(xml_first(jblock, "Title"));
        volume = xml_first(jblock, "Volume");
        number = xml_first(jblock, "Issue");
        year = xml_first(jblock, "Year");
    }
    std::string pages = xml_first(block, "MedlinePgn");
    std::string authors;
    std::string first_family;
    for (const std::string& author : xml_all(block, "Author")) {
        std::string family = xml_unescape(xml_first(author, "LastName"));
        std::string given = xml_unescape(xml_first(author, "ForeName"));
        if (given.empty()) given = xml_unescape(xml_first(author, "Initials"));
        std::string collective = xml_unescape(xml_first(author, "CollectiveName"));
        std::string one;
        if (!family.empty())
            one = given.empty() ? family : family + ", " + given;
        else if (!collective.empty())
            one = "{" + collective + "}";
        if (one.empty()) continue;
        if (first_family.empty() && !family.empty()) first_family = family;
        if (!authors.empty()) authors += " and ";
        authors += one;
    }
    std::string doi;
    for (const std::string& idlist : xml_all(block, "ArticleIdList")) {
        std::string v = xml_first_with_attr(idlist, "ArticleId", "IdType=\"doi\"");
        if (!v.empty()) {
            doi = trim(v);
            break;
        }
    }

    std::string key = fold_key(first_family) + year + first_title_word(title);
    if (key.empty() || key == year) key = "pmid" + pmid;

    BibRecord rec;
    rec.entry_type = "article";
    rec.key = key;
    if (!title.empty()) rec.set_field("title", title);
    if (!authors.empty()) rec.set_field("author", authors);
    if (!year.empty()) rec.set_field("year", year);
    if (!journal.empty()) rec.set_field("journal", journal);
    if (!volume.empty()) rec.set_field("volume", volume);
    if (!number.empty()) rec.set_field("number", number);
    if (!pages.empty()) rec.set_field("pages", pages);
    if (!pmid.empty()) rec.set_field("eprint", pmid);
    if (!doi.empty()) rec.set_field("doi", doi);
    if (!pmid.empty()) rec.set_field("eprinttype", "pubmed");
    return rec;
}

void uniquify_keys(std::vector<BibRecord>& records) {
    std::set<std::string> used;
    for (BibRecord& rec : records) {
        std::string key = rec.key;
        int n = 1;
        while (used.count(key)) key = rec.key + "-" + std::to_string(n++);
        rec.key = key;
        used.insert(key);
    }
}

}  // namespace

Bibliography pubmed_fetch(HttpClient& client, const std::vector<std::string>& ids,
                          Diagnostics* diags, const NetConfig& cfg) {
    if (ids.empty())
        throw BibError("BadArgument", "pubmed_fetch requires at least one id");
    Params params = base_params(cfg);
    params.emplace_back("db", "pubmed");
    params.emplace_back("id", join_ids(ids));
    params.emplace_back("retmode", "xml");
    HttpResponse resp =
        client.get(cfg.entrez_host, cfg.entrez_base + "/efetch.fcgi", params);
    if (resp.status != 200)
        throw BibError("HttpError",
                       "EFetch returned status " + std::to_string(resp.status));

    std::map<std::string, BibRecord> by_pmid;
    std::vector<std::string> order;
    for (const std::string& block : xml_all(resp.body, "PubmedArticle")) {
        BibRecord rec = record_from_article(block);
        std::string pmid = rec.get_or("eprint");
        if (pmid.empty()) continue;
        if (!by_pmid.count(pmid)) order.push_back(pmid);
        by_pmid[pmid] = std::move(rec);
    }

    std::vector<BibRecord> records;
    for (const std::string& id : ids) {
        auto it = by_pmid.find(trim(id));
        if (it == by_pmid.end()) {
            if (diags)
                diags->push_back({Diagnostic::Severity::Warning, trim(id),
                                  "no PubMed record for id " + trim(id), 0});
            continue;
        }
        records.push_back(it->second);
    }
    uniquify_keys(records);
    return Bibliography(std::move(records));
}

Bibliography pubmed_search(HttpClient& client, const std::string& term,
                           const PubmedSearchOpts& opts, Diagnostics* diags,
                           const NetConfig& cfg) {
    Params params = base_params(cfg);
    params.emplace_back("db", opts.database);
    params.emplace_back("term", term);
    params.emplace_back("retmax", std::to_string(opts.retmax));
    params.emplace_back("retstart", std::to_string(opts.retstart));
    if (!opts.field.empty()) params.emplace_back("field", opts.field);
    if (!opts.datetype.empty()) params.emplace_back("datetype", opts.datetype);
    if (!opts.mindate.empty()) params.emplace_back("mindate", opts.mindate);
    if (!opts.maxdate.empty()) params.emplace_back("maxdate", opts.maxdate);

    HttpResponse resp =
        client.get(cfg.entrez_host, cfg.entrez_base + "/esearch.fcgi", params);
    if (resp.status != 200)
        throw BibError("HttpError",
                       "ESearch returned status " + std::to_string(resp.status));

    std::vector<std::string> ids;
    if (std::string idlist = xml_first(resp.body, "IdList"); !idlist.empty())
        ids = xml_all(idlist, "Id");
    if (ids.empty()) {
        if (diags)
            diags->push_back({Diagnostic::Severity::Info, term,
                              "no results for term '" + term + "'", 0});
        return Bibliography{};
    }
    return pubmed_fetch(client, ids, diags, cfg);
}

namespace {

struct RelatedHit {
    std::string id;
    std::string score;
    std::string source;
};

std::vector<RelatedHit> parse_link_sets(const std::string& body, int max_results) {
    std::vector<RelatedHit> hits;
    for (const std::string& linkset : xml_all(body, "LinkSet")) {
        std::string source;
        if (std::string idlist = xml_first(linkset, "IdList"); !idlist.empty())
            source = trim(xml_first(idlist, "Id"));
        int taken = 0;
        for (const std::string& db : xml_all(linkset, "LinkSetDb")) {
            if (xml_first(db, "LinkName") != "pubmed_pubmed") continue;
            for (const std::string& link : xml_all(db, "Link")) {
                std::string id = trim(xml_first(link, "Id"));
                if (id.empty() || id == source) continue;
                if (max_results > 0 && taken >= max_results) break;
                hits.push_back({id, trim(xml_first(link, "Score")), source});
                ++taken;
            }
        }
    }
    return hits;
}

}  // namespace

Bibliography pubmed_related(HttpClient& client, const std::vector<std::string>& ids,
                            const PubmedRelatedOpts& opts, Diagnostics* diags,
                            const NetConfig& cfg) {
    if (ids.empty())
        throw BibError("BadArgument", "pubmed_related requires at least one id");

    auto elink = [&](const std::string& id_param) {
        Params params = base_params(cfg);
        params.emplace_back("dbfrom", "pubmed");
        params.emplace_back("db", "pubmed");
        params.emplace_back("cmd", "neighbor_score");
        params.emplace_back("id", id_param);
        HttpResponse resp =
            client.get(cfg.entrez_host, cfg.entrez_base + "/elink.fcgi", params);
        if (resp.status != 200)
            throw BibError("HttpError",
                           "ELink returned status " + std::to_string(resp.status));
        return resp.body;
    };

    std::vector<RelatedHit> hits;
    if (opts.batch_mode) {
        int max = opts.max_results.empty() ? 5 : opts.max_results[0];
        hits = parse_link_sets(elink(join_ids(ids)), max);
    } else {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            int max = opts.max_results.empty()
                          ? 5
                          : opts.max_results[std::min(i, opts.max_results.size() - 1)];
            std::vector<RelatedHit> part = parse_link_sets(elink(trim(ids[i])), max);
            hits.insert(hits.end(), part.begin(), part.end());
        }
    }
    if (hits.empty()) return Bibliography{};

    std::vector<std::string> related_ids;
    for (const RelatedHit& hit : hits) related_ids.push_back(hit.id);
    Bibliography fetched = pubmed_fetch(client, related_ids, diags, cfg);

    std::vector<BibRecord> out;
    for (std::size_t i = 0; i < hits.size() && i < fetched.size(); ++i) {
        BibRecord rec = fetched.at(i);
        if (opts.return_sim_scores && !hits[i].score.empty())
            rec.set_field("score", hits[i].score);
        if (opts.return_related_ids && !hits[i].source.empty())
            rec.set_field("pmidrelated", hits[i].source);
        out.push_back(std::move(rec));
    }
    uniquify_keys(out);
    return Bibliography(std::move(out));
}

Bibliography pubmed_lookup_ids(HttpClient& client, const Bibliography& bib,
                               const std::vector<std::size_t>& positions,
                               Diagnostics* diags, const NetConfig& cfg) {
    // citation strings "journal|year|volume|first page|author|key|"
    struct Pending {
        std::size_t position;  // index into `positions`
        std::size_t bib_pos;
        std::string key;
    };
    std::vector<Pending> pending;
    std::string bdata;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        std::size_t pos = positions[i];
        if (pos >= bib.size()) throw BibError("OutOfRange", "position out of range");
        const BibRecord& rec = bib.at(pos);
        if (rec.get_or("eprinttype") == "pubmed" && rec.has("eprint")) continue;
        std::string journal = rec.get_or("journal", rec.get_or("journaltitle"));
        std::string year;
        if (auto y = rec.resolved_year()) year = std::to_string(*y);
        std::string volume = rec.get_or("volume");
        std::string page = rec.get_or("pages");
        if (std::size_t dash = page.find('-'); dash != std::string::npos)
            page = page.substr(0, dash);
        std::string author;
        auto it = rec.parsed_names.find("author");
        if (it != rec.parsed_names.end() && !it->second.empty()) {
            const PersonName& n = it->second.front();
            for (const std::string& part : n.family) {
                if (!author.empty()) author += " ";
                author += part;
            }
        }
        if (journal.empty() || year.empty() || author.empty()) {
            if (diags)
                diags->push_back({Diagnostic::Severity::Warning, rec.key,
                                  "not enough metadata to build a citation string", 0});
            continue;
        }
        if (!bdata.empty()) bdata += "\r";
        bdata += journal + "|" + year + "|" + volume + "|" + trim(page) + "|" + author +
                 "|" + rec.key + "|";
        pending.push_back({i, pos, rec.key});
    }

    Bibliography out = bib;
    if (pending.empty()) return out;

    Params params = base_params(cfg);
    params.emplace_back("db", "pubmed");
    params.emplace_back("retmode", "xml");
    params.emplace_back("bdata", bdata);
    HttpResponse resp =
        client.get(cfg.entrez_host, cfg.entrez_base + "/ecitmatch.cgi", params);
    if (resp.status != 200)
        throw BibError("HttpError",
                       "ECitMatch returned status " + std::to_string(resp.status));

    std::map<std::string, std::string> found;  // entry key -> pmid
    for (const std::string& raw : split(resp.body, '\n')) {
        std::string line = trim(raw);
        if (line.empty()) continue;
        std::vector<std::string> cols = split(line, '|');
        if (cols.size() < 7) continue;
        std::string key = trim(cols[5]);
        std::string pmid = trim(cols[6]);
        if (pmid.empty() || pmid == "NOT_FOUND" || pmid.rfind("NOT_FOUND", 0) == 0)
            continue;
        bool numeric = std::all_of(pmid.begin(), pmid.end(), [](unsigned char c) {
            return std::isdigit(c) != 0;
        });
        if (numeric) found[key] = pmid;
    }

    std::vector<std::size_t> successes;
    for (const Pending& p : pending) {
        auto hit = found.find(p.key);
        if (hit == found.end()) continue;
        BibRecord rec = out.at(p.bib_pos);
        rec.set_field("eprint", hit->second);
        rec.set_field("eprinttype", "pubmed");
        out.replace(p.bib_pos, std::move(rec));
        successes.push_back(p.position + 1);
    }
    if (diags && !successes.empty()) {
        std::string msg = "Success for entries: ";
        for (std::size_t i = 0; i < successes.size(); ++i) {
            if (i > 0) msg += ", ";
            msg += std::to_string(successes[i]);
        }
        diags->push_back({Diagnostic::Severity::Info, "ecitmatch", msg, 0});
    }
    return out;
}

}  // namespace bibforge::net
