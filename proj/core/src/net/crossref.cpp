#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "bibforge/model.hpp"
#include "bibforge/net.hpp"
#include "bibforge/parser.hpp"

namespace bibforge::net {

namespace {

std::string join_authors(const nlohmann::json& authors) {
    std::string out;
    for (const auto& a : authors) {
        std::string family = a.value("family", "");
        std::string given = a.value("given", "");
        if (family.empty() && given.empty()) continue;
        if (!out.empty()) out += " and ";
        if (family.empty())
            out += given;
        else if (given.empty())
            out += family;
        else
            out += family + ", " + given;
    }
    return out;
}

std::string first_string(const nlohmann::json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_array() && !value.empty() && value[0].is_string())
        return value[0].get<std::string>();
    return "";
}

std::optional<int> issued_year(const nlohmann::json& item) {
    for (const char* field : {"issued", "published-print", "published-online"}) {
        if (!item.contains(field)) continue;
        const auto& date = item.at(field);
        if (date.contains("date-parts") && date["date-parts"].is_array() &&
            !date["date-parts"].empty() && date["date-parts"][0].is_array() &&
            !date["date-parts"][0].empty() && date["date-parts"][0][0].is_number())
            return date["date-parts"][0][0].get<int>();
    }
    return std::nullopt;
}

std::string key_for(const nlohmann::json& item, std::size_t ordinal) {
    std::string doi = item.value("DOI", "");
    if (!doi.empty()) return doi;
    return "crossref" + std::to_string(ordinal);
}

}  // namespace

Bibliography crossref_search(HttpClient& client, const std::string& query, int limit,
                             int min_relevance, const std::optional<int>& year,
                             const std::string& sort, bool verbose,
                             Diagnostics* diags, const NetConfig& cfg) {
    if (limit < 1) throw BibError("BadArgument", "limit must be >= 1");
    if (min_relevance < 0 || min_relevance > 100)
        throw BibError("BadArgument", "min_relevance must be within 0..100");

    Params params{{"query", query},
                  {"rows", std::to_string(limit)},
                  {"sort", sort.empty() ? "relevance" : sort}};
    if (year) {
        params.emplace_back("filter", "from-pub-date:" + std::to_string(*year) +
                                          ",until-pub-date:" + std::to_string(*year));
    }

    HttpResponse resp = client.get(cfg.crossref_host, cfg.crossref_path, params);
    if (resp.status != 200)
        throw BibError("HttpError",
                       "CrossRef returned status " + std::to_string(resp.status));

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(resp.body);
    } catch (const nlohmann::json::exception& e) {
        throw BibError("ParseError", std::string("bad CrossRef response: ") + e.what());
    }
    if (!doc.contains("message") || !doc["message"].contains("items"))
        return Bibliography{};
    const auto& items = doc["message"]["items"];
    if (!items.is_array() || items.empty()) return Bibliography{};

    double top_score = 0.0;
    for (const auto& item : items)
        top_score = std::max(top_score, item.value("score", 0.0));

    std::vector<BibRecord> records;
    std::size_t ordinal = 0;
    for (const auto& item : items) {
        ++ordinal;
        double raw = item.value("score", 0.0);
        int normalized =
            top_score > 0.0 ? static_cast<int>(std::lround(100.0 * raw / top_score))
                            : 100;
        if (normalized < min_relevance) continue;
        if (static_cast<int>(records.size()) >= limit) break;

        std::vector<std::pair<std::string, std::string>> fields;
        std::string title = first_string(item.value("title", nlohmann::json()));
        if (!title.empty()) fields.emplace_back("title", title);
        if (item.contains("author") && item["author"].is_array()) {
            std::string authors = join_authors(item["author"]);
            if (!authors.empty()) fields.emplace_back("author", authors);
        }
        std::string type = item.value("type", "journal-article");
        std::string container =
            first_string(item.value("container-title", nlohmann::json()));
        std::string entry_type = "article";
        if (!container.empty()) {
            if (type == "journal-article") {
                fields.emplace_back("journaltitle", container);
            } else {
                entry_type = "incollection";
                fields.emplace_back("booktitle", container);
            }
        } else if (type == "book" || type == "monograph") {
            entry_type = "book";
        }
        if (auto y = issued_year(item))
            fields.emplace_back("year", std::to_string(*y));
        std::string pages = item.value("page", "");
        if (!pages.empty()) fields.emplace_back("pages", pages);
        std::string doi = item.value("DOI", "");
        if (!doi.empty()) fields.emplace_back("doi", doi);

        BibRecord rec;
        try {
            rec = make_record(entry_type, key_for(item, ordinal), fields,
                              CheckLevel::Off, diags);
        } catch (const BibError& e) {
            if (diags)
                diags->push_back({Diagnostic::Severity::Warning, key_for(item, ordinal),
                                  e.what(), 0});
            continue;
        }
        if (verbose && diags) {
            diags->push_back({Diagnostic::Severity::Info, rec.key,
                              "relevance " + std::to_string(normalized) + ": " + title,
                              0});
        }
        records.push_back(std::move(rec));
    }

    // Keys can collide across hits with no DOI; uniquify defensively.
    std::set<std::string> used;
    for (BibRecord& rec : records) {
        std::string key = rec.key;
        int n = 1;
        while (used.count(key)) key = rec.key + "-" + std::to_string(n++);
        rec.key = key;
        used.insert(key);
    }
    return Bibliography(std::move(records));
}

}  // namespace bibforge::net
