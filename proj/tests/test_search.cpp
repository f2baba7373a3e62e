#include <doctest.h>

#include "bibforge/parser.hpp"
#include "bibforge/search.hpp"

using namespace bibforge;

namespace {

const Bibliography& corpus() {
    static Bibliography bib =
        parse_bib_file(std::string(BIBFORGE_TEST_FIXTURES) + "/corpus.bib",
                       CheckLevel::Off)
            .bibliography;
    return bib;
}

std::size_t count(const std::string& field, const std::string& term) {
    ConfigOptions config;
    Query q = Query::conjunction({Query::make_clause(field, {term})});
    return search(corpus(), q, config).indices.size();
}

}  // namespace

TEST_CASE("corpus counts") {
    CHECK(count("author", "!knuth") == 85);
    CHECK(count("author", "knuth") == 7);
    CHECK(count("editor", "westfahl") == 2);
    CHECK(count("author", "westfahl") == 1);
}

TEST_CASE("two-group disjunction with date interval") {
    ConfigOptions config;
    Query q;
    q.groups.push_back({Query::make_clause("location", {"Zürich"})});
    q.groups.push_back({Query::make_clause("author", {"Aristotle"}),
                        Query::make_clause("year", {"/1930"})});
    SearchResult r = search(corpus(), q, config);
    REQUIRE(r.indices.size() == 4);
    CHECK(r.matches.at(0).get_or("title") == "De Anima");
    CHECK(r.matches.at(0).resolved_year() == 1907);
}

TEST_CASE("name matching levels") {
    std::vector<PersonName> names = parse_name_list("Knuth, Donald E.");
    CHECK(match_names(names, "knuth", AuthorMatch::FamilyOnly, true));
    CHECK(match_names(names, "Knuth, D.", AuthorMatch::FamilyWithInitials, true));
    CHECK(!match_names(names, "Knuth, X.", AuthorMatch::FamilyWithInitials, true));
    CHECK(match_names(names, "Knuth, Donald E.", AuthorMatch::Exact, true));
    CHECK(!match_names(names, "Knuth, Donald", AuthorMatch::Exact, true));
    // diacritics fold for matching
    std::vector<PersonName> mueller = parse_name_list("Müller, Samuel");
    CHECK(match_names(mueller, "Muller", AuthorMatch::FamilyOnly, true));
}

TEST_CASE("date matching modes") {
    DateSpec y1988 = parse_date("1988");
    CHECK(match_date(y1988, "1988", DateMatch::YearOnly));
    CHECK(match_date(y1988, "1980/1990", DateMatch::YearOnly));
    CHECK(!match_date(y1988, "/1930", DateMatch::YearOnly));
    DateSpec precise = parse_date("2004-10-27");
    CHECK(match_date(precise, "2004-10", DateMatch::Exact));
    CHECK(!match_date(precise, "2004-09", DateMatch::Exact));
    CHECK(match_date(precise, "2004-09", DateMatch::YearOnly));
}

TEST_CASE("regex and literal matching per config") {
    ConfigOptions config;  // regex on, ignore case on
    CHECK(count("title", "^De Anima$") == 1);
    Query bad = Query::conjunction({Query::make_clause("title", {"["})});
    CHECK_THROWS_AS(search(corpus(), bad, config), BibError);

    config.use_regex = false;
    Query literal = Query::conjunction({Query::make_clause("title", {"(MVS)"})});
    CHECK(search(corpus(), literal, config).indices.size() == 1);
}

TEST_CASE("search returns expanded matches") {
    ConfigOptions config;
    Query q = Query::conjunction({Query::make_clause("key", {"^inbookchild$"})});
    SearchResult r = search(corpus(), q, config);
    REQUIRE(r.matches.size() == 1);
    CHECK(r.matches.at(0).get_or("booktitle") == "The Book Title");
}

TEST_CASE("select supports positions, masks, and keys") {
    const Bibliography& bib = corpus();
    Bibliography first2 = select(bib, PositionSelector{{1, 2}});
    REQUIRE(first2.size() == 2);
    CHECK(first2.at(0).key == bib.at(0).key);

    Bibliography dropped = select(bib, PositionSelector{{-1}});
    CHECK(dropped.size() == bib.size() - 1);
    CHECK(dropped.at(0).key == bib.at(1).key);

    std::vector<bool> mask(bib.size(), false);
    mask[3] = true;
    CHECK(select(bib, MaskSelector{mask}).size() == 1);

    Bibliography bykey = select(bib, KeySelector{{"loh", "wilde"}});
    REQUIRE(bykey.size() == 2);
    CHECK(bykey.at(0).key == "loh");
}
