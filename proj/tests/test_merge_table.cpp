#include <doctest.h>

#include "bibforge/merge.hpp"
#include "bibforge/parser.hpp"
#include "bibforge/table.hpp"

using namespace bibforge;

namespace {

Bibliography load(const std::string& text) {
    return parse_bib(text, CheckLevel::Off).bibliography;
}

}  // namespace

TEST_CASE("merge compares only the requested fields") {
    Bibliography a = load("@Misc{x, title={Same Title}, year={1999}}");
    Bibliography b = load("@Misc{y, title={same   title}, year={2001}}");
    // case and whitespace folded: duplicates on title alone
    CHECK(merge(a, b, {"title"}).size() == 1);
    // but distinct when year participates
    CHECK(merge(a, b, {"title", "year"}).size() == 2);
}

TEST_CASE("missing fields only equal missing fields") {
    Bibliography a = load("@Misc{x, title={T}}");
    Bibliography b = load("@Misc{y, title={T}, note={extra}}");
    CHECK(merge(a, b, {"title", "note"}).size() == 2);
    Bibliography c = load("@Misc{z, title={T}}");
    CHECK(merge(a, c, {"title", "note"}).size() == 1);
}

TEST_CASE("bibtype and key participate when asked") {
    Bibliography a = load("@Misc{x, title={T}}");
    Bibliography b = load("@Article{x2, title={T}}");
    CHECK(merge(a, b, {"title", "bibtype"}).size() == 2);
    CHECK(merge(a, b, {"title"}).size() == 1);
}

TEST_CASE("concat uniquifies colliding keys with numeric suffixes") {
    Bibliography a = load("@Misc{k, title={A}}");
    Bibliography b = load("@Misc{k, title={B}}\n@Misc{k-1, title={C}}");
    Bibliography out = concat(a, b);
    REQUIRE(out.size() == 3);
    CHECK(out.at(0).key == "k");
    CHECK(out.at(1).key == "k-1");
    CHECK(out.at(2).key == "k-1-1");  // suffixing is sequential, like make.unique
}

TEST_CASE("table round trip and NA semantics") {
    Bibliography bib = load(R"(
@Article{a, author={Doe, Jane}, title={T1}, year={2001}}
@Book{b, title={NA}, publisher={P}}
)");
    Table t = to_table(bib);
    REQUIRE(t.columns.size() >= 2);
    CHECK(t.columns.front() == "bibtype");

    std::string csv = table_to_csv(t);
    // literal string "NA" must be quoted to survive the round trip
    CHECK(csv.find("\"NA\"") != std::string::npos);

    Table back = table_from_csv(csv);
    Bibliography rebuilt = from_table(back, CheckLevel::Off);
    REQUIRE(rebuilt.size() == 2);
    CHECK(rebuilt.at(0).get_or("author") == "Doe, Jane");
    CHECK(rebuilt.at(1).get_or("title") == "NA");
    CHECK(!rebuilt.at(1).has("author"));  // bare NA means missing
}

TEST_CASE("csv quoting of separators and quotes") {
    Bibliography bib = load("@Misc{q, title={a, \"b\" and c}}");
    std::string csv = table_to_csv(to_table(bib));
    Bibliography rebuilt = from_table(table_from_csv(csv), CheckLevel::Off);
    CHECK(rebuilt.at(0).get_or("title") == "a, \"b\" and c");
}

TEST_CASE("from_table requires a bibtype column") {
    Table t;
    t.columns = {"title"};
    t.row_ids = {"k"};
    t.cells = {{std::optional<std::string>("T")}};
    CHECK_THROWS_AS(from_table(t, CheckLevel::Off), BibError);
}
