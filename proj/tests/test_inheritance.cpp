#include <doctest.h>

#include "bibforge/inheritance.hpp"
#include "bibforge/parser.hpp"

using namespace bibforge;

namespace {

Bibliography load(const std::string& text) {
    return parse_bib(text, CheckLevel::Off).bibliography;
}

}  // namespace

TEST_CASE("crossref renames parent title to booktitle") {
    Bibliography bib = load(R"(
@Book{parent, author={Author, Book}, title={The Book Title},
  subtitle={The Book Subtitle}, publisher={A publisher}, year={2012}}
@InBook{child, crossref={parent}, author={Author, In Book},
  title={The Title of the In Book Entry}}
)");
    Bibliography out = resolve_crossref(bib);
    const BibRecord* child = out.find_key("child");
    REQUIRE(child);
    CHECK(child->get_or("booktitle") == "The Book Title");
    CHECK(child->get_or("booksubtitle") == "The Book Subtitle");
    CHECK(child->get_or("publisher") == "A publisher");
    CHECK(child->get_or("year") == "2012");
    // the child's own fields win
    CHECK(child->get_or("title") == "The Title of the In Book Entry");
    CHECK(child->get_or("author") == "Author, In Book");
}

TEST_CASE("dangling crossref raises") {
    Bibliography bib = load("@InBook{child, crossref={nowhere}, title={T}}");
    CHECK_THROWS_AS(resolve_crossref(bib), BibError);
}

TEST_CASE("xdata fields copy left-to-right with child priority") {
    Bibliography bib = load(R"(
@XData{d1, year={2013}, note={from-d1}}
@XData{d2, note={from-d2}, volume={7}}
@Misc{m, xdata={d1,d2}, title={T}, volume={9}}
)");
    Bibliography out = resolve_xdata(bib);
    const BibRecord* m = out.find_key("m");
    REQUIRE(m);
    CHECK(m->get_or("year") == "2013");
    CHECK(m->get_or("note") == "from-d1");  // first reference wins
    CHECK(m->get_or("volume") == "9");      // child wins
}

TEST_CASE("xdata chains resolve transitively and cycles raise") {
    Bibliography chain = load(R"(
@XData{a, xdata={b}, f1={1}}
@XData{b, f2={2}}
@Misc{m, xdata={a}, title={T}}
)");
    const BibRecord* m = resolve_xdata(chain).find_key("m");
    REQUIRE(m);
    CHECK(m->get_or("f1") == "1");
    CHECK(m->get_or("f2") == "2");

    Bibliography cyc = load(R"(
@XData{a, xdata={b}}
@XData{b, xdata={a}}
@Misc{m, xdata={a}, title={T}}
)");
    CHECK_THROWS_AS(resolve_xdata(cyc), BibError);

    Bibliography dangling = load("@Misc{m, xdata={ghost}, title={T}}");
    CHECK_THROWS_AS(resolve_xdata(dangling), BibError);
}

TEST_CASE("custom rule tables load from tsv") {
    InheritanceRules rules = InheritanceRules::from_tsv(
        "inbook\tbook\ttitle\tbooktitle\n*\t*\tnote\t-\n");
    CHECK(rules.resolve("inbook", "book", "title") == std::string("booktitle"));
    CHECK(!rules.resolve("inbook", "book", "note").has_value());
}

TEST_CASE("expand_all applies xdata before crossref") {
    Bibliography bib = load(R"(
@XData{x, publisher={X Press}}
@Book{parent, xdata={x}, author={A, B}, title={PT}, year={2000}}
@InBook{child, crossref={parent}, title={CT}}
)");
    const BibRecord* child = expand_all(bib).find_key("child");
    REQUIRE(child);
    CHECK(child->get_or("publisher") == "X Press");
    CHECK(child->get_or("booktitle") == "PT");
}
