#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "bibforge/convert.hpp"
#include "bibforge/parser.hpp"

using namespace bibforge;

namespace {

BibRecord first_of(const std::string& text) {
    return parse_bib(text, CheckLevel::Off).bibliography.at(0);
}

}  // namespace

TEST_CASE("thesis downgrade with note replacement") {
    BibRecord rec = first_of(R"(
@Thesis{schieplthesis,
  date = {2011-03-17},
  url = {http://edoc.ub.uni-muenchen.de/13028/},
  urldate = {2014-03-06},
  title = {Bayesian Regularization and Model Choice for Structured Additive Regression},
  type = {phdthesis},
  institution = {LMU Munich},
  author = {Fabian Scheipl},
}
)");
    ConvertOptions opts;
    opts.note_replace_fields = {"urldate"};
    BibRecord out = to_bibtex_record(rec, opts);
    CHECK(out.entry_type == "phdthesis");
    CHECK(out.get_or("school") == "LMU Munich");
    CHECK(out.get_or("year") == "2011");
    CHECK(out.get_or("note") == "Last visited on 03/06/2014");
    CHECK(!out.has("urldate"));
    CHECK(!out.has("date"));
    CHECK(!out.has("type"));
    CHECK(!out.has("institution"));
}

TEST_CASE("type downgrades") {
    auto type_of = [](const std::string& text) {
        return to_bibtex_record(first_of(text)).entry_type;
    };
    CHECK(type_of("@Online{k, title={T}, url={u}}") == "misc");
    CHECK(type_of("@Report{k, title={T}, type={techreport}, institution={I}}") ==
          "techreport");
    CHECK(type_of("@Thesis{k, title={T}, type={mathesis}, institution={I}}") ==
          "mastersthesis");
    CHECK(type_of("@Collection{k, title={T}, editor={E, E}}") == "book");
    CHECK(type_of("@InReference{k, title={T}, booktitle={B}}") == "inbook");
}

TEST_CASE("field renames and drops") {
    BibRecord rec = first_of(R"(
@Article{k, author={A, B}, title={T}, journaltitle={J},
  location={Berlin}, eprintclass={stat.ME}, date={1999-03}, doi={10.1/x}}
)");
    BibRecord out = to_bibtex_record(rec);
    CHECK(out.get_or("journal") == "J");
    CHECK(out.get_or("address") == "Berlin");
    CHECK(out.get_or("year") == "1999");
    CHECK(out.get_or("month") == "mar");
    CHECK(out.get_or("doi") == "10.1/x");  // doi is kept
    CHECK(!out.has("journaltitle"));
    CHECK(!out.has("eprintclass"));  // not legal in plain BibTeX

    ConvertOptions keep;
    keep.extra_fields = {"eprintclass"};
    CHECK(to_bibtex_record(rec, keep).get_or("eprintclass") == "stat.ME");
}

TEST_CASE("existing year wins over date and conversion is idempotent") {
    BibRecord rec = first_of("@Article{k, title={T}, journal={J}, author={A, B}, "
                             "year={1990}, date={1999-03}}");
    BibRecord once = to_bibtex_record(rec);
    CHECK(once.get_or("year") == "1990");
    BibRecord twice = to_bibtex_record(once);
    CHECK(twice == once);
}

TEST_CASE("month macros serialize unbraced in bibtex output") {
    Bibliography bib({first_of("@Article{k, title={T}, journal={J}, author={A, B}, "
                               "date={2011-03}}")});
    std::string out = to_bibtex(bib);
    CHECK(out.find("  month = mar,\n") != std::string::npos);
}

TEST_CASE("crossref parents gain booktitle in bibtex output") {
    Bibliography bib = parse_bib(R"(
@Book{parent, author={A, B}, title={PT}, year={2000}}
@InBook{child, crossref={parent}, title={CT}}
)",
                                 CheckLevel::Off)
                           .bibliography;
    std::string out = to_bibtex(bib);
    CHECK(out.find("booktitle = {PT}") != std::string::npos);
}

TEST_CASE("write_bib reports a count and raises IoError on bad paths") {
    Bibliography bib({first_of("@Misc{k, title={T}}")});
    std::string path = std::string(BIBFORGE_TEST_FIXTURES) + "/../tmp_write_test.bib";
    CHECK(write_bib(bib, path, BibFlavor::Biblatex) == 1);
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_bib(bib, "/nonexistent-dir/x.bib", BibFlavor::Bibtex),
                    BibError);
}

TEST_CASE("biblatex round trip over the corpus is the identity") {
    Bibliography corpus =
        parse_bib_file(std::string(BIBFORGE_TEST_FIXTURES) + "/corpus.bib",
                       CheckLevel::Off)
            .bibliography;
    Bibliography again =
        parse_bib(serialize_biblatex(corpus), CheckLevel::Off).bibliography;
    REQUIRE(again.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(again.at(i) == corpus.at(i));
}
