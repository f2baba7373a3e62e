#include <doctest.h>

#include "bibforge/parser.hpp"
#include "bibforge/sort.hpp"

using namespace bibforge;

namespace {

Bibliography load(const std::string& text) {
    return parse_bib(text, CheckLevel::Off).bibliography;
}

std::vector<std::string> keys_in_order(const Bibliography& bib, SortScheme scheme) {
    std::vector<std::string> out;
    for (std::size_t pos : sort_permutation(bib, scheme)) out.push_back(bib.at(pos).key);
    return out;
}

}  // namespace

TEST_CASE("scheme names round-trip") {
    for (const char* name :
         {"nty", "nyt", "nyvt", "anyt", "anyvt", "ynt", "ydnt", "debug", "none"}) {
        CHECK(sort_scheme_name(parse_sort_scheme(name)) == name);
    }
    CHECK_THROWS_AS(parse_sort_scheme("bogus"), BibError);
}

TEST_CASE("nty orders by name, then title, then year") {
    Bibliography bib = load(R"(
@Misc{b, author={Zeta, A}, title={T}, year={1999}}
@Misc{a, author={Alpha, A}, title={T}, year={2005}}
@Misc{c, author={Alpha, A}, title={A Better Title}, year={2001}}
)");
    CHECK(keys_in_order(bib, SortScheme::Nty) ==
          std::vector<std::string>{"c", "a", "b"});
    CHECK(keys_in_order(bib, SortScheme::Nyt) ==
          std::vector<std::string>{"c", "a", "b"});
}

TEST_CASE("ynt and ydnt order by year") {
    Bibliography bib = load(R"(
@Misc{old, author={A, A}, title={T}, year={1950}}
@Misc{new, author={A, A}, title={T}, year={2000}}
)");
    CHECK(keys_in_order(bib, SortScheme::Ynt) ==
          std::vector<std::string>{"old", "new"});
    CHECK(keys_in_order(bib, SortScheme::Ydnt) ==
          std::vector<std::string>{"new", "old"});
}

TEST_CASE("sort override fields take precedence") {
    Bibliography bib = load(R"(
@Misc{x, author={Aardvark, A}, title={T}, year={1999}, sortname={Zzz, Z}}
@Misc{y, author={Middle, M}, title={T}, year={1999}}
)");
    CHECK(keys_in_order(bib, SortScheme::Nty) ==
          std::vector<std::string>{"y", "x"});

    Bibliography keyed = load(R"(
@Misc{x, author={Aardvark, A}, title={T}, sortkey={zzz}}
@Misc{y, author={Middle, M}, title={T}}
)");
    CHECK(keys_in_order(keyed, SortScheme::Nty) ==
          std::vector<std::string>{"y", "x"});
}

TEST_CASE("sortyear drives year ordering within equal names") {
    Bibliography bib = load(R"(
@Misc{later, author={Nietzsche, Friedrich}, title={B}, year={1988}, sortyear={1988-2}}
@Misc{earlier, author={Nietzsche, Friedrich}, title={A}, year={1988}, sortyear={1988-1}}
)");
    CHECK(keys_in_order(bib, SortScheme::Nyt) ==
          std::vector<std::string>{"earlier", "later"});
}

TEST_CASE("xdata stubs sort to the front and debug sorts by key") {
    Bibliography bib = load(R"(
@Misc{zz, author={A, A}, title={T}}
@XData{stub, year={2000}}
@Misc{aa, author={B, B}, title={T}}
)");
    CHECK(keys_in_order(bib, SortScheme::Nty).front() == "stub");
    // xdata stubs lead in every sorting scheme, including debug.
    CHECK(keys_in_order(bib, SortScheme::Debug) ==
          std::vector<std::string>{"stub", "aa", "zz"});
    CHECK(keys_in_order(bib, SortScheme::None) ==
          std::vector<std::string>{"zz", "stub", "aa"});
}

TEST_CASE("alpha labels") {
    Bibliography bib = load(R"(
@Misc{one, author={Wilde, Oscar}, title={T}, year={1899}}
@Misc{two, author={Baez, John C. and Lauda, Aaron D.}, title={T}, year={2004}}
@Misc{three, author={Padhye, J. and Firoiu, V. and Towsley, D.}, title={T}, year={1999}}
@Misc{four, author={Averroes}, title={T}, year={1869}}
@Misc{five, author={A, A}, title={T}, year={2001}, shorthand={XYZ}}
)");
    CHECK(alpha_label(bib.at(0)) == "Wil99");
    CHECK(alpha_label(bib.at(1)) == "BL04");
    CHECK(alpha_label(bib.at(2)) == "PFT99");
    CHECK(alpha_label(bib.at(3)) == "Ave69");
    CHECK(alpha_label(bib.at(4)) == "XYZ");
}

TEST_CASE("citation name part truncates with et al") {
    Bibliography bib = load(R"(
@Misc{a, author={Baez, John C. and Lauda, Aaron D.}, title={T}}
@Misc{b, author={Padhye, J. and Firoiu, V. and Towsley, D.}, title={T}}
)");
    CHECK(citation_name_part(bib.at(0)) == "Baez and Lauda");
    CHECK(citation_name_part(bib.at(1)) == "Padhye et al.");
}

TEST_CASE("disambiguation suffixes repeat labels in order") {
    CHECK(disambiguate({"BL04", "BL04", "X99"}) ==
          std::vector<std::string>{"BL04a", "BL04b", "X99"});
    CHECK(disambiguate({"A", "B"}) == std::vector<std::string>{"A", "B"});
}
