#include <doctest.h>

#include "properties.hpp"

using namespace bibforge;

namespace {

const Bibliography& corpus() {
    static Bibliography bib =
        parse_bib_file(std::string(BIBFORGE_TEST_FIXTURES) + "/corpus.bib",
                       CheckLevel::Off)
            .bibliography;
    return bib;
}

}  // namespace

TEST_CASE("property: parser round-trip on 1000 randomized records") {
    std::string why;
    CHECK_MESSAGE(proptest::parser_round_trip(why), why);
}

TEST_CASE("property: search complement over 200 random pairs") {
    std::string why;
    CHECK_MESSAGE(proptest::search_complement(corpus(), why), why);
}

TEST_CASE("property: expansion is idempotent") {
    std::string why;
    CHECK_MESSAGE(proptest::expand_idempotent(corpus(), why), why);
}

TEST_CASE("property: all nine sort schemes are stable permutations") {
    std::string why;
    CHECK_MESSAGE(proptest::sort_properties(corpus(), why), why);
}

TEST_CASE("property: merge is left-biased within size bounds") {
    std::string why;
    CHECK_MESSAGE(proptest::merge_properties(corpus(), why), why);
}

TEST_CASE("property: deduplication yields unique keys") {
    std::string why;
    CHECK_MESSAGE(proptest::dedupe_uniqueness(corpus(), why), why);
}
