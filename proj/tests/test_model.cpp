#include <doctest.h>

#include "bibforge/model.hpp"

using namespace bibforge;

namespace {

BibRecord record(const std::string& type, const std::string& key,
                 std::vector<std::pair<std::string, std::string>> fields) {
    return make_record(type, key, fields, CheckLevel::Off);
}

}  // namespace

TEST_CASE("required fields per entry type") {
    CHECK(missing_required_fields(record("book", "k", {{"author", "A, B"},
                                                       {"title", "T"},
                                                       {"year", "2000"}}))
              .empty());
    CHECK(!missing_required_fields(record("book", "k", {{"title", "T"}})).empty());
    // online accepts either url or eprint.
    CHECK(missing_required_fields(record("online", "k", {{"author", "A, B"},
                                                         {"title", "T"},
                                                         {"year", "2000"},
                                                         {"eprint", "123"}}))
              .empty());
    // unknown types validate vacuously.
    CHECK(missing_required_fields(record("artifact", "k", {})).empty());
}

TEST_CASE("requirement message matches the reference wording") {
    BibRecord manual = record("manual", "k", {{"title", "T"}, {"year", "2000"}});
    CHECK(requirement_message(manual, missing_required_fields(manual)) ==
          "A bibentry of bibtype 'Manual' has to specify the field: "
          "c(\"author\", \"editor\")");
    BibRecord periodical =
        record("periodical", "k", {{"title", "T"}, {"year", "2000"}});
    CHECK(requirement_message(periodical, missing_required_fields(periodical)) ==
          "A bibentry of bibtype 'Periodical' has to specify the field: editor");
}

TEST_CASE("make_record enforcement levels") {
    std::vector<std::pair<std::string, std::string>> fields = {{"title", "T"}};
    CHECK_THROWS_AS(make_record("book", "k", fields, CheckLevel::Error), BibError);
    Diagnostics diags;
    BibRecord warned = make_record("book", "k", fields, CheckLevel::Warn, &diags);
    CHECK(warned.key == "k");
    CHECK(diags.size() == 1);
}

TEST_CASE("set_fields applies one update to every selected entry") {
    Bibliography bib({record("misc", "a", {{"title", "x"}}),
                      record("misc", "b", {{"title", "y"}})});
    Bibliography out = set_fields(bib, Selector{{0, 1}}, FieldUpdate{{"note", "n"}});
    CHECK(out.at(0).get_or("note") == "n");
    CHECK(out.at(1).get_or("note") == "n");
}

TEST_CASE("set_fields matches a list of updates positionally") {
    Bibliography bib({record("misc", "a", {{"title", "x"}}),
                      record("misc", "b", {{"title", "y"}})});
    std::vector<FieldUpdate> updates = {{{"title", "x2"}}, {{"title", ""}}};
    Bibliography out = set_fields(bib, Selector{{0, 1}}, updates);
    CHECK(out.at(0).get_or("title") == "x2");
    CHECK(!out.at(1).has("title"));  // empty value removes the field

    std::vector<FieldUpdate> wrong_len = {{{"title", "z"}}};
    CHECK_THROWS_AS(set_fields(bib, Selector{{0, 1}}, wrong_len), BibError);
}

TEST_CASE("pseudo-fields update type and key") {
    Bibliography bib({record("article", "a", {{"title", "x"}})});
    Bibliography out =
        set_fields(bib, Selector{{0}}, FieldUpdate{{"bibtype", "Misc"}, {"key", "b"}});
    CHECK(out.at(0).entry_type == "misc");
    CHECK(out.at(0).key == "b");
}

TEST_CASE("get_field_column reports missing fields as nullopt") {
    Bibliography bib({record("misc", "a", {{"title", "x"}}),
                      record("misc", "b", {{"note", "n"}})});
    auto col = get_field_column(bib, "title");
    REQUIRE(col.size() == 2);
    CHECK(col[0] == "x");
    CHECK(!col[1].has_value());
    CHECK(get_field_column(bib, "bibtype")[0] == "misc");
    CHECK(get_field_column(bib, "key")[1] == "b");
}

TEST_CASE("replace_entries rejects key collisions") {
    Bibliography bib({record("misc", "a", {}), record("misc", "b", {})});
    BibRecord clash = record("misc", "b", {});
    CHECK_THROWS_AS(replace_entries(bib, Selector{{0}}, {clash}), BibError);
}
