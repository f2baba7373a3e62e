#include <doctest.h>

#include "bibforge/options.hpp"

using namespace bibforge;

TEST_CASE("sorting defaults derive from the bibliography style") {
    ConfigOptions cfg;
    CHECK(cfg.effective_sorting() == SortScheme::Nty);
    cfg.bib_style = BibStyle::AuthorYear;
    CHECK(cfg.effective_sorting() == SortScheme::Nyt);
    cfg.bib_style = BibStyle::Alphabetic;
    CHECK(cfg.effective_sorting() == SortScheme::Anyt);
    cfg.sorting = SortScheme::None;
    CHECK(cfg.effective_sorting() == SortScheme::None);
}

TEST_CASE("cite style defaults to the bibliography style") {
    ConfigOptions cfg;
    cfg.bib_style = BibStyle::Alphabetic;
    CHECK(cfg.effective_cite_style() == BibStyle::Alphabetic);
    cfg.cite_style = BibStyle::Numeric;
    CHECK(cfg.effective_cite_style() == BibStyle::Numeric);
}

TEST_CASE("registry set returns the previous value") {
    OptionsRegistry reg;
    CHECK(reg.get("bib.style") == "numeric");
    CHECK(reg.set("bib.style", "authoryear") == "numeric");
    CHECK(reg.get("bib.style") == "authoryear");
    CHECK(reg.values().bib_style == BibStyle::AuthorYear);

    auto prev = reg.set_all({{"max.names", "2"}, {"first.inits", "false"}});
    CHECK(prev.at("max.names") == "3");
    CHECK(reg.values().max_names == 2);
    CHECK(!reg.values().first_inits);

    CHECK_THROWS_AS(reg.get("no.such.option"), BibError);
    CHECK_THROWS_AS(reg.set("bib.style", "cursive"), BibError);
}

TEST_CASE("restore_defaults resets every option") {
    OptionsRegistry reg;
    reg.set("check.entries", "off");
    reg.set("hyperlink", "external");
    reg.restore_defaults();
    CHECK(reg.values().check_entries == CheckLevel::Error);
    CHECK(reg.values().hyperlink == HyperlinkMode::Off);
}

TEST_CASE("check level parsing") {
    CHECK(parse_check_level("error") == CheckLevel::Error);
    CHECK(parse_check_level("warn") == CheckLevel::Warn);
    CHECK(parse_check_level("off") == CheckLevel::Off);
    CHECK_THROWS_AS(parse_check_level("maybe"), BibError);
}
