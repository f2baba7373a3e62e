#include <doctest.h>

#include "bibforge/net.hpp"
#include "bibforge/parser.hpp"

using namespace bibforge;
using namespace bibforge::net;

namespace {

FixtureHttpClient fixture_client() {
    return FixtureHttpClient(std::string(BIBFORGE_TEST_FIXTURES) + "/http");
}

}  // namespace

TEST_CASE("fixture client matches on path and params") {
    FixtureHttpClient client = fixture_client();
    HttpResponse ok = client.get("https://eutils.ncbi.nlm.nih.gov",
                                 "/entrez/eutils/esearch.fcgi",
                                 {{"db", "pubmed"},
                                  {"term", "raymond j. carroll"},
                                  {"retmax", "20"},
                                  {"retstart", "0"}});
    CHECK(ok.status == 200);
    CHECK(ok.body.find("24495951") != std::string::npos);

    CHECK_THROWS_AS(client.get("https://eutils.ncbi.nlm.nih.gov",
                               "/entrez/eutils/esearch.fcgi",
                               {{"db", "pubmed"}, {"term", "unrecorded"}}),
                    BibError);
}

TEST_CASE("pubmed search fetches and converts records") {
    FixtureHttpClient client = fixture_client();
    Bibliography bib = pubmed_search(client, "raymond j. carroll");
    REQUIRE(bib.size() == 1);
    const BibRecord& rec = bib.at(0);
    CHECK(rec.entry_type == "article");
    CHECK(rec.get_or("eprint") == "24495951");
    CHECK(rec.get_or("eprinttype") == "pubmed");
    CHECK(rec.get_or("doi") == "10.1177/1535370213514927");
    CHECK(rec.get_or("journal") == "Experimental biology and medicine (Maywood, N.J.)");
    CHECK(rec.get_or("year") == "2014");
    CHECK(rec.parsed_names.at("author").size() == 6);
}

TEST_CASE("pubmed search options map to query parameters") {
    FixtureHttpClient client = fixture_client();
    PubmedSearchOpts opts;
    opts.field = "journal";
    opts.retmax = 1;
    opts.mindate = "2009";
    opts.maxdate = "2009";
    Bibliography bib = pubmed_search(client, "journal of statistical software", opts);
    REQUIRE(bib.size() == 1);
    CHECK(bib.at(0).key == "holmes2009interactive");
    CHECK(bib.at(0).get_or("volume") == "30");
    CHECK(bib.at(0).get_or("number") == "10");
    CHECK(bib.at(0).get_or("eprint") == "21614138");
}

TEST_CASE("empty search yields an empty bibliography with a note") {
    FixtureHttpClient client = fixture_client();
    Diagnostics diags;
    Bibliography bib = pubmed_search(client, "no such article xyzzy", {}, &diags);
    CHECK(bib.empty());
    CHECK(diags.size() == 1);
}

TEST_CASE("fetch by id keeps request order and flags misses") {
    FixtureHttpClient client = fixture_client();
    Bibliography bib = pubmed_fetch(client, {"24131242"});
    REQUIRE(bib.size() == 1);
    CHECK(bib.at(0).key == "serban2013multilevel");
    CHECK(bib.at(0).get_or("doi") == "10.1111/biom.12083");
    CHECK(bib.at(0).get_or("pages") == "903-13");

    CHECK_THROWS_AS(pubmed_fetch(client, {}), BibError);
}

TEST_CASE("related articles carry scores and source ids on request") {
    FixtureHttpClient client = fixture_client();
    PubmedRelatedOpts opts;
    opts.batch_mode = false;
    opts.max_results = {1, 1};
    opts.return_sim_scores = true;
    opts.return_related_ids = true;
    Bibliography bib = pubmed_related(client, {"24453128", "24376287"}, opts);
    REQUIRE(bib.size() == 2);
    CHECK(bib.at(0).key == "guenther2008evaluation");
    CHECK(bib.at(0).get_or("score") == "54583749");
    CHECK(bib.at(0).get_or("pmidrelated") == "24453128");
    CHECK(bib.at(0).get_or("eprint") == "18954575");
    CHECK(bib.at(1).key == "seghouane2007criterion");
    CHECK(bib.at(1).get_or("score") == "20610997");
    CHECK(bib.at(1).get_or("pmidrelated") == "24376287");
}

TEST_CASE("batch related mode issues one joined query") {
    FixtureHttpClient client = fixture_client();
    PubmedRelatedOpts opts;
    opts.batch_mode = true;
    opts.max_results = {1};
    Bibliography bib = pubmed_related(client, {"24495951"}, opts);
    REQUIRE(bib.size() == 1);
    CHECK(bib.at(0).key == "fan2008semiparametric");
    CHECK(!bib.at(0).has("score"));  // not requested
}

TEST_CASE("ecitmatch lookup updates matched entries only") {
    FixtureHttpClient client = fixture_client();
    Bibliography rjc =
        parse_bib_file(std::string(BIBFORGE_TEST_FIXTURES) + "/rjc.bib",
                       CheckLevel::Off)
            .bibliography;
    REQUIRE(rjc.size() == 10);
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < 10; ++i) positions.push_back(i);
    Diagnostics diags;
    Bibliography out = pubmed_lookup_ids(client, rjc, positions, &diags);

    REQUIRE(!diags.empty());
    CHECK(diags.back().message == "Success for entries: 1, 2, 8, 9");
    CHECK(out.at(0).get_or("eprint") == "24131242");
    CHECK(out.at(0).get_or("eprinttype") == "pubmed");
    CHECK(out.at(7).get_or("eprint") == "24453128");
    CHECK(out.at(8).get_or("eprint") == "24376287");
    CHECK(!out.at(2).has("eprint"));
}

TEST_CASE("crossref search filters by normalized relevance") {
    FixtureHttpClient client = fixture_client();
    Bibliography bib =
        crossref_search(client, "rj carroll measurement error", 3, 80);
    REQUIRE(bib.size() == 3);
    CHECK(bib.at(0).get_or("doi") == "10.1007/978-1-4899-4477-1");
    CHECK(bib.at(1).get_or("doi") == "10.1007/978-1-4899-4477-1_13");
    CHECK(bib.at(2).get_or("doi") == "10.1017/cbo9780511755453.017");
    CHECK(bib.at(0).entry_type == "book");
    CHECK(bib.at(1).entry_type == "incollection");
    CHECK(bib.at(1).get_or("booktitle") == "Measurement Error in Nonlinear Models");

    // strict threshold keeps only the top hit
    Bibliography strict =
        crossref_search(client, "rj carroll measurement error", 3, 100);
    REQUIRE(strict.size() == 1);
    CHECK(strict.at(0).get_or("doi") == "10.1007/978-1-4899-4477-1");

    Diagnostics diags;
    crossref_search(client, "rj carroll measurement error", 3, 80, std::nullopt,
                    "relevance", true, &diags);
    CHECK(diags.size() == 3);  // one verbose line per surviving hit

    CHECK_THROWS_AS(crossref_search(client, "q", 0, 80), BibError);
    CHECK_THROWS_AS(crossref_search(client, "q", 3, 101), BibError);
}
