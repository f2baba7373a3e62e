#include <doctest.h>

#include "bibforge/inheritance.hpp"
#include "bibforge/parser.hpp"
#include "bibforge/render.hpp"

using namespace bibforge;

namespace {

const Bibliography& corpus() {
    static Bibliography bib =
        parse_bib_file(std::string(BIBFORGE_TEST_FIXTURES) + "/corpus.bib",
                       CheckLevel::Off)
            .bibliography;
    return bib;
}

std::string subset(const std::vector<std::string>& keys, const ConfigOptions& config) {
    return render_bibliography_subset(corpus(), keys, config);
}

}  // namespace

TEST_CASE("numeric article rendering") {
    ConfigOptions config;
    CHECK(subset({"barry1996"}, config) ==
          "[1] R. Barry. \"A Diagnostic to Assess the Fit of a Variogram to Spatial "
          "Data\". In: _Journal of Statistical Software_ 1.1 (Aug. 1996).");
}

TEST_CASE("crossref child renders with inherited book data") {
    ConfigOptions config;
    CHECK(subset({"bookparent", "inbookchild"}, config) ==
          "[1] B. Author. _The Book Title. The Book Subtitle_. A publisher, 2012.\n\n"
          "[2] I. B. Author. \"The Title of the In Book Entry\". In: B. Author. _The "
          "Book Title. The Book Subtitle_. A publisher, 2012.");
}

TEST_CASE("authoryear disambiguation and dashed repeats") {
    ConfigOptions config;
    config.bib_style = BibStyle::AuthorYear;
    std::string out =
        subset({"nietzsche:ksa", "nietzsche:ksa1", "nietzsche:historie"}, config);
    CHECK(out ==
          "Nietzsche, F. (1988a). _Sämtliche Werke. Kritische Studienausgabe_. Ed. by "
          "G. Colli and M. Montinari. 2nd ed. Vol. 15. 15 vols. München and Berlin and "
          "New York: Deutscher Taschenbuch-Verlag and Walter de Gruyter.\n\n"
          "—–— (1988b). _Sämtliche Werke. Kritische Studienausgabe_. "
          "Vol. 1.: _Die Geburt der Tragödie. Unzeitgemäße Betrachtungen I-IV. "
          "Nachgelassene Schriften 1870-1973_. Ed. by G. Colli and M. Montinari. 2nd "
          "ed. München and Berlin and New York: Deutscher Taschenbuch-Verlag and "
          "Walter de Gruyter.\n\n"
          "—–— (1988c). \"Unzeitgemässe Betrachtungen. Zweites Stück. "
          "Vom Nutzen und Nachtheil der Historie für das Leben\". In: F. Nietzsche.  "
          "_Sämtliche Werke. Kritische Studienausgabe_. Vol. 1.: _Die Geburt der "
          "Tragödie. Unzeitgemässe Betrachtungen I-IV. Nachgelassene Schriften "
          "1870-1973_. Ed. by G. Colli and M. Montinari. München and Berlin and New "
          "York: Deutscher Taschenbuch-Verlag and Walter de Gruyter, pp. 243-334.");

    // without dashed, the repeated name list prints in full
    config.dashed = false;
    std::string plain = subset({"nietzsche:ksa", "nietzsche:ksa1"}, config);
    CHECK(plain.find("—–—") == std::string::npos);
    CHECK(plain.find("(1988b). ") != std::string::npos);
}

TEST_CASE("collections, editor heads, and localization strings") {
    ConfigOptions config;
    CHECK(subset({"westfahl:frontier", "westfahl:space"}, config) ==
          "[1] G. Westfahl, ed. _Space and Beyond. The Frontier Theme in Science "
          "Fiction_. Westport, Conn. and London: Greenwood, 2000.\n\n"
          "[2] G. Westfahl. \"The True Frontier. Confronting and Avoiding the "
          "Realities of Space in American Science Fiction Films\". In: _Space and "
          "Beyond. The Frontier Theme in Science Fiction_. Ed. by G. Westfahl. "
          "Westport, Conn. and London: Greenwood, 2000, pp. 55-65.");

    CHECK(subset({"jaffe"}, config) ==
          "[1] P. Jaffë, ed. _Regesta Pontificum Romanorum ab condita ecclesia ad "
          "annum post Christum natum MCXCVIII_. Red. by S. Loewenfeld, F. "
          "Kaltenbrunner and P. Ewald. 1885-1888.");

    CHECK(subset({"homer"}, config) ==
          "[1] Homer. _Die Ilias_. Trans.  by W. Schadewaldt. With an intro. by J. "
          "Latacz. 3rd ed. Düsseldorf and Zürich: Artemis & Winkler, 2004.");
}

TEST_CASE("report kinds and full name lists") {
    ConfigOptions config;
    config.bib_style = BibStyle::Alphabetic;
    config.max_names = 2;
    config.first_inits = false;
    CHECK(subset({"chiu", "padhye"}, config) ==
          "[CC78] Willy W. Chiu and We Min Chow. _A Hybrid Hierarchical Model of a "
          "Multiple Virtual Storage (MVS) Operating System_. Research rep. RC-6947. "
          "IBM, 1978.\n\n"
          "[PFT99] Jitendra Padhye, Victor Firoiu, et al. _A Stochastic Model of TCP "
          "Reno Congestion Avoidance and Control_. Tech. rep. 99-02. Amherst, Mass.: "
          "University of Massachusetts, 1999.");
}

TEST_CASE("xdata children render inherited archive and urldate fields") {
    ConfigOptions config;
    CHECK(subset({"mclean2013rlrt"}, config) ==
          "[1] M. W. McLean, G. Hooker and D. Ruppert. _Restricted Likelihood Ratio "
          "Tests for Scalar-on-Function Regression_. 2013. arXiv: 1310.5811 [stat.ME]. "
          "<URL: http://arxiv.org/abs/1310.5811> (visited on 12/20/2013).");
}

TEST_CASE("html output escapes entities and honors suppressed fields") {
    ConfigOptions config;
    config.bib_style = BibStyle::AuthorTitle;
    config.style = OutputFormat::Html;
    config.no_print_fields = {"url"};
    CHECK(subset({"spiegelberg"}, config) ==
          "<p><cite>Spiegelberg, H. &ldquo;&ldquo;Intention&rdquo; und "
          "&ldquo;Intentionalität&rdquo; in der Scholastik, bei Brentano und "
          "Husserl&rdquo;. In: <EM>Studia Philosophica</EM> 29 (1969), pp. "
          "189-216.</cite></p>");
}

TEST_CASE("entries that fail checks still render under check off") {
    ConfigOptions config;
    CHECK(subset({"cms"}, config) ==
          "[1] _The Chicago Manual of Style. The Essential Guide for Writers, "
          "Editors, and Publishers_. 15th ed. Chicago, Ill.: University of Chicago "
          "Press, 2003. ISBN: 0-226-10403-6.");
    CHECK(subset({"jcg"}, config) ==
          "[1] _Computers and Graphics_ 35.4 (2011): _Semantic 3D Media and "
          "Content_. ISSN: 0097-8493.");
    CHECK(subset({"ctan"}, config) ==
          "[1] _CTAN. The Comprehensive TeX Archive Network_. 2006. <URL: "
          "http://www.ctan.org> (visited on 10/01/2006).");
}

TEST_CASE("draft style labels with keys") {
    ConfigOptions config;
    config.bib_style = BibStyle::Draft;
    std::string out = subset({"loh"}, config);
    CHECK(out.rfind("[loh] ", 0) == 0);
}

TEST_CASE("format_names truncation and initials") {
    std::vector<PersonName> names =
        parse_name_list("Padhye, Jitendra and Firoiu, Victor and Towsley, Don");
    CHECK(format_names(names, 3, true) == "J. Padhye, V. Firoiu and D. Towsley");
    CHECK(format_names(names, 2, false) == "Jitendra Padhye, Victor Firoiu, et al.");
    CHECK(format_names(names, 3, true, true) ==
          "Padhye, J., V. Firoiu and D. Towsley");
}

TEST_CASE("date display helpers") {
    CHECK(format_date_display(parse_date("1996-08")) == "Aug. 1996");
    CHECK(format_date_display(parse_date("2004-10-27")) == "Oct. 27, 2004");
    CHECK(format_date_display(parse_date("1885/1888")) == "1885-1888");
    CHECK(format_date_slashed(parse_date("2014-03-06")) == "03/06/2014");
}

TEST_CASE("html escaping") {
    CHECK(html_escape("a & b <c>") == "a &amp; b &lt;c&gt;");
    CHECK(html_escape("“q”") == "&ldquo;q&rdquo;");
}

TEST_CASE("label assignment over the printable corpus") {
    ConfigOptions config;
    config.bib_style = BibStyle::Alphabetic;
    LabelSet labels = assign_labels(expand_all(corpus()), config);
    CHECK(labels.alpha.at("wilde") == "Wil99");
    CHECK(labels.alpha.at("baez/article") == "BL04a");
    CHECK(labels.alpha.at("baez/online") == "BL04b");
    // xdata stubs are not printable
    for (std::size_t pos : labels.print_order) CHECK(!corpus().at(pos).is_xdata());
}
