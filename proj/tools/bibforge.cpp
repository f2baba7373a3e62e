// bibforge CLI: bibliography parsing, search, formatting, conversion, and
// remote lookups over the bibforge core library.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bibforge/cite.hpp"
#include "bibforge/convert.hpp"
#include "bibforge/inheritance.hpp"
#include "bibforge/merge.hpp"
#include "bibforge/model.hpp"
#include "bibforge/net.hpp"
#include "bibforge/options.hpp"
#include "bibforge/parser.hpp"
#include "bibforge/render.hpp"
#include "bibforge/search.hpp"
#include "bibforge/sort.hpp"
#include "bibforge/table.hpp"

namespace {

using namespace bibforge;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BibError("IoError", "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BibError("IoError", "cannot write '" + path + "'");
    out << text;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

void print_diagnostics(const Diagnostics& diags) {
    for (const Diagnostic& d : diags) std::cerr << d.message << "\n";
}

// --- configuration layering: defaults < config file < env < flags ---------

std::string env_name_for(const std::string& option) {
    std::string out = "BIBFORGE_";
    for (char c : option)
        out += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

void apply_config_file(OptionsRegistry& reg, const std::string& path) {
    std::string section;
    for (const std::string& raw : split(read_text_file(path), '\n')) {
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw BibError("BadConfig", "expected key = value: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (!section.empty()) key = section + "." + key;
        reg.set(key, value);
    }
}

void apply_env(OptionsRegistry& reg) {
    for (const std::string& name : OptionsRegistry::known_names()) {
        if (const char* v = std::getenv(env_name_for(name).c_str()); v && *v)
            reg.set(name, v);
    }
}

// --- shared option plumbing ------------------------------------------------

struct CommonState {
    OptionsRegistry reg;
    std::string config_path;
    std::map<std::string, std::string> flag_overrides;

    ConfigOptions resolve() {
        if (config_path.empty()) {
            if (const char* p = std::getenv("BIBFORGE_CONFIG"); p && *p)
                config_path = p;
        }
        if (!config_path.empty()) apply_config_file(reg, config_path);
        apply_env(reg);
        for (const auto& [name, value] : flag_overrides) reg.set(name, value);
        return reg.values();
    }
};

// Registers the option flags shared by the output-producing subcommands.
void add_style_flags(CLI::App* cmd, CommonState& state) {
    auto bind = [&state, cmd](const std::string& flag, const std::string& option,
                              const std::string& help) {
        cmd->add_option_function<std::string>(
               flag,
               [&state, option](const std::string& v) {
                   state.flag_overrides[option] = v;
               },
               help)
            ->expected(1);
    };
    bind("--bib-style", "bib.style", "numeric|authortitle|authoryear|alphabetic|draft");
    bind("--cite-style", "cite.style", "citation style (defaults to bib style)");
    bind("--format", "style", "text|markdown|html");
    bind("--sorting", "sorting", "nty|nyt|nyvt|anyt|anyvt|ynt|ydnt|debug|none");
    bind("--max-names", "max.names", "names shown before et al.");
    bind("--suppress", "no.print.fields", "comma-separated fields to omit");
    bind("--hyperlink", "hyperlink", "off|to.bib|to.doc|external");
    cmd->add_flag_callback(
        "--no-first-inits",
        [&state] { state.flag_overrides["first.inits"] = "false"; },
        "print full given names");
    cmd->add_flag_callback(
        "--no-dashed",
        [&state] { state.flag_overrides["dashed"] = "false"; },
        "repeat authors instead of a dash in authoryear style");
    cmd->add_flag_callback(
        "--super", [&state] { state.flag_overrides["super"] = "true"; },
        "superscript numeric citations");
}

void add_check_flag(CLI::App* cmd, CommonState& state) {
    cmd->add_option_function<std::string>(
           "--check",
           [&state](const std::string& v) {
               state.flag_overrides["check.entries"] = v;
           },
           "error|warn|off")
        ->expected(1);
}

void add_match_flags(CLI::App* cmd, CommonState& state) {
    cmd->add_option_function<std::string>(
           "--match-author",
           [&state](const std::string& v) {
               state.flag_overrides["match.author"] = v;
           },
           "family.only|family.with.initials|exact")
        ->expected(1);
    cmd->add_option_function<std::string>(
           "--match-date",
           [&state](const std::string& v) { state.flag_overrides["match.date"] = v; },
           "year.only|exact")
        ->expected(1);
    cmd->add_flag_callback(
        "--no-regex", [&state] { state.flag_overrides["use.regex"] = "false"; },
        "treat terms as plain substrings");
    cmd->add_flag_callback(
        "--case-sensitive",
        [&state] { state.flag_overrides["ignore.case"] = "false"; },
        "match case exactly");
}

Bibliography load_bib(const std::string& path, const ConfigOptions& config,
                      std::size_t* skipped = nullptr) {
    ParseResult result = parse_bib_file(path, config.check_entries);
    print_diagnostics(result.diagnostics);
    if (skipped) *skipped = result.skipped;
    return result.bibliography;
}

// "field=term" (leading '!' on the term negates); groups separated by
// ';' within one argument form a conjunction.
Clause parse_clause(const std::string& text) {
    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
        throw BibError("BadQuery", "expected field=term: " + text);
    std::string field = trim(text.substr(0, eq));
    std::string term = text.substr(eq + 1);
    return Query::make_clause(field, {term});
}

std::vector<Clause> parse_clause_group(const std::vector<std::string>& parts) {
    std::vector<Clause> out;
    for (const std::string& part : parts)
        for (const std::string& piece : split(part, ';'))
            if (!trim(piece).empty()) out.push_back(parse_clause(trim(piece)));
    return out;
}

std::vector<std::string> split_csv_arg(const std::string& arg) {
    std::vector<std::string> out;
    for (const std::string& part : split(arg, ','))
        if (!trim(part).empty()) out.push_back(trim(part));
    return out;
}

int exit_code_for(const BibError& e) {
    if (e.code() == "IoError" || e.code() == "HttpError") return 2;
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bibforge: BibTeX/BibLaTeX bibliography toolkit"};
    app.require_subcommand(1);
    CommonState state;
    app.add_option("--config", state.config_path, "configuration file (key = value)");

    // parse -----------------------------------------------------------------
    auto* cmd_parse = app.add_subcommand("parse", "parse a .bib file");
    std::string parse_file;
    bool parse_stats = false;
    cmd_parse->add_option("file", parse_file, "input .bib file")->required();
    cmd_parse->add_flag("--stats", parse_stats, "print entry/skip counts only");
    add_check_flag(cmd_parse, state);
    cmd_parse->callback([&] {
        ConfigOptions config = state.resolve();
        std::size_t skipped = 0;
        Bibliography bib = load_bib(parse_file, config, &skipped);
        if (parse_stats)
            std::cout << "entries: " << bib.size() << "\nskipped: " << skipped << "\n";
        else
            std::cout << serialize_biblatex(bib);
    });

    // search ----------------------------------------------------------------
    auto* cmd_search = app.add_subcommand("search", "search entries by field");
    std::string search_file;
    std::vector<std::string> search_terms;
    std::vector<std::string> search_or;
    bool search_ind = false;
    cmd_search->add_option("file", search_file, "input .bib file")->required();
    cmd_search->add_option("query", search_terms, "field=term clauses (conjunction)");
    cmd_search->add_option("--or", search_or,
                           "additional clause group, ';'-separated conjunction");
    cmd_search->add_flag("--ind", search_ind, "print 1-based indices only");
    add_check_flag(cmd_search, state);
    add_match_flags(cmd_search, state);
    cmd_search->callback([&] {
        ConfigOptions config = state.resolve();
        Bibliography bib = load_bib(search_file, config);
        Query query;
        std::vector<Clause> first = parse_clause_group(search_terms);
        if (!first.empty()) query.groups.push_back(std::move(first));
        for (const std::string& group_arg : search_or) {
            std::vector<Clause> group = parse_clause_group({group_arg});
            if (!group.empty()) query.groups.push_back(std::move(group));
        }
        if (query.groups.empty()) throw BibError("BadQuery", "no query clauses given");
        SearchResult result = search(bib, query, config);
        if (search_ind || config.return_ind) {
            for (std::size_t idx : result.indices) std::cout << idx + 1 << "\n";
        } else {
            std::cout << serialize_biblatex(result.matches);
        }
    });

    // sort ------------------------------------------------------------------
    auto* cmd_sort = app.add_subcommand("sort", "sort entries");
    std::string sort_file, sort_scheme = "nty";
    cmd_sort->add_option("file", sort_file, "input .bib file")->required();
    cmd_sort->add_option("--scheme", sort_scheme, "nty|nyt|nyvt|anyt|anyvt|ynt|ydnt|debug|none");
    add_check_flag(cmd_sort, state);
    cmd_sort->callback([&] {
        ConfigOptions config = state.resolve();
        Bibliography bib = load_bib(sort_file, config);
        std::vector<std::size_t> perm = sort_permutation(bib, parse_sort_scheme(sort_scheme));
        std::vector<BibRecord> out;
        out.reserve(bib.size());
        for (std::size_t pos : perm) out.push_back(bib.at(pos));
        std::cout << serialize_biblatex(Bibliography(std::move(out)));
    });

    // fmt -------------------------------------------------------------------
    auto* cmd_fmt = app.add_subcommand("fmt", "render a styled bibliography");
    std::string fmt_file;
    std::string fmt_keys;
    cmd_fmt->add_option("file", fmt_file, "input .bib file")->required();
    cmd_fmt->add_option("--keys", fmt_keys, "render only these keys (comma-separated)");
    add_check_flag(cmd_fmt, state);
    add_style_flags(cmd_fmt, state);
    cmd_fmt->callback([&] {
        ConfigOptions config = state.resolve();
        Bibliography bib = load_bib(fmt_file, config);
        std::string text =
            fmt_keys.empty()
                ? render_bibliography(bib, config)
                : render_bibliography_subset(bib, split_csv_arg(fmt_keys), config);
        std::cout << text << "\n";
    });

    // convert ---------------------------------------------------------------
    auto* cmd_convert = app.add_subcommand("convert", "convert between flavors");
    std::string convert_file, convert_to = "bibtex", convert_out;
    std::string convert_extra, convert_note;
    cmd_convert->add_option("file", convert_file, "input .bib file")->required();
    cmd_convert->add_option("--to", convert_to, "bibtex|biblatex")->required();
    cmd_convert->add_option("--extra-fields", convert_extra,
                            "BibTeX-illegal fields to keep (comma-separated)");
    cmd_convert->add_option("--note-replace", convert_note,
                            "fields whose display replaces a missing note");
    cmd_convert->add_option("-o,--output", convert_out, "output path (default stdout)");
    add_check_flag(cmd_convert, state);
    cmd_convert->callback([&] {
        ConfigOptions config = state.resolve();
        Bibliography bib = load_bib(convert_file, config);
        std::string flavor = to_lower(convert_to);
        if (flavor == "bibtex") {
            ConvertOptions opts;
            for (const std::string& f : split_csv_arg(convert_extra))
                opts.extra_fields.insert(to_lower(f));
            opts.note_replace_fields = split_csv_arg(convert_note);
            emit(to_bibtex(bib, opts), convert_out);
        } else if (flavor == "biblatex") {
            emit(serialize_biblatex(bib), convert_out);
        } else {
            throw BibError("BadArgument", "unknown flavor '" + convert_to + "'");
        }
    });

    // merge -----------------------------------------------------------------
    auto* cmd_merge = app.add_subcommand("merge", "merge two .bib files");
    std::string merge_a, merge_b, merge_fields, merge_out;
    cmd_merge->add_option("a", merge_a, "first .bib file")->required();
    cmd_merge->add_option("b", merge_b, "second .bib file")->required();
    cmd_merge->add_option("--check-fields", merge_fields,
                          "duplicate-detection fields (comma-separated)");
    cmd_merge->add_option("-o,--output", merge_out, "output path (default stdout)");
    add_check_flag(cmd_merge, state);
    cmd_merge->callback([&] {
        ConfigOptions config = state.resolve();
        Bibliography a = load_bib(merge_a, config);
        Bibliography b = load_bib(merge_b, config);
        std::set<std::string> fields = config.merge_fields_to_check;
        if (!merge_fields.empty()) {
            fields.clear();
            for (const std::string& f : split_csv_arg(merge_fields))
                fields.insert(to_lower(f));
        }
        emit(serialize_biblatex(merge(a, b, fields)), merge_out);
    });

    // table / untable ---------------------------------------------------------
    auto* cmd_table = app.add_subcommand("table", "export entries as CSV");
    std::string table_file, table_out;
    cmd_table->add_option("file", table_file, "input .bib file")->required();
    cmd_table->add_option("-o,--output", table_out, "output path (default stdout)");
    add_check_flag(cmd_table, state);
    cmd_table->callback([&] {
        ConfigOptions config = state.resolve();
        Bibliography bib = load_bib(table_file, config);
        emit(table_to_csv(to_table(bib)), table_out);
    });

    auto* cmd_untable = app.add_subcommand("untable", "rebuild entries from CSV");
    std::string untable_file, untable_out;
    cmd_untable->add_option("file", untable_file, "input .csv file")->required();
    cmd_untable->add_option("-o,--output", untable_out, "output path (default stdout)");
    add_check_flag(cmd_untable, state);
    cmd_untable->callback([&] {
        ConfigOptions config = state.resolve();
        Diagnostics diags;
        Bibliography bib = from_table(table_from_csv(read_text_file(untable_file)),
                                      config.check_entries, &diags);
        print_diagnostics(diags);
        emit(serialize_biblatex(bib), untable_out);
    });

    // fetch -----------------------------------------------------------------
    auto* cmd_fetch = app.add_subcommand("fetch", "fetch records from a provider");
    cmd_fetch->require_subcommand(1);

    auto* fetch_crossref = cmd_fetch->add_subcommand("crossref", "CrossRef search");
    std::string cr_query;
    int cr_limit = 5, cr_min_rel = 0;
    int cr_year = 0;
    std::string cr_sort = "relevance";
    bool cr_verbose = false;
    fetch_crossref->add_option("--query", cr_query, "free-text query")->required();
    fetch_crossref->add_option("--limit", cr_limit, "maximum hits");
    fetch_crossref->add_option("--min-relevance", cr_min_rel, "0..100 threshold");
    fetch_crossref->add_option("--year", cr_year, "publication year filter");
    fetch_crossref->add_option("--sort", cr_sort, "provider sort order");
    fetch_crossref->add_flag("--verbose", cr_verbose, "emit score diagnostics");
    fetch_crossref->callback([&] {
        (void)state.resolve();
        auto client = net::default_client();
        Diagnostics diags;
        Bibliography bib = net::crossref_search(
            *client, cr_query, cr_limit, cr_min_rel,
            cr_year > 0 ? std::optional<int>(cr_year) : std::nullopt, cr_sort,
            cr_verbose, &diags);
        print_diagnostics(diags);
        std::cout << serialize_biblatex(bib);
    });

    auto* fetch_pubmed = cmd_fetch->add_subcommand("pubmed", "PubMed search");
    std::string pm_term;
    net::PubmedSearchOpts pm_opts;
    fetch_pubmed->add_option("term", pm_term, "search term")->required();
    fetch_pubmed->add_option("--db", pm_opts.database, "Entrez database");
    fetch_pubmed->add_option("--retmax", pm_opts.retmax, "maximum results");
    fetch_pubmed->add_option("--retstart", pm_opts.retstart, "result offset");
    fetch_pubmed->add_option("--field", pm_opts.field, "restrict to a field");
    fetch_pubmed->add_option("--datetype", pm_opts.datetype, "date type");
    fetch_pubmed->add_option("--mindate", pm_opts.mindate, "YYYY[/MM[/DD]]");
    fetch_pubmed->add_option("--maxdate", pm_opts.maxdate, "YYYY[/MM[/DD]]");
    fetch_pubmed->callback([&] {
        (void)state.resolve();
        auto client = net::default_client();
        Diagnostics diags;
        Bibliography bib = net::pubmed_search(*client, pm_term, pm_opts, &diags);
        print_diagnostics(diags);
        std::cout << serialize_biblatex(bib);
    });

    // related ---------------------------------------------------------------
    auto* cmd_related = app.add_subcommand("related", "PubMed related articles");
    std::vector<std::string> rel_ids;
    std::string rel_max = "5";
    net::PubmedRelatedOpts rel_opts;
    cmd_related->add_option("ids", rel_ids, "PubMed ids")->required();
    cmd_related->add_flag("--batch", rel_opts.batch_mode, "one query for all ids");
    cmd_related->add_option("--max-results", rel_max,
                            "per-id (or batch scalar) result counts, comma-separated");
    cmd_related->add_flag("--scores", rel_opts.return_sim_scores,
                          "attach similarity scores");
    cmd_related->add_flag("--related-ids", rel_opts.return_related_ids,
                          "attach source ids");
    cmd_related->callback([&] {
        (void)state.resolve();
        rel_opts.max_results.clear();
        for (const std::string& v : split_csv_arg(rel_max))
            rel_opts.max_results.push_back(std::stoi(v));
        auto client = net::default_client();
        Diagnostics diags;
        Bibliography bib = net::pubmed_related(*client, rel_ids, rel_opts, &diags);
        print_diagnostics(diags);
        std::cout << serialize_biblatex(bib);
    });

    // lookup-ids ------------------------------------------------------------
    auto* cmd_lookup = app.add_subcommand("lookup-ids", "find PubMed ids via ECitMatch");
    std::string lookup_file, lookup_ind;
    cmd_lookup->add_option("file", lookup_file, "input .bib file")->required();
    cmd_lookup->add_option("--ind", lookup_ind,
                           "1-based entry positions (comma-separated; default all)");
    add_check_flag(cmd_lookup, state);
    cmd_lookup->callback([&] {
        ConfigOptions config = state.resolve();
        Bibliography bib = load_bib(lookup_file, config);
        std::vector<std::size_t> positions;
        if (lookup_ind.empty()) {
            for (std::size_t i = 0; i < bib.size(); ++i) positions.push_back(i);
        } else {
            for (const std::string& v : split_csv_arg(lookup_ind)) {
                long p = std::stol(v);
                if (p < 1 || static_cast<std::size_t>(p) > bib.size())
                    throw BibError("OutOfRange", "position out of range: " + v);
                positions.push_back(static_cast<std::size_t>(p - 1));
            }
        }
        auto client = net::default_client();
        Diagnostics diags;
        Bibliography out = net::pubmed_lookup_ids(*client, bib, positions, &diags);
        print_diagnostics(diags);
        std::cout << serialize_biblatex(out);
    });

    // fetch-ids -------------------------------------------------------------
    auto* cmd_fetch_ids = app.add_subcommand("fetch-ids", "EFetch explicit PubMed ids");
    std::vector<std::string> fi_ids;
    cmd_fetch_ids->add_option("ids", fi_ids, "PubMed ids")->required();
    cmd_fetch_ids->callback([&] {
        (void)state.resolve();
        auto client = net::default_client();
        Diagnostics diags;
        Bibliography bib = net::pubmed_fetch(*client, fi_ids, &diags);
        print_diagnostics(diags);
        std::cout << serialize_biblatex(bib);
    });

    // render-doc ------------------------------------------------------------
    auto* cmd_doc = app.add_subcommand("render-doc", "expand citation directives");
    std::string doc_file, doc_bib;
    cmd_doc->add_option("doc", doc_file, "markdown/html document")->required();
    cmd_doc->add_option("--bib", doc_bib, "bibliography .bib file")->required();
    add_check_flag(cmd_doc, state);
    add_style_flags(cmd_doc, state);
    cmd_doc->callback([&] {
        ConfigOptions config = state.resolve();
        Bibliography bib = load_bib(doc_bib, config);
        ProcessedDocument doc = process_document(read_text_file(doc_file), bib, config);
        std::cout << doc.text;
    });

    // open ------------------------------------------------------------------
    auto* cmd_open = app.add_subcommand("open", "open an entry's linked resource");
    std::string open_file, open_key, open_prefer = "file,doi,url,eprint";
    std::string open_opener;
    bool open_print = false;
    cmd_open->add_option("file", open_file, "input .bib file")->required();
    cmd_open->add_option("key", open_key, "entry key")->required();
    cmd_open->add_option("--prefer", open_prefer, "field preference order");
    cmd_open->add_option("--opener", open_opener, "launcher command (default platform)");
    cmd_open->add_flag("--print-url", open_print, "print the target instead of opening");
    add_check_flag(cmd_open, state);
    cmd_open->callback([&] {
        ConfigOptions config = state.resolve();
        Bibliography bib = load_bib(open_file, config);
        const BibRecord* rec = bib.find_key(open_key);
        if (!rec) throw BibError("UnknownKey", "no entry with key '" + open_key + "'");
        auto target = hyperlink_target(*rec, split_csv_arg(open_prefer));
        if (!target)
            throw BibError("NoTarget", "entry '" + open_key + "' has no linkable field");
        if (open_print) {
            std::cout << *target << "\n";
            return;
        }
        std::string opener = open_opener.empty() ? "xdg-open" : open_opener;
        std::string command = opener + " '" + *target + "'";
        if (std::system(command.c_str()) != 0)
            throw BibError("IoError", "opener failed: " + command);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const BibError& e) {
        std::cerr << "error (" << e.code() << "): " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
