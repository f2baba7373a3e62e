#ifndef BIBFORGE_TESTS_PROPERTIES_HPP
#define BIBFORGE_TESTS_PROPERTIES_HPP

// Randomized property suites shared between the doctest runner and the
// acceptance gate. Each suite returns true on success and appends a
// description of the first failure to `why`.

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bibforge/inheritance.hpp"
#include "bibforge/merge.hpp"
#include "bibforge/parser.hpp"
#include "bibforge/search.hpp"
#include "bibforge/sort.hpp"

namespace bibforge::proptest {

inline std::string random_words(std::mt19937& rng, int min_words, int max_words) {
    static const std::vector<std::string> vocab = {
        "alpha",  "signal", "matrix",   "kernel", "random",  "theory",
        "bounds", "stable", "inverse",  "graphs", "density", "filters",
        "convex", "primal", "adaptive", "paging", "caching", "queues",
        "Müller", "naïve",  "Erdős",    "test",
    };
    std::uniform_int_distribution<int> nwords(min_words, max_words);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    int n = nwords(rng);
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (!out.empty()) out += " ";
        out += vocab[pick(rng)];
    }
    return out;
}

inline std::string random_name_list(std::mt19937& rng) {
    static const std::vector<std::string> family = {
        "Smith", "Nguyen", "Okafor", "Petrov", "Haines", "Loyola", "Brandt",
    };
    static const std::vector<std::string> given = {
        "Ada", "Boris", "Chen", "Dora", "Emil", "Farah",
    };
    std::uniform_int_distribution<int> count(1, 4);
    std::uniform_int_distribution<std::size_t> pf(0, family.size() - 1);
    std::uniform_int_distribution<std::size_t> pg(0, given.size() - 1);
    int n = count(rng);
    std::string out;
    for (int i = 0; i < n; ++i) {
        if (!out.empty()) out += " and ";
        out += family[pf(rng)] + ", " + given[pg(rng)];
    }
    return out;
}

inline BibRecord random_record(std::mt19937& rng, int serial) {
    static const std::vector<std::string> types = {
        "article", "book", "misc", "inproceedings", "unpublished", "techreport",
    };
    std::uniform_int_distribution<std::size_t> pt(0, types.size() - 1);
    std::uniform_int_distribution<int> year(1900, 2025);
    std::uniform_int_distribution<int> month(1, 12);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_int_distribution<int> num(1, 999);

    BibRecord rec;
    rec.entry_type = types[pt(rng)];
    rec.key = "gen" + std::to_string(serial);
    rec.set_field("title", random_words(rng, 2, 8));
    rec.set_field("author", random_name_list(rng));
    if (coin(rng)) rec.set_field("editor", random_name_list(rng));
    if (coin(rng)) rec.set_field("journaltitle", random_words(rng, 1, 4));
    if (coin(rng)) rec.set_field("volume", std::to_string(num(rng)));
    if (coin(rng)) rec.set_field("pages", std::to_string(num(rng)) + "-" +
                                              std::to_string(num(rng) + 1000));
    if (coin(rng)) rec.set_field("note", random_words(rng, 1, 6));
    if (coin(rng)) {
        rec.set_field("year", std::to_string(year(rng)));
    } else {
        char buf[16];
        std::snprintf(buf, sizeof buf, "%04d-%02d", year(rng), month(rng));
        rec.set_field("date", buf);
    }
    return rec;
}

// (1) serialize -> parse is the identity on randomized records.
inline bool parser_round_trip(std::string& why, int n = 1000, unsigned seed = 20260823) {
    std::mt19937 rng(seed);
    std::vector<BibRecord> records;
    records.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) records.push_back(random_record(rng, i));
    Bibliography original(records);

    ParseResult reparsed = parse_bib(serialize_biblatex(original), CheckLevel::Off);
    if (reparsed.bibliography.size() != original.size()) {
        why = "round-trip changed entry count";
        return false;
    }
    for (std::size_t i = 0; i < original.size(); ++i) {
        if (!(reparsed.bibliography.at(i) == original.at(i))) {
            why = "round-trip mismatch at entry " + original.at(i).key;
            return false;
        }
    }
    return true;
}

// (2) a clause and its negation partition the bibliography.
inline bool search_complement(const Bibliography& bib, std::string& why,
                              int pairs = 200, unsigned seed = 7) {
    static const std::vector<std::string> fields = {
        "author", "editor", "title", "journaltitle", "publisher",
        "location", "note", "volume", "pages", "date", "year",
    };
    static const std::vector<std::string> terms = {
        "Knuth", "Westfahl", "Aristotle", "Smith, A.", "Study", "Journal",
        "Cambridge", "Press", "1988", "2013", "1899/1930", "12", "903",
        "Zürich", "and", "Greenwood", "nonexistent-term",
    };
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pf(0, fields.size() - 1);
    std::uniform_int_distribution<std::size_t> pt(0, terms.size() - 1);

    ConfigOptions config;
    config.use_regex = false;
    for (int i = 0; i < pairs; ++i) {
        std::string field = fields[pf(rng)];
        std::string term = terms[pt(rng)];
        Query pos = Query::conjunction({Query::make_clause(field, {term})});
        Query neg = Query::conjunction({Query::make_clause(field, {"!" + term})});
        std::vector<std::size_t> a = search(bib, pos, config).indices;
        std::vector<std::size_t> b = search(bib, neg, config).indices;
        if (a.size() + b.size() != bib.size()) {
            why = "complement sizes for " + field + "=" + term + " do not sum";
            return false;
        }
        std::vector<std::size_t> all = a;
        all.insert(all.end(), b.begin(), b.end());
        std::sort(all.begin(), all.end());
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (all[j] != j) {
                why = "complement union for " + field + "=" + term +
                      " is not the whole bibliography";
                return false;
            }
        }
    }
    return true;
}

// (3) expand_all is idempotent.
inline bool expand_idempotent(const Bibliography& bib, std::string& why) {
    Bibliography once = expand_all(bib);
    Bibliography twice = expand_all(once);
    if (once.size() != twice.size()) {
        why = "expansion changed entry count on second application";
        return false;
    }
    for (std::size_t i = 0; i < once.size(); ++i) {
        if (!(once.at(i) == twice.at(i))) {
            why = "expansion not idempotent at " + once.at(i).key;
            return false;
        }
    }
    return true;
}

// (4) every scheme yields a stable permutation.
inline bool sort_properties(const Bibliography& bib, std::string& why) {
    static const std::vector<SortScheme> schemes = {
        SortScheme::Nty,  SortScheme::Nyt,  SortScheme::Nyvt,
        SortScheme::Anyt, SortScheme::Anyvt, SortScheme::Ynt,
        SortScheme::Ydnt, SortScheme::Debug, SortScheme::None,
    };

    // Clones of one record (distinct keys only) must keep insertion order
    // under every scheme that ignores keys.
    Bibliography with_clones = bib;
    BibRecord clone = bib.at(0);
    for (int i = 0; i < 3; ++i) {
        clone.key = "clone" + std::to_string(i);
        with_clones.append(clone);
    }
    std::size_t base = bib.size();

    for (SortScheme scheme : schemes) {
        std::vector<std::size_t> perm = sort_permutation(with_clones, scheme);
        if (perm.size() != with_clones.size()) {
            why = "permutation size mismatch for " + sort_scheme_name(scheme);
            return false;
        }
        std::vector<std::size_t> sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] != i) {
                why = "not a permutation for " + sort_scheme_name(scheme);
                return false;
            }
        }
        if (sort_permutation(with_clones, scheme) != perm) {
            why = "non-deterministic permutation for " + sort_scheme_name(scheme);
            return false;
        }
        if (scheme != SortScheme::Debug) {
            std::vector<std::size_t> clone_order;
            for (std::size_t pos : perm)
                if (pos >= base) clone_order.push_back(pos);
            if (!std::is_sorted(clone_order.begin(), clone_order.end())) {
                why = "equal-key entries reordered under " + sort_scheme_name(scheme);
                return false;
            }
        }
        if (scheme == SortScheme::None) {
            for (std::size_t i = 0; i < perm.size(); ++i) {
                if (perm[i] != i) {
                    why = "scheme none is not the identity";
                    return false;
                }
            }
        }
    }
    return true;
}

// (5) merge is left-biased and bounded in size.
inline bool merge_properties(const Bibliography& bib, std::string& why,
                             int rounds = 25, unsigned seed = 99) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> cut(1, bib.size() - 1);
    for (int r = 0; r < rounds; ++r) {
        std::size_t mid = cut(rng);
        std::size_t overlap = std::min<std::size_t>(5, mid);
        std::vector<BibRecord> va, vb;
        for (std::size_t i = 0; i < mid; ++i) va.push_back(bib.at(i));
        for (std::size_t i = mid - overlap; i < bib.size(); ++i) vb.push_back(bib.at(i));
        Bibliography a(va), b(vb);
        Bibliography merged = merge(a, b, {"title"});
        if (merged.size() < std::max(a.size(), b.size()) ||
            merged.size() > a.size() + b.size()) {
            why = "merge size out of bounds";
            return false;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (!(merged.at(i) == a.at(i))) {
                why = "merge is not left-biased at " + a.at(i).key;
                return false;
            }
        }
    }
    return true;
}

// (6) concatenation with key collisions yields unique keys, losing nothing.
inline bool dedupe_uniqueness(const Bibliography& bib, std::string& why) {
    Bibliography doubled = concat(bib, bib);
    if (doubled.size() != 2 * bib.size()) {
        why = "concat dropped entries";
        return false;
    }
    std::set<std::string> keys;
    for (const BibRecord& rec : doubled) keys.insert(rec.key);
    if (keys.size() != doubled.size()) {
        why = "duplicate keys survived deduplication";
        return false;
    }
    return true;
}

}  // namespace bibforge::proptest

#endif
