#include "bibforge/merge.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace bibforge {

namespace {

// Normalized comparison value for one checked field; nullopt = absent.
std::optional<std::string> field_probe(const BibRecord& rec, const std::string& field) {
    if (field == "bibtype" || field == "entry_type") return fold_key(rec.entry_type);
    if (field == "key") return fold_key(rec.key);
    if (const std::string* v = rec.find(field))
        return fold_key(collapse_whitespace(*v));
    return std::nullopt;
}

bool duplicates(const BibRecord& a, const BibRecord& b,
                const std::set<std::string>& fields_to_check) {
    for (const std::string& field : fields_to_check)
        if (field_probe(a, field) != field_probe(b, field)) return false;
    return !fields_to_check.empty();
}

}  // namespace

Bibliography dedupe_keys(const Bibliography& bib) {
    std::set<std::string> used;
    std::vector<BibRecord> out;
    out.reserve(bib.size());
    for (const BibRecord& rec : bib) {
        BibRecord copy = rec;
        if (used.count(copy.key)) {
            int suffix = 1;
            std::string candidate;
            do {
                candidate = copy.key + "-" + std::to_string(suffix++);
            } while (used.count(candidate));
            copy.key = candidate;
        }
        used.insert(copy.key);
        out.push_back(std::move(copy));
    }
    return Bibliography(std::move(out));
}

Bibliography concat(const std::vector<Bibliography>& parts) {
    std::vector<BibRecord> all;
    for (const Bibliography& part : parts)
        for (const BibRecord& rec : part) all.push_back(rec);
    // Build through dedupe_keys so key collisions across parts resolve
    // instead of throwing.
    std::set<std::string> used;
    std::vector<BibRecord> renamed;
    renamed.reserve(all.size());
    for (BibRecord& rec : all) {
        if (used.count(rec.key)) {
            int suffix = 1;
            std::string candidate;
            do {
                candidate = rec.key + "-" + std::to_string(suffix++);
            } while (used.count(candidate));
            rec.key = candidate;
        }
        used.insert(rec.key);
        renamed.push_back(std::move(rec));
    }
    return Bibliography(std::move(renamed));
}

Bibliography concat(const Bibliography& a, const Bibliography& b) {
    return concat(std::vector<Bibliography>{a, b});
}

Bibliography merge(const Bibliography& a, const Bibliography& b,
                   const std::set<std::string>& fields_to_check) {
    std::vector<BibRecord> out(a.begin(), a.end());
    for (const BibRecord& candidate : b) {
        bool dup = std::any_of(a.begin(), a.end(), [&](const BibRecord& existing) {
            return duplicates(existing, candidate, fields_to_check);
        });
        if (!dup) out.push_back(candidate);
    }
    std::set<std::string> used;
    for (BibRecord& rec : out) {
        if (used.count(rec.key)) {
            int suffix = 1;
            std::string candidate;
            do {
                candidate = rec.key + "-" + std::to_string(suffix++);
            } while (used.count(candidate));
            rec.key = candidate;
        }
        used.insert(rec.key);
    }
    return Bibliography(std::move(out));
}

}  // namespace bibforge
