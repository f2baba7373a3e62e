#ifndef BIBFORGE_TYPES_HPP
#define BIBFORGE_TYPES_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bibforge {

/// Error thrown by library operations. `code` is a stable machine-readable
/// identifier (e.g. "MissingRequiredFields", "DanglingCrossref").
class BibError : public std::runtime_error {
public:
    BibError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

struct Diagnostic {
    enum class Severity { Error, Warning, Info };
    Severity severity = Severity::Warning;
    std::string subject;  // entry title or key the diagnostic refers to
    std::string message;
    int line = 0;
};

using Diagnostics = std::vector<Diagnostic>;

/// Structured personal name in the BibTeX von-Last-Jr-First decomposition.
struct PersonName {
    std::vector<std::string> given;
    std::string prefix;  // von part
    std::vector<std::string> family;
    std::string suffix;  // Jr part

    bool operator==(const PersonName&) const = default;
};

struct DatePart {
    int year = 0;
    std::optional<int> month;
    std::optional<int> day;

    bool operator==(const DatePart&) const = default;
};

/// A date at year/month/day precision, or an interval with optionally
/// open endpoints.
struct DateSpec {
    enum class Kind { Single, Interval };
    Kind kind = Kind::Single;
    std::optional<DatePart> start;
    std::optional<DatePart> end;

    bool operator==(const DateSpec&) const = default;
};

/// Field names that hold `and`-separated name lists.
const std::set<std::string>& name_list_fields();
/// Field names that hold dates.
const std::set<std::string>& date_fields();

/// One bibliographic entry. Field names are stored lowercase and field
/// order is preserved for serialization.
struct BibRecord {
    std::string entry_type;  // lowercase token
    std::string key;
    std::vector<std::pair<std::string, std::string>> fields;
    std::map<std::string, std::vector<PersonName>> parsed_names;
    std::map<std::string, DateSpec> parsed_dates;

    const std::string* find(std::string_view field) const;
    bool has(std::string_view field) const { return find(field) != nullptr; }
    std::string get_or(std::string_view field, std::string fallback = "") const;

    /// Sets (or removes, for an empty value) a field and reparses any
    /// derived name/date state. Returns false if the value was rejected.
    void set_field(const std::string& field, const std::string& value);
    void remove_field(std::string_view field);

    /// The date used for year-based logic: the `date` field if present,
    /// otherwise assembled from `year`/`month`.
    std::optional<DateSpec> resolved_date() const;
    std::optional<int> resolved_year() const;

    bool is_xdata() const { return entry_type == "xdata"; }

    bool operator==(const BibRecord& other) const;
};

/// Ordered collection of records with unique keys.
class Bibliography {
public:
    Bibliography() = default;
    explicit Bibliography(std::vector<BibRecord> entries);

    const std::vector<BibRecord>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    const BibRecord& at(std::size_t pos) const { return entries_.at(pos); }
    BibRecord& at(std::size_t pos) { return entries_.at(pos); }
    const BibRecord* find_key(std::string_view key) const;
    std::optional<std::size_t> position_of(std::string_view key) const;

    /// Appends a record; throws BibError("DuplicateKey") on collision.
    void append(BibRecord record);
    /// Replaces the record at `pos`; rejects key collisions with others.
    void replace(std::size_t pos, BibRecord record);

    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    void reindex();
    std::vector<BibRecord> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Shared string helpers used across modules.
std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
/// Case-folds and strips common Latin diacritics (UTF-8 aware for the
/// Latin-1/Latin Extended-A ranges).
std::string fold_key(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

}  // namespace bibforge

#endif
