#ifndef BIBFORGE_NET_HPP
#define BIBFORGE_NET_HPP

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bibforge/types.hpp"

namespace bibforge::net {

using Params = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
    int status = 0;
    std::string body;
};

class HttpClient {
public:
    virtual ~HttpClient() = default;
    /// GET scheme://host/path?params. Throws BibError("HttpError") on
    /// transport failure after retries.
    virtual HttpResponse get(const std::string& host, const std::string& path,
                             const Params& params) = 0;
};

/// Resolves every request from recorded fixtures in a directory holding
/// an index.json of {path, params, body_file, status} descriptors. Fixture
/// params must all match the request; extra request params are ignored.
class FixtureHttpClient : public HttpClient {
public:
    explicit FixtureHttpClient(std::string dir);
    ~FixtureHttpClient() override;
    HttpResponse get(const std::string& host, const std::string& path,
                     const Params& params) override;

private:
    struct Entry;
    std::string dir_;
    std::vector<Entry> index_;
};

/// Live client with a per-host rate limiter (>=334ms between Entrez
/// requests), per-request timeout, and exponential-backoff retries.
class LiveHttpClient : public HttpClient {
public:
    explicit LiveHttpClient(int timeout_ms = 15000, int retries = 2);
    HttpResponse get(const std::string& host, const std::string& path,
                     const Params& params) override;

private:
    int timeout_ms_;
    int retries_;
};

/// Fixture client when BIBFORGE_HTTP_FIXTURES names a directory, live
/// client otherwise.
std::unique_ptr<HttpClient> default_client();

struct NetConfig {
    std::string crossref_host = "https://api.crossref.org";
    std::string crossref_path = "/works";
    std::string entrez_host = "https://eutils.ncbi.nlm.nih.gov";
    std::string entrez_base = "/entrez/eutils";
    std::string api_key;  // pass-through Entrez api_key parameter
};

/// CrossRef search. Provider scores are normalized to 0-100 within the
/// result page (top hit = 100) and hits below min_relevance dropped.
Bibliography crossref_search(HttpClient& client, const std::string& query,
                             int limit, int min_relevance,
                             const std::optional<int>& year = std::nullopt,
                             const std::string& sort = "relevance",
                             bool verbose = false, Diagnostics* diags = nullptr,
                             const NetConfig& cfg = {});

struct PubmedSearchOpts {
    std::string database = "pubmed";
    int retmax = 20;
    int retstart = 0;
    std::string field;
    std::string datetype;
    std::string mindate;  // "YYYY", "YYYY/MM", or "YYYY/MM/DD"
    std::string maxdate;
};

/// ESearch then EFetch; records carry eprinttype=pubmed and eprint=<id>.
Bibliography pubmed_search(HttpClient& client, const std::string& term,
                           const PubmedSearchOpts& opts = {},
                           Diagnostics* diags = nullptr, const NetConfig& cfg = {});

struct PubmedRelatedOpts {
    bool batch_mode = false;
    std::vector<int> max_results = {5};  // scalar in batch mode, per-id otherwise
    bool return_sim_scores = false;
    bool return_related_ids = false;
};

/// ELink related articles; scores attach as field "score" and source ids
/// as "pmidrelated" when requested.
Bibliography pubmed_related(HttpClient& client, const std::vector<std::string>& ids,
                            const PubmedRelatedOpts& opts = {},
                            Diagnostics* diags = nullptr, const NetConfig& cfg = {});

/// EFetch metadata for explicit ids; unresolvable ids are reported in
/// diagnostics.
Bibliography pubmed_fetch(HttpClient& client, const std::vector<std::string>& ids,
                          Diagnostics* diags = nullptr, const NetConfig& cfg = {});

/// ECitMatch id lookup for the selected entries (0-based positions).
/// Successful entries gain eprinttype=pubmed/eprint=<id>; the diagnostic
/// lists successful 1-based positions.
Bibliography pubmed_lookup_ids(HttpClient& client, const Bibliography& bib,
                               const std::vector<std::size_t>& positions,
                               Diagnostics* diags = nullptr, const NetConfig& cfg = {});

}  // namespace bibforge::net

#endif
