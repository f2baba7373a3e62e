#include <benchmark/benchmark.h>

#include <string>

#include "bibforge/parser.hpp"
#include "bibforge/render.hpp"
#include "bibforge/search.hpp"
#include "bibforge/sort.hpp"

namespace {

std::string synthetic_corpus(int entries) {
    std::string out;
    for (int i = 0; i < entries; ++i) {
        std::string n = std::to_string(i);
        out += "@Article{entry" + n + ",\n"
               "  author = {Author" + n + ", First and Coauthor" + n + ", Second},\n"
               "  title = {A Study of Topic Number " + n + "},\n"
               "  journaltitle = {Journal of Benchmarks},\n"
               "  volume = {" + std::to_string(i % 40 + 1) + "},\n"
               "  number = {" + std::to_string(i % 12 + 1) + "},\n"
               "  pages = {" + std::to_string(10 * i + 1) + "-" +
               std::to_string(10 * i + 9) + "},\n"
               "  date = {" + std::to_string(1980 + i % 40) + "-0" +
               std::to_string(i % 9 + 1) + "},\n"
               "}\n\n";
    }
    return out;
}

void BM_Parse(benchmark::State& state) {
    std::string text = synthetic_corpus(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto result = bibforge::parse_bib(text, bibforge::CheckLevel::Error);
        benchmark::DoNotOptimize(result.bibliography.size());
    }
}
BENCHMARK(BM_Parse)->Arg(100)->Arg(1000);

void BM_Search(benchmark::State& state) {
    auto parsed = bibforge::parse_bib(synthetic_corpus(static_cast<int>(state.range(0))),
                                      bibforge::CheckLevel::Error);
    bibforge::ConfigOptions config;
    bibforge::Query query = bibforge::Query::conjunction(
        {bibforge::Query::make_clause("author", {"Author7"})});
    for (auto _ : state) {
        auto result = bibforge::search(parsed.bibliography, query, config);
        benchmark::DoNotOptimize(result.indices.size());
    }
}
BENCHMARK(BM_Search)->Arg(100)->Arg(1000);

void BM_Sort(benchmark::State& state) {
    auto parsed = bibforge::parse_bib(synthetic_corpus(static_cast<int>(state.range(0))),
                                      bibforge::CheckLevel::Error);
    for (auto _ : state) {
        auto perm = bibforge::sort_permutation(parsed.bibliography,
                                               bibforge::SortScheme::Nyt);
        benchmark::DoNotOptimize(perm.size());
    }
}
BENCHMARK(BM_Sort)->Arg(100)->Arg(1000);

void BM_Render(benchmark::State& state) {
    auto parsed = bibforge::parse_bib(synthetic_corpus(static_cast<int>(state.range(0))),
                                      bibforge::CheckLevel::Error);
    bibforge::ConfigOptions config;
    for (auto _ : state) {
        std::string text = bibforge::render_bibliography(parsed.bibliography, config);
        benchmark::DoNotOptimize(text.size());
    }
}
BENCHMARK(BM_Render)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
