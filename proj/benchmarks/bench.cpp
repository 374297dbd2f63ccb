#include <benchmark/benchmark.h>

#include <sstream>

#include "gg/session.hpp"

using namespace gg;

namespace {

const std::string kData = GG_DATA_DIR;

struct Demo {
    std::ostringstream out, err;
    Session s{out, err};
    explicit Demo(const std::string& bundle = "demo") { s.execute("load-bundle " + kData + "/" + bundle); }
};

void BM_Unify(benchmark::State& state) {
    Demo d;
    const auto& reg = d.s.grammar().registry();
    auto a = parse_fs("[N +, V -, BAR 2, DET -, PER #1, PLU #2, CASE {NOM,ACC}]", reg);
    auto b = parse_fs("[N +, V -, BAR {1,2}, PER 3, PLU -, NTYPE COUNT, PRD -]", reg);
    for (auto _ : state) benchmark::DoNotOptimize(unify(a, b));
}
BENCHMARK(BM_Unify);

void BM_ParseKnown(benchmark::State& state) {
    Demo d;
    d.s.flags.learning = false;
    auto toks = tokenize("Sam chases the cat");
    for (auto _ : state) benchmark::DoNotOptimize(d.s.sentence(toks));
}
BENCHMARK(BM_ParseKnown);

// learning from scratch each time: the super rule run dominates
void BM_LearnWorkedExample(benchmark::State& state) {
    auto toks = tokenize("Sam chases the happy cat");
    for (auto _ : state) {
        state.PauseTiming();
        Demo d;
        state.ResumeTiming();
        benchmark::DoNotOptimize(d.s.sentence(toks));
    }
}
BENCHMARK(BM_LearnWorkedExample);

void BM_LearnPP(benchmark::State& state) {
    auto toks = tokenize("Sam chases the cat down the road");
    for (auto _ : state) {
        state.PauseTiming();
        Demo d;
        d.s.flags.lp = state.range(0) != 0;
        d.s.flags.types = state.range(0) != 0;
        state.ResumeTiming();
        benchmark::DoNotOptimize(d.s.sentence(toks));
    }
}
BENCHMARK(BM_LearnPP)->Arg(0)->Arg(1);

void BM_ClawsCorpus(benchmark::State& state) {
    auto corpus = read_corpus(kData + "/claws/train.txt");
    Demo d("claws");
    d.s.flags.learning = false;
    for (auto _ : state)
        for (const auto& s : corpus) benchmark::DoNotOptimize(d.s.sentence(s));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus.size()));
}
BENCHMARK(BM_ClawsCorpus);

void BM_MatchParse(benchmark::State& state) {
    auto t = tokenize("S NP Sam VP chases NP Det the N1 cat PP down NP Det the N1 road");
    auto b = tokenize("S NP Sam VP VP chases NP Det the N1 cat PP down NP Det the N1 road");
    for (auto _ : state) benchmark::DoNotOptimize(match_parse(t, b));
}
BENCHMARK(BM_MatchParse);

}  // namespace
BENCHMARK_MAIN();
