#include "pshaut/io.hpp"
#include "pshaut/models/petri.hpp"

#include <benchmark/benchmark.h>

using namespace pshaut;

namespace {

std::string fixture(const char *name) { return std::string(PSHAUT_FIXTURES) + "/" + name; }

void BM_BuildPrecube(benchmark::State &st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(build_precube(static_cast<int>(st.range(0))));
}
BENCHMARK(BM_BuildPrecube)->DenseRange(1, 4);

void BM_LangFsa(benchmark::State &st) {
    PresheafAutomaton X = load_automaton(fixture("fsa.json"));
    for (auto _ : st)
        benchmark::DoNotOptimize(lang_of(X, static_cast<std::size_t>(st.range(0))).size());
}
BENCHMARK(BM_LangFsa)->Arg(4)->Arg(8)->Arg(12);

void BM_LangOldsq1(benchmark::State &st) {
    PresheafAutomaton X = load_automaton(fixture("oldsq1.json"));
    for (auto _ : st)
        benchmark::DoNotOptimize(lang_of(X, 8).size());
}
BENCHMARK(BM_LangOldsq1);

void BM_Universe(benchmark::State &st) {
    FragmentPtr G = build_G({"a", "b"});
    for (auto _ : st)
        benchmark::DoNotOptimize(make_universe(G, static_cast<std::size_t>(st.range(0))).size());
}
BENCHMARK(BM_Universe)->Arg(3)->Arg(5)->Arg(7);

void BM_Certificate(benchmark::State &st) {
    PresheafAutomaton X = load_automaton(fixture("hdapaths.json"));
    for (auto _ : st)
        benchmark::DoNotOptimize(canonical_certificate(X));
}
BENCHMARK(BM_Certificate);

void BM_PetriNac(benchmark::State &st) {
    PetriNet net = petri_from_json(read_json_file(fixture("prodcons.json")));
    PetriOptions o;
    o.mode = PetriMode::Nac;
    int b = static_cast<int>(st.range(0));
    o.counter_bound = {b, b};
    for (auto _ : st)
        benchmark::DoNotOptimize(petri_to_hdac(net, o).automaton.size());
}
BENCHMARK(BM_PetriNac)->Arg(2)->Arg(3)->Arg(5);

}  // namespace
BENCHMARK_MAIN();
