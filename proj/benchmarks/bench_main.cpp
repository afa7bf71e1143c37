#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "repomine/basemaps.hpp"
#include "repomine/metadata.hpp"
#include "repomine/sampler.hpp"

namespace {

using namespace repomine;

const ObjectStore& corpus(std::size_t projects) {
  static std::map<std::size_t, ObjectStore> cache;
  auto it = cache.find(projects);
  if (it == cache.end()) {
    testing::RandomCorpusParams p;
    p.projects = projects;
    p.steps_per_project = 25;
    p.seed = 99;
    it = cache.emplace(projects, testing::random_corpus(p).store).first;
  }
  return it->second;
}

void BM_IntroducedFiles(benchmark::State& state) {
  const auto& store = corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    std::size_t n = 0;
    for (const auto& [id, c] : store.commits()) n += introduced_files(store, id).size();
    benchmark::DoNotOptimize(n);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(store.commits().size()));
}
BENCHMARK(BM_IntroducedFiles)->Arg(10)->Arg(40);

void BM_BuildBaseMaps(benchmark::State& state) {
  const auto& store = corpus(40);
  for (auto _ : state) benchmark::DoNotOptimize(build_basemaps(store, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_BuildBaseMaps)->Arg(1)->Arg(4)->UseRealTime();

void BM_AggregateProjects(benchmark::State& state) {
  const auto& store = corpus(40);
  auto maps = build_basemaps(store);
  for (auto _ : state) benchmark::DoNotOptimize(aggregate_projects(maps, store));
}
BENCHMARK(BM_AggregateProjects);

void BM_Sample(benchmark::State& state) {
  std::vector<std::string> ids;
  for (std::int64_t i = 0; i < state.range(0); ++i) ids.push_back("p" + std::to_string(1000000 + i));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample(ids, {20, seed++}));
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
