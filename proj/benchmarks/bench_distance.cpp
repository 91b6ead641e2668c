#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <string>

#include "clinspell/distance.hpp"
#include "clinspell/lexicon.hpp"

using namespace clinspell;

namespace {

std::string random_word(std::mt19937_64& rng, std::size_t length) {
  std::string s(length, 'a');
  for (auto& c : s) c = static_cast<char>('a' + rng() % 26);
  return s;
}

const Lexicon& lexicon_of_size(std::size_t n) {
  static std::map<std::size_t, Lexicon> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::mt19937_64 rng(n);
    WordList list{"bench", SourceTag::General, {}};
    while (list.entries.size() < n) list.entries.push_back({random_word(rng, 4 + rng() % 9), rng() % 100, {}});
    const std::vector<WordList> lists = {list};
    it = cache.emplace(n, Lexicon::build(lists)).first;
  }
  return it->second;
}

void BM_DamerauLevenshtein(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto a = random_word(rng, static_cast<std::size_t>(state.range(0)));
  const auto b = random_word(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(damerau_levenshtein(a, b));
}
BENCHMARK(BM_DamerauLevenshtein)->Arg(6)->Arg(12)->Arg(24);

void BM_BoundedDistance(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto a = random_word(rng, static_cast<std::size_t>(state.range(0)));
  const auto b = random_word(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bounded_distance(a, b, DistanceBudget{2}));
}
BENCHMARK(BM_BoundedDistance)->Arg(6)->Arg(12)->Arg(24);

void BM_NearestByDistance(benchmark::State& state) {
  const auto& lex = lexicon_of_size(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(3);
  const auto query = random_word(rng, 8);
  for (auto _ : state) benchmark::DoNotOptimize(nearest_by_distance(query, lex, DistanceBudget{2}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NearestByDistance)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
