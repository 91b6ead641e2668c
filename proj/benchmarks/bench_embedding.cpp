#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "clinspell/embedding.hpp"

using namespace clinspell;

namespace {

EmbeddingModel random_model(std::size_t vocab, std::size_t dim, bool subwords) {
  std::mt19937_64 rng(vocab * 31 + dim);
  std::uniform_real_distribution<float> value(-1.0f, 1.0f);
  std::vector<std::string> words;
  std::vector<float> vectors(vocab * dim);
  for (std::size_t i = 0; i < vocab; ++i) words.push_back("word" + std::to_string(i));
  for (auto& v : vectors) v = value(rng);
  if (!subwords) return EmbeddingModel(ModelKind::Word2Vec, dim, words, vectors);
  SubwordTable table{{3, 6, 1u << 16}, std::vector<float>((1u << 16) * dim)};
  for (auto& v : table.vectors) v = value(rng);
  return EmbeddingModel(ModelKind::FastTextSkipgram, dim, words, vectors, std::move(table));
}

void BM_TopNSimilar(benchmark::State& state) {
  const auto model = random_model(static_cast<std::size_t>(state.range(0)), 64, false);
  for (auto _ : state) benchmark::DoNotOptimize(model.top_n_similar("word7", 20));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TopNSimilar)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_ComposeOov(benchmark::State& state) {
  const auto model = random_model(1000, 64, true);
  for (auto _ : state) benchmark::DoNotOptimize(model.vector_of("hemolyticanemia"));
}
BENCHMARK(BM_ComposeOov);

void BM_CharNgrams(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(char_ngrams("hemolyticanemia", 3, 6));
}
BENCHMARK(BM_CharNgrams);

}  // namespace

BENCHMARK_MAIN();
