#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "clinspell/embedding.hpp"

namespace clinspell {

enum class Architecture { Cbow, Skipgram };

std::string_view to_string(Architecture arch);

struct TrainConfig {
  std::size_t dim = 64;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double initial_lr = 0.05;  // decays linearly to kFinalLearningRate
  std::uint64_t min_count = 2;
  Architecture mode = Architecture::Skipgram;
  bool subword = false;
  SubwordSpec subword_spec;
  std::uint64_t seed = 1;

  // Throws ConfigError on any non-positive field or bad n-gram range.
  void validate() const;
  ModelKind model_kind() const;
};

inline constexpr double kFinalLearningRate = 1e-4;
inline constexpr std::size_t kNegativeTableSize = 1'000'000;

// Tokenized training corpus: one sentence (document line) per entry.
using Corpus = std::vector<std::vector<std::string>>;

// Normalized Word tokens of each line.
Corpus read_corpus(std::istream& in);

struct Vocab {
  std::vector<std::string> words;     // count desc, then word asc
  std::vector<std::uint64_t> counts;
  std::vector<double> sampling_probabilities;  // count^0.75, normalized
  std::vector<std::uint32_t> negative_table;
  std::unordered_map<std::string, std::uint32_t> index;

  std::size_t size() const { return words.size(); }
};

// Throws TrainingInputError when nothing survives min_count.
Vocab build_vocab(const Corpus& corpus, const TrainConfig& config);

struct SgnsGradients {
  double loss = 0.0;
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};

// loss = -log s(ctx.c) - sum_k log s(-neg_k.c), with exact gradients.
SgnsGradients sgns_loss_and_gradients(std::span<const double> center,
                                      std::span<const double> context,
                                      std::span<const std::vector<double>> negatives);

// Numerically stable log(sigmoid(x)).
double log_sigmoid(double x);

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double mean_loss = 0.0;
  double words_per_second = 0.0;
};

struct TrainResult {
  EmbeddingModel model;
  std::vector<EpochStats> epochs;
};

using ProgressCallback = std::function<void(const EpochStats&)>;

// Single-threaded SGNS training. Output is a pure function of
// (corpus, config); words_per_second is the only wall-clock quantity.
TrainResult train(const Corpus& corpus, const TrainConfig& config,
                  const ProgressCallback& progress = {});

}  // namespace clinspell
