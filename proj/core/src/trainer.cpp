#include "clinspell/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <map>

#include "clinspell/error.hpp"
#include "random.hpp"
#include "clinspell/text.hpp"

namespace clinspell {

namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

using detail::Random;

class SgnsTrainer {
 public:
  SgnsTrainer(const Vocab& vocab, const TrainConfig& config)
      : vocab_(vocab), config_(config), dim_(config.dim), random_(config.seed) {
    const std::size_t words = vocab_.size();
    const std::size_t buckets = config_.subword ? config_.subword_spec.bucket_count : 0;
    input_.resize((words + buckets) * dim_);
    const double bound = 0.5 / static_cast<double>(dim_);
    for (auto& v : input_) v = static_cast<float>(random_.uniform(-bound, bound));
    output_.assign(words * dim_, 0.0f);

    input_rows_.resize(words);
    for (std::size_t w = 0; w < words; ++w) {
      input_rows_[w].push_back(static_cast<std::uint32_t>(w));
      if (!config_.subword) continue;
      for (const auto bucket : ngram_buckets(vocab_.words[w], config_.subword_spec)) {
        input_rows_[w].push_back(static_cast<std::uint32_t>(words + bucket));
      }
    }
    hidden_.resize(dim_);
    grad_.resize(dim_);
  }

  std::vector<EpochStats> run(const std::vector<std::vector<std::uint32_t>>& sentences,
                              const ProgressCallback& progress) {
    std::uint64_t tokens_per_epoch = 0;
    for (const auto& s : sentences) tokens_per_epoch += s.size();
    const double total = static_cast<double>(tokens_per_epoch * config_.epochs);
    std::uint64_t processed = 0;
    std::vector<EpochStats> stats;

    for (std::size_t epoch = 1; epoch <= config_.epochs; ++epoch) {
      const auto started = std::chrono::steady_clock::now();
      double loss_sum = 0.0;
      std::uint64_t updates = 0;
      for (const auto& sentence : sentences) {
        for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
          const double lr = config_.initial_lr - (config_.initial_lr - kFinalLearningRate) *
                                                     (static_cast<double>(processed) / total);
          const auto reach = static_cast<std::size_t>(1 + random_.below(config_.window));
          const std::size_t lo = pos >= reach ? pos - reach : 0;
          const std::size_t hi = std::min(sentence.size() - 1, pos + reach);
          if (config_.mode == Architecture::Skipgram) {
            for (std::size_t c = lo; c <= hi; ++c) {
              if (c == pos) continue;
              const std::uint32_t rows[] = {sentence[pos]};
              compose_hidden(rows);
              loss_sum += logistic_updates(sentence[c], lr);
              ++updates;
              apply_gradient(rows);
            }
          } else {
            context_.clear();
            for (std::size_t c = lo; c <= hi; ++c) {
              if (c != pos) context_.push_back(sentence[c]);
            }
            if (context_.empty()) continue;
            compose_hidden(context_);
            loss_sum += logistic_updates(sentence[pos], lr);
            ++updates;
            apply_gradient(context_);
          }
          ++processed;
        }
      }
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      EpochStats e;
      e.epoch = epoch;
      e.mean_loss = updates > 0 ? loss_sum / static_cast<double>(updates) : 0.0;
      e.words_per_second = seconds > 0.0 ? static_cast<double>(tokens_per_epoch) / seconds : 0.0;
      stats.push_back(e);
      if (progress) progress(e);
    }
    return stats;
  }

  EmbeddingModel finish() && {
    const std::size_t words = vocab_.size();
    std::vector<float> word_vectors(words * dim_);
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint32_t one[] = {static_cast<std::uint32_t>(w)};
      compose_hidden(one);
      std::copy(hidden_.begin(), hidden_.end(), word_vectors.begin() + static_cast<std::ptrdiff_t>(w * dim_));
    }
    std::optional<SubwordTable> table;
    if (config_.subword) {
      SubwordTable t;
      t.spec = config_.subword_spec;
      t.vectors.assign(input_.begin() + static_cast<std::ptrdiff_t>(words * dim_), input_.end());
      table = std::move(t);
    }
    return EmbeddingModel(config_.model_kind(), dim_, vocab_.words, std::move(word_vectors),
                          std::move(table));
  }

 private:
  float* input_row(std::uint32_t row) { return input_.data() + static_cast<std::size_t>(row) * dim_; }
  float* output_row(std::uint32_t word) { return output_.data() + static_cast<std::size_t>(word) * dim_; }

  // hidden = mean over words of (mean over that word's input rows).
  void compose_hidden(std::span<const std::uint32_t> words) {
    std::fill(hidden_.begin(), hidden_.end(), 0.0f);
    for (const std::uint32_t w : words) {
      const auto& rows = input_rows_[w];
      const float scale = 1.0f / static_cast<float>(rows.size() * words.size());
      for (const std::uint32_t r : rows) {
        const float* v = input_row(r);
        for (std::size_t d = 0; d < dim_; ++d) hidden_[d] += scale * v[d];
      }
    }
    std::fill(grad_.begin(), grad_.end(), 0.0f);
  }

  // Every input row behind the hidden vector receives the full gradient,
  // as in the reference word2vec/fastText update.
  void apply_gradient(std::span<const std::uint32_t> words) {
    for (const std::uint32_t w : words) {
      for (const std::uint32_t r : input_rows_[w]) {
        float* v = input_row(r);
        for (std::size_t d = 0; d < dim_; ++d) v[d] += grad_[d];
      }
    }
  }

  double binary_logistic(std::uint32_t word, bool label, double lr) {
    float* u = output_row(word);
    double score = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) score += static_cast<double>(u[d]) * hidden_[d];
    const double loss = label ? -log_sigmoid(score) : -log_sigmoid(-score);
    const auto g = static_cast<float>(lr * ((label ? 1.0 : 0.0) - sigmoid(score)));
    for (std::size_t d = 0; d < dim_; ++d) {
      grad_[d] += g * u[d];
      u[d] += g * hidden_[d];
    }
    return loss;
  }

  double logistic_updates(std::uint32_t target, double lr) {
    double loss = binary_logistic(target, true, lr);
    for (std::size_t k = 0; k < config_.negatives; ++k) {
      const auto negative = draw_negative(target);
      if (!negative) break;
      loss += binary_logistic(*negative, false, lr);
    }
    return loss;
  }

  std::optional<std::uint32_t> draw_negative(std::uint32_t target) {
    if (vocab_.size() < 2) return std::nullopt;
    while (true) {
      const auto pick = vocab_.negative_table[random_.below(vocab_.negative_table.size())];
      if (pick != target) return pick;
    }
  }

  const Vocab& vocab_;
  const TrainConfig& config_;
  std::size_t dim_;
  Random random_;
  std::vector<float> input_;
  std::vector<float> output_;
  std::vector<std::vector<std::uint32_t>> input_rows_;
  std::vector<float> hidden_;
  std::vector<float> grad_;
  std::vector<std::uint32_t> context_;
};

}  // namespace

std::string_view to_string(Architecture arch) {
  return arch == Architecture::Cbow ? "cbow" : "sg";
}

void TrainConfig::validate() const {
  if (dim == 0) throw ConfigError("dim must be positive");
  if (window == 0) throw ConfigError("window must be positive");
  if (negatives == 0) throw ConfigError("negatives must be positive");
  if (epochs == 0) throw ConfigError("epochs must be positive");
  if (!(initial_lr > 0.0)) throw ConfigError("initial learning rate must be positive");
  if (min_count == 0) throw ConfigError("min_count must be positive");
  if (subword) {
    if (subword_spec.ngram_min < 1 || subword_spec.ngram_min > subword_spec.ngram_max) {
      throw ConfigError("n-gram range must satisfy 1 <= min <= max");
    }
    if (subword_spec.bucket_count == 0) throw ConfigError("bucket count must be positive");
  }
}

ModelKind TrainConfig::model_kind() const {
  if (!subword) return ModelKind::Word2Vec;
  return mode == Architecture::Cbow ? ModelKind::FastTextCbow : ModelKind::FastTextSkipgram;
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> sentence;
    for (auto& token : tokenize(line)) {
      if (token.cls == TokenClass::Word) sentence.push_back(std::move(token.normalized));
    }
    if (!sentence.empty()) corpus.push_back(std::move(sentence));
  }
  return corpus;
}

Vocab build_vocab(const Corpus& corpus, const TrainConfig& config) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& sentence : corpus) {
    for (const auto& word : sentence) ++counts[word];
  }
  std::vector<std::pair<std::string, std::uint64_t>> kept;
  for (auto& [word, count] : counts) {
    if (count >= config.min_count) kept.emplace_back(word, count);
  }
  if (kept.empty()) {
    throw TrainingInputError("vocabulary is empty after applying min_count " +
                             std::to_string(config.min_count));
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  Vocab vocab;
  double mass = 0.0;
  for (auto& [word, count] : kept) {
    vocab.index.emplace(word, static_cast<std::uint32_t>(vocab.words.size()));
    vocab.words.push_back(std::move(word));
    vocab.counts.push_back(count);
    const double weight = std::pow(static_cast<double>(count), 0.75);
    vocab.sampling_probabilities.push_back(weight);
    mass += weight;
  }
  for (auto& p : vocab.sampling_probabilities) p /= mass;

  vocab.negative_table.resize(kNegativeTableSize);
  double cumulative = 0.0;
  std::size_t filled = 0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    cumulative += vocab.sampling_probabilities[i];
    std::size_t boundary = i + 1 == vocab.size()
                               ? kNegativeTableSize
                               : static_cast<std::size_t>(std::llround(cumulative * kNegativeTableSize));
    boundary = std::min(boundary, kNegativeTableSize);
    for (; filled < boundary; ++filled) vocab.negative_table[filled] = static_cast<std::uint32_t>(i);
  }
  return vocab;
}

double log_sigmoid(double x) {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

SgnsGradients sgns_loss_and_gradients(std::span<const double> center,
                                      std::span<const double> context,
                                      std::span<const std::vector<double>> negatives) {
  const std::size_t dim = center.size();
  if (context.size() != dim) throw ConfigError("sgns: context length differs from center");
  auto dot = [dim](std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += a[i] * b[i];
    return s;
  };

  SgnsGradients out;
  out.center.assign(dim, 0.0);
  out.context.assign(dim, 0.0);

  const double x = dot(context, center);
  out.loss = -log_sigmoid(x);
  const double g_pos = sigmoid(x) - 1.0;  // d(-log s(x))/dx
  for (std::size_t i = 0; i < dim; ++i) {
    out.center[i] += g_pos * context[i];
    out.context[i] = g_pos * center[i];
  }
  for (const auto& negative : negatives) {
    if (negative.size() != dim) throw ConfigError("sgns: negative length differs from center");
    const double y = dot(negative, center);
    out.loss -= log_sigmoid(-y);
    const double g_neg = sigmoid(y);  // d(-log s(-y))/dy
    std::vector<double> grad(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      out.center[i] += g_neg * negative[i];
      grad[i] = g_neg * center[i];
    }
    out.negatives.push_back(std::move(grad));
  }
  return out;
}

TrainResult train(const Corpus& corpus, const TrainConfig& config, const ProgressCallback& progress) {
  config.validate();
  const Vocab vocab = build_vocab(corpus, config);

  std::vector<std::vector<std::uint32_t>> sentences;
  sentences.reserve(corpus.size());
  for (const auto& sentence : corpus) {
    std::vector<std::uint32_t> ids;
    for (const auto& word : sentence) {
      if (const auto it = vocab.index.find(word); it != vocab.index.end()) ids.push_back(it->second);
    }
    if (!ids.empty()) sentences.push_back(std::move(ids));
  }

  SgnsTrainer trainer(vocab, config);
  auto epochs = trainer.run(sentences, progress);
  return TrainResult{std::move(trainer).finish(), std::move(epochs)};
}

}  // namespace clinspell
