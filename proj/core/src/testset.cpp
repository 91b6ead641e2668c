#include <algorithm>
#include <set>

#include "clinspell/corpus_stats.hpp"
#include "clinspell/error.hpp"
#include "clinspell/eval.hpp"
#include "clinspell/lexicon.hpp"
#include "clinspell/text.hpp"
#include "clinspell/utf8.hpp"
#include "random.hpp"

namespace clinspell {

namespace {

constexpr int kMaxAttempts = 200;
constexpr std::size_t kMinObservedLength = 3;

class Corruptor {
 public:
  Corruptor(const Lexicon& lexicon, const CorpusStats& stats, const CorruptionConfig& config,
            std::uint64_t seed)
      : lexicon_(lexicon), config_(config), random_(seed) {
    std::set<char32_t> alphabet;
    for (const auto& [word, entry] : lexicon.entries()) {
      if (!entry.word_shaped) continue;
      for (char32_t c : entry.code_points) {
        if (c != U'-' && c != U'\u2010') alphabet.insert(c);
      }
      if (entry.code_points.size() >= config.min_word_length) words_.push_back(word);
    }
    alphabet_.assign(alphabet.begin(), alphabet.end());
    if (words_.empty()) {
      throw ConfigError("lexicon has no word-shaped entries of length >= " +
                        std::to_string(config.min_word_length));
    }
    for (const auto& [pair, count] : stats.sorted_bigrams()) {
      if (count == 0 || pair.first == pair.second) continue;
      if (!usable_part(pair.first) || !usable_part(pair.second)) continue;
      if (lexicon.contains(pair.first + pair.second)) continue;
      pairs_.push_back(pair);
    }
  }

  std::vector<LabeledExample> generate() {
    std::vector<LabeledExample> out;
    for (const auto& word : sample_controls()) out.push_back({word, word, false});

    double weights[3] = {config_.truncation_weight, config_.symbol_noise_weight,
                         pairs_.empty() ? 0.0 : config_.concatenation_weight};
    const double total = weights[0] + weights[1] + weights[2];
    if (!(total > 0.0)) throw ConfigError("corruption weights must not all be zero");

    for (std::size_t i = 0; i < config_.error_count; ++i) {
      double pick = random_.uniform01() * total;
      auto kind = CorruptionKind::Concatenation;
      if (pick < weights[0]) {
        kind = CorruptionKind::Truncation;
      } else if ((pick -= weights[0]) < weights[1]) {
        kind = CorruptionKind::SymbolNoise;
      }
      out.push_back(corrupt(kind));
    }

    // Fisher-Yates with the seeded generator.
    for (std::size_t i = out.size(); i > 1; --i) {
      std::swap(out[i - 1], out[random_.below(i)]);
    }
    return out;
  }

 private:
  bool usable_part(const std::string& word) const {
    const auto* entry = lexicon_.find_normalized(word);
    return entry != nullptr && entry->word_shaped && entry->code_points.size() >= 3;
  }

  bool acceptable(const std::string& observed) const {
    return utf8::length(observed) >= kMinObservedLength && is_word_shaped(observed) &&
           !lexicon_.contains(observed);
  }

  const std::string& random_word() { return words_[random_.below(words_.size())]; }

  std::vector<std::string> sample_controls() {
    std::vector<std::string> out;
    if (config_.correct_count <= words_.size()) {
      std::vector<std::size_t> index(words_.size());
      for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
      for (std::size_t i = 0; i < config_.correct_count; ++i) {
        std::swap(index[i], index[i + random_.below(index.size() - i)]);
        out.push_back(words_[index[i]]);
      }
    } else {
      for (std::size_t i = 0; i < config_.correct_count; ++i) out.push_back(random_word());
    }
    return out;
  }

  LabeledExample corrupt(CorruptionKind kind) {
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      if (kind == CorruptionKind::Concatenation) {
        const auto& [first, second] = pairs_[random_.below(pairs_.size())];
        return {first + second, first + " " + second, true};
      }
      const std::string& word = random_word();
      const std::size_t length = utf8::length(word);
      std::string observed;
      if (kind == CorruptionKind::Truncation) {
        const std::size_t most = std::min(config_.max_truncation, length - kMinObservedLength);
        if (most < 2) continue;
        observed = truncate_word(word, 2 + random_.below(most - 1));
      } else {
        observed = add_noise(word);
      }
      if (observed != word && acceptable(observed)) return {observed, word, true};
    }
    // Fall back to a truncation, which always exists for long enough words.
    const std::string& word = random_word();
    return {truncate_word(word, 2), word, true};
  }

  std::string add_noise(const std::string& word) {
    std::u32string chars = utf8::decode(word);
    const std::size_t edits = 1 + random_.below(std::max<std::size_t>(config_.max_noise_edits, 1));
    for (std::size_t e = 0; e < edits && chars.size() > 1; ++e) {
      const std::size_t pos = random_.below(chars.size());
      switch (random_.below(3)) {
        case 0:
          chars.erase(pos, 1);
          break;
        case 1: {
          const char32_t replacement = alphabet_[random_.below(alphabet_.size())];
          chars[pos] = replacement;
          break;
        }
        default: {
          const std::size_t at = pos + 1 < chars.size() ? pos : pos - 1;
          std::swap(chars[at], chars[at + 1]);
          break;
        }
      }
    }
    return utf8::encode(chars);
  }

  const Lexicon& lexicon_;
  const CorruptionConfig& config_;
  detail::Random random_;
  std::vector<std::string> words_;
  std::vector<char32_t> alphabet_;
  std::vector<std::pair<std::string, std::string>> pairs_;
};

}  // namespace

std::string truncate_word(std::string_view word, std::size_t drop) {
  const std::u32string chars = utf8::decode(word);
  if (drop >= chars.size()) return {};
  return utf8::encode(std::u32string_view(chars).substr(0, chars.size() - drop));
}

std::vector<LabeledExample> generate_synthetic_testset(const Lexicon& lexicon,
                                                       const CorpusStats& stats,
                                                       const CorruptionConfig& config,
                                                       std::uint64_t seed) {
  return Corruptor(lexicon, stats, config, seed).generate();
}

}  // namespace clinspell
