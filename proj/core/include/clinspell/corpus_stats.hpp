#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace clinspell {

inline constexpr double kDefaultSmoothingK = 0.5;

// Unigram and adjacent-pair counts over Word tokens, with add-k smoothing.
class CorpusStats {
 public:
  using UnigramMap = std::unordered_map<std::string, std::uint64_t>;
  using BigramList = std::vector<std::pair<std::pair<std::string, std::string>, std::uint64_t>>;

  explicit CorpusStats(double smoothing_k = kDefaultSmoothingK);

  // Explicit tables. Throws ConfigError if a bigram word is missing from the
  // unigram table or smoothing_k <= 0.
  CorpusStats(UnigramMap unigram, const BigramList& bigram, double smoothing_k);

  // Counts the Word tokens of one line; bigrams never cross lines.
  void add_line(std::string_view line);
  static CorpusStats from_stream(std::istream& in, double smoothing_k = kDefaultSmoothingK);
  static CorpusStats from_file(const std::filesystem::path& path,
                               double smoothing_k = kDefaultSmoothingK);

  std::uint64_t count(std::string_view word) const;
  std::uint64_t count(std::string_view first, std::string_view second) const;

  std::uint64_t total_unigrams() const { return total_; }
  std::size_t vocab_size() const { return unigram_.size(); }
  double smoothing_k() const { return k_; }

  const UnigramMap& unigrams() const { return unigram_; }

  // Bigrams sorted by (first, second).
  BigramList sorted_bigrams() const;

  // (count(w1,w2) + k) / (count(w1) + k * V) with V = max(vocab_size, 1).
  // Inputs are normalized before lookup.
  double bigram_probability(std::string_view first, std::string_view second) const;

  // "[unigram]" / "[bigram]" sections, tab-separated, sorted.
  void save(std::ostream& out) const;
  static CorpusStats load(std::istream& in, const std::string& source_name,
                          double smoothing_k = kDefaultSmoothingK);
  static CorpusStats load(const std::filesystem::path& path,
                          double smoothing_k = kDefaultSmoothingK);

 private:
  static std::string pair_key(std::string_view first, std::string_view second);

  UnigramMap unigram_;
  std::unordered_map<std::string, std::uint64_t> bigram_;
  std::uint64_t total_ = 0;
  double k_;
};

}  // namespace clinspell
