#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace clinspell {

class CorpusStats;

enum class SourceTag : std::uint8_t {
  General,
  MedicalTerm,
  Drug,
  Abbreviation,
  CorpusFrequent,
};

inline constexpr std::size_t kSourceTagCount = 5;

std::string_view to_string(SourceTag tag);
std::optional<SourceTag> parse_source_tag(std::string_view name);

// Small bit set over SourceTag.
class SourceSet {
 public:
  constexpr SourceSet() = default;
  constexpr SourceSet(SourceTag tag) : bits_(bit(tag)) {}  // NOLINT: implicit by intent

  constexpr bool contains(SourceTag tag) const { return (bits_ & bit(tag)) != 0; }
  constexpr void insert(SourceTag tag) { bits_ |= bit(tag); }
  constexpr void merge(SourceSet other) { bits_ |= other.bits_; }
  constexpr bool empty() const { return bits_ == 0; }

  // Comma-joined tag names in enum order, e.g. "general,medical".
  std::string to_string() const;
  static std::optional<SourceSet> parse(std::string_view text);

  friend constexpr bool operator==(SourceSet, SourceSet) = default;

 private:
  static constexpr std::uint8_t bit(SourceTag tag) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(tag));
  }
  std::uint8_t bits_ = 0;
};

struct WordListEntry {
  std::string word;
  std::optional<std::uint64_t> frequency;
  SourceSet tags;  // empty: inherit the list's tag
};

// One labelled dictionary source.
struct WordList {
  std::string name;
  SourceTag tag = SourceTag::General;
  std::vector<WordListEntry> entries;
};

// Word-list text format: one word per line, optional TAB frequency column,
// optional TAB tag column ("general,drug"), '#' lines and blank lines ignored.
WordList parse_word_list(std::istream& in, std::string name, SourceTag tag);
WordList read_word_list(const std::filesystem::path& path, SourceTag tag);

struct LexiconEntry {
  std::uint64_t frequency = 0;
  SourceSet sources;
  std::u32string code_points;  // decoded key, cached for distance scans
  bool word_shaped = false;    // key is a single Word token
};

// Multi-source dictionary of known words, keyed by normalized form.
// Immutable once built; concurrent reads are safe.
class Lexicon {
 public:
  using Map = std::map<std::string, LexiconEntry, std::less<>>;

  // Union of all sources. Throws ConfigError if the union is empty.
  static Lexicon build(std::span<const WordList> sources);

  bool contains(std::string_view word) const;
  const LexiconEntry* find_normalized(std::string_view key) const;
  std::uint64_t frequency(std::string_view word) const;

  std::size_t size() const { return entries_.size(); }
  const Map& entries() const { return entries_; }

  // Entry count per source tag (a word with two tags counts in both).
  std::map<SourceTag, std::size_t> count_by_source() const;

  // Merges tags into an existing entry and keeps the larger frequency.
  void insert(std::string_view word, SourceSet sources, std::uint64_t frequency);
  // No-op for unknown words.
  void set_frequency(std::string_view word, std::uint64_t frequency);

  // Writes "word<TAB>frequency<TAB>tags" lines in key order.
  void save(std::ostream& out) const;
  static Lexicon load(const std::filesystem::path& path);

 private:
  Map entries_;
};

// Adds every corpus word with count >= min_freq that is word-shaped and at
// least 3 code points long, tagged CorpusFrequent. Entries seen in the corpus
// take their frequency from the corpus counts. Throws ConfigError if
// min_freq is 0.
Lexicon augment_from_corpus(Lexicon lexicon, const CorpusStats& stats, std::uint64_t min_freq);

inline constexpr std::uint64_t kDefaultMinCorpusFrequency = 25;
inline constexpr std::size_t kMinCorpusWordLength = 3;

}  // namespace clinspell
