#include "clinspell/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "clinspell/corpus_stats.hpp"
#include "clinspell/error.hpp"
#include "clinspell/text.hpp"
#include "clinspell/utf8.hpp"

namespace clinspell {

namespace {

constexpr std::string_view kTagNames[kSourceTagCount] = {"general", "medical", "drug",
                                                         "abbreviation", "corpus"};

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(SourceTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

std::optional<SourceTag> parse_source_tag(std::string_view name) {
  const std::string folded = normalize(name);
  for (std::size_t i = 0; i < kSourceTagCount; ++i) {
    if (folded == kTagNames[i]) return static_cast<SourceTag>(i);
  }
  // Long aliases.
  if (folded == "medicalterm" || folded == "medical-term") return SourceTag::MedicalTerm;
  if (folded == "abbrev") return SourceTag::Abbreviation;
  if (folded == "corpusfrequent" || folded == "corpus-frequent") return SourceTag::CorpusFrequent;
  return std::nullopt;
}

std::string SourceSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < kSourceTagCount; ++i) {
    const auto tag = static_cast<SourceTag>(i);
    if (!contains(tag)) continue;
    if (!out.empty()) out += ',';
    out += kTagNames[i];
  }
  return out;
}

std::optional<SourceSet> SourceSet::parse(std::string_view text) {
  SourceSet set;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto tag = parse_source_tag(trim(text.substr(start, comma - start)));
    if (!tag) return std::nullopt;
    set.insert(*tag);
    start = comma + 1;
  }
  if (set.empty()) return std::nullopt;
  return set;
}

WordList parse_word_list(std::istream& in, std::string name, SourceTag tag) {
  WordList list{std::move(name), tag, {}};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() > 3) throw FormatError(list.name, line_no, "expected at most 3 columns");
    WordListEntry entry;
    entry.word = std::string(trim(fields[0]));
    if (entry.word.empty()) throw FormatError(list.name, line_no, "empty word");
    if (fields.size() >= 2 && !trim(fields[1]).empty()) {
      const auto f = trim(fields[1]);
      std::uint64_t value = 0;
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw FormatError(list.name, line_no, "bad frequency '" + std::string(f) + "'");
      }
      entry.frequency = value;
    }
    if (fields.size() == 3) {
      const auto tags = SourceSet::parse(fields[2]);
      if (!tags) throw FormatError(list.name, line_no, "bad source tags '" + std::string(fields[2]) + "'");
      entry.tags = *tags;
    }
    list.entries.push_back(std::move(entry));
  }
  return list;
}

WordList read_word_list(const std::filesystem::path& path, SourceTag tag) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read word list '" + path.string() + "'");
  return parse_word_list(in, path.string(), tag);
}

void Lexicon::insert(std::string_view word, SourceSet sources, std::uint64_t frequency) {
  std::string key = normalize(word);
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    LexiconEntry entry;
    entry.code_points = utf8::decode(key);
    entry.word_shaped = is_word_shaped(key);
    it = entries_.emplace(std::move(key), std::move(entry)).first;
  }
  it->second.sources.merge(sources);
  it->second.frequency = std::max(it->second.frequency, frequency);
}

Lexicon Lexicon::build(std::span<const WordList> sources) {
  Lexicon lexicon;
  for (const auto& source : sources) {
    for (const auto& entry : source.entries) {
      const SourceSet tags = entry.tags.empty() ? SourceSet(source.tag) : entry.tags;
      lexicon.insert(entry.word, tags, entry.frequency.value_or(0));
    }
  }
  if (lexicon.size() == 0) throw ConfigError("lexicon is empty: no words in any source");
  return lexicon;
}

const LexiconEntry* Lexicon::find_normalized(std::string_view key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

bool Lexicon::contains(std::string_view word) const {
  return find_normalized(normalize(word)) != nullptr;
}

std::uint64_t Lexicon::frequency(std::string_view word) const {
  const auto* entry = find_normalized(normalize(word));
  return entry ? entry->frequency : 0;
}

void Lexicon::set_frequency(std::string_view word, std::uint64_t frequency) {
  const auto it = entries_.find(normalize(word));
  if (it != entries_.end()) it->second.frequency = frequency;
}

std::map<SourceTag, std::size_t> Lexicon::count_by_source() const {
  std::map<SourceTag, std::size_t> counts;
  for (const auto& [word, entry] : entries_) {
    for (std::size_t i = 0; i < kSourceTagCount; ++i) {
      const auto tag = static_cast<SourceTag>(i);
      if (entry.sources.contains(tag)) ++counts[tag];
    }
  }
  return counts;
}

void Lexicon::save(std::ostream& out) const {
  for (const auto& [word, entry] : entries_) {
    out << word << '\t' << entry.frequency << '\t' << entry.sources.to_string() << '\n';
  }
}

Lexicon Lexicon::load(const std::filesystem::path& path) {
  const WordList list = read_word_list(path, SourceTag::General);
  const WordList lists[] = {list};
  return build(lists);
}

Lexicon augment_from_corpus(Lexicon lexicon, const CorpusStats& stats, std::uint64_t min_freq) {
  if (min_freq == 0) throw ConfigError("augment_from_corpus: min_freq must be at least 1");
  // Deterministic insertion order regardless of hash-map iteration.
  std::vector<std::pair<std::string_view, std::uint64_t>> words(stats.unigrams().begin(),
                                                                stats.unigrams().end());
  std::sort(words.begin(), words.end());
  for (const auto& [word, count] : words) {
    if (count == 0) continue;
    const std::string key = normalize(word);
    if (lexicon.find_normalized(key) != nullptr) {
      lexicon.set_frequency(key, count);
      continue;
    }
    if (count >= min_freq && is_word_shaped(key) && utf8::length(key) >= kMinCorpusWordLength) {
      lexicon.insert(key, SourceTag::CorpusFrequent, count);
    }
  }
  return lexicon;
}

}  // namespace clinspell
