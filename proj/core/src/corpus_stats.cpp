#include "clinspell/corpus_stats.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>

#include "clinspell/error.hpp"
#include "clinspell/text.hpp"

namespace clinspell {

namespace {

std::uint64_t parse_count(std::string_view text, const std::string& source, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw FormatError(source, line, "bad count '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

CorpusStats::CorpusStats(double smoothing_k) : k_(smoothing_k) {
  if (!(smoothing_k > 0.0)) throw ConfigError("smoothing_k must be positive");
}

CorpusStats::CorpusStats(UnigramMap unigram, const BigramList& bigram, double smoothing_k)
    : unigram_(std::move(unigram)), k_(smoothing_k) {
  if (!(smoothing_k > 0.0)) throw ConfigError("smoothing_k must be positive");
  for (const auto& [word, count] : unigram_) total_ += count;
  for (const auto& [pair, count] : bigram) {
    if (!unigram_.contains(pair.first) || !unigram_.contains(pair.second)) {
      throw ConfigError("bigram (" + pair.first + ", " + pair.second +
                        ") uses a word missing from the unigram table");
    }
    bigram_[pair_key(pair.first, pair.second)] += count;
  }
}

std::string CorpusStats::pair_key(std::string_view first, std::string_view second) {
  std::string key;
  key.reserve(first.size() + second.size() + 1);
  key.append(first);
  key.push_back('\t');
  key.append(second);
  return key;
}

void CorpusStats::add_line(std::string_view line) {
  std::optional<std::string> previous;
  for (auto& token : tokenize(line)) {
    if (token.cls != TokenClass::Word) {
      // Numbers and punctuation break adjacency.
      previous.reset();
      continue;
    }
    ++unigram_[token.normalized];
    ++total_;
    if (previous) ++bigram_[pair_key(*previous, token.normalized)];
    previous = std::move(token.normalized);
  }
}

CorpusStats CorpusStats::from_stream(std::istream& in, double smoothing_k) {
  CorpusStats stats(smoothing_k);
  std::string line;
  while (std::getline(in, line)) stats.add_line(line);
  return stats;
}

CorpusStats CorpusStats::from_file(const std::filesystem::path& path, double smoothing_k) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read corpus '" + path.string() + "'");
  return from_stream(in, smoothing_k);
}

std::uint64_t CorpusStats::count(std::string_view word) const {
  const auto it = unigram_.find(std::string(word));
  return it == unigram_.end() ? 0 : it->second;
}

std::uint64_t CorpusStats::count(std::string_view first, std::string_view second) const {
  const auto it = bigram_.find(pair_key(first, second));
  return it == bigram_.end() ? 0 : it->second;
}

CorpusStats::BigramList CorpusStats::sorted_bigrams() const {
  BigramList out;
  out.reserve(bigram_.size());
  for (const auto& [key, count] : bigram_) {
    const auto tab = key.find('\t');
    out.push_back({{key.substr(0, tab), key.substr(tab + 1)}, count});
  }
  std::sort(out.begin(), out.end());
  return out;
}

double CorpusStats::bigram_probability(std::string_view first, std::string_view second) const {
  const std::string w1 = normalize(first);
  const std::string w2 = normalize(second);
  const double vocab = static_cast<double>(std::max<std::size_t>(vocab_size(), 1));
  const double pair = static_cast<double>(count(w1, w2));
  const double context = static_cast<double>(count(w1));
  return (pair + k_) / (context + k_ * vocab);
}

void CorpusStats::save(std::ostream& out) const {
  std::vector<std::pair<std::string_view, std::uint64_t>> words(unigram_.begin(), unigram_.end());
  std::sort(words.begin(), words.end());
  out << "[unigram]\n";
  for (const auto& [word, count] : words) out << word << '\t' << count << '\n';
  out << "[bigram]\n";
  for (const auto& [pair, count] : sorted_bigrams()) {
    out << pair.first << '\t' << pair.second << '\t' << count << '\n';
  }
}

CorpusStats CorpusStats::load(std::istream& in, const std::string& source_name,
                              double smoothing_k) {
  enum class Section { None, Unigram, Bigram } section = Section::None;
  UnigramMap unigram;
  BigramList bigram;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line == "[unigram]") {
      section = Section::Unigram;
      continue;
    }
    if (line == "[bigram]") {
      section = Section::Bigram;
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    switch (section) {
      case Section::None:
        throw FormatError(source_name, line_no, "record before any section header");
      case Section::Unigram:
        if (fields.size() != 2) throw FormatError(source_name, line_no, "expected word<TAB>count");
        unigram[std::string(fields[0])] += parse_count(fields[1], source_name, line_no);
        break;
      case Section::Bigram:
        if (fields.size() != 3) {
          throw FormatError(source_name, line_no, "expected w1<TAB>w2<TAB>count");
        }
        bigram.push_back({{std::string(fields[0]), std::string(fields[1])},
                          parse_count(fields[2], source_name, line_no)});
        break;
    }
  }
  try {
    return CorpusStats(std::move(unigram), bigram, smoothing_k);
  } catch (const ConfigError& e) {
    throw FormatError(source_name, line_no, e.what());
  }
}

CorpusStats CorpusStats::load(const std::filesystem::path& path, double smoothing_k) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read corpus stats '" + path.string() + "'");
  return load(in, path.string(), smoothing_k);
}

}  // namespace clinspell
