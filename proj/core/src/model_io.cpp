#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "clinspell/embedding.hpp"
#include "clinspell/error.hpp"

namespace clinspell {

namespace {

void write_float(std::ostream& out, float value) {
  char buffer[32];
  const int n = std::snprintf(buffer, sizeof buffer, "%.6g", static_cast<double>(value));
  out.write(buffer, n);
}

void write_row(std::ostream& out, std::span<const float> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out.put(' ');
    write_float(out, values[i]);
  }
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
T parse_number(std::string_view field, const std::string& source, std::size_t line,
               const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw FormatError(source, line, std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

float parse_component(std::string_view field, const std::string& source, std::size_t line) {
  const double value = parse_number<double>(field, source, line, "vector component");
  if (!std::isfinite(value) || !std::isfinite(static_cast<float>(value))) {
    throw FormatError(source, line, "non-finite vector component '" + std::string(field) + "'");
  }
  return static_cast<float>(value);
}

}  // namespace

void save_vectors(const EmbeddingModel& model, std::ostream& out) {
  out << model.vocab_size() << ' ' << model.dim() << '\n';
  for (std::size_t i = 0; i < model.vocab_size(); ++i) {
    out << model.words()[i] << ' ';
    write_row(out, model.row(i));
    out << '\n';
  }
}

void save_subwords(const EmbeddingModel& model, std::ostream& out) {
  if (!model.subwords()) throw ConfigError("model has no subword table");
  const auto& table = *model.subwords();
  out << table.spec.ngram_min << ' ' << table.spec.ngram_max << ' ' << table.spec.bucket_count
      << ' ' << model.dim() << '\n';
  const std::span<const float> all(table.vectors);
  for (std::size_t b = 0; b < table.spec.bucket_count; ++b) {
    write_row(out, all.subspan(b * model.dim(), model.dim()));
    out << '\n';
  }
}

EmbeddingModel load_vectors(std::istream& vectors, const std::string& source_name,
                            std::istream* subwords, ModelKind kind) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(vectors, line)) throw FormatError(source_name, 1, "missing header");
  const auto header = split_spaces(line);
  if (header.size() != 2) throw FormatError(source_name, 1, "header must be '<vocab_size> <dim>'");
  const auto vocab_size = parse_number<std::size_t>(header[0], source_name, 1, "vocab size");
  const auto dim = parse_number<std::size_t>(header[1], source_name, 1, "dimension");
  if (dim == 0) throw FormatError(source_name, 1, "dimension must be positive");

  std::vector<std::string> words;
  std::vector<float> values;
  words.reserve(vocab_size);
  values.reserve(vocab_size * dim);
  while (std::getline(vectors, line)) {
    ++line_no;
    const auto fields = split_spaces(line);
    if (fields.empty()) continue;
    if (words.size() == vocab_size) throw FormatError(source_name, line_no, "more rows than the header declares");
    if (fields.size() != dim + 1) {
      throw FormatError(source_name, line_no,
                        "expected " + std::to_string(dim) + " values, got " +
                            std::to_string(fields.size() - 1));
    }
    words.emplace_back(fields[0]);
    for (std::size_t d = 1; d <= dim; ++d) values.push_back(parse_component(fields[d], source_name, line_no));
  }
  if (words.size() != vocab_size) {
    // Report the line where the first missing row should have been.
    throw FormatError(source_name, line_no + 1,
                      "header declares " + std::to_string(vocab_size) + " rows, found " +
                          std::to_string(words.size()));
  }

  std::optional<SubwordTable> table;
  if (subwords != nullptr) {
    if (!uses_subwords(kind)) throw ConfigError("a subword table requires a FastText model kind");
    const std::string sub_name = source_name + " (subword)";
    std::size_t sub_line = 1;
    if (!std::getline(*subwords, line)) throw FormatError(sub_name, 1, "missing header");
    const auto h = split_spaces(line);
    if (h.size() != 4) {
      throw FormatError(sub_name, 1, "header must be '<ngram_min> <ngram_max> <bucket_count> <dim>'");
    }
    SubwordTable t;
    t.spec.ngram_min = parse_number<int>(h[0], sub_name, 1, "ngram_min");
    t.spec.ngram_max = parse_number<int>(h[1], sub_name, 1, "ngram_max");
    t.spec.bucket_count = parse_number<std::uint32_t>(h[2], sub_name, 1, "bucket_count");
    const auto sub_dim = parse_number<std::size_t>(h[3], sub_name, 1, "dimension");
    if (sub_dim != dim) {
      throw FormatError(sub_name, 1,
                        "dimension mismatch: vectors " + std::to_string(dim) + ", subwords " +
                            std::to_string(sub_dim));
    }
    if (t.spec.ngram_min < 1 || t.spec.ngram_min > t.spec.ngram_max || t.spec.bucket_count == 0) {
      throw FormatError(sub_name, 1, "invalid n-gram range or bucket count");
    }
    t.vectors.reserve(static_cast<std::size_t>(t.spec.bucket_count) * dim);
    std::size_t rows = 0;
    while (std::getline(*subwords, line)) {
      ++sub_line;
      const auto fields = split_spaces(line);
      if (fields.empty()) continue;
      if (rows == t.spec.bucket_count) throw FormatError(sub_name, sub_line, "more rows than bucket_count");
      if (fields.size() != dim) {
        throw FormatError(sub_name, sub_line,
                          "expected " + std::to_string(dim) + " values, got " +
                              std::to_string(fields.size()));
      }
      for (const auto field : fields) t.vectors.push_back(parse_component(field, sub_name, sub_line));
      ++rows;
    }
    if (rows != t.spec.bucket_count) {
      throw FormatError(sub_name, sub_line + 1,
                        "expected " + std::to_string(t.spec.bucket_count) + " bucket rows, found " +
                            std::to_string(rows));
    }
    table = std::move(t);
  } else if (uses_subwords(kind)) {
    throw ConfigError(std::string(to_string(kind)) + " model requires a subword table");
  }

  try {
    return EmbeddingModel(kind, dim, std::move(words), std::move(values), std::move(table));
  } catch (const ConfigError& e) {
    throw FormatError(source_name, line_no, e.what());
  }
}

ModelPaths ModelPaths::from_prefix(const std::filesystem::path& prefix) {
  std::string base = prefix.string();
  if (base.size() > 4 && base.ends_with(".vec")) base.resize(base.size() - 4);
  return {base + ".vec", base + ".subword", base + ".meta"};
}

void save_model(const EmbeddingModel& model, const ModelPaths& paths,
                const std::vector<std::pair<std::string, std::string>>& meta) {
  {
    std::ofstream out(paths.vectors, std::ios::binary);
    if (!out) throw InputError("cannot write '" + paths.vectors.string() + "'");
    save_vectors(model, out);
  }
  if (model.subwords()) {
    std::ofstream out(paths.subwords, std::ios::binary);
    if (!out) throw InputError("cannot write '" + paths.subwords.string() + "'");
    save_subwords(model, out);
  }
  std::ofstream out(paths.meta, std::ios::binary);
  if (!out) throw InputError("cannot write '" + paths.meta.string() + "'");
  out << "kind=" << to_string(model.kind()) << '\n';
  for (const auto& [key, value] : meta) out << key << '=' << value << '\n';
}

EmbeddingModel load_model(const ModelPaths& paths) {
  std::ifstream vectors(paths.vectors, std::ios::binary);
  if (!vectors) throw InputError("cannot read vectors '" + paths.vectors.string() + "'");

  std::optional<ModelKind> kind;
  if (std::ifstream meta(paths.meta); meta) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(meta, line)) {
      ++line_no;
      if (line.rfind("kind=", 0) == 0) {
        kind = parse_model_kind(std::string_view(line).substr(5));
        if (!kind) throw FormatError(paths.meta.string(), line_no, "unknown model kind");
      }
    }
  }
  const bool has_subwords = std::filesystem::exists(paths.subwords);
  if (!kind) kind = has_subwords ? ModelKind::FastTextSkipgram : ModelKind::Word2Vec;

  if (!uses_subwords(*kind)) return load_vectors(vectors, paths.vectors.string(), nullptr, *kind);
  std::ifstream subwords(paths.subwords, std::ios::binary);
  if (!subwords) throw InputError("cannot read subword table '" + paths.subwords.string() + "'");
  return load_vectors(vectors, paths.vectors.string(), &subwords, *kind);
}

}  // namespace clinspell
