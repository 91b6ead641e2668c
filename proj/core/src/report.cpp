#include <cstdio>
#include <ostream>

#include "clinspell/corrector.hpp"

namespace clinspell {

namespace {

std::string format_similarity(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

}  // namespace

std::string format_correction_record(const Correction& c) {
  std::string line = c.original.surface;
  line += '\t';
  line += std::to_string(c.original.start);
  line += '\t';
  line += std::to_string(c.original.end);
  line += '\t';
  line += c.chosen ? *c.chosen : "UNCORRECTED";
  line += '\t';
  line += c.mistake_type ? std::string(to_string(*c.mistake_type)) : "-";
  line += '\t';
  line += c.method_tag;
  if (c.out_of_vocabulary) line += ":oov";
  line += '\t';
  if (c.candidates.empty()) {
    line += '-';
  }
  for (std::size_t i = 0; i < c.candidates.size(); ++i) {
    const auto& cand = c.candidates[i];
    if (i > 0) line += ',';
    line += cand.word;
    line += ':';
    line += cand.distance ? std::to_string(*cand.distance) : "-";
    line += ':';
    line += cand.similarity ? format_similarity(*cand.similarity) : "-";
  }
  return line;
}

void write_correction_report(std::ostream& out, const std::vector<Correction>& corrections) {
  for (const auto& c : corrections) out << format_correction_record(c) << '\n';
}

}  // namespace clinspell
