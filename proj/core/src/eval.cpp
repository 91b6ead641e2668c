#include "clinspell/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "clinspell/corrector.hpp"
#include "clinspell/embedding.hpp"
#include "clinspell/error.hpp"
#include "clinspell/text.hpp"

namespace clinspell {

namespace {

// Normalized, with whitespace runs collapsed to single spaces.
std::string canonical(std::string_view text) {
  std::string out;
  for (const auto& token : tokenize(text)) {
    if (!out.empty()) out += ' ';
    out += token.normalized;
  }
  return out;
}

std::string fixed(double value, int decimals) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
  return buffer;
}

}  // namespace

double overall_precision(double lexical, double error) { return (lexical + error) / 2.0; }

EvalReport evaluate(const Corrector& corrector, std::span<const LabeledExample> examples) {
  std::size_t correct_total = 0;
  std::size_t error_total = 0;
  for (const auto& e : examples) (e.is_error ? error_total : correct_total) += 1;
  if (correct_total == 0) throw EvaluationInputError("test set has no correct (is_error=0) examples");
  if (error_total == 0) throw EvaluationInputError("test set has no error (is_error=1) examples");

  EvalReport report;
  report.method_tag = std::string(to_string(corrector.method()));
  report.config = describe(corrector);
  std::size_t lexical_hits = 0;
  std::size_t error_hits = 0;
  for (const auto& example : examples) {
    const auto result = corrector.correct_text(example.observed);
    ItemJudgment item;
    item.example = example;
    item.flagged = !result.corrections.empty();
    const bool changed = std::any_of(result.corrections.begin(), result.corrections.end(),
                                     [](const Correction& c) { return c.chosen.has_value(); });
    if (changed) item.chosen = result.text;
    if (example.is_error) {
      item.correct = item.flagged && item.chosen && canonical(*item.chosen) == canonical(example.gold);
      error_hits += item.correct ? 1 : 0;
    } else {
      item.correct = !item.flagged;
      lexical_hits += item.correct ? 1 : 0;
    }
    report.items.push_back(std::move(item));
  }
  report.lexical_precision = static_cast<double>(lexical_hits) / static_cast<double>(correct_total);
  report.error_precision = static_cast<double>(error_hits) / static_cast<double>(error_total);
  report.overall_precision = overall_precision(report.lexical_precision, report.error_precision);
  return report;
}

std::vector<LabeledExample> parse_testset(std::istream& in, const std::string& source_name) {
  std::vector<LabeledExample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto first = line.find('\t');
    const auto second = first == std::string::npos ? first : line.find('\t', first + 1);
    if (second == std::string::npos || line.find('\t', second + 1) != std::string::npos) {
      throw FormatError(source_name, line_no, "expected observed<TAB>gold<TAB>0|1");
    }
    LabeledExample e;
    e.observed = line.substr(0, first);
    e.gold = line.substr(first + 1, second - first - 1);
    const std::string label = line.substr(second + 1);
    if (label != "0" && label != "1") throw FormatError(source_name, line_no, "label must be 0 or 1");
    e.is_error = label == "1";
    if (e.observed.empty() || e.gold.empty()) throw FormatError(source_name, line_no, "empty field");
    if (!e.is_error && e.observed != e.gold) {
      throw FormatError(source_name, line_no, "a correct example must have observed == gold");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<LabeledExample> read_testset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read test set '" + path.string() + "'");
  return parse_testset(in, path.string());
}

void write_testset(std::ostream& out, std::span<const LabeledExample> examples) {
  for (const auto& e : examples) {
    out << e.observed << '\t' << e.gold << '\t' << (e.is_error ? '1' : '0') << '\n';
  }
}

std::vector<std::pair<std::string, std::string>> describe(const Corrector& corrector) {
  const auto& config = corrector.config();
  std::vector<std::pair<std::string, std::string>> out = {
      {"method", std::string(to_string(corrector.method()))},
      {"top_n", std::to_string(config.top_n)},
      {"top_m", std::to_string(config.top_m)},
      {"max_distance", config.max_distance ? std::to_string(*config.max_distance) : "auto"},
      {"split_probability_threshold", fixed(config.split_probability_threshold, 6)},
      {"min_flag_length", std::to_string(config.min_flag_length)},
      {"max_split_parts", std::to_string(config.max_split_parts)},
      {"splitting", corrector.resources().stats != nullptr ? "on" : "off"},
  };
  std::string models;
  for (const auto* model : corrector.resources().models) {
    if (!models.empty()) models += ',';
    models += to_string(model->kind());
  }
  out.emplace_back("models", models.empty() ? "-" : models);
  return out;
}

void print_table(std::ostream& out, std::span<const EvalReport> reports) {
  char row[160];
  std::snprintf(row, sizeof row, "%-28s %18s %16s %18s\n", "Method", "Lexical Precision",
                "Error Precision", "Overall Precision");
  out << row;
  for (const auto& r : reports) {
    std::snprintf(row, sizeof row, "%-28s %18.4f %16.4f %18.4f\n", r.method_tag.c_str(),
                  r.lexical_precision, r.error_precision, r.overall_precision);
    out << row;
  }
}

std::string metrics_line(const EvalReport& report) {
  std::size_t n_error = 0;
  for (const auto& item : report.items) n_error += item.example.is_error ? 1 : 0;
  return report.method_tag + '\t' + fixed(report.lexical_precision, 6) + '\t' +
         fixed(report.error_precision, 6) + '\t' + fixed(report.overall_precision, 6) + '\t' +
         std::to_string(report.items.size() - n_error) + '\t' + std::to_string(n_error);
}

void write_eval_report(std::ostream& out, const EvalReport& report) {
  out << "# metrics\n" << metrics_line(report) << '\n';
  out << "# config\n";
  for (const auto& [key, value] : report.config) out << key << '=' << value << '\n';
  out << "# items: observed gold is_error flagged chosen correct\n";
  for (const auto& item : report.items) {
    out << item.example.observed << '\t' << item.example.gold << '\t'
        << (item.example.is_error ? 1 : 0) << '\t' << (item.flagged ? 1 : 0) << '\t'
        << (item.chosen ? *item.chosen : "-") << '\t' << (item.correct ? 1 : 0) << '\n';
  }
}

}  // namespace clinspell
