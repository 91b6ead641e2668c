#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

#include "clinspell/corpus_stats.hpp"
#include "clinspell/corrector.hpp"
#include "clinspell/embedding.hpp"
#include "clinspell/error.hpp"
#include "clinspell/eval.hpp"
#include "clinspell/lexicon.hpp"
#include "clinspell/text.hpp"
#include "clinspell/trainer.hpp"

namespace clinspell::cli {

namespace {

// Invalid flag combination detected before any I/O.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct CorrectorFlags {
  std::string lexicon;
  std::string stats;
  double smoothing_k = kDefaultSmoothingK;
  std::vector<std::string> models;
  std::string method = "hybrid";
  std::size_t top_n = 20;
  std::size_t top_m = 5;
  std::size_t max_distance = 0;
  double split_threshold = 1e-4;
  std::size_t min_flag_length = 3;

  void add_to(CLI::App& app) {
    app.add_option("--lexicon", lexicon, "Lexicon file (word[TAB]freq[TAB]tags)")->required();
    app.add_option("--stats", stats, "Corpus statistics file; enables concatenation splitting");
    app.add_option("--smoothing-k", smoothing_k, "Add-k smoothing for split scoring");
    app.add_option("--model", models, "Model prefix (PREFIX.vec/.subword/.meta); repeatable");
    app.add_option("--method", method, "Correction method")
        ->check(CLI::IsMember({"none", "lev", "dl", "w2v", "ft", "hybrid", "mean"}));
    app.add_option("--top-n", top_n, "Embedding neighbors retrieved");
    app.add_option("--top-m", top_m, "Shortlist kept after DL reranking");
    app.add_option("--max-distance", max_distance,
                   "Edit-distance cap; 0 = 2 for words up to 8 characters, else 3");
    app.add_option("--split-threshold", split_threshold, "Minimum split score");
    app.add_option("--min-flag-length", min_flag_length, "Shortest word that can be flagged");
  }

  // Flag-only checks; no files are touched.
  void check() const {
    if (method == "mean" && models.size() < 2) {
      throw UsageError("--method mean requires at least two --model flags");
    }
    if ((method == "w2v" || method == "ft" || method == "hybrid") && models.empty()) {
      throw UsageError("--method " + method + " requires --model");
    }
    config().validate();
  }

  CorrectorConfig config() const {
    CorrectorConfig c;
    c.top_n = top_n;
    c.top_m = top_m;
    if (max_distance > 0) c.max_distance = max_distance;
    c.split_probability_threshold = split_threshold;
    c.min_flag_length = min_flag_length;
    return c;
  }
};

// Loaded resources kept alive for a Corrector.
struct Loaded {
  Lexicon lexicon;
  std::optional<CorpusStats> stats;
  std::vector<std::unique_ptr<EmbeddingModel>> models;

  Resources resources() const {
    Resources r;
    r.lexicon = &lexicon;
    r.stats = stats ? &*stats : nullptr;
    for (const auto& m : models) r.models.push_back(m.get());
    return r;
  }
};

Loaded load_resources(const CorrectorFlags& flags) {
  Loaded loaded{Lexicon::load(flags.lexicon), std::nullopt, {}};
  if (!flags.stats.empty()) loaded.stats = CorpusStats::load(std::filesystem::path(flags.stats), flags.smoothing_k);
  for (const auto& prefix : flags.models) {
    loaded.models.push_back(std::make_unique<EmbeddingModel>(load_model(ModelPaths::from_prefix(prefix))));
  }
  if (flags.method == "w2v" && loaded.models.front()->kind() != ModelKind::Word2Vec) {
    throw ConfigError("--method w2v requires a W2V model, got " +
                      std::string(to_string(loaded.models.front()->kind())));
  }
  if (flags.method == "ft" && !uses_subwords(loaded.models.front()->kind())) {
    throw ConfigError("--method ft requires a FastText model");
  }
  return loaded;
}

Corrector make_corrector(const CorrectorFlags& flags, const Loaded& loaded) {
  return Corrector(loaded.resources(), flags.config(), *parse_method(flags.method));
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  return out;
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// ---- build-lexicon -------------------------------------------------------

struct BuildLexiconFlags {
  std::vector<std::string> words;
  std::string corpus;
  std::uint64_t min_freq = kDefaultMinCorpusFrequency;
  std::string out;
  std::string stats_out;
};

int build_lexicon(const BuildLexiconFlags& flags, std::ostream& out) {
  if (!flags.stats_out.empty() && flags.corpus.empty()) {
    throw UsageError("--stats-out requires --corpus");
  }
  if (flags.min_freq == 0) throw UsageError("--min-freq must be at least 1");
  std::vector<std::pair<std::string, SourceTag>> specs;
  for (const auto& spec : flags.words) {
    const auto colon = spec.rfind(':');
    std::optional<SourceTag> tag = SourceTag::General;
    std::string path = spec;
    if (colon != std::string::npos) {
      tag = parse_source_tag(spec.substr(colon + 1));
      path = spec.substr(0, colon);
    }
    if (!tag) throw UsageError("unknown source tag in '" + spec + "'");
    specs.emplace_back(path, *tag);
  }

  std::vector<WordList> lists;
  for (const auto& [path, tag] : specs) lists.push_back(read_word_list(path, tag));
  Lexicon lexicon = Lexicon::build(lists);
  if (!flags.corpus.empty()) {
    const CorpusStats stats = CorpusStats::from_file(flags.corpus);
    lexicon = augment_from_corpus(std::move(lexicon), stats, flags.min_freq);
    if (!flags.stats_out.empty()) {
      auto stats_file = open_output(flags.stats_out);
      stats.save(stats_file);
    }
  }
  auto file = open_output(flags.out);
  lexicon.save(file);
  for (const auto& [tag, count] : lexicon.count_by_source()) out << to_string(tag) << '\t' << count << '\n';
  out << "total\t" << lexicon.size() << '\n';
  return kExitOk;
}

// ---- build-stats ---------------------------------------------------------

int build_stats(const std::string& corpus, const std::string& path, std::ostream& out) {
  const CorpusStats stats = CorpusStats::from_file(corpus);
  auto file = open_output(path);
  stats.save(file);
  out << "tokens\t" << stats.total_unigrams() << "\nvocabulary\t" << stats.vocab_size() << '\n';
  return kExitOk;
}

// ---- train ---------------------------------------------------------------

struct TrainFlags {
  std::string corpus;
  std::string out;
  std::string mode = "sg";
  std::string subword = "off";
  TrainConfig config;
  bool quiet = false;
};

int train_model(TrainFlags flags, std::ostream& out, std::ostream& err) {
  flags.config.mode = flags.mode == "cbow" ? Architecture::Cbow : Architecture::Skipgram;
  flags.config.subword = flags.subword == "on";
  flags.config.validate();

  std::ifstream in(flags.corpus);
  if (!in) throw InputError("cannot read corpus '" + flags.corpus + "'");
  const Corpus corpus = read_corpus(in);

  ProgressCallback progress;
  if (!flags.quiet) {
    progress = [&err](const EpochStats& e) {
      char line[128];
      std::snprintf(line, sizeof line, "epoch %zu  loss %.6f  words/s %.0f\n", e.epoch,
                    e.mean_loss, e.words_per_second);
      err << line;
    };
  }
  const auto result = train(corpus, flags.config, progress);
  const auto& c = flags.config;
  std::vector<std::pair<std::string, std::string>> meta = {
      {"mode", std::string(to_string(c.mode))},
      {"subword", c.subword ? "on" : "off"},
      {"dim", std::to_string(c.dim)},
      {"window", std::to_string(c.window)},
      {"negatives", std::to_string(c.negatives)},
      {"epochs", std::to_string(c.epochs)},
      {"min_count", std::to_string(c.min_count)},
      {"seed", std::to_string(c.seed)},
  };
  if (c.subword) {
    meta.emplace_back("minn", std::to_string(c.subword_spec.ngram_min));
    meta.emplace_back("maxn", std::to_string(c.subword_spec.ngram_max));
    meta.emplace_back("buckets", std::to_string(c.subword_spec.bucket_count));
  }
  const ModelPaths paths = ModelPaths::from_prefix(flags.out);
  save_model(result.model, paths, meta);
  out << "model\t" << to_string(result.model.kind()) << "\nvocabulary\t" << result.model.vocab_size()
      << "\nvectors\t" << paths.vectors.string() << '\n';
  return kExitOk;
}

// ---- correct -------------------------------------------------------------

int correct(const CorrectorFlags& flags, const std::string& input, const std::string& output,
            const std::string& report, std::istream& in, std::ostream& out) {
  flags.check();
  const Loaded loaded = load_resources(flags);
  const Corrector corrector = make_corrector(flags, loaded);

  std::string text;
  if (input == "-") {
    text = read_all(in);
  } else {
    std::ifstream file(input, std::ios::binary);
    if (!file) throw InputError("cannot read input '" + input + "'");
    text = read_all(file);
  }
  const auto result = corrector.correct_text(text);
  if (output == "-") {
    out << result.text;
  } else {
    auto file = open_output(output);
    file << result.text;
  }
  if (!report.empty()) {
    auto file = open_output(report);
    write_correction_report(file, result.corrections);
  }
  return kExitOk;
}

// ---- neighbors -----------------------------------------------------------

int neighbors(const std::string& model_prefix, const std::string& word, std::size_t n,
              std::ostream& out) {
  if (n == 0) throw UsageError("--n must be at least 1");
  const EmbeddingModel model = load_model(ModelPaths::from_prefix(model_prefix));
  for (const auto& neighbor : model.top_n_similar(normalize(word), n)) {
    char sim[32];
    std::snprintf(sim, sizeof sim, "%.6f", neighbor.similarity);
    out << neighbor.word << '\t' << sim << '\n';
  }
  return kExitOk;
}

// ---- evaluate ------------------------------------------------------------

int evaluate_cmd(const CorrectorFlags& flags, const std::string& testset,
                 const std::string& report_path, std::ostream& out) {
  flags.check();
  const Loaded loaded = load_resources(flags);
  const Corrector corrector = make_corrector(flags, loaded);
  const auto examples = read_testset(testset);
  const EvalReport report = evaluate(corrector, examples);
  print_table(out, std::span<const EvalReport>(&report, 1));
  out << metrics_line(report) << '\n';
  if (!report_path.empty()) {
    auto file = open_output(report_path);
    write_eval_report(file, report);
  }
  return kExitOk;
}

// ---- make-testset --------------------------------------------------------

struct MakeTestsetFlags {
  std::string lexicon;
  std::string corpus;
  std::uint64_t seed = 1;
  std::size_t size = 200;
  std::size_t max_truncation = 4;
  std::string out;
};

int make_testset(const MakeTestsetFlags& flags, std::ostream& out) {
  if (flags.size == 0) throw UsageError("--size must be at least 1");
  if (flags.max_truncation < 2) throw UsageError("--max-truncation must be at least 2");
  const Lexicon lexicon = Lexicon::load(flags.lexicon);
  const CorpusStats stats = CorpusStats::from_file(flags.corpus);
  CorruptionConfig config;
  config.correct_count = flags.size;
  config.error_count = flags.size;
  config.max_truncation = flags.max_truncation;
  const auto examples = generate_synthetic_testset(lexicon, stats, config, flags.seed);
  auto file = open_output(flags.out);
  write_testset(file, examples);
  out << "examples\t" << examples.size() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"clinspell: spelling correction for domain-specific text", "clinspell"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::function<int()> action;

  BuildLexiconFlags lex;
  auto* lex_cmd = app.add_subcommand("build-lexicon", "Merge word lists (and frequent corpus words) into a lexicon");
  lex_cmd->add_option("--words", lex.words, "Word list as PATH[:TAG]; TAG in general|medical|drug|abbreviation")
      ->required();
  lex_cmd->add_option("--corpus", lex.corpus, "Corpus for frequencies and high-frequency words");
  lex_cmd->add_option("--min-freq", lex.min_freq, "Corpus count needed to add a non-dictionary word");
  lex_cmd->add_option("--out", lex.out, "Output lexicon file")->required();
  lex_cmd->add_option("--stats-out", lex.stats_out, "Also write corpus statistics here");
  lex_cmd->callback([&] { action = [&] { return build_lexicon(lex, out); }; });

  std::string stats_corpus;
  std::string stats_out;
  auto* stats_cmd = app.add_subcommand("build-stats", "Count unigrams and bigrams of a corpus");
  stats_cmd->add_option("--corpus", stats_corpus, "Corpus, one document per line")->required();
  stats_cmd->add_option("--out", stats_out, "Output statistics file")->required();
  stats_cmd->callback([&] { action = [&] { return build_stats(stats_corpus, stats_out, out); }; });

  TrainFlags tr;
  auto* train_cmd = app.add_subcommand("train", "Train Word2Vec or FastText-style embeddings");
  train_cmd->add_option("--corpus", tr.corpus, "Corpus, one document per line")->required();
  train_cmd->add_option("--out", tr.out, "Output prefix (PREFIX.vec, PREFIX.subword, PREFIX.meta)")->required();
  train_cmd->add_option("--mode", tr.mode, "Architecture")->check(CLI::IsMember({"cbow", "sg"}));
  train_cmd->add_option("--subword", tr.subword, "Character n-gram subwords")->check(CLI::IsMember({"on", "off"}));
  train_cmd->add_option("--dim", tr.config.dim, "Vector dimension");
  train_cmd->add_option("--window", tr.config.window, "Maximum context window");
  train_cmd->add_option("--negatives", tr.config.negatives, "Negative samples per target");
  train_cmd->add_option("--epochs", tr.config.epochs, "Training epochs");
  train_cmd->add_option("--lr", tr.config.initial_lr, "Initial learning rate (linear decay to 1e-4)");
  train_cmd->add_option("--min-count", tr.config.min_count, "Minimum word count");
  train_cmd->add_option("--minn", tr.config.subword_spec.ngram_min, "Shortest character n-gram");
  train_cmd->add_option("--maxn", tr.config.subword_spec.ngram_max, "Longest character n-gram");
  train_cmd->add_option("--buckets", tr.config.subword_spec.bucket_count, "Subword hash buckets");
  train_cmd->add_option("--seed", tr.config.seed, "Random seed");
  train_cmd->add_flag("--quiet", tr.quiet, "Suppress per-epoch progress on stderr");
  train_cmd->callback([&] { action = [&] { return train_model(tr, out, err); }; });

  CorrectorFlags cor;
  std::string cor_in = "-";
  std::string cor_out = "-";
  std::string cor_report;
  auto* correct_cmd = app.add_subcommand("correct", "Correct text and report every flagged word");
  cor.add_to(*correct_cmd);
  correct_cmd->add_option("--in", cor_in, "Input text file, or - for standard input");
  correct_cmd->add_option("--out", cor_out, "Corrected text file, or - for standard output");
  correct_cmd->add_option("--report", cor_report, "Correction report file (one record per flagged word)");
  correct_cmd->callback([&] {
    action = [&] { return correct(cor, cor_in, cor_out, cor_report, in, out); };
  });

  std::string nb_model;
  std::string nb_word;
  std::size_t nb_n = 10;
  auto* nb_cmd = app.add_subcommand("neighbors", "List the most similar words by cosine similarity");
  nb_cmd->add_option("--model", nb_model, "Model prefix")->required();
  nb_cmd->add_option("--word", nb_word, "Query word")->required();
  nb_cmd->add_option("--n", nb_n, "Number of neighbors");
  nb_cmd->callback([&] { action = [&] { return neighbors(nb_model, nb_word, nb_n, out); }; });

  CorrectorFlags ev;
  std::string ev_testset;
  std::string ev_report;
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a method on a labelled test set");
  ev.add_to(*eval_cmd);
  eval_cmd->add_option("--testset", ev_testset, "Test set (observed[TAB]gold[TAB]0|1)")->required();
  eval_cmd->add_option("--report", ev_report, "Detailed report with per-item judgments");
  eval_cmd->callback([&] { action = [&] { return evaluate_cmd(ev, ev_testset, ev_report, out); }; });

  MakeTestsetFlags mk;
  auto* mk_cmd = app.add_subcommand("make-testset", "Generate a seeded synthetic test set");
  mk_cmd->add_option("--lexicon", mk.lexicon, "Lexicon file")->required();
  mk_cmd->add_option("--corpus", mk.corpus, "Corpus supplying adjacent word pairs")->required();
  mk_cmd->add_option("--seed", mk.seed, "Random seed");
  mk_cmd->add_option("--size", mk.size, "Examples per subset (correct and corrupted)");
  mk_cmd->add_option("--max-truncation", mk.max_truncation, "Most trailing characters dropped");
  mk_cmd->add_option("--out", mk.out, "Output test set file")->required();
  mk_cmd->callback([&] { action = [&] { return make_testset(mk, out); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const OutOfVocabularyError& e) {
    err << "clinspell: " << e.what() << '\n';
    return kExitData;
  } catch (const UndefinedSimilarityError& e) {
    err << "clinspell: " << e.what() << '\n';
    return kExitData;
  } catch (const Error& e) {
    err << "clinspell: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "clinspell: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace clinspell::cli
