#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clinspell {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A source could not be opened or read.
class InputError : public Error {
 public:
  using Error::Error;
};

// Parameters or resources that cannot be used together.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents. Carries the 1-based line number.
class FormatError : public Error {
 public:
  FormatError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class OutOfVocabularyError : public Error {
 public:
  explicit OutOfVocabularyError(const std::string& word)
      : Error("out-of-vocabulary word '" + word + "'"), word_(word) {}

  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

// Cosine similarity with a zero-norm argument.
class UndefinedSimilarityError : public Error {
 public:
  using Error::Error;
};

class TrainingInputError : public Error {
 public:
  using Error::Error;
};

class EvaluationInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace clinspell
