//
// Project aisens - Copyright 2026 The aisens Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AISENS_ERROR_HPP_
#define AISENS_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aisens {

/// Root of every exception thrown by the library.
class Error: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Errors caused by bad input data rather than by a bug. The CLI maps these
/// to exit code 2.
class DataError: public Error {
public:
  using Error::Error;
};

class SmilesError: public DataError {
public:
  SmilesError(const std::string &what, std::size_t pos)
      : DataError(what + " at position " + std::to_string(pos)), pos_(pos) { }

  std::size_t position() const noexcept { return pos_; }

private:
  std::size_t pos_;
};

class SyntaxError: public SmilesError {
public:
  using SmilesError::SmilesError;
};

class RingClosureError: public SmilesError {
public:
  using SmilesError::SmilesError;
};

class ValenceError: public SmilesError {
public:
  using SmilesError::SmilesError;
};

#define AISENS_DEFINE_ERROR(name, base)                                        \
  class name: public base {                                                    \
  public:                                                                      \
    using base::base;                                                          \
  }

AISENS_DEFINE_ERROR(UnknownElement, DataError);
AISENS_DEFINE_ERROR(MalformedToken, DataError);
AISENS_DEFINE_ERROR(FormatError, DataError);
AISENS_DEFINE_ERROR(IoError, DataError);
AISENS_DEFINE_ERROR(MissingColumn, DataError);
AISENS_DEFINE_ERROR(EmptyCorpus, DataError);
AISENS_DEFINE_ERROR(VocabMismatch, DataError);

AISENS_DEFINE_ERROR(EmptyInput, Error);
AISENS_DEFINE_ERROR(LengthMismatch, Error);
AISENS_DEFINE_ERROR(ZeroVariance, Error);
AISENS_DEFINE_ERROR(EmptyBatch, Error);
AISENS_DEFINE_ERROR(ShapeMismatch, Error);
AISENS_DEFINE_ERROR(StaleCache, Error);
AISENS_DEFINE_ERROR(NonFiniteGradient, Error);
AISENS_DEFINE_ERROR(DivergedError, Error);

#undef AISENS_DEFINE_ERROR

/// Configuration validation failure. Carries every problem found, not just
/// the first one.
class ConfigError: public Error {
public:
  explicit ConfigError(std::vector<std::string> problems)
      : Error(join(problems)), problems_(std::move(problems)) { }

  const std::vector<std::string> &problems() const noexcept {
    return problems_;
  }

private:
  static std::string join(const std::vector<std::string> &problems) {
    std::string out = "invalid configuration:";
    for (const auto &p: problems)
      out += "\n  - " + p;
    return out;
  }

  std::vector<std::string> problems_;
};

}  // namespace aisens

#endif  // AISENS_ERROR_HPP_
