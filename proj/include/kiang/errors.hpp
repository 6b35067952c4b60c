#ifndef KIANG_ERRORS_HPP
#define KIANG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kiang {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorCategory { usage = 2, data = 3, numerical = 4 };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string &what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

private:
  ErrorCategory category_;
};

class UsageError : public Error {
public:
  explicit UsageError(const std::string &what)
      : Error(ErrorCategory::usage, what) {}
};

class DataError : public Error {
public:
  explicit DataError(const std::string &what)
      : Error(ErrorCategory::data, what) {}
};

class NumericalError : public Error {
public:
  explicit NumericalError(const std::string &what)
      : Error(ErrorCategory::numerical, what) {}
};

/// Violated precondition on caller-supplied arguments.
class PreconditionError : public UsageError {
public:
  using UsageError::UsageError;
};

class ResourceLimitError : public UsageError {
public:
  using UsageError::UsageError;
};

class IoError : public DataError {
public:
  IoError(const std::string &path, const std::string &what)
      : DataError(path + ": " + what), path_(path) {}
  const std::string &path() const noexcept { return path_; }

private:
  std::string path_;
};

class MalformedDigitError : public DataError {
public:
  MalformedDigitError(std::size_t offset, char c)
      : DataError("malformed character '" + std::string(1, c) +
                  "' at byte offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

class EmptyStreamError : public DataError {
public:
  using DataError::DataError;
};

class TooFewNucleiError : public DataError {
public:
  using DataError::DataError;
};

class EmptySampleError : public DataError {
public:
  using DataError::DataError;
};

class InsufficientDigitsError : public DataError {
public:
  using DataError::DataError;
};

class TooFewOccurrencesError : public DataError {
public:
  using DataError::DataError;
};

class DomainError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DegenerateHistogramError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NoInteriorMinimumError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NoRootError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class SaturationError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class RankDeficiencyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class DistinctnessExhaustedError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace kiang

#endif // KIANG_ERRORS_HPP
