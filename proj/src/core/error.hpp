#ifndef SAMPLUS_CORE_ERROR_HPP
#define SAMPLUS_CORE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace samplus {

// Byte range in an input text, half-open; line/column locate `begin` (1-based).
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

enum class ErrorKind {
  io,
  syntax,
  semantic,
  vocabulary,
  config,
  empty_input,
  script_violation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(ErrorKind kind, SourceSpan span, const std::string& message,
             std::vector<std::string> expected = {})
      : Error(kind, format(span, message)),
        span_(span),
        message_(message),
        expected_(std::move(expected)) {}

  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const SourceSpan& span, const std::string& message) {
    return std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
  }

  SourceSpan span_;
  std::string message_;
  std::vector<std::string> expected_;
};

}  // namespace samplus

#endif
