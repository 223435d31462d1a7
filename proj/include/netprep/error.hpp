#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netprep {

/// Base class for every error raised by the toolkit.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text could not be parsed. Carries the 1-based line number.
class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& message)
      : error("line " + std::to_string(line) + ": " + message), line_(line) {}

  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace netprep
