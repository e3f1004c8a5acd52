#pragma once

#include <exception>
#include <string>
#include <utility>

namespace modalnav {

// Base of every error raised by the library. A pipeline stage name can be
// attached after the fact so callers see where a failure originated.
class Error : public std::exception {
 public:
  explicit Error(std::string message) : message_(std::move(message)) { rebuild(); }

  const char* what() const noexcept override { return full_.c_str(); }
  const std::string& message() const noexcept { return message_; }
  const std::string& stage() const noexcept { return stage_; }

  void set_stage(std::string stage) {
    stage_ = std::move(stage);
    rebuild();
  }

 private:
  void rebuild() { full_ = stage_.empty() ? message_ : "[" + stage_ + "] " + message_; }

  std::string message_;
  std::string stage_;
  std::string full_;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

class UnobservedCellError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NoPathError : public Error {
 public:
  using Error::Error;
};

}  // namespace modalnav
