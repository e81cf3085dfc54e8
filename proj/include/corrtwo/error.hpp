#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace corrtwo {

/// Broad failure class; the command-line tool maps each to an exit code.
enum class ErrorKind { Usage, Data, Numeric };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

class DataError : public Error {
public:
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

/// Location inside a delimited text input. Lines and fields are 1-based.
struct TextLocation {
  std::size_t byte_offset = 0;
  std::size_t line = 0;
  std::optional<std::size_t> field;
};

class ParseError : public DataError {
public:
  ParseError(const std::string& message, TextLocation where);
  const TextLocation& where() const noexcept { return where_; }
  const std::string& message() const noexcept { return message_; }

private:
  std::string message_;
  TextLocation where_;
};

}  // namespace corrtwo
