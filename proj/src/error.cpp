#include "corrtwo/error.hpp"

namespace corrtwo {

namespace {
std::string describe(const std::string& message, const TextLocation& where) {
  std::string out = message + " (line " + std::to_string(where.line);
  if (where.field) out += ", column " + std::to_string(*where.field);
  out += ", byte offset " + std::to_string(where.byte_offset) + ")";
  return out;
}
}  // namespace

ParseError::ParseError(const std::string& message, TextLocation where)
    : DataError(describe(message, where)), message_(message), where_(where) {}

}  // namespace corrtwo
