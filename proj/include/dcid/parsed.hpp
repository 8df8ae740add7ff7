#pragma once

#include <optional>
#include <string>
#include <utility>

namespace dcid {

// Total-parse result: either a value or an error naming the offending
// field. Parsers never throw on malformed input.
template <typename T>
struct Parsed {
  std::optional<T> value;
  std::string error;

  bool ok() const { return value.has_value(); }
  static Parsed success(T v) { return {std::move(v), {}}; }
  static Parsed fail(std::string err) { return {std::nullopt, std::move(err)}; }
};

}  // namespace dcid
