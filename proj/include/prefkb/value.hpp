#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace prefkb {

enum class ValueKind : std::uint8_t { Individual, String, Integer };

/// Object position of an assertion: an individual id or a literal.
struct Value {
  ValueKind kind = ValueKind::Individual;
  std::string text;          // individual id or string literal
  std::int64_t number = 0;   // integer literal

  static Value individual(std::string id) { return {ValueKind::Individual, std::move(id), 0}; }
  static Value string(std::string s) { return {ValueKind::String, std::move(s), 0}; }
  static Value integer(std::int64_t n) { return {ValueKind::Integer, {}, n}; }

  bool is_literal() const noexcept { return kind != ValueKind::Individual; }

  /// Individual ids print bare, strings quoted, integers as digits.
  std::string to_string() const;

  auto operator<=>(const Value&) const = default;
  bool operator==(const Value&) const = default;
};

struct Triple {
  std::string subject;
  std::string relation;
  Value object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

}  // namespace prefkb

template <>
struct std::hash<prefkb::Value> {
  std::size_t operator()(const prefkb::Value& v) const noexcept {
    std::size_t h = std::hash<std::string>{}(v.text);
    h ^= std::hash<std::int64_t>{}(v.number) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(v.kind);
  }
};
