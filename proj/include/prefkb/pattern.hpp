#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace prefkb {

struct PatternVar {
  std::string name;
  std::string concept_name;

  bool operator==(const PatternVar&) const = default;
};

struct PatternEdge {
  std::string from;
  std::string relation;
  std::string to;

  auto operator<=>(const PatternEdge&) const = default;
  bool operator==(const PatternEdge&) const = default;
};

/// A typed variable graph describing a class of (hypothetical) situations.
///
/// Construction checks the shape: unique variable names, edge and
/// distinct-pair endpoints among the declared variables, and a connected
/// pattern graph. Vocabulary (concepts, relations) is checked when the
/// pattern is registered with a knowledge base. Immutable once built.
class DescriptionPattern {
 public:
  DescriptionPattern(std::string id, std::vector<PatternVar> vars, std::vector<PatternEdge> edges = {},
                     std::vector<std::pair<std::string, std::string>> distinct = {});

  const std::string& id() const noexcept { return id_; }
  const std::vector<PatternVar>& vars() const noexcept { return vars_; }
  const std::vector<PatternEdge>& edges() const noexcept { return edges_; }
  const std::vector<std::pair<std::string, std::string>>& distinct() const noexcept { return distinct_; }

  std::optional<std::size_t> var_index(const std::string& name) const;
  const std::string& concept_of(const std::string& var) const;

  /// Same pattern under a different id.
  DescriptionPattern renamed(std::string id) const;

  bool operator==(const DescriptionPattern&) const = default;

 private:
  std::string id_;
  std::vector<PatternVar> vars_;
  std::vector<PatternEdge> edges_;
  std::vector<std::pair<std::string, std::string>> distinct_;
};

/// var name -> individual id
using Binding = std::map<std::string, std::string>;

}  // namespace prefkb
