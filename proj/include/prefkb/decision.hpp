#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "prefkb/knowledge_base.hpp"

namespace prefkb {

struct Inventory;

struct DecisionProblem {
  std::string performer;
  std::vector<std::string> options;  // description ids
  std::optional<std::string> context;
};

struct OptionMatch {
  std::string option;
  std::string preference;
  std::string order;
  std::string element;

  auto operator<=>(const OptionMatch&) const = default;
  bool operator==(const OptionMatch&) const = default;
};

struct DecisionResult {
  std::vector<std::string> choices;    // sorted, subset of options
  std::vector<OptionMatch> matched;    // sorted by (option, preference)
  std::vector<std::string> unmatched;  // options no consulted preference covers
  /// Options whose matched elements were dropped as unrealizable.
  std::vector<std::string> unfulfillable;
  std::vector<std::string> orders;     // orders consulted
  std::vector<std::string> preferences;
  /// Choice set contributed by each consulted preference that matched anything.
  std::map<std::string, std::vector<std::string>> per_preference;

  bool operator==(const DecisionResult&) const = default;
};

struct DecideOptions {
  /// When set, elements whose description cannot be realized from the
  /// inventory are excluded before maximal elements are computed.
  const Inventory* inventory = nullptr;
  int substitution_depth = 1;
};

/// The element of the preference's order whose description subsumes
/// `option`. An element encapsulating the option itself wins outright;
/// otherwise the most specific subsuming element does. Empty when nothing
/// subsumes the option. Throws NoUniqueMatch when several incomparable (or
/// equivalent) candidates remain, UnknownDescription, UnknownPreference.
std::optional<std::string> match_option(const KnowledgeBase& kb, const std::string& option,
                                        const std::string& preference);

/// Preferences of `agent` whose order holds at least one element whose
/// description `situation` satisfies. Sorted.
std::vector<std::string> relevant_preferences(const KnowledgeBase& kb, const std::string& agent,
                                              const std::string& situation);

/// Selects choices among the options: per consulted preference, options are
/// mapped to elements and the options of the maximal matched elements are
/// that preference's choices. Several preferences must agree: the result is
/// the intersection of their choice sets. Throws NoApplicablePreference when
/// no preference matches any option, AmbiguousPreference when the choice sets
/// do not intersect.
DecisionResult decide(const KnowledgeBase& kb, const DecisionProblem& problem, const DecideOptions& opts = {});

}  // namespace prefkb
