#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "prefkb/knowledge_base.hpp"
#include "prefkb/preference_order.hpp"

namespace prefkb {

/// Individuals currently at hand.
struct Inventory {
  std::set<std::string> available;
};

struct Substitution {
  std::string var;
  std::string required;  // concept the description asks for
  std::string supplied;  // individual offered instead
  std::string ancestor;  // shared concept that licenses the swap

  auto operator<=>(const Substitution&) const = default;
  bool operator==(const Substitution&) const = default;
};

struct FulfillabilityReport {
  bool fulfillable = false;
  Binding bindings;                         // var -> individual, exact or substituted
  std::vector<Substitution> substitutions;  // sorted by var
  std::vector<std::string> missing;         // vars without a realizer, sorted

  bool operator==(const FulfillabilityReport&) const = default;
};

/// Variables the inventory has to supply: those whose concept is not
/// subsumed by Agent, Event or Situation (performers, the hypothetical
/// happenings and nested situations are not things one hands over).
std::vector<std::string> object_vars(const KnowledgeBase& kb, const DescriptionPattern& pattern);

/// Checks whether `description` can be realized from the inventory. Each
/// object variable takes the smallest available individual whose type is
/// subsumed by the variable's concept; failing that, and when
/// `substitution_depth` > 0, the nearest ancestor of the required concept at
/// most that many parent steps up that covers some available individual
/// licenses a substitution. Throws UnknownDescription, UnknownIndividual
/// (inventory), InvalidArgument (negative depth).
FulfillabilityReport fulfillable(const KnowledgeBase& kb, const std::string& description, const Inventory& inventory,
                                 int substitution_depth = 1);

/// Elements of the preference's order whose descriptions are fulfillable.
std::vector<std::string> filter_fulfillable(const KnowledgeBase& kb, const std::string& preference,
                                            const Inventory& inventory, int substitution_depth = 1);

/// Cause-from-effect rule: for every element of `order` whose description is
/// the effect of exactly one link, the derived order has an element
/// encapsulating that link's cause, and c_i <= c_j exactly when e_i <= e_j in
/// the source closure. Links whose effect the order does not encapsulate are
/// out of scope. Throws AmbiguousCause when an in-scope effect has several
/// causes. The result records the source order as its provenance.
PreferenceOrder derive_cause_preferences(const PreferenceOrder& order, std::span<const CausalLink> links,
                                         const std::string& derived_id = {});

}  // namespace prefkb
