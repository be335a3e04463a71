#include "prefkb/inference.hpp"

#include <algorithm>
#include <map>

#include "prefkb/error.hpp"

namespace prefkb {

std::vector<std::string> object_vars(const KnowledgeBase& kb, const DescriptionPattern& pattern) {
  const auto& tax = kb.taxonomy();
  const ConceptIndex excluded[] = {tax.index_of(concepts::kAgent), tax.index_of(concepts::kEvent),
                                   tax.index_of(concepts::kSituation)};
  std::vector<std::string> out;
  for (const auto& v : pattern.vars()) {
    const auto c = tax.index_of(v.concept_name);
    if (std::none_of(std::begin(excluded), std::end(excluded), [&](ConceptIndex x) { return tax.is_subconcept(c, x); })) {
      out.push_back(v.name);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

FulfillabilityReport fulfillable(const KnowledgeBase& kb, const std::string& description, const Inventory& inventory,
                                 int substitution_depth) {
  if (substitution_depth < 0) throw InvalidArgument("substitution depth must be non-negative");
  const auto& pattern = kb.description(description);
  for (const auto& id : inventory.available) {
    if (!kb.has_individual(id)) throw UnknownIndividual("inventory item '" + id + "' is not a declared individual");
  }
  const auto& tax = kb.taxonomy();

  auto first_available = [&](ConceptIndex c) -> std::string {
    // inventory.available is ordered, so the first hit is the smallest id.
    for (const auto& id : inventory.available) {
      if (kb.instance_of(*kb.find_individual(id), c)) return id;
    }
    return {};
  };

  FulfillabilityReport report;
  for (const auto& var : object_vars(kb, pattern)) {
    const auto& required = pattern.concept_of(var);
    if (auto exact = first_available(tax.index_of(required)); !exact.empty()) {
      report.bindings.emplace(var, exact);
      continue;
    }
    bool found = false;
    for (const auto& [ancestor, distance] : tax.ancestors_by_distance(required)) {
      if (distance > substitution_depth) break;
      if (auto sub = first_available(tax.index_of(ancestor)); !sub.empty()) {
        report.bindings.emplace(var, sub);
        report.substitutions.push_back({var, required, sub, ancestor});
        found = true;
        break;
      }
    }
    if (!found) report.missing.push_back(var);
  }
  std::sort(report.substitutions.begin(), report.substitutions.end());
  report.fulfillable = report.missing.empty();
  return report;
}

std::vector<std::string> filter_fulfillable(const KnowledgeBase& kb, const std::string& preference,
                                            const Inventory& inventory, int substitution_depth) {
  const auto pref = kb.preference(preference);
  std::vector<std::string> out;
  if (pref.order.empty()) return out;
  const auto& order = kb.order(pref.order);
  for (const auto& element : order.elements()) {
    const auto& description = order.encapsulated(element);
    if (description.empty() || !kb.has_description(description)) continue;
    if (fulfillable(kb, description, inventory, substitution_depth).fulfillable) out.push_back(element);
  }
  return out;
}

PreferenceOrder derive_cause_preferences(const PreferenceOrder& order, std::span<const CausalLink> links,
                                         const std::string& derived_id) {
  std::map<std::string, std::vector<std::string>> causes_of;
  for (const auto& link : links) {
    auto& causes = causes_of[link.effect];
    if (std::find(causes.begin(), causes.end(), link.cause) == causes.end()) causes.push_back(link.cause);
  }

  PreferenceOrder derived(derived_id.empty() ? order.id() + "~causes" : derived_id, order.mode());
  derived.set_derived_from(order.id());

  // element of the source order -> element of the derived order
  std::vector<std::pair<std::string, std::string>> covered;
  for (const auto& element : order.elements()) {
    const auto& effect = order.encapsulated(element);
    auto it = causes_of.find(effect);
    if (effect.empty() || it == causes_of.end()) continue;
    if (it->second.size() > 1) {
      std::sort(it->second.begin(), it->second.end());
      std::string list;
      for (const auto& c : it->second) list += (list.empty() ? "" : ", ") + c;
      throw AmbiguousCause("effect '" + effect + "' has several causes: " + list);
    }
    const std::string derived_element = derived.id() + "/" + element;
    derived.add_element(derived_element, it->second.front());
    covered.emplace_back(element, derived_element);
  }
  for (const auto& [a, da] : covered) {
    for (const auto& [b, db] : covered) {
      if (a != b && order.leq(a, b)) derived.add_leq(da, db);
    }
  }
  return derived;
}

}  // namespace prefkb
