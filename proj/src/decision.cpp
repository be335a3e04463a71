#include "prefkb/decision.hpp"

#include <algorithm>
#include <set>

#include "prefkb/error.hpp"
#include "prefkb/inference.hpp"
#include "prefkb/situation.hpp"

namespace prefkb {

namespace {

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

}  // namespace

std::optional<std::string> match_option(const KnowledgeBase& kb, const std::string& option,
                                        const std::string& preference) {
  const auto& pattern = kb.description(option);
  const auto pref = kb.preference(preference);
  if (pref.order.empty()) return std::nullopt;
  const auto& order = kb.order(pref.order);

  std::vector<std::string> candidates;
  for (const auto& element : order.elements()) {
    const auto& description = order.encapsulated(element);
    if (description == option) return element;
    if (description.empty() || !kb.has_description(description)) continue;
    if (pattern_subsumes(kb.description(description), pattern, kb.taxonomy())) candidates.push_back(element);
  }
  if (candidates.empty()) return std::nullopt;
  if (candidates.size() == 1) return candidates.front();

  std::vector<std::string> most_specific;
  for (const auto& c : candidates) {
    const auto& cp = kb.description(order.encapsulated(c));
    const bool below_all = std::all_of(candidates.begin(), candidates.end(), [&](const std::string& d) {
      return d == c || pattern_subsumes(kb.description(order.encapsulated(d)), cp, kb.taxonomy());
    });
    if (below_all) most_specific.push_back(c);
  }
  if (most_specific.size() == 1) return most_specific.front();
  throw NoUniqueMatch("option '" + option + "' matches several elements of order '" + order.id() +
                          "' with no most specific one: " + join(candidates),
                      candidates);
}

std::vector<std::string> relevant_preferences(const KnowledgeBase& kb, const std::string& agent,
                                              const std::string& situation) {
  if (!kb.has_individual(agent)) throw UnknownIndividual("unknown agent '" + agent + "'");
  auto sit = kb.find_individual(situation);
  if (!sit || !kb.individual(*sit).declared) throw UnknownIndividual("unknown situation '" + situation + "'");
  SituationMatcher matcher(kb);
  std::vector<std::string> out;
  for (const auto& p : kb.preferences_of(agent)) {
    const auto pref = kb.preference(p);
    if (pref.order.empty()) continue;
    const auto& order = kb.order(pref.order);
    for (const auto& element : order.elements()) {
      auto d = kb.find_individual(order.encapsulated(element));
      const auto* record = d ? kb.description_record(*d) : nullptr;
      if (record && matcher.satisfies(*sit, *record)) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

DecisionResult decide(const KnowledgeBase& kb, const DecisionProblem& problem, const DecideOptions& opts) {
  if (!kb.has_individual(problem.performer)) throw UnknownIndividual("unknown performer '" + problem.performer + "'");
  if (!kb.instance_of(problem.performer, concepts::kAgent)) {
    throw TypeMismatch("performer '" + problem.performer + "' is not an Agent");
  }
  if (problem.options.empty()) throw InvalidArgument("decision problem has no options");
  std::set<std::string> option_set(problem.options.begin(), problem.options.end());
  if (option_set.size() != problem.options.size()) throw InvalidArgument("decision options contain duplicates");
  for (const auto& o : option_set) kb.description(o);

  const auto preferences = problem.context ? relevant_preferences(kb, problem.performer, *problem.context)
                                           : kb.preferences_of(problem.performer);

  DecisionResult result;
  std::set<std::string> matched_options, unfulfillable;
  std::vector<std::vector<std::string>> choice_sets;
  for (const auto& p : preferences) {
    const auto pref = kb.preference(p);
    if (pref.order.empty()) continue;
    const auto& order = kb.order(pref.order);

    std::vector<std::pair<std::string, std::string>> hits;  // option, element
    for (const auto& option : option_set) {
      if (auto element = match_option(kb, option, p)) hits.emplace_back(option, *element);
    }
    if (hits.empty()) continue;

    std::set<std::string> realizable;
    if (opts.inventory) {
      auto kept = filter_fulfillable(kb, p, *opts.inventory, opts.substitution_depth);
      realizable.insert(kept.begin(), kept.end());
    }
    std::vector<std::string> elements;
    for (const auto& [option, element] : hits) {
      result.matched.push_back({option, p, order.id(), element});
      matched_options.insert(option);
      if (opts.inventory && !realizable.count(element)) {
        unfulfillable.insert(option);
        continue;
      }
      elements.push_back(element);
    }
    result.preferences.push_back(p);
    result.orders.push_back(order.id());

    const auto maximal = order.maximal_elements(elements);
    std::vector<std::string> chosen;
    for (const auto& [option, element] : hits) {
      if (std::binary_search(maximal.begin(), maximal.end(), element) &&
          !(opts.inventory && !realizable.count(element))) {
        chosen.push_back(option);
      }
    }
    std::sort(chosen.begin(), chosen.end());
    result.per_preference.emplace(p, chosen);
    if (!chosen.empty()) choice_sets.push_back(std::move(chosen));
  }

  if (result.preferences.empty()) {
    throw NoApplicablePreference("no preference of '" + problem.performer + "'" +
                                 (problem.context ? " relevant to '" + *problem.context + "'" : std::string()) +
                                 " matches any of the options");
  }

  if (!choice_sets.empty()) {
    std::vector<std::string> common = choice_sets.front();
    for (std::size_t i = 1; i < choice_sets.size(); ++i) {
      std::vector<std::string> next;
      std::set_intersection(common.begin(), common.end(), choice_sets[i].begin(), choice_sets[i].end(),
                            std::back_inserter(next));
      common = std::move(next);
    }
    if (common.empty()) {
      std::vector<std::string> conflicting;
      std::string detail;
      for (const auto& [p, chosen] : result.per_preference) {
        if (chosen.empty()) continue;
        conflicting.push_back(p);
        detail += (detail.empty() ? "" : "; ") + p + " -> {" + join(chosen) + "}";
      }
      throw AmbiguousPreference("preferences disagree on the choice: " + detail, conflicting);
    }
    result.choices = std::move(common);
  }

  for (const auto& o : option_set) {
    if (!matched_options.count(o)) result.unmatched.push_back(o);
  }
  result.unfulfillable.assign(unfulfillable.begin(), unfulfillable.end());
  std::sort(result.matched.begin(), result.matched.end());
  std::sort(result.orders.begin(), result.orders.end());
  result.orders.erase(std::unique(result.orders.begin(), result.orders.end()), result.orders.end());
  return result;
}

}  // namespace prefkb
