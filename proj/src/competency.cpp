#include "prefkb/competency.hpp"

#include <set>

#include "prefkb/error.hpp"
#include "prefkb/situation.hpp"

namespace prefkb {

namespace {

constexpr std::string_view kQueryA = R"(SELECT ?user ?sit ?pref WHERE {
    ?user a Agent;
          hasPreference ?pref.
    ?sit a Situation;
         satisfies ?desc.
    ?pref a Preference.
    ?desc a Description.
    ?elem a OrderedElement;
          encapsulates ?desc.
    ?ord a PreferenceOrder;
         orders ?elem.
         describes ?pref. }
)";

constexpr std::string_view kQueryB = R"(SELECT ?user ?sit ?pref WHERE {
    ?user a Agent;
          hasPreference ?pref.
    ?sit a Situation;
         satisfies ?desc.
    ?pref a Preference.
    ?desc a Description.
    ?el a OrderedElement;
        encapsulates ?desc.
        NOT IN (SELECT ?e WHERE
                ?e a OrderedElement.
                ?f a OrderedElement;
                   greater ?e.)
    ?ord a PreferenceOrder;
         orders ?el.
         describes ?pref. }
)";

struct Chain {
  IndividualIndex preference;
  IndividualIndex element;
  IndividualIndex description;
};

// Every (preference, element, description) reachable from the user through
// hasPreference / describes / orders / encapsulates whose description the
// situation satisfies, with the typing the queries demand.
std::vector<Chain> relevant_chains(const KnowledgeBase& kb, const std::string& user, const std::string& situation) {
  auto u = kb.find_individual(user);
  if (!u || !kb.individual(*u).declared) throw UnknownIndividual("unknown user '" + user + "'");
  auto s = kb.find_individual(situation);
  if (!s || !kb.individual(*s).declared) throw UnknownIndividual("unknown situation '" + situation + "'");

  const auto& tax = kb.taxonomy();
  auto is = [&](IndividualIndex i, std::string_view c) { return kb.instance_of(i, tax.index_of(c)); };
  auto rel = [&](std::string_view name) { return *kb.find_relation(name); };

  std::vector<Chain> out;
  if (!is(*u, concepts::kAgent) || !is(*s, concepts::kSituation)) return out;
  SituationMatcher matcher(kb);
  const auto has_pref = rel(relations::kHasPreference), describes = rel(relations::kDescribes),
             orders = rel(relations::kOrders), encapsulates = rel(relations::kEncapsulates);
  for (auto p : kb.objects_at(has_pref, *u)) {
    if (p.literal || !is(p.index, concepts::kPreference)) continue;
    for (auto ord : kb.subjects_at(describes, p)) {
      if (!is(ord, concepts::kPreferenceOrder)) continue;
      for (auto el : kb.objects_at(orders, ord)) {
        if (el.literal || !is(el.index, concepts::kOrderedElement)) continue;
        for (auto d : kb.objects_at(encapsulates, el.index)) {
          if (d.literal || !is(d.index, concepts::kDescription)) continue;
          const auto* record = kb.description_record(d.index);
          if (record && matcher.satisfies(*s, *record)) out.push_back({p.index, el.index, d.index});
        }
      }
    }
  }
  return out;
}

}  // namespace

std::string_view query_a_text() { return kQueryA; }
std::string_view query_b_text() { return kQueryB; }

std::vector<std::string> cq1(const KnowledgeBase& kb, const std::string& user, const std::string& situation) {
  std::set<std::string> out;
  for (const auto& c : relevant_chains(kb, user, situation)) out.insert(kb.individual(c.preference).id);
  return {out.begin(), out.end()};
}

std::vector<std::string> cq2(const KnowledgeBase& kb, const std::string& user, const std::string& situation) {
  const auto chains = relevant_chains(kb, user, situation);
  if (chains.empty()) {
    throw NoApplicablePreference("no preference of '" + user + "' is relevant to '" + situation + "'");
  }
  const auto element_concept = kb.taxonomy().index_of(concepts::kOrderedElement);
  std::set<std::string> out;
  for (const auto& c : chains) {
    const auto& element = kb.individual(c.element).id;
    bool dominated = false;
    for (const auto& order_id : kb.orders_of_element(element)) {
      const auto& order = kb.order(order_id);
      for (const auto& other : order.elements()) {
        auto f = kb.find_individual(other);
        if (f && kb.instance_of(*f, element_concept) && order.less(element, other)) {
          dominated = true;
          break;
        }
      }
      if (dominated) break;
    }
    if (!dominated) out.insert(kb.individual(c.description).id);
  }
  return {out.begin(), out.end()};
}

}  // namespace prefkb
