#include "prefkb/situation.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "prefkb/error.hpp"

namespace prefkb {

namespace {

IndividualIndex require_situation(const KnowledgeBase& kb, std::string_view id) {
  auto i = kb.find_individual(id);
  if (!i || !kb.individual(*i).declared) throw UnknownIndividual("unknown situation '" + std::string(id) + "'");
  if (!kb.instance_of(*i, kb.taxonomy().index_of(concepts::kSituation))) {
    throw TypeMismatch("'" + std::string(id) + "' is not a Situation");
  }
  return *i;
}

}  // namespace

bool SituationMatcher::is_situation(IndividualIndex i) const {
  return kb_.individual(i).declared && kb_.instance_of(i, kb_.taxonomy().index_of(concepts::kSituation));
}

const std::vector<IndividualIndex>& SituationMatcher::closure(IndividualIndex situation) {
  if (auto it = closures_.find(situation); it != closures_.end()) return it->second;
  const auto has_setting = *kb_.find_relation(relations::kHasSetting);
  std::vector<bool> seen(kb_.individual_count(), false);
  std::vector<IndividualIndex> members{situation};
  std::deque<IndividualIndex> queue;
  seen[situation] = true;
  auto visit = [&](ObjectRef o) {
    if (o.literal || seen[o.index] || !kb_.individual(o.index).declared) return;
    seen[o.index] = true;
    members.push_back(o.index);
    queue.push_back(o.index);
  };
  for (auto o : kb_.objects_at(has_setting, situation)) visit(o);
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (const auto& [r, o] : kb_.outgoing(x)) visit(o);
  }
  std::sort(members.begin(), members.end());
  return closures_.emplace(situation, std::move(members)).first->second;
}

const std::vector<bool>& SituationMatcher::closure_bits(IndividualIndex situation) {
  if (auto it = closure_bits_.find(situation); it != closure_bits_.end()) return it->second;
  std::vector<bool> in(kb_.individual_count(), false);
  for (auto m : closure(situation)) in[m] = true;
  return closure_bits_.emplace(situation, std::move(in)).first->second;
}

const std::vector<IndividualIndex>& SituationMatcher::instances(ConceptIndex c) {
  auto [it, inserted] = instances_.try_emplace(c);
  if (inserted) {
    for (IndividualIndex i = 0; i < kb_.individual_count(); ++i) {
      if (kb_.individual(i).declared && kb_.instance_of(i, c)) it->second.push_back(i);
    }
  }
  return it->second;
}

std::vector<std::vector<IndividualIndex>> SituationMatcher::match(IndividualIndex situation,
                                                                  const CompiledPattern& pattern,
                                                                  bool first_only) {
  std::vector<std::vector<IndividualIndex>> results;
  const auto none = pattern.var_concepts.size();
  search(pattern, plan(pattern, closure(situation).size(), none), &closure_bits(situation), none, 0, first_only,
         results, false);
  return results;
}

std::vector<std::size_t> SituationMatcher::plan(const CompiledPattern& pattern, std::size_t universe,
                                                 std::size_t seed) {
  const std::size_t n = pattern.var_concepts.size();
  std::vector<std::size_t> cost(n);
  for (std::size_t v = 0; v < n; ++v) cost[v] = std::min(instances(pattern.var_concepts[v]).size(), universe);

  // Cheapest anchor first, then grow along edges so later variables are
  // reached through triples instead of scans.
  std::vector<std::size_t> order;
  std::vector<bool> placed(n, false);
  if (seed < n) {
    placed[seed] = true;
    order.push_back(seed);
  }
  while (order.size() < n) {
    std::size_t best = n;
    int best_links = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (placed[v]) continue;
      int links = 0;
      for (const auto& e : pattern.edges) {
        if ((e.from == v && e.to != v && placed[e.to]) || (e.to == v && e.from != v && placed[e.from])) ++links;
      }
      if (links > best_links || (links == best_links && cost[v] < cost[best])) {
        best = v;
        best_links = links;
      }
    }
    placed[best] = true;
    order.push_back(best);
  }
  return order;
}

void SituationMatcher::search(const CompiledPattern& pattern, const std::vector<std::size_t>& order,
                              const std::vector<bool>* in, std::size_t seed, IndividualIndex seed_value,
                              bool first_only, std::vector<std::vector<IndividualIndex>>& results,
                              bool avoid_situations) {
  const std::size_t n = pattern.var_concepts.size();
  std::vector<bool> expands(n, false);
  for (const auto& e : pattern.edges) expands[e.from] = true;

  auto admissible = [&](IndividualIndex x, std::size_t v) {
    if (in ? !(*in)[x] : !kb_.individual(x).declared) return false;
    if (avoid_situations && expands[v] && is_situation_cached(x)) return false;
    return kb_.instance_of(x, pattern.var_concepts[v]);
  };

  std::vector<std::vector<IndividualIndex>> pools(n);
  std::vector<bool> pooled(n, false);
  auto pool = [&](std::size_t v) -> const std::vector<IndividualIndex>& {
    if (!pooled[v]) {
      for (auto x : instances(pattern.var_concepts[v])) {
        if (!in || (*in)[x]) pools[v].push_back(x);
      }
      pooled[v] = true;
    }
    return pools[v];
  };

  constexpr IndividualIndex kUnbound = ~IndividualIndex{0};
  std::vector<IndividualIndex> assign(n, kUnbound);

  auto consistent = [&](std::size_t v) {
    for (const auto& e : pattern.edges) {
      if (e.from != v && e.to != v) continue;
      const auto s = assign[e.from], o = assign[e.to];
      if (s == kUnbound || o == kUnbound) continue;
      if (!kb_.has_triple(s, e.relation, ObjectRef{o, false})) return false;
    }
    for (const auto& [a, b] : pattern.distinct) {
      if ((a == v || b == v) && assign[a] != kUnbound && assign[b] != kUnbound && assign[a] == assign[b]) {
        return false;
      }
    }
    return true;
  };

  auto step = [&](auto& self, std::size_t depth) -> bool {
    if (depth == n) {
      results.push_back(assign);
      return first_only;
    }
    const auto v = order[depth];
    auto attempt = [&](IndividualIndex c) {
      assign[v] = c;
      return consistent(v) && self(self, depth + 1);
    };
    if (v == seed) {
      if (admissible(seed_value, v) && attempt(seed_value)) return true;
      assign[v] = kUnbound;
      return false;
    }
    // Candidates from the first edge to an already bound variable.
    for (const auto& e : pattern.edges) {
      if (e.from == v && e.to != v && assign[e.to] != kUnbound) {
        for (auto s : kb_.subjects_at(e.relation, ObjectRef{assign[e.to], false})) {
          if (admissible(s, v) && attempt(s)) return true;
        }
        assign[v] = kUnbound;
        return false;
      }
      if (e.to == v && e.from != v && assign[e.from] != kUnbound) {
        for (auto o : kb_.objects_at(e.relation, assign[e.from])) {
          if (!o.literal && admissible(o.index, v) && attempt(o.index)) return true;
        }
        assign[v] = kUnbound;
        return false;
      }
    }
    for (auto c : pool(v)) {
      if (attempt(c)) return true;
    }
    assign[v] = kUnbound;
    return false;
  };
  step(step, 0);
}

std::optional<std::size_t> SituationMatcher::root_of(const CompiledPattern& pattern) {
  const std::size_t n = pattern.var_concepts.size();
  for (std::size_t root = 0; root < n; ++root) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{root};
    seen[root] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto& e : pattern.edges) {
        if (e.from == v && !seen[e.to]) {
          seen[e.to] = true;
          ++count;
          stack.push_back(e.to);
        }
      }
    }
    if (count == n) return root;
  }
  return std::nullopt;
}

const std::vector<IndividualIndex>& SituationMatcher::situations() {
  if (!situations_built_) {
    for (IndividualIndex i = 0; i < kb_.individual_count(); ++i) {
      if (is_situation(i)) situations_.push_back(i);
    }
    situations_built_ = true;
  }
  return situations_;
}

const std::vector<IndividualIndex>& SituationMatcher::satisfying(const DescriptionRecord& description) {
  auto [it, inserted] = satisfying_.try_emplace(description.individual);
  if (!inserted) return it->second;
  auto& out = it->second;
  const auto& pattern = description.compiled;
  const auto root = root_of(pattern);
  if (!root) {
    for (auto sit : situations()) {
      if (satisfies(sit, description)) out.push_back(sit);
    }
    return out;
  }

  // Every variable hangs off the root along outgoing edges, and closures are
  // closed under outgoing edges of every member except the situation itself.
  // A root value reachable from the setting is therefore necessary; it is also
  // sufficient when neither the path nor the match expands a situation.
  if (!incoming_built_) {
    incoming_.resize(kb_.individual_count());
    for (IndividualIndex s = 0; s < kb_.individual_count(); ++s) {
      if (!kb_.individual(s).declared) continue;
      for (const auto& [r, o] : kb_.outgoing(s)) {
        if (!o.literal) incoming_[o.index].push_back(s);
      }
    }
    incoming_built_ = true;
  }
  const auto n = static_cast<IndividualIndex>(kb_.individual_count());
  std::vector<bool> possible(n, false), sure(n, false);
  std::vector<IndividualIndex> possible_roots, sure_roots;
  std::vector<std::vector<IndividualIndex>> found;
  const auto order = plan(pattern, n, *root);
  for (auto x : instances(pattern.var_concepts[*root])) {
    found.clear();
    search(pattern, order, nullptr, *root, x, true, found, true);
    if (!found.empty()) {
      sure_roots.push_back(x);
      possible_roots.push_back(x);
      continue;
    }
    search(pattern, order, nullptr, *root, x, true, found, false);
    if (!found.empty()) possible_roots.push_back(x);
  }
  auto spread = [&](std::vector<IndividualIndex> queue, std::vector<bool>& mark, bool through_situations) {
    for (auto x : queue) mark[x] = true;
    while (!queue.empty()) {
      const auto x = queue.back();
      queue.pop_back();
      for (auto s : incoming_[x]) {
        if (mark[s] || (!through_situations && is_situation_cached(s))) continue;
        mark[s] = true;
        queue.push_back(s);
      }
    }
  };
  spread(possible_roots, possible, true);
  spread(sure_roots, sure, false);

  const auto has_setting = *kb_.find_relation(relations::kHasSetting);
  for (auto sit : situations()) {
    bool is_sure = false, is_possible = std::binary_search(possible_roots.begin(), possible_roots.end(), sit);
    for (auto o : kb_.objects_at(has_setting, sit)) {
      if (o.literal || !kb_.individual(o.index).declared) continue;
      is_sure = is_sure || sure[o.index];
      is_possible = is_possible || possible[o.index];
    }
    if (is_sure || (is_possible && satisfies(sit, description))) out.push_back(sit);
  }
  return out;
}

bool SituationMatcher::is_situation_cached(IndividualIndex i) {
  if (situation_flags_.empty()) {
    situation_flags_.assign(kb_.individual_count(), false);
    for (auto s : situations()) situation_flags_[s] = true;
  }
  return situation_flags_[i];
}

bool SituationMatcher::satisfies(IndividualIndex situation, const DescriptionRecord& description) {
  const std::uint64_t key = (std::uint64_t{situation} << 32) | description.individual;
  if (auto it = satisfied_.find(key); it != satisfied_.end()) return it->second;
  const bool ok = is_situation(situation) && !match(situation, description.compiled, true).empty();
  satisfied_.emplace(key, ok);
  return ok;
}

std::set<std::string> setting_closure(const KnowledgeBase& kb, std::string_view situation) {
  const auto sit = require_situation(kb, situation);
  SituationMatcher matcher(kb);
  std::set<std::string> out;
  for (auto i : matcher.closure(sit)) out.insert(kb.individual(i).id);
  return out;
}

std::vector<Binding> satisfies(const KnowledgeBase& kb, std::string_view situation, std::string_view description) {
  const auto sit = require_situation(kb, situation);
  auto d = kb.find_individual(description);
  const DescriptionRecord* record = d ? kb.description_record(*d) : nullptr;
  if (!record) throw UnknownDescription("unknown description '" + std::string(description) + "'");
  SituationMatcher matcher(kb);
  std::vector<Binding> out;
  const auto& vars = record->pattern.vars();
  for (const auto& assignment : matcher.match(sit, record->compiled, false)) {
    Binding b;
    for (std::size_t v = 0; v < vars.size(); ++v) b.emplace(vars[v].name, kb.individual(assignment[v]).id);
    out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool pattern_subsumes(const DescriptionPattern& general, const DescriptionPattern& specific,
                      const ConceptTaxonomy& taxonomy) {
  const auto& gv = general.vars();
  const auto& sv = specific.vars();
  std::vector<std::size_t> mapping(gv.size(), sv.size());

  std::set<PatternEdge> specific_edges(specific.edges().begin(), specific.edges().end());
  std::set<std::pair<std::string, std::string>> specific_distinct(specific.distinct().begin(),
                                                                  specific.distinct().end());

  auto consistent = [&](std::size_t g) {
    for (const auto& e : general.edges()) {
      const auto from = *general.var_index(e.from), to = *general.var_index(e.to);
      if (from != g && to != g) continue;
      if (mapping[from] == sv.size() || mapping[to] == sv.size()) continue;
      if (!specific_edges.count({sv[mapping[from]].name, e.relation, sv[mapping[to]].name})) return false;
    }
    for (const auto& [a, b] : general.distinct()) {
      const auto ia = *general.var_index(a), ib = *general.var_index(b);
      if (ia != g && ib != g) continue;
      if (mapping[ia] == sv.size() || mapping[ib] == sv.size()) continue;
      auto x = sv[mapping[ia]].name, y = sv[mapping[ib]].name;
      if (y < x) std::swap(x, y);
      if (!specific_distinct.count({x, y})) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> step = [&](std::size_t g) -> bool {
    if (g == gv.size()) return true;
    for (std::size_t s = 0; s < sv.size(); ++s) {
      if (!taxonomy.is_subconcept(sv[s].concept_name, gv[g].concept_name)) continue;
      mapping[g] = s;
      if (consistent(g) && step(g + 1)) return true;
    }
    mapping[g] = sv.size();
    return false;
  };
  return step(0);
}

}  // namespace prefkb
