#include "generators.hpp"

#include <algorithm>
#include <set>

namespace prefkb::gen {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
}

std::string name(const char* prefix, int i) { return prefix + std::to_string(i); }

std::vector<std::string> stored_relations(const KnowledgeBase& kb) {
  std::vector<std::string> out;
  for (const auto& r : kb.relation_names()) {
    const auto& d = kb.relation(r);
    if (!d.is_virtual() && d.literal == LiteralRange::None) out.push_back(r);
  }
  return out;
}

}  // namespace

std::vector<std::string> element_names(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(name("e", i));
  return out;
}

std::vector<std::pair<std::string, std::string>> random_dag(Rng& rng, int n, double density) {
  auto names = element_names(n);
  std::shuffle(names.begin(), names.end(), rng);
  std::vector<std::pair<std::string, std::string>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (chance(rng, density)) out.emplace_back(names[static_cast<std::size_t>(i)], names[static_cast<std::size_t>(j)]);
    }
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

KnowledgeBase random_kb(Rng& rng, const KbShape& shape) {
  KnowledgeBase kb;
  std::vector<std::string> thing_concepts{"Entity"};
  for (int i = 0; i < shape.extra_concepts; ++i) {
    std::vector<std::string> parents{pick(rng, thing_concepts)};
    if (thing_concepts.size() > 2 && chance(rng, 0.25)) {
      const auto& second = pick(rng, thing_concepts);
      if (second != parents.front()) parents.push_back(second);
    }
    kb.define_concept(name("K", i), parents);
    thing_concepts.push_back(name("K", i));
  }
  kb.define_concept("Person", {"Agent"});
  kb.define_concept("Act0", {"Event"});
  kb.define_concept("Act1", {chance(rng, 0.5) ? "Act0" : "Event"});
  const std::vector<std::string> agent_concepts{"Agent", "Person"};
  const std::vector<std::string> event_concepts{"Event", "Act0", "Act1"};

  std::vector<std::string> extra_relations;
  for (int i = 0; i < shape.extra_relations; ++i) {
    kb.declare_relation({.name = name("rel", i)});
    extra_relations.push_back(name("rel", i));
  }
  if (shape.literals) {
    kb.declare_relation({.name = "label", .literal = LiteralRange::String});
    kb.declare_relation({.name = "weight", .functional = true, .literal = LiteralRange::Integer});
  }

  std::vector<std::string> agents, situations, events, objects, descriptions;
  for (int i = 0; i < shape.agents; ++i) {
    agents.push_back(name("a", i));
    kb.declare_individual(agents.back(), {pick(rng, agent_concepts)});
  }
  for (int i = 0; i < shape.objects; ++i) {
    objects.push_back(name("x", i));
    kb.declare_individual(objects.back(), {pick(rng, thing_concepts)});
  }
  for (int i = 0; i < shape.events; ++i) {
    events.push_back(name("v", i));
    kb.declare_individual(events.back(), {pick(rng, event_concepts)});
    if (!agents.empty()) kb.assert_triple(events.back(), "performedBy", pick(rng, agents));
    if (!objects.empty()) kb.assert_triple(events.back(), "objectActedOn", pick(rng, objects));
  }
  for (int i = 0; i < shape.situations; ++i) {
    situations.push_back(name("s", i));
    kb.declare_individual(situations.back(), {"Situation"});
    if (events.empty()) continue;
    const int n = uniform(rng, 1, std::min(2, static_cast<int>(events.size())));
    for (int k = 0; k < n; ++k) kb.assert_triple(situations.back(), "hasSetting", pick(rng, events));
  }
  for (int i = 0; i < shape.extra_triples && !extra_relations.empty() && !objects.empty(); ++i) {
    kb.assert_triple(pick(rng, objects), pick(rng, extra_relations), pick(rng, objects));
  }
  if (shape.literals && !objects.empty()) {
    for (const auto& x : objects) {
      if (chance(rng, 0.5)) kb.assert_triple(x, "label", Value::string(chance(rng, 0.5) ? "red" : "blue"));
      if (chance(rng, 0.5)) kb.assert_triple(x, "weight", Value::integer(uniform(rng, 1, 3)));
    }
  }

  for (int i = 0; i < shape.descriptions; ++i) {
    std::vector<PatternVar> vars{{"agent", pick(rng, agent_concepts)},
                                 {"act", pick(rng, event_concepts)},
                                 {"thing", pick(rng, thing_concepts)}};
    std::vector<PatternEdge> edges{{"act", "performedBy", "agent"}, {"act", "objectActedOn", "thing"}};
    if (!extra_relations.empty() && chance(rng, 0.3)) {
      vars.push_back({"other", pick(rng, thing_concepts)});
      edges.push_back({"thing", pick(rng, extra_relations), "other"});
    }
    descriptions.push_back(name("d", i));
    kb.add_description(DescriptionPattern(descriptions.back(), vars, edges));
  }

  for (int k = 0; k < shape.orders && !descriptions.empty(); ++k) {
    const auto ord = name("ord", k);
    kb.add_order(ord);
    std::vector<std::string> elements;
    for (int j = 0; j < shape.elements_per_order; ++j) {
      elements.push_back(ord + "_" + name("el", j));
      kb.add_element(ord, elements.back(), pick(rng, descriptions));
    }
    auto perm = elements;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) {
        if (chance(rng, 0.5)) kb.add_leq(perm[i], perm[j]);
      }
    }
    if (!agents.empty()) kb.add_preference(name("pref", k), pick(rng, agents), ord);
  }
  return kb;
}

void random_situation(Rng& rng, KnowledgeBase& kb, const std::string& id, int members) {
  std::vector<std::string> concepts;
  for (const auto& c : kb.taxonomy().concept_names()) {
    if (!kb.taxonomy().is_builtin(c) || c == "Agent" || c == "Event") concepts.push_back(c);
  }
  const auto relations = stored_relations(kb);
  kb.declare_individual(id, {"Situation"});
  std::vector<std::string> ids;
  for (int i = 0; i < members; ++i) {
    ids.push_back(id + "_m" + std::to_string(i));
    kb.declare_individual(ids.back(), {pick(rng, concepts)});
  }
  std::vector<std::string> plain;
  for (const auto& r : relations) {
    if (kb.relation(r).inverse.empty() && !kb.relation(r).functional && !kb.is_builtin_relation(r)) plain.push_back(r);
  }
  if (plain.empty()) plain = {"objectActedOn"};
  const int edges = uniform(rng, members - 1, members * 2);
  for (int e = 0; e < edges; ++e) {
    const auto& a = pick(rng, ids);
    const auto& b = pick(rng, ids);
    kb.insert_unchecked({a, pick(rng, plain), Value::individual(b)});
  }
  kb.assert_triple(id, "hasSetting", ids.front());
  if (members > 2 && chance(rng, 0.5)) kb.assert_triple(id, "hasSetting", ids.back());
}

DescriptionPattern random_pattern(Rng& rng, const KnowledgeBase& kb, const std::string& id, int max_vars) {
  std::vector<std::string> concepts;
  for (const auto& c : kb.taxonomy().concept_names()) {
    if (!kb.taxonomy().is_builtin(c) || c == "Entity" || c == "Agent" || c == "Event") concepts.push_back(c);
  }
  std::vector<std::string> relations;
  for (const auto& r : stored_relations(kb)) {
    if (kb.relation(r).inverse.empty() && !kb.relation(r).functional && !kb.is_builtin_relation(r)) relations.push_back(r);
  }
  if (relations.empty()) relations = {"objectActedOn"};
  const int n = uniform(rng, 1, max_vars);
  std::vector<PatternVar> vars;
  std::vector<PatternEdge> edges;
  for (int i = 0; i < n; ++i) {
    vars.push_back({name("p", i), pick(rng, concepts)});
    if (i > 0) {
      const auto other = name("p", uniform(rng, 0, i - 1));
      if (chance(rng, 0.5)) {
        edges.push_back({vars.back().name, pick(rng, relations), other});
      } else {
        edges.push_back({other, pick(rng, relations), vars.back().name});
      }
    }
  }
  if (n > 2 && chance(rng, 0.3)) {
    const auto a = name("p", uniform(rng, 0, n - 1)), b = name("p", uniform(rng, 0, n - 1));
    edges.push_back({a, pick(rng, relations), b});
  }
  std::vector<std::pair<std::string, std::string>> distinct;
  if (n > 1 && chance(rng, 0.3)) distinct.emplace_back("p0", name("p", uniform(rng, 1, n - 1)));
  return DescriptionPattern(id, vars, edges, distinct);
}

QueryAst random_query(Rng& rng, const KnowledgeBase& kb, int max_vars) {
  std::vector<std::string> concepts = kb.taxonomy().concept_names();
  std::vector<std::string> relations;
  for (const auto& r : kb.relation_names()) relations.push_back(r);
  const auto individuals = kb.individual_ids();
  const int nvars = uniform(rng, 1, max_vars);

  auto var = [&](int i) { return Term::variable(name("v", i)); };
  auto triple = [&](Term subject, std::set<std::string>& used, int reach) -> TriplePattern {
    const int kind = uniform(rng, 0, 9);
    if (kind <= 2) return {subject, "a", Term::name(pick(rng, concepts))};
    const auto& r = pick(rng, relations);
    const bool order_pred = kb.relation(r).kind >= RelationKind::Leq;
    Term object;
    if (!order_pred && !individuals.empty() && chance(rng, 0.15)) {
      object = Term::name(pick(rng, individuals));
    } else if (kb.relation(r).literal == LiteralRange::String && chance(rng, 0.5)) {
      object = Term::string(chance(rng, 0.5) ? "red" : "blue");
    } else {
      const int v = uniform(rng, 0, reach - 1);
      object = Term::variable(name("v", v));
      used.insert(object.text);
    }
    return {std::move(subject), r, std::move(object)};
  };

  QueryAst q;
  std::set<std::string> used;
  for (int i = 0; i < nvars; ++i) {
    used.insert(name("v", i));
    q.where.push_back(triple(var(i), used, nvars));
  }
  const int extra = uniform(rng, 0, 2);
  for (int i = 0; i < extra; ++i) q.where.push_back(triple(var(uniform(rng, 0, nvars - 1)), used, nvars));

  std::set<std::string> where_vars;
  for (const auto& p : q.where) {
    if (p.subject.is_variable()) where_vars.insert(p.subject.text);
    if (p.object.is_variable()) where_vars.insert(p.object.text);
  }
  for (const auto& v : where_vars) {
    if (q.select.empty() || chance(rng, 0.6)) q.select.push_back(v);
  }

  if (chance(rng, 0.35)) {
    NotExistsBlock block;
    std::set<std::string> inner;
    const Term anchor = var(uniform(rng, 0, nvars - 1));
    if (chance(rng, 0.5)) {
      block.patterns.push_back(triple(anchor, inner, nvars));
    } else {
      // A local variable linked to an outer one.
      const Term local = Term::variable("w0");
      const auto& r = pick(rng, relations);
      block.patterns.push_back({local, r, anchor});
      block.patterns.push_back({local, "a", Term::name(pick(rng, concepts))});
      block.local_vars.push_back("w0");
    }
    for (const auto& v : inner) {
      if (!where_vars.count(v)) {
        // Object referred to an unused outer slot: keep it local.
        block.local_vars.push_back(v);
      }
    }
    std::sort(block.local_vars.begin(), block.local_vars.end());
    block.local_vars.erase(std::unique(block.local_vars.begin(), block.local_vars.end()), block.local_vars.end());
    q.not_exists.push_back(std::move(block));
  }
  return q;
}

std::size_t inject_faults(Rng& rng, KnowledgeBase& kb, int count) {
  std::vector<std::string> non_situations;
  for (const auto& id : kb.individual_ids()) {
    if (!kb.instance_of(id, "Situation")) non_situations.push_back(id);
  }
  const auto all = kb.individual_ids();
  std::size_t expected = 0;
  for (int i = 0; i < count; ++i) {
    const std::string rel = "fault" + std::to_string(i);
    switch (uniform(rng, 0, 3)) {
      case 0:
        kb.declare_relation({.name = rel, .domain = "Situation"});
        kb.insert_unchecked({pick(rng, non_situations), rel, Value::individual(pick(rng, all))});
        break;
      case 1:
        kb.declare_relation({.name = rel, .range = "Situation"});
        kb.insert_unchecked({pick(rng, all), rel, Value::individual(pick(rng, non_situations))});
        break;
      case 2: {
        kb.declare_relation({.name = rel, .functional = true});
        const auto& s = pick(rng, all);
        kb.insert_unchecked({s, rel, Value::individual(all.front())});
        kb.insert_unchecked({s, rel, Value::individual(all.back())});
        break;
      }
      default:
        kb.declare_relation({.name = rel});
        if (chance(rng, 0.5)) {
          kb.insert_unchecked({"ghost" + std::to_string(i), rel, Value::individual(pick(rng, all))});
        } else {
          kb.insert_unchecked({pick(rng, all), rel, Value::individual("ghost" + std::to_string(i))});
        }
        break;
    }
    ++expected;
  }
  return expected;
}

}  // namespace prefkb::gen
