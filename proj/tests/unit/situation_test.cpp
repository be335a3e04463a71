#include <algorithm>
#include <functional>

#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "prefkb/error.hpp"
#include "prefkb/situation.hpp"

using namespace prefkb;

namespace {

// An Agent consumes Coffee.
KnowledgeBase agent_consumes_coffee() {
  KnowledgeBase kb;
  kb.define_concept("Beverage");
  kb.define_concept("Coffee", {"Beverage"});
  kb.define_concept("Consuming", {"Event"});
  kb.declare_individual("sit", {"Situation"});
  kb.declare_individual("agent", {"Agent"});
  kb.declare_individual("consuming", {"Consuming"});
  kb.declare_individual("coffee", {"Coffee"});
  kb.declare_individual("elsewhere", {"Coffee"});
  kb.assert_triple("sit", "hasSetting", "consuming");
  kb.assert_triple("consuming", "performedBy", "agent");
  kb.assert_triple("consuming", "objectActedOn", "coffee");
  kb.add_description(DescriptionPattern("drinkCoffee", {{"a", "Agent"}, {"e", "Consuming"}, {"o", "Coffee"}},
                                        {{"e", "performedBy", "a"}, {"e", "objectActedOn", "o"}}));
  return kb;
}

// Brute-force search for a variable mapping general -> specific.
bool subsumes_oracle(const DescriptionPattern& general, const DescriptionPattern& specific,
                     const ConceptTaxonomy& tax) {
  const auto& gv = general.vars();
  const auto& sv = specific.vars();
  std::vector<std::size_t> map(gv.size(), 0);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == gv.size()) {
      auto image = [&](const std::string& v) { return sv[map[*general.var_index(v)]].name; };
      for (const auto& e : general.edges()) {
        const PatternEdge mapped{image(e.from), e.relation, image(e.to)};
        if (std::find(specific.edges().begin(), specific.edges().end(), mapped) == specific.edges().end()) return false;
      }
      for (const auto& [a, b] : general.distinct()) {
        const auto x = image(a), y = image(b);
        bool found = false;
        for (const auto& [c, d] : specific.distinct()) found = found || (c == x && d == y) || (c == y && d == x);
        if (!found) return false;
      }
      return true;
    }
    for (std::size_t j = 0; j < sv.size(); ++j) {
      map[i] = j;
      if (tax.is_subconcept(sv[j].concept_name, gv[i].concept_name) && rec(i + 1)) return true;
    }
    return false;
  };
  return !sv.empty() && rec(0);
}

}  // namespace

TEST_CASE("setting closure of the consuming situation") {
  const auto kb = agent_consumes_coffee();
  CHECK(setting_closure(kb, "sit") == std::set<std::string>{"sit", "agent", "consuming", "coffee"});
  CHECK_THROWS_AS(setting_closure(kb, "ghost"), UnknownIndividual);
  CHECK_THROWS_AS(setting_closure(kb, "coffee"), TypeMismatch);
}

TEST_CASE("a situation without setting closes over itself") {
  auto kb = agent_consumes_coffee();
  kb.declare_individual("empty", {"Situation"});
  CHECK(setting_closure(kb, "empty") == std::set<std::string>{"empty"});
}

TEST_CASE("serving situation closure") {
  const auto kb = testing::serving_situation();
  CHECK(setting_closure(kb, "sitServe") == std::set<std::string>{"sitServe", "serve1", "robot1", "coffee1", "user1"});
  CHECK(satisfies(kb, "sitServe", "descServeCoffee").size() == 1);
}

TEST_CASE("the consuming situation satisfies its description once") {
  const auto kb = agent_consumes_coffee();
  const auto b = satisfies(kb, "sit", "drinkCoffee");
  REQUIRE(b.size() == 1);
  CHECK(b[0] == Binding{{"a", "agent"}, {"e", "consuming"}, {"o", "coffee"}});
  CHECK_THROWS_AS(satisfies(kb, "sit", "nothing"), UnknownDescription);
}

TEST_CASE("a single unconstrained variable binds every closure member") {
  auto kb = agent_consumes_coffee();
  kb.add_description(DescriptionPattern("anything", {{"s", "Entity"}}));
  const auto b = satisfies(kb, "sit", "anything");
  CHECK(b.size() == setting_closure(kb, "sit").size());
  CHECK(b.front() == Binding{{"s", "agent"}});
}

TEST_CASE("distinct pairs make matching injective where asked") {
  auto kb = testing::coffee_tea();
  kb.add_description(DescriptionPattern("twoDrinks", {{"x", "Beverage"}, {"e", "Consuming"}, {"y", "Beverage"}},
                                        {{"e", "objectActedOn", "x"}, {"e", "objectActedOn", "y"}}));
  kb.add_description(DescriptionPattern("twoDistinctDrinks",
                                        {{"x", "Beverage"}, {"e", "Consuming"}, {"y", "Beverage"}},
                                        {{"e", "objectActedOn", "x"}, {"e", "objectActedOn", "y"}}, {{"x", "y"}}));
  CHECK(satisfies(kb, "sit1", "twoDrinks").size() == 2);
  CHECK(satisfies(kb, "sit1", "twoDistinctDrinks").empty());
}

TEST_CASE("pattern subsumption") {
  auto kb = testing::coffee_tea();
  const DescriptionPattern beverage("b", {{"a", "Agent"}, {"o", "Beverage"}}, {{"a", "consumes", "o"}});
  const DescriptionPattern coffee("c", {{"a", "Agent"}, {"o", "Coffee"}}, {{"a", "consumes", "o"}});
  CHECK(pattern_subsumes(beverage, coffee, kb.taxonomy()));
  CHECK_FALSE(pattern_subsumes(coffee, beverage, kb.taxonomy()));
  CHECK(pattern_subsumes(coffee, coffee, kb.taxonomy()));
  const auto& sweet = kb.description("descSweetenedCoffee");
  const auto& plain = kb.description("descCoffee");
  CHECK(pattern_subsumes(plain, sweet, kb.taxonomy()));
  CHECK_FALSE(pattern_subsumes(sweet, plain, kb.taxonomy()));
}

TEST_CASE("pattern shape checks") {
  CHECK_THROWS_AS(DescriptionPattern("p", {{"a", "Agent"}, {"a", "Agent"}}), InvalidPattern);
  CHECK_THROWS_AS(DescriptionPattern("p", {{"a", "Agent"}}, {{"a", "r", "b"}}), InvalidPattern);
  CHECK_THROWS_AS(DescriptionPattern("p", {{"a", "Agent"}, {"b", "Agent"}}), InvalidPattern);
  CHECK_THROWS_AS(DescriptionPattern("p", {}), InvalidPattern);
  KnowledgeBase kb;
  CHECK_THROWS_AS(kb.add_description(DescriptionPattern("p", {{"a", "Nothing"}})), UnknownConcept);
  CHECK_THROWS_AS(kb.add_description(DescriptionPattern("p", {{"a", "Agent"}, {"b", "Agent"}}, {{"a", "r", "b"}})),
                  UnknownRelation);
  CHECK_THROWS_AS(
      kb.add_description(DescriptionPattern("p", {{"a", "Agent"}, {"b", "Agent"}}, {{"a", "satisfies", "b"}})),
      InvalidPattern);
}

TEST_CASE("closure and satisfies agree with brute force on random situations") {
  gen::Rng rng(5);
  for (int round = 0; round < 200; ++round) {
    auto kb = gen::random_kb(rng, {.agents = 1, .situations = 0, .events = 0, .objects = 0, .descriptions = 0,
                                   .orders = 0});
    const int members = std::uniform_int_distribution<int>(1, 5)(rng);
    gen::random_situation(rng, kb, "sit", members);
    kb.add_description(gen::random_pattern(rng, kb, "pat", 4));
    REQUIRE(setting_closure(kb, "sit") == oracle::setting_members(kb, "sit"));
    REQUIRE(satisfies(kb, "sit", "pat") == oracle::homomorphisms(kb, "sit", "pat"));
  }
}

std::vector<std::string> satisfying_ids(const KnowledgeBase& kb, const std::string& description) {
  SituationMatcher matcher(kb);
  std::vector<std::string> out;
  for (auto i : matcher.satisfying(*kb.description_record(*kb.find_individual(description)))) {
    out.push_back(kb.individual(i).id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> satisfying_oracle(const KnowledgeBase& kb, const std::string& description) {
  std::vector<std::string> out;
  for (const auto& id : kb.instances_of("Situation")) {
    if (!oracle::homomorphisms(kb, id, description).empty()) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST_CASE("satisfying situations match per-situation brute force") {
  gen::Rng rng(55);
  for (int round = 0; round < 400; ++round) {
    auto kb = gen::random_kb(rng, {.agents = 1, .situations = 0, .events = 0, .objects = 0, .descriptions = 0,
                                   .orders = 0});
    kb.declare_relation({.name = "link", .domain = "Entity", .range = "Entity"});
    for (int k = 0; k < 4; ++k) {
      gen::random_situation(rng, kb, "sit" + std::to_string(k), std::uniform_int_distribution<int>(1, 4)(rng));
    }
    // Links between arbitrary individuals, situations included, so paths and
    // matches run through situations that closures do not expand.
    const auto ids = kb.individual_ids();
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    for (int k = 0; k < 6; ++k) kb.assert_triple(ids[pick(rng)], "link", ids[pick(rng)]);
    if (round % 2 == 0) kb.assert_triple("sit1", "hasSetting", "sit0");
    kb.add_description(gen::random_pattern(rng, kb, "pat", 3));
    kb.add_description(DescriptionPattern("viaSituation", {{"s", "Situation"}, {"x", "Entity"}},
                                          {{"s", "link", "x"}}));
    kb.add_description(DescriptionPattern("chain", {{"x", "Entity"}, {"y", "Entity"}, {"z", "Entity"}},
                                          {{"x", "link", "y"}, {"y", "link", "z"}}));
    for (const auto* d : {"pat", "viaSituation", "chain"}) {
      CAPTURE(round);
      CAPTURE(d);
      REQUIRE(satisfying_ids(kb, d) == satisfying_oracle(kb, d));
    }
  }
}

TEST_CASE("pattern subsumption agrees with mapping search and implies satisfaction") {
  gen::Rng rng(9);
  int positives = 0;
  for (int round = 0; round < 300; ++round) {
    auto kb = gen::random_kb(rng, {.agents = 1, .situations = 0, .events = 0, .objects = 0, .extra_relations = 1,
                                   .descriptions = 0, .orders = 0});
    gen::random_situation(rng, kb, "sit", 5);
    const auto g = gen::random_pattern(rng, kb, "g", 3);
    const auto s = gen::random_pattern(rng, kb, "s", 4);
    const bool sub = pattern_subsumes(g, s, kb.taxonomy());
    REQUIRE(sub == subsumes_oracle(g, s, kb.taxonomy()));
    if (sub) {
      ++positives;
      kb.add_description(g);
      kb.add_description(s);
      if (!satisfies(kb, "sit", "s").empty()) CHECK_FALSE(satisfies(kb, "sit", "g").empty());
    }
  }
  CHECK(positives > 0);
}

TEST_CASE("weakening a constraint never removes bindings") {
  gen::Rng rng(13);
  for (int round = 0; round < 100; ++round) {
    auto kb = gen::random_kb(rng, {.agents = 1, .situations = 0, .events = 0, .objects = 0, .descriptions = 0,
                                   .orders = 0});
    gen::random_situation(rng, kb, "sit", 5);
    const auto p = gen::random_pattern(rng, kb, "p", 4);
    auto vars = p.vars();
    const auto i = std::uniform_int_distribution<std::size_t>(0, vars.size() - 1)(rng);
    const auto parents = kb.taxonomy().parents(vars[i].concept_name);
    if (parents.empty()) continue;
    vars[i].concept_name = parents.front();
    kb.add_description(p);
    kb.add_description(DescriptionPattern("weak", vars, p.edges(), p.distinct()));
    const auto strong = satisfies(kb, "sit", "p");
    const auto weak = satisfies(kb, "sit", "weak");
    for (const auto& b : strong) CHECK(std::find(weak.begin(), weak.end(), b) != weak.end());
  }
}
