#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "prefkb/error.hpp"
#include "prefkb/taxonomy.hpp"

using namespace prefkb;

TEST_CASE("builtin roots sit under Entity") {
  const auto tax = ConceptTaxonomy::with_builtins();
  for (const char* c : {"Agent", "Situation", "Description", "Event", "Task", "Role", "Quality", "Preference",
                        "PreferenceOrder", "OrderedElement"}) {
    CHECK(tax.contains(c));
    CHECK(tax.is_subconcept(c, "Entity"));
    CHECK(tax.is_builtin(c));
  }
  CHECK(tax.parents("Entity").empty());
  CHECK(tax.is_subconcept("Disposition", "Quality"));
  CHECK(tax.is_subconcept("Preference", "Disposition"));
}

TEST_CASE("define_concept") {
  auto tax = ConceptTaxonomy::with_builtins();
  tax.define_concept("Beverage");
  tax.define_concept("Coffee", {"Beverage"});
  CHECK(tax.is_subconcept("Coffee", "Beverage"));
  CHECK(tax.is_subconcept("Coffee", "Coffee"));
  CHECK(tax.is_subconcept("Coffee", "Entity"));
  CHECK_FALSE(tax.is_subconcept("Beverage", "Coffee"));
  CHECK(tax.parents("Beverage") == std::vector<std::string>{"Entity"});

  CHECK_THROWS_AS(tax.define_concept("Coffee", {"Beverage"}), DuplicateConcept);
  CHECK_THROWS_AS(tax.define_concept("Tea", {"Drink"}), UnknownParent);
  CHECK_FALSE(tax.contains("Tea"));
  CHECK_THROWS_AS(tax.is_subconcept("Coffee", "Drink"), UnknownConcept);
}

TEST_CASE("add_parent rejects cycles atomically") {
  ConceptTaxonomy tax;
  tax.define_concept("A");
  tax.define_concept("B", {"A"});
  tax.define_concept("C", {"B"});
  try {
    tax.add_parent("A", "C");
    FAIL("expected CycleIntroduced");
  } catch (const CycleIntroduced& e) {
    CHECK(e.path() == std::vector<std::string>{"A", "C", "B", "A"});
  }
  CHECK(tax.parents("A") == std::vector<std::string>{"Entity"});
  CHECK_FALSE(tax.is_subconcept("A", "C"));
  CHECK_THROWS_AS(tax.add_parent("A", "A"), CycleIntroduced);
  CHECK_THROWS_AS(tax.add_parent("Z", "A"), UnknownConcept);
  CHECK_THROWS_AS(tax.add_parent("A", "Z"), UnknownParent);

  tax.define_concept("D");
  tax.add_parent("C", "D");
  CHECK(tax.is_subconcept("C", "D"));
  CHECK(tax.parents("C") == std::vector<std::string>{"B", "D"});
}

TEST_CASE("ancestors by distance") {
  ConceptTaxonomy tax;
  tax.define_concept("Sweetener");
  tax.define_concept("Sugar", {"Sweetener"});
  tax.define_concept("CaneSugar", {"Sugar"});
  const auto a = tax.ancestors_by_distance("CaneSugar");
  REQUIRE(a.size() == 3);
  CHECK(a[0] == std::pair<std::string, int>{"Sugar", 1});
  CHECK(a[1] == std::pair<std::string, int>{"Sweetener", 2});
  CHECK(a[2] == std::pair<std::string, int>{"Entity", 3});
}

TEST_CASE("subsumption equals reachability on random DAGs") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    ConceptTaxonomy tax;
    std::vector<std::string> names{"Entity"};
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> parents;
      for (const auto& p : names) {
        if (std::bernoulli_distribution(0.3)(rng)) parents.push_back(p);
      }
      names.push_back("C" + std::to_string(i));
      tax.define_concept(names.back(), parents);
    }
    // Random extra links: accepted exactly when they keep the graph acyclic.
    for (int k = 0; k < 6; ++k) {
      const auto& child = names[std::uniform_int_distribution<std::size_t>(1, names.size() - 1)(rng)];
      const auto& parent = names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)];
      const bool cyclic = oracle::subsumes(tax, parent, child);
      if (cyclic) {
        CHECK_THROWS_AS(tax.add_parent(child, parent), CycleIntroduced);
      } else {
        CHECK_NOTHROW(tax.add_parent(child, parent));
      }
    }
    for (const auto& a : names) {
      for (const auto& b : names) {
        REQUIRE(tax.is_subconcept(a, b) == oracle::subsumes(tax, a, b));
        if (a != b && tax.is_subconcept(a, b)) CHECK_FALSE(tax.is_subconcept(b, a));
      }
    }
  }
}
