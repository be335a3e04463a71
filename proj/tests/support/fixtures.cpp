#include "fixtures.hpp"

namespace prefkb::testing {

namespace {

void beverage_vocabulary(KnowledgeBase& kb) {
  kb.define_concept("Person", {"Agent"});
  kb.define_concept("Robot", {"Agent"});
  kb.define_concept("Beverage");
  kb.define_concept("Coffee", {"Beverage"});
  kb.define_concept("Tea", {"Beverage"});
  kb.define_concept("Sweetener");
  kb.define_concept("Sugar", {"Sweetener"});
  kb.define_concept("Honey", {"Sweetener"});
  kb.define_concept("Consuming", {"Event"});
  kb.define_concept("Brewing", {"Event"});
  kb.define_concept("Serving", {"Event"});
}

DescriptionPattern act(const std::string& id, const std::string& agent_concept, const std::string& event_concept,
                       const std::string& object_concept) {
  return DescriptionPattern(id, {{"agent", agent_concept}, {"act", event_concept}, {"thing", object_concept}},
                            {{"act", "performedBy", "agent"}, {"act", "objectActedOn", "thing"}});
}

}  // namespace

KnowledgeBase coffee_tea() {
  KnowledgeBase kb;
  beverage_vocabulary(kb);

  kb.declare_individual("user1", {"Person"});
  kb.declare_individual("robot1", {"Robot"});
  kb.declare_individual("sit1", {"Situation"});
  kb.declare_individual("drinkCoffee1", {"Consuming"});
  kb.declare_individual("drinkTea1", {"Consuming"});
  kb.declare_individual("coffee1", {"Coffee"});
  kb.declare_individual("tea1", {"Tea"});
  kb.declare_individual("honey1", {"Honey"});
  kb.assert_triple("sit1", "hasSetting", "drinkCoffee1");
  kb.assert_triple("sit1", "hasSetting", "drinkTea1");
  kb.assert_triple("drinkCoffee1", "performedBy", "user1");
  kb.assert_triple("drinkCoffee1", "objectActedOn", "coffee1");
  kb.assert_triple("drinkTea1", "performedBy", "user1");
  kb.assert_triple("drinkTea1", "objectActedOn", "tea1");

  kb.add_description(act("descCoffee", "Agent", "Consuming", "Coffee"));
  kb.add_description(act("descTea", "Agent", "Consuming", "Tea"));
  kb.add_description(DescriptionPattern(
      "descSweetenedCoffee",
      {{"agent", "Agent"}, {"act", "Consuming"}, {"thing", "Coffee"}, {"sweetener", "Sugar"}},
      {{"act", "performedBy", "agent"}, {"act", "objectActedOn", "thing"}, {"act", "objectActedOn", "sweetener"}}));
  kb.add_description(act("descBrewCoffee", "Agent", "Brewing", "Coffee"));
  kb.add_description(act("descBrewTea", "Agent", "Brewing", "Tea"));

  kb.add_order("ordBeverage");
  kb.add_element("ordBeverage", "elCoffee", "descCoffee");
  kb.add_element("ordBeverage", "elTea", "descTea");
  kb.add_leq("elCoffee", "elTea");
  kb.add_preference("prefBeverage", "user1", "ordBeverage");

  kb.add_causal_link("descBrewCoffee", "descCoffee");
  kb.add_causal_link("descBrewTea", "descTea");
  return kb;
}

KnowledgeBase serving_situation() {
  KnowledgeBase kb;
  beverage_vocabulary(kb);
  kb.declare_individual("user1", {"Person"});
  kb.declare_individual("robot1", {"Robot"});
  kb.declare_individual("serve1", {"Serving"});
  kb.declare_individual("coffee1", {"Coffee"});
  kb.declare_individual("sitServe", {"Situation"});
  kb.assert_triple("sitServe", "hasSetting", "serve1");
  kb.assert_triple("serve1", "performedBy", "robot1");
  kb.assert_triple("serve1", "objectActedOn", "coffee1");
  kb.declare_relation({.name = "servedTo", .domain = "Serving", .range = "Agent"});
  kb.assert_triple("serve1", "servedTo", "user1");
  kb.add_description(DescriptionPattern(
      "descServeCoffee", {{"robot", "Robot"}, {"serve", "Serving"}, {"drink", "Coffee"}, {"user", "Person"}},
      {{"serve", "performedBy", "robot"}, {"serve", "objectActedOn", "drink"}, {"serve", "servedTo", "user"}}));
  return kb;
}

}  // namespace prefkb::testing
