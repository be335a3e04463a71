#include "doctest.h"
#include "fixtures.hpp"
#include "generators.hpp"
#include "prefkb/competency.hpp"
#include "prefkb/error.hpp"
#include "prefkb/query.hpp"

using namespace prefkb;

namespace {

std::vector<std::string> column(const BindingTable& t) {
  std::vector<std::string> out;
  for (const auto& r : t.rows) out.push_back(r.front().text);
  return out;
}

std::map<std::string, Value> user_and_situation(const std::string& user, const std::string& sit) {
  return {{"user", Value::individual(user)}, {"sit", Value::individual(sit)}};
}

QueryAst selecting(std::string_view text, const std::string& var) {
  auto q = parse_query(text);
  q.select = {var};
  return q;
}

}  // namespace

TEST_CASE("cq1 on the coffee fixture") {
  auto kb = testing::coffee_tea();
  CHECK(cq1(kb, "user1", "sit1") == std::vector<std::string>{"prefBeverage"});
  CHECK(cq1(kb, "robot1", "sit1").empty());
  CHECK(cq1(kb, "coffee1", "sit1").empty());
  CHECK(cq1(kb, "user1", "coffee1").empty());
  CHECK_THROWS_AS(cq1(kb, "ghost", "sit1"), UnknownIndividual);
  CHECK_THROWS_AS(cq1(kb, "user1", "ghost"), UnknownIndividual);
}

TEST_CASE("cq2 picks tea over coffee") {
  const auto kb = testing::coffee_tea();
  CHECK(cq2(kb, "user1", "sit1") == std::vector<std::string>{"descTea"});
  CHECK_THROWS_AS(cq2(kb, "robot1", "sit1"), NoApplicablePreference);
}

TEST_CASE("cq2 keeps both descriptions of an antichain") {
  auto kb = testing::coffee_tea();
  kb.declare_individual("user2", {"Person"});
  kb.add_order("ordFlat");
  kb.add_element("ordFlat", "flatCoffee", "descCoffee");
  kb.add_element("ordFlat", "flatTea", "descTea");
  kb.add_preference("prefFlat", "user2", "ordFlat");
  CHECK(cq2(kb, "user2", "sit1") == std::vector<std::string>{"descCoffee", "descTea"});
}

TEST_CASE("cq1 and cq2 agree with the generic evaluator") {
  gen::Rng rng(47);
  const auto qa = parse_query(query_a_text());
  const auto qa_pref = selecting(query_a_text(), "pref");
  const auto qb_desc = selecting(query_b_text(), "desc");
  int answered = 0;
  for (int round = 0; round < 50; ++round) {
    const auto kb = gen::random_kb(rng, {.orders = 2});
    for (const auto& user : kb.instances_of("Agent")) {
      for (const auto& sit : kb.instances_of("Situation")) {
        const auto bound = user_and_situation(user, sit);
        const auto prefs = column(evaluate(qa_pref, kb, bound));
        REQUIRE(cq1(kb, user, sit) == prefs);
        CHECK(evaluate(qa, kb, bound).rows.size() == prefs.size());
        if (prefs.empty()) {
          CHECK_THROWS_AS(cq2(kb, user, sit), NoApplicablePreference);
        } else {
          REQUIRE(cq2(kb, user, sit) == column(evaluate(qb_desc, kb, bound)));
          ++answered;
        }
      }
    }
  }
  CHECK(answered > 0);
}
