#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "prefkb/cli.hpp"
#include "prefkb/competency.hpp"
#include "prefkb/document.hpp"

using namespace prefkb;

namespace {

const std::string kKb = std::string(PREFKB_DATA_DIR) + "/coffee_tea.kb";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("validate") {
  const auto r = cli({"validate", kKb});
  CHECK(r.code == 0);
  CHECK(r.out == "0 violations\n");

  auto kb = testing::coffee_tea();
  kb.assert_triple("user1", "hasSetting", "coffee1");
  const auto bad = temp_file("prefkb_cli_bad.kb", to_document_string(kb));
  const auto v = cli({"validate", bad});
  CHECK(v.code == 1);
  CHECK(v.out.find("domain: ") == 0);
  CHECK(v.out.find("1 violation\n") != std::string::npos);
  CHECK(cli({"query", bad, "-e", "SELECT ?x WHERE { ?x a Agent }"}).code == 1);
  CHECK(cli({"query", bad, "--lenient", "-e", "SELECT ?x WHERE { ?x a Agent }"}).code == 0);
}

TEST_CASE("query as a table and as json") {
  const auto r = cli({"query", kKb, "-e", std::string(query_b_text())});
  CHECK(r.code == 0);
  CHECK(r.out == "?user  ?sit  ?pref\nuser1  sit1  prefBeverage\n(1 row)\n");

  const auto file = temp_file("prefkb_cli_query.rq", "SELECT ?x ?d WHERE { ?x encapsulates ?d }");
  const auto j = cli({"query", kKb, "-q", file, "--format", "json"});
  CHECK(j.code == 0);
  CHECK(j.out == R"({
  "format-version": 1,
  "columns": [
    "x",
    "d"
  ],
  "rows": [
    [
      "elCoffee",
      "descCoffee"
    ],
    [
      "elTea",
      "descTea"
    ]
  ]
}
)");
}

TEST_CASE("decide") {
  const auto r = cli({"decide", kKb, "--agent", "user1", "--options", "descCoffee,descTea"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "choices: descTea\n"
        "preference prefBeverage: descCoffee->elCoffee descTea->elTea | maximal: descTea\n");
  const auto c = cli({"decide", kKb, "--agent", "user1", "--options", "descCoffee,descBrewTea", "--context", "sit1"});
  CHECK(c.out == "choices: descCoffee\n"
                 "preference prefBeverage: descCoffee->elCoffee | maximal: descCoffee\n"
                 "unmatched: descBrewTea\n");
  const auto none = cli({"decide", kKb, "--agent", "robot1", "--options", "descCoffee"});
  CHECK(none.code == 1);
  CHECK(none.err.find("error: ") == 0);
}

TEST_CASE("fulfill") {
  const auto r = cli({"fulfill", kKb, "--option", "descSweetenedCoffee", "--inventory", "coffee1,honey1"});
  CHECK(r.code == 0);
  CHECK(r.out == "descSweetenedCoffee is fulfillable\n"
                 "  ?sweetener = honey1 (substitutes Sugar via Sweetener)\n"
                 "  ?thing = coffee1\n");
  const auto strict =
      cli({"fulfill", kKb, "--option", "descSweetenedCoffee", "--inventory", "coffee1,honey1", "--depth", "0"});
  CHECK(strict.out == "descSweetenedCoffee is not fulfillable\n  ?thing = coffee1\n  ?sweetener missing\n");
}

TEST_CASE("infer") {
  const auto r = cli({"infer", kKb, "--order", "ordBeverage", "--id", "ordBrew"});
  CHECK(r.code == 0);
  CHECK(r.out == "order ordBrew (derived from ordBeverage)\n"
                 "  element ordBrew/elCoffee encapsulates descBrewCoffee\n"
                 "  element ordBrew/elTea encapsulates descBrewTea\n"
                 "  descBrewCoffee <= descBrewTea\n");
  const auto links = temp_file("prefkb_cli_links.txt", "# cause effect\ndescBrewTea descCoffee\n");
  const auto l = cli({"infer", kKb, "--order", "ordBeverage", "--links", links});
  CHECK(l.code == 0);
  CHECK(l.out == "order ordBeverage~causes (derived from ordBeverage)\n"
                 "  element ordBeverage~causes/elCoffee encapsulates descBrewTea\n");
}

TEST_CASE("explain") {
  const auto r = cli({"explain", kKb, "--choice", "descCoffee", "--agent", "user1", "--options", "descCoffee,descTea",
                      "--inventory", "coffee1"});
  CHECK(r.code == 0);
  CHECK(r.out == "descCoffee is not chosen (choices: descTea)\n"
                 "matched elCoffee of order ordBeverage (preference prefBeverage)\n"
                 "  elCoffee <= elTea asserted\n"
                 "fulfillable from the inventory\n"
                 "  ?thing = coffee1\n");
}

TEST_CASE("usage and domain errors") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"decide", kKb, "--agent", "user1"}).code == 2);
  CHECK(cli({"query", kKb}).code == 2);
  CHECK(cli({"query", kKb, "-e", "SELECT ?x WHERE { ?x a }"}).code == 2);
  CHECK(cli({"query", kKb, "-e", "SELECT ?x WHERE { ?x likes ?y }"}).code == 1);
  CHECK(cli({"query", kKb, "--format", "xml", "-e", "SELECT ?x WHERE { ?x a Agent }"}).code == 2);
  CHECK(cli({"validate", "/nonexistent.kb"}).code == 1);
  const auto broken = temp_file("prefkb_cli_broken.kb", "{ not json");
  CHECK(cli({"validate", broken}).code == 2);
  CHECK(cli({"fulfill", kKb, "--option", "descCoffee", "--inventory", "ghost"}).code == 1);
  CHECK(cli({"explain", kKb, "--choice", "descHoney", "--agent", "user1", "--options", "descTea"}).code == 1);
}
