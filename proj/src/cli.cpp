#include "prefkb/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "prefkb/decision.hpp"
#include "prefkb/document.hpp"
#include "prefkb/error.hpp"
#include "prefkb/inference.hpp"
#include "prefkb/query.hpp"
#include "prefkb/validation.hpp"

namespace prefkb {

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string join(const std::vector<std::string>& xs, const char* sep = ", ") {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += sep;
    out += x;
  }
  return out;
}

// "cause effect" per line; blank lines and '#' comments are skipped.
std::vector<CausalLink> read_links(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<CausalLink> links;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string cause, effect, extra;
    if (!(fields >> cause)) continue;
    if (!(fields >> effect) || (fields >> extra)) {
      throw ParseError(path + ":" + std::to_string(n), "expected '<cause> <effect>'");
    }
    links.push_back({cause, effect});
  }
  return links;
}

ordered_json json_value(const Value& v) {
  switch (v.kind) {
    case ValueKind::Individual: return v.text;
    case ValueKind::Integer: return v.number;
    case ValueKind::String: return ordered_json{{"string", v.text}};
  }
  return nullptr;
}

void print_table(const BindingTable& table, std::ostream& out) {
  std::vector<std::size_t> width;
  std::vector<std::string> header;
  for (const auto& c : table.columns) {
    header.push_back("?" + c);
    width.push_back(header.back().size());
  }
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : table.rows) {
    auto& r = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      r.push_back(row[i].to_string());
      width[i] = std::max(width[i], r.back().size());
    }
  }
  auto line = [&](const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      s += xs[i];
      if (i + 1 < xs.size()) s += std::string(width[i] - xs[i].size() + 2, ' ');
    }
    out << s << '\n';
  };
  line(header);
  for (const auto& r : cells) line(r);
  out << "(" << table.rows.size() << (table.rows.size() == 1 ? " row)" : " rows)") << '\n';
}

struct Common {
  std::string kb_path;
  bool lenient = false;

  LoadResult load_kb() const { return load(kb_path, LoadOptions{!lenient}); }
};

void add_kb(CLI::App* cmd, Common& c) {
  cmd->add_option("kb", c.kb_path, "Knowledge-base document")->required();
  cmd->add_flag("--lenient", c.lenient, "Load documents that fail validation");
}

struct DecideArgs {
  std::string agent;
  std::vector<std::string> options;
  std::string context;
  std::vector<std::string> inventory;
  bool has_inventory = false;
  int depth = 1;

  DecisionResult run(const KnowledgeBase& kb, Inventory& inv) const {
    DecisionProblem problem{agent, options, context.empty() ? std::nullopt : std::optional(context)};
    DecideOptions opts;
    opts.substitution_depth = depth;
    if (has_inventory) {
      inv.available.insert(inventory.begin(), inventory.end());
      opts.inventory = &inv;
    }
    return decide(kb, problem, opts);
  }
};

void add_decide_args(CLI::App* cmd, DecideArgs& d) {
  cmd->add_option("--agent", d.agent, "Performing agent")->required();
  cmd->add_option("--options", d.options, "Option descriptions")->required()->delimiter(',');
  cmd->add_option("--context", d.context, "Situation restricting the preferences consulted");
  cmd->add_option("--inventory", d.inventory, "Available individuals")->delimiter(',');
  cmd->add_option("--depth", d.depth, "Substitution depth")->check(CLI::NonNegativeNumber);
}

void print_decision(const DecisionResult& r, std::ostream& out) {
  out << "choices: " << join(r.choices) << '\n';
  for (const auto& p : r.preferences) {
    out << "preference " << p << ":";
    for (const auto& m : r.matched) {
      if (m.preference == p) out << ' ' << m.option << "->" << m.element;
    }
    auto it = r.per_preference.find(p);
    out << " | maximal: " << (it == r.per_preference.end() ? std::string() : join(it->second)) << '\n';
  }
  if (!r.unmatched.empty()) out << "unmatched: " << join(r.unmatched) << '\n';
  if (!r.unfulfillable.empty()) out << "unfulfillable: " << join(r.unfulfillable) << '\n';
}

ordered_json decision_json(const DecisionResult& r) {
  auto matched = ordered_json::array();
  for (const auto& m : r.matched) {
    matched.push_back({{"option", m.option}, {"preference", m.preference}, {"order", m.order}, {"element", m.element}});
  }
  return {{"format-version", 1}, {"choices", r.choices},     {"matched", matched},
          {"unmatched", r.unmatched}, {"unfulfillable", r.unfulfillable}};
}

void print_report(const FulfillabilityReport& rep, std::ostream& out, const char* indent = "") {
  for (const auto& [var, id] : rep.bindings) {
    auto sub = std::find_if(rep.substitutions.begin(), rep.substitutions.end(),
                            [&](const Substitution& s) { return s.var == var; });
    out << indent << "?" << var << " = " << id;
    if (sub != rep.substitutions.end()) {
      out << " (substitutes " << sub->required << " via " << sub->ancestor << ")";
    }
    out << '\n';
  }
  for (const auto& m : rep.missing) out << indent << "?" << m << " missing\n";
}

int run_validate(const Common& c, std::ostream& out) {
  auto result = load(c.kb_path, LoadOptions{false});
  for (const auto& v : result.report.violations) out << to_string(v.kind) << ": " << v.message << '\n';
  out << result.report.size() << (result.report.size() == 1 ? " violation" : " violations") << '\n';
  return result.report.ok() ? 0 : 1;
}

int run_query(const Common& c, const std::string& file, const std::string& text, const std::string& format,
              std::ostream& out) {
  const std::string source = file.empty() ? text : read_file(file);
  const auto ast = parse_query(source);
  const auto loaded = c.load_kb();
  const auto table = evaluate(ast, loaded.kb);
  if (format == "json") {
    auto rows = ordered_json::array();
    for (const auto& row : table.rows) {
      auto r = ordered_json::array();
      for (const auto& v : row) r.push_back(json_value(v));
      rows.push_back(std::move(r));
    }
    out << ordered_json{{"format-version", 1}, {"columns", table.columns}, {"rows", rows}}.dump(2) << '\n';
  } else {
    print_table(table, out);
  }
  return 0;
}

int run_fulfill(const Common& c, const std::string& option, const std::vector<std::string>& inventory, int depth,
                std::ostream& out) {
  const auto loaded = c.load_kb();
  Inventory inv;
  inv.available.insert(inventory.begin(), inventory.end());
  const auto rep = fulfillable(loaded.kb, option, inv, depth);
  out << option << (rep.fulfillable ? " is fulfillable\n" : " is not fulfillable\n");
  print_report(rep, out, "  ");
  return 0;
}

int run_infer(const Common& c, const std::string& order, const std::string& links_path, const std::string& id,
              std::ostream& out) {
  const auto loaded = c.load_kb();
  const auto links = links_path.empty() ? loaded.kb.causal_links() : read_links(links_path);
  const auto derived = derive_cause_preferences(loaded.kb.order(order), links, id);
  out << "order " << derived.id() << " (derived from " << order << ")\n";
  for (const auto& e : derived.elements()) out << "  element " << e << " encapsulates " << derived.encapsulated(e) << '\n';
  for (const auto& [a, b] : derived.asserted_pairs()) {
    out << "  " << derived.encapsulated(a) << " <= " << derived.encapsulated(b) << '\n';
  }
  return 0;
}

int run_explain(const Common& c, const std::string& choice, const DecideArgs& d, std::ostream& out) {
  const auto loaded = c.load_kb();
  const auto& kb = loaded.kb;
  Inventory inv;
  const auto result = d.run(kb, inv);
  const bool chosen = std::binary_search(result.choices.begin(), result.choices.end(), choice);
  if (std::find(d.options.begin(), d.options.end(), choice) == d.options.end()) {
    throw InvalidArgument("'" + choice + "' is not one of the options");
  }
  out << choice << (chosen ? " is chosen" : " is not chosen") << " (choices: " << join(result.choices) << ")\n";
  for (const auto& m : result.matched) {
    if (m.option != choice) continue;
    out << "matched " << m.element << " of order " << m.order << " (preference " << m.preference << ")\n";
    const auto& order = kb.order(m.order);
    for (const auto& other : result.matched) {
      if (other.preference != m.preference || other.option == choice) continue;
      for (const auto& [lo, hi] : {std::pair{other.element, m.element}, std::pair{m.element, other.element}}) {
        if (lo == hi || !order.leq(lo, hi)) continue;
        const auto path = order.path(lo, hi);
        out << "  " << lo << " <= " << hi << (path.size() == 2 ? " asserted" : " derived: " + join(path, " <= ")) << '\n';
      }
      if (!order.comparable(other.element, m.element)) {
        out << "  " << m.element << " and " << other.element << " are incomparable\n";
      }
    }
  }
  if (std::find(result.unmatched.begin(), result.unmatched.end(), choice) != result.unmatched.end()) {
    out << "no consulted preference covers " << choice << '\n';
  }
  if (d.has_inventory) {
    const auto rep = fulfillable(kb, choice, inv, d.depth);
    out << (rep.fulfillable ? "fulfillable from the inventory\n" : "not fulfillable from the inventory\n");
    print_report(rep, out, "  ");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Preference knowledge base: validate, query and decide", "prefkb"};
  app.require_subcommand(1);
  Common common;

  auto* validate_cmd = app.add_subcommand("validate", "Report domain, range, functional and dangling-id violations");
  validate_cmd->add_option("kb", common.kb_path, "Knowledge-base document")->required();

  std::string query_file, query_text, format = "table";
  auto* query_cmd = app.add_subcommand("query", "Evaluate a query");
  add_kb(query_cmd, common);
  auto* q_opt = query_cmd->add_option("-q,--query-file", query_file, "File holding the query");
  auto* e_opt = query_cmd->add_option("-e,--expr", query_text, "Query text");
  q_opt->excludes(e_opt);
  query_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json"}));

  DecideArgs decide_args;
  std::string decide_format = "table";
  auto* decide_cmd = app.add_subcommand("decide", "Choose among options by the agent's preferences");
  add_kb(decide_cmd, common);
  add_decide_args(decide_cmd, decide_args);
  decide_cmd->add_option("--format", decide_format, "Output format")->check(CLI::IsMember({"table", "json"}));

  std::string option;
  std::vector<std::string> inventory;
  int depth = 1;
  auto* fulfill_cmd = app.add_subcommand("fulfill", "Check whether an option can be realized from an inventory");
  add_kb(fulfill_cmd, common);
  fulfill_cmd->add_option("--option", option, "Option description")->required();
  fulfill_cmd->add_option("--inventory", inventory, "Available individuals")->required()->delimiter(',');
  fulfill_cmd->add_option("--depth", depth, "Substitution depth")->check(CLI::NonNegativeNumber);

  std::string order, links, derived_id;
  auto* infer_cmd = app.add_subcommand("infer", "Derive preferences over causes from preferences over effects");
  add_kb(infer_cmd, common);
  infer_cmd->add_option("--order", order, "Source preference order")->required();
  infer_cmd->add_option("--links", links, "File of '<cause> <effect>' lines (default: the document's links)");
  infer_cmd->add_option("--id", derived_id, "Id of the derived order");

  std::string choice;
  DecideArgs explain_args;
  auto* explain_cmd = app.add_subcommand("explain", "Explain why an option is or is not chosen");
  add_kb(explain_cmd, common);
  explain_cmd->add_option("--choice", choice, "Option to explain")->required();
  add_decide_args(explain_cmd, explain_args);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return run_validate(common, out);
    if (*query_cmd) {
      if (query_file.empty() && q_opt->count() == 0 && e_opt->count() == 0) {
        err << "query: one of -q or -e is required\n";
        return 2;
      }
      return run_query(common, query_file, query_text, format, out);
    }
    if (*decide_cmd) {
      const auto loaded = common.load_kb();
      decide_args.has_inventory = decide_cmd->count("--inventory") > 0;
      Inventory inv;
      const auto result = decide_args.run(loaded.kb, inv);
      if (decide_format == "json") {
        out << decision_json(result).dump(2) << '\n';
      } else {
        print_decision(result, out);
      }
      return 0;
    }
    if (*fulfill_cmd) return run_fulfill(common, option, inventory, depth, out);
    if (*infer_cmd) return run_infer(common, order, links, derived_id, out);
    if (*explain_cmd) {
      explain_args.has_inventory = explain_cmd->count("--inventory") > 0;
      return run_explain(common, choice, explain_args, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.error_class() == ErrorClass::Usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace prefkb
