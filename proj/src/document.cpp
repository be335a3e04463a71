#include "prefkb/document.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "prefkb/error.hpp"

namespace prefkb {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::string_view kFormat = "prefkb-kb";
constexpr int kFormatVersion = 1;

std::string quote(std::string_view s) { return "'" + std::string(s) + "'"; }

std::string line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

// Typed field access that reports schema problems as JSON pointers.
class Reader {
 public:
  static const json& field(const json& obj, const std::string& ptr, const char* key) {
    if (!obj.is_object()) throw ParseError(ptr.empty() ? "/" : ptr, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(ptr + "/" + key, "missing required field");
    return *it;
  }
  static const json* optional(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }
  static std::string string(const json& v, const std::string& ptr) {
    if (!v.is_string()) throw ParseError(ptr, "expected a string");
    return v.get<std::string>();
  }
  static std::string string(const json& obj, const std::string& ptr, const char* key) {
    return string(field(obj, ptr, key), ptr + "/" + key);
  }
  static bool boolean(const json& obj, const std::string& ptr, const char* key, bool fallback) {
    const json* v = optional(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) throw ParseError(ptr + "/" + key, "expected a boolean");
    return v->get<bool>();
  }
  static const json& array(const json& v, const std::string& ptr) {
    if (!v.is_array()) throw ParseError(ptr, "expected an array");
    return v;
  }
  static std::vector<std::string> strings(const json& v, const std::string& ptr) {
    std::vector<std::string> out;
    std::size_t i = 0;
    for (const auto& e : array(v, ptr)) out.push_back(string(e, ptr + "/" + std::to_string(i++)));
    return out;
  }
  static std::pair<std::string, std::string> pair(const json& v, const std::string& ptr) {
    auto xs = strings(v, ptr);
    if (xs.size() != 2) throw ParseError(ptr, "expected a pair of strings");
    return {xs[0], xs[1]};
  }
};

// Records of an optional top-level section with their pointers.
std::vector<std::pair<const json*, std::string>> section(const json& doc, const char* key) {
  std::vector<std::pair<const json*, std::string>> out;
  const json* v = Reader::optional(doc, key);
  if (!v) return out;
  const std::string ptr = std::string("/") + key;
  Reader::array(*v, ptr);
  for (std::size_t i = 0; i < v->size(); ++i) {
    const std::string p = ptr + "/" + std::to_string(i);
    if (!(*v)[i].is_object()) throw ParseError(p, "expected an object");
    out.emplace_back(&(*v)[i], p);
  }
  return out;
}

LiteralRange literal_range(const std::string& s, const std::string& ptr) {
  if (s == "string") return LiteralRange::String;
  if (s == "integer") return LiteralRange::Integer;
  throw ParseError(ptr, "literal must be \"string\" or \"integer\", got " + quote(s));
}

// Re-raises knowledge-base errors about unknown names as reference errors
// located at the offending record.
template <typename F>
void at(const std::string& ptr, F&& f) {
  try {
    f();
  } catch (const UnknownConcept& e) {
    throw ReferenceError(ptr + ": " + e.what());
  } catch (const UnknownRelation& e) {
    throw ReferenceError(ptr + ": " + e.what());
  } catch (const UnknownIndividual& e) {
    throw ReferenceError(ptr + ": " + e.what());
  } catch (const UnknownElement& e) {
    throw ReferenceError(ptr + ": " + e.what());
  } catch (const UnknownDescription& e) {
    throw ReferenceError(ptr + ": " + e.what());
  } catch (const CrossOrderError& e) {
    throw ValidationFailed(ptr + ": " + e.what());
  } catch (const CycleError& e) {
    throw ValidationFailed(ptr + ": " + e.what());
  } catch (const CycleIntroduced& e) {
    throw ValidationFailed(ptr + ": " + e.what());
  } catch (const ReferenceError&) {
    throw;
  } catch (const ValidationFailed&) {
    throw;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(ptr, e.what());
  }
}

void load_concepts(KnowledgeBase& kb, const json& doc) {
  const auto pristine = ConceptTaxonomy::with_builtins();
  std::map<std::string, std::pair<std::vector<std::string>, std::string>> pending;  // name -> parents, ptr
  std::vector<std::pair<std::string, std::string>> builtin_extras;                  // (child, parent)
  std::vector<std::string> extra_ptrs;
  for (const auto& [rec, ptr] : section(doc, "concepts")) {
    const auto name = Reader::string(*rec, ptr, "name");
    std::vector<std::string> parents;
    if (const json* p = Reader::optional(*rec, "parents")) parents = Reader::strings(*p, ptr + "/parents");
    if (pristine.contains(name)) {
      for (const auto& parent : parents) {
        builtin_extras.emplace_back(name, parent);
        extra_ptrs.push_back(ptr);
      }
      continue;
    }
    if (!pending.emplace(name, std::make_pair(parents, ptr)).second) {
      throw ParseError(ptr + "/name", "duplicate concept " + quote(name));
    }
  }
  for (const auto& [name, entry] : pending) {
    for (const auto& parent : entry.first) {
      if (!pristine.contains(parent) && !pending.count(parent)) {
        throw ReferenceError(entry.second + ": unknown parent concept " + quote(parent) + " of " + quote(name));
      }
    }
  }
  // Parents before children; ties broken by name for a deterministic layout.
  std::map<std::string, int> waiting;
  std::map<std::string, std::vector<std::string>> children;
  std::set<std::string> ready;
  for (const auto& [name, entry] : pending) {
    int n = 0;
    for (const auto& parent : entry.first) {
      if (pending.count(parent)) {
        ++n;
        children[parent].push_back(name);
      }
    }
    waiting[name] = n;
    if (n == 0) ready.insert(name);
  }
  std::size_t defined = 0;
  while (!ready.empty()) {
    const std::string name = *ready.begin();
    ready.erase(ready.begin());
    const auto& [parents, ptr] = pending.at(name);
    at(ptr, [&] { kb.define_concept(name, parents); });
    ++defined;
    for (const auto& c : children[name]) {
      if (--waiting[c] == 0) ready.insert(c);
    }
  }
  if (defined != pending.size()) {
    std::string stuck;
    for (const auto& [name, n] : waiting) {
      if (n > 0) stuck += (stuck.empty() ? "" : ", ") + name;
    }
    throw ValidationFailed("/concepts: cyclic concept hierarchy among " + stuck);
  }
  for (std::size_t i = 0; i < builtin_extras.size(); ++i) {
    const auto& [child, parent] = builtin_extras[i];
    const auto current = kb.taxonomy().parents(child);
    if (std::find(current.begin(), current.end(), parent) != current.end()) continue;
    at(extra_ptrs[i], [&] { kb.add_parent(child, parent); });
  }
}

void load_relations(KnowledgeBase& kb, const json& doc) {
  std::vector<std::tuple<std::string, std::string, std::string>> inverses;  // name, inverse, ptr
  for (const auto& [rec, ptr] : section(doc, "relations")) {
    RelationDecl d;
    d.name = Reader::string(*rec, ptr, "name");
    if (Reader::optional(*rec, "domain")) d.domain = Reader::string(*rec, ptr, "domain");
    if (Reader::optional(*rec, "range")) d.range = Reader::string(*rec, ptr, "range");
    d.functional = Reader::boolean(*rec, ptr, "functional", false);
    if (Reader::optional(*rec, "literal")) d.literal = literal_range(Reader::string(*rec, ptr, "literal"), ptr + "/literal");
    if (Reader::optional(*rec, "inverse")) inverses.emplace_back(d.name, Reader::string(*rec, ptr, "inverse"), ptr);
    if (kb.has_relation(d.name)) throw ParseError(ptr + "/name", "duplicate relation " + quote(d.name));
    at(ptr, [&] { kb.declare_relation(d); });
  }
  for (const auto& [name, inverse, ptr] : inverses) {
    if (!kb.has_relation(inverse)) throw ReferenceError(ptr + ": unknown inverse relation " + quote(inverse));
    if (kb.relation(name).inverse == inverse) continue;
    at(ptr, [&] { kb.link_inverse(name, inverse); });
  }
}

void load_descriptions(KnowledgeBase& kb, const json& doc) {
  for (const auto& [rec, ptr] : section(doc, "descriptions")) {
    const auto id = Reader::string(*rec, ptr, "id");
    std::vector<PatternVar> vars;
    std::size_t i = 0;
    for (const auto& v : Reader::array(Reader::field(*rec, ptr, "vars"), ptr + "/vars")) {
      const std::string vp = ptr + "/vars/" + std::to_string(i++);
      vars.push_back({Reader::string(v, vp, "name"), Reader::string(v, vp, "concept")});
    }
    std::vector<PatternEdge> edges;
    if (const json* es = Reader::optional(*rec, "edges")) {
      i = 0;
      for (const auto& e : Reader::array(*es, ptr + "/edges")) {
        const std::string ep = ptr + "/edges/" + std::to_string(i++);
        edges.push_back({Reader::string(e, ep, "s"), Reader::string(e, ep, "p"), Reader::string(e, ep, "o")});
      }
    }
    std::vector<std::pair<std::string, std::string>> distinct;
    if (const json* ds = Reader::optional(*rec, "distinct")) {
      i = 0;
      for (const auto& d : Reader::array(*ds, ptr + "/distinct")) {
        distinct.push_back(Reader::pair(d, ptr + "/distinct/" + std::to_string(i++)));
      }
    }
    at(ptr, [&] { kb.add_description(DescriptionPattern(id, std::move(vars), std::move(edges), std::move(distinct))); });
  }
}

Value object_of(const json& rec, const std::string& ptr) {
  const json* o = Reader::optional(rec, "o");
  const json* lit = Reader::optional(rec, "lit");
  if (o && lit) throw ParseError(ptr, "triple has both \"o\" and \"lit\"");
  if (o) return Value::individual(Reader::string(*o, ptr + "/o"));
  if (!lit) throw ParseError(ptr + "/o", "missing required field");
  if (lit->is_string()) return Value::string(lit->get<std::string>());
  if (lit->is_number_integer()) return Value::integer(lit->get<std::int64_t>());
  throw ParseError(ptr + "/lit", "literal must be a string or an integer");
}

KnowledgeBase build(const json& doc, const LoadOptions& options) {
  if (!doc.is_object()) throw ParseError("/", "document must be a JSON object");
  if (Reader::string(doc, "", "format") != kFormat) {
    throw ParseError("/format", "expected \"" + std::string(kFormat) + "\"");
  }
  const json& version = Reader::field(doc, "", "format-version");
  if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
    throw ParseError("/format-version", "unsupported format version (expected " + std::to_string(kFormatVersion) + ")");
  }

  KnowledgeBase kb;
  load_concepts(kb, doc);
  load_relations(kb, doc);
  for (const auto& [rec, ptr] : section(doc, "individuals")) {
    const auto id = Reader::string(*rec, ptr, "id");
    std::vector<std::string> types;
    if (const json* t = Reader::optional(*rec, "types")) types = Reader::strings(*t, ptr + "/types");
    at(ptr, [&] { kb.declare_individual(id, types); });
  }
  load_descriptions(kb, doc);

  auto require = [&](const std::string& id, const std::string& ptr) {
    if (options.strict && !kb.has_individual(id)) throw ReferenceError(ptr + ": undeclared individual " + quote(id));
  };

  const auto orders = section(doc, "orders");
  for (const auto& [rec, ptr] : orders) {
    const auto id = Reader::string(*rec, ptr, "id");
    OrderMode mode = OrderMode::Strict;
    if (Reader::optional(*rec, "mode")) {
      const auto m = Reader::string(*rec, ptr, "mode");
      if (m == "lenient") {
        mode = OrderMode::Lenient;
      } else if (m != "strict") {
        throw ParseError(ptr + "/mode", "mode must be \"strict\" or \"lenient\"");
      }
    }
    at(ptr, [&] { kb.add_order(id, mode); });
    if (const json* elements = Reader::optional(*rec, "elements")) {
      std::size_t i = 0;
      for (const auto& e : Reader::array(*elements, ptr + "/elements")) {
        const std::string ep = ptr + "/elements/" + std::to_string(i++);
        const auto element = Reader::string(e, ep, "id");
        at(ep, [&] {
          kb.declare_individual(element, {std::string(concepts::kOrderedElement)});
          kb.insert_unchecked({element, std::string(relations::kOrderedBy), Value::individual(id)});
          if (Reader::optional(e, "encapsulates")) {
            const auto description = Reader::string(e, ep, "encapsulates");
            if (!kb.has_description(description)) {
              throw ReferenceError(ep + ": unknown description " + quote(description));
            }
            kb.insert_unchecked({element, std::string(relations::kEncapsulates), Value::individual(description)});
          }
        });
      }
    }
  }

  for (const auto& [rec, ptr] : section(doc, "preferences")) {
    const auto id = Reader::string(*rec, ptr, "id");
    at(ptr, [&] { kb.declare_individual(id, {std::string(concepts::kPreference)}); });
    if (Reader::optional(*rec, "bearer")) {
      const auto bearer = Reader::string(*rec, ptr, "bearer");
      require(bearer, ptr + "/bearer");
      at(ptr, [&] { kb.insert_unchecked({bearer, std::string(relations::kHasPreference), Value::individual(id)}); });
    }
    if (Reader::optional(*rec, "order")) {
      const auto order = Reader::string(*rec, ptr, "order");
      if (!kb.has_order(order)) throw ReferenceError(ptr + "/order: unknown order " + quote(order));
      at(ptr, [&] { kb.insert_unchecked({order, std::string(relations::kDescribes), Value::individual(id)}); });
    }
  }

  for (const auto& [rec, ptr] : section(doc, "causal-links")) {
    const auto cause = Reader::string(*rec, ptr, "cause");
    const auto effect = Reader::string(*rec, ptr, "effect");
    for (const auto& d : {cause, effect}) {
      if (!kb.has_description(d)) throw ReferenceError(ptr + ": unknown description " + quote(d));
    }
    at(ptr, [&] { kb.add_causal_link(cause, effect); });
  }

  for (const auto& [rec, ptr] : section(doc, "triples")) {
    Triple t{Reader::string(*rec, ptr, "s"), Reader::string(*rec, ptr, "p"), object_of(*rec, ptr)};
    require(t.subject, ptr + "/s");
    if (!t.object.is_literal()) require(t.object.text, ptr + "/o");
    at(ptr, [&] { kb.insert_unchecked(t); });
  }

  for (const auto& [rec, ptr] : orders) {
    const json* leq = Reader::optional(*rec, "leq");
    if (!leq) continue;
    const auto id = Reader::string(*rec, ptr, "id");
    std::size_t i = 0;
    for (const auto& pair : Reader::array(*leq, ptr + "/leq")) {
      const std::string pp = ptr + "/leq/" + std::to_string(i++);
      const auto [a, b] = Reader::pair(pair, pp);
      const auto& order = kb.order(id);
      if (!order.contains(a)) throw ReferenceError(pp + ": " + quote(a) + " is not an element of " + quote(id));
      if (!order.contains(b)) throw ReferenceError(pp + ": " + quote(b) + " is not an element of " + quote(id));
      at(pp, [&] { kb.add_leq(a, b); });
    }
  }
  return kb;
}

LoadResult finish(KnowledgeBase kb, const LoadOptions& options) {
  LoadResult result{std::move(kb), {}};
  result.report = validate(result.kb);
  if (options.strict && !result.report.ok()) {
    const auto& first = result.report.violations.front();
    throw ValidationFailed("document fails validation (" + std::to_string(result.report.size()) +
                           " violations), first: " + first.message);
  }
  return result;
}

}  // namespace

LoadResult load_string(std::string_view text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string message = e.what();
    if (auto pos = message.find("parse error"); pos != std::string::npos) message = message.substr(pos);
    throw ParseError(line_col(text, e.byte), message);
  }
  return finish(build(doc, options), options);
}

LoadResult load(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + quote(path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_string(buf.str(), options);
}

std::string to_document_string(const KnowledgeBase& kb) {
  const auto& tax = kb.taxonomy();
  const auto pristine = ConceptTaxonomy::with_builtins();
  ordered_json doc;
  doc["format"] = kFormat;
  doc["format-version"] = kFormatVersion;

  auto concepts = ordered_json::array();
  for (const auto& name : tax.concept_names()) {
    auto parents = tax.parents(name);
    std::sort(parents.begin(), parents.end());
    if (pristine.contains(name)) {
      auto original = pristine.parents(name);
      std::vector<std::string> extra;
      for (const auto& p : parents) {
        if (std::find(original.begin(), original.end(), p) == original.end()) extra.push_back(p);
      }
      if (extra.empty()) continue;
      parents = std::move(extra);
    }
    concepts.push_back({{"name", name}, {"parents", parents}});
  }
  doc["concepts"] = std::move(concepts);

  auto relations = ordered_json::array();
  for (const auto& name : kb.relation_names()) {
    if (kb.is_builtin_relation(name)) continue;
    const auto& d = kb.relation(name);
    ordered_json rec{{"name", d.name}, {"domain", d.domain}, {"range", d.range}, {"functional", d.functional}};
    if (!d.inverse.empty()) rec["inverse"] = d.inverse;
    if (d.literal != LiteralRange::None) rec["literal"] = d.literal == LiteralRange::String ? "string" : "integer";
    relations.push_back(std::move(rec));
  }
  doc["relations"] = std::move(relations);

  // Individuals whose only type is the one their record implies are left out.
  std::map<std::string, std::string> implied;
  for (const auto& id : kb.description_ids()) implied.emplace(id, concepts::kDescription);
  for (const auto& id : kb.order_ids()) {
    implied.emplace(id, concepts::kPreferenceOrder);
    for (const auto& e : kb.order(id).elements()) implied.emplace(e, concepts::kOrderedElement);
  }
  for (const auto& id : kb.preference_ids()) implied.emplace(id, concepts::kPreference);

  auto individuals = ordered_json::array();
  for (const auto& id : kb.individual_ids()) {
    const auto types = kb.types_of(id);
    auto it = implied.find(id);
    if (it != implied.end() && types.size() == 1 && types.front() == it->second) continue;
    individuals.push_back({{"id", id}, {"types", types}});
  }
  doc["individuals"] = std::move(individuals);
  doc["triples"] = ordered_json::array();  // filled last, once records have claimed their assertions

  auto descriptions = ordered_json::array();
  for (const auto& id : kb.description_ids()) {
    const auto& p = kb.description(id);
    auto vars = ordered_json::array();
    for (const auto& v : p.vars()) vars.push_back({{"name", v.name}, {"concept", v.concept_name}});
    auto edges = ordered_json::array();
    for (const auto& e : p.edges()) edges.push_back({{"s", e.from}, {"p", e.relation}, {"o", e.to}});
    auto distinct = ordered_json::array();
    for (const auto& [a, b] : p.distinct()) distinct.push_back({a, b});
    descriptions.push_back({{"id", id}, {"vars", vars}, {"edges", edges}, {"distinct", distinct}});
  }
  doc["descriptions"] = std::move(descriptions);

  std::set<Triple> covered;  // assertions some record already expresses
  auto cover = [&](const std::string& s, std::string_view r, const std::string& o) {
    covered.insert({s, std::string(r), Value::individual(o)});
  };

  auto orders = ordered_json::array();
  for (const auto& id : kb.order_ids()) {
    const auto& order = kb.order(id);
    auto elements = ordered_json::array();
    for (const auto& e : order.elements()) {
      ordered_json rec{{"id", e}};
      cover(e, relations::kOrderedBy, id);
      if (const auto& d = order.encapsulated(e); !d.empty()) {
        rec["encapsulates"] = d;
        cover(e, relations::kEncapsulates, d);
      }
      elements.push_back(std::move(rec));
    }
    auto leq = ordered_json::array();
    for (const auto& [a, b] : order.asserted_pairs()) leq.push_back({a, b});
    orders.push_back({{"id", id},
                      {"mode", order.mode() == OrderMode::Lenient ? "lenient" : "strict"},
                      {"elements", elements},
                      {"leq", leq}});
  }
  doc["orders"] = std::move(orders);

  auto preferences = ordered_json::array();
  for (const auto& id : kb.preference_ids()) {
    const auto p = kb.preference(id);
    ordered_json rec{{"id", id}};
    if (!p.bearer.empty()) {
      rec["bearer"] = p.bearer;
      cover(p.bearer, relations::kHasPreference, id);
    }
    if (!p.order.empty()) {
      rec["order"] = p.order;
      cover(p.order, relations::kDescribes, id);
    }
    preferences.push_back(std::move(rec));
  }
  doc["preferences"] = std::move(preferences);

  auto links = ordered_json::array();
  for (const auto& l : kb.causal_links()) {
    links.push_back({{"cause", l.cause}, {"effect", l.effect}});
    cover(l.cause, relations::kBringsAbout, l.effect);
  }
  doc["causal-links"] = std::move(links);

  auto triples = ordered_json::array();
  for (const auto& t : kb.triples()) {
    const auto& d = kb.relation(t.relation);
    // Inverse pairs are written once, in the direction of the smaller name.
    if (!d.inverse.empty() && d.inverse != d.name && d.inverse < d.name) continue;
    if (covered.count(t)) continue;
    ordered_json rec{{"s", t.subject}, {"p", t.relation}};
    switch (t.object.kind) {
      case ValueKind::Individual: rec["o"] = t.object.text; break;
      case ValueKind::String: rec["lit"] = t.object.text; break;
      case ValueKind::Integer: rec["lit"] = t.object.number; break;
    }
    triples.push_back(std::move(rec));
  }
  doc["triples"] = std::move(triples);
  return doc.dump(2) + "\n";
}

void save(const KnowledgeBase& kb, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + quote(path.string()));
  out << to_document_string(kb);
  if (!out) throw IoError("failed writing " + quote(path.string()));
}

}  // namespace prefkb
