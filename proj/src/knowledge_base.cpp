#include "prefkb/knowledge_base.hpp"

#include <algorithm>
#include <deque>

#include "prefkb/error.hpp"

namespace prefkb {

namespace {

// Built-in relations are declared first, in this order.
enum : RelationIndex {
  kHasSettingIdx,
  kSatisfiesIdx,
  kHasPreferenceIdx,
  kDescribesIdx,
  kOrdersIdx,
  kOrderedByIdx,
  kEncapsulatesIdx,
  kLeqIdx,
  kGeqIdx,
  kGreaterIdx,
  kLessIdx,
  kPerformedByIdx,
  kObjectActedOnIdx,
  kBringsAboutIdx,
};

RelationDecl builtin(std::string_view name, std::string_view domain, std::string_view range,
                     RelationKind kind = RelationKind::Stored, bool functional = false) {
  RelationDecl d;
  d.name = name;
  d.domain = domain;
  d.range = range;
  d.kind = kind;
  d.functional = functional;
  return d;
}

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

KnowledgeBase::KnowledgeBase() : taxonomy_(ConceptTaxonomy::with_builtins()) {
  using namespace concepts;
  using namespace relations;
  declare_relation(builtin(kHasSetting, kSituation, kEntity));
  declare_relation(builtin(kSatisfies, kSituation, kDescription, RelationKind::Satisfies));
  declare_relation(builtin(kHasPreference, kAgent, kPreference));
  declare_relation(builtin(kDescribes, kDescription, kPreference));
  declare_relation(builtin(kOrders, kPreferenceOrder, kOrderedElement));
  declare_relation(builtin(kOrderedBy, kOrderedElement, kPreferenceOrder, RelationKind::Stored, true));
  declare_relation(builtin(kEncapsulates, kOrderedElement, kDescription, RelationKind::Stored, true));
  declare_relation(builtin(kLeq, kOrderedElement, kOrderedElement, RelationKind::Leq));
  declare_relation(builtin(kGeq, kOrderedElement, kOrderedElement, RelationKind::Geq));
  declare_relation(builtin(kGreater, kOrderedElement, kOrderedElement, RelationKind::Greater));
  declare_relation(builtin(kLess, kOrderedElement, kOrderedElement, RelationKind::Less));
  declare_relation(builtin(kPerformedBy, kEvent, kAgent));
  declare_relation(builtin(kObjectActedOn, kEvent, kEntity));
  declare_relation(builtin(kBringsAbout, kDescription, kDescription));
  link_inverse(std::string(kOrders), std::string(kOrderedBy));
  relations_[kLeqIdx].inverse = kGeq;
  relations_[kGeqIdx].inverse = kLeq;
  relations_[kGreaterIdx].inverse = kLess;
  relations_[kLessIdx].inverse = kGreater;
  builtin_relations_ = relations_.size();
}

// Taxonomy ---------------------------------------------------------------------

ConceptIndex KnowledgeBase::define_concept(const std::string& name, const std::vector<std::string>& parents) {
  return taxonomy_.define_concept(name, parents);
}

void KnowledgeBase::add_parent(const std::string& child, const std::string& parent) {
  taxonomy_.add_parent(child, parent);
  const auto order_concept = taxonomy_.index_of(concepts::kPreferenceOrder);
  for (IndividualIndex i = 0; i < individuals_.size(); ++i) {
    if (instance_of(i, order_concept)) ensure_order_record(i, OrderMode::Strict);
  }
}

// Relations --------------------------------------------------------------------

RelationIndex KnowledgeBase::declare_relation(RelationDecl decl) {
  if (decl.name.empty()) throw InvalidArgument("relation name must not be empty");
  if (decl.name == "a") throw InvalidArgument("'a' is reserved for type assertions");
  if (has_relation(decl.name)) throw DuplicateRelation("relation " + quoted(decl.name) + " already declared");
  taxonomy_.index_of(decl.domain);
  if (decl.literal == LiteralRange::None) taxonomy_.index_of(decl.range);
  std::string inverse = std::move(decl.inverse);
  decl.inverse.clear();
  if (!inverse.empty() && inverse != decl.name && !has_relation(inverse)) {
    throw UnknownRelation("relation " + quoted(decl.name) + ": unknown inverse " + quoted(inverse));
  }
  const auto r = static_cast<RelationIndex>(relations_.size());
  relation_index_.emplace(decl.name, r);
  const std::string name = decl.name;
  relations_.push_back(std::move(decl));
  stores_.emplace_back();
  if (!inverse.empty()) link_inverse(name, inverse);
  return r;
}

void KnowledgeBase::link_inverse(const std::string& a, const std::string& b) {
  const auto ra = require_relation(a), rb = require_relation(b);
  auto& da = relations_[ra];
  auto& db = relations_[rb];
  if (da.is_virtual() || db.is_virtual()) throw InvalidArgument("computed relations cannot be linked as inverses");
  if (da.literal != LiteralRange::None || db.literal != LiteralRange::None) {
    throw InvalidArgument("literal-valued relations have no inverse");
  }
  if ((!da.inverse.empty() && da.inverse != b) || (!db.inverse.empty() && db.inverse != a)) {
    throw InvalidArgument("relations " + quoted(a) + " and " + quoted(b) + " already have other inverses");
  }
  da.inverse = b;
  db.inverse = a;
  for (RelationIndex r : {ra, rb}) {
    for (auto s : subject_indices(r)) {
      const std::vector<ObjectRef> objs(objects_at(r, s).begin(), objects_at(r, s).end());
      for (auto o : objs) insert_both(s, r, o);
    }
  }
}

const RelationDecl& KnowledgeBase::relation(std::string_view name) const {
  return relations_[require_relation(name)];
}

std::vector<std::string> KnowledgeBase::relation_names() const {
  std::vector<std::string> out;
  for (const auto& r : relations_) out.push_back(r.name);
  std::sort(out.begin(), out.end());
  return out;
}

bool KnowledgeBase::is_builtin_relation(std::string_view name) const noexcept {
  auto r = find_relation(name);
  return r && *r < builtin_relations_;
}

std::optional<RelationIndex> KnowledgeBase::find_relation(std::string_view name) const noexcept {
  auto it = relation_index_.find(std::string(name));
  if (it == relation_index_.end()) return std::nullopt;
  return it->second;
}

RelationIndex KnowledgeBase::require_relation(std::string_view name) const {
  if (auto r = find_relation(name)) return *r;
  throw UnknownRelation("unknown relation " + quoted(name));
}

// Individuals ------------------------------------------------------------------

std::optional<IndividualIndex> KnowledgeBase::find_individual(std::string_view id) const noexcept {
  auto it = individual_index_.find(std::string(id));
  if (it == individual_index_.end()) return std::nullopt;
  return it->second;
}

IndividualIndex KnowledgeBase::require_individual(std::string_view id, const char* role) const {
  auto i = find_individual(id);
  if (!i || !individuals_[*i].declared) {
    throw UnknownIndividual(std::string("unknown ") + role + " " + quoted(id));
  }
  return *i;
}

IndividualIndex KnowledgeBase::intern_individual(const std::string& id) {
  if (auto i = find_individual(id)) return *i;
  const auto i = static_cast<IndividualIndex>(individuals_.size());
  individuals_.push_back({id, {}, false});
  individual_index_.emplace(id, i);
  outgoing_.emplace_back();
  return i;
}

void KnowledgeBase::add_type_index(IndividualIndex i, ConceptIndex c) {
  auto& types = individuals_[i].types;
  if (std::find(types.begin(), types.end(), c) != types.end()) return;
  types.push_back(c);
  std::sort(types.begin(), types.end());
  if (taxonomy_.is_subconcept(c, taxonomy_.index_of(concepts::kPreferenceOrder))) {
    ensure_order_record(i, OrderMode::Strict);
  }
}

void KnowledgeBase::declare_individual(const std::string& id, const std::vector<std::string>& types) {
  if (id.empty()) throw InvalidArgument("individual id must not be empty");
  if (types.empty()) throw InvalidArgument("individual " + quoted(id) + " needs at least one type");
  std::vector<ConceptIndex> resolved;
  for (const auto& t : types) resolved.push_back(taxonomy_.index_of(t));
  const auto i = intern_individual(id);
  individuals_[i].declared = true;
  for (auto c : resolved) add_type_index(i, c);
}

bool KnowledgeBase::has_individual(std::string_view id) const noexcept {
  auto i = find_individual(id);
  return i && individuals_[*i].declared;
}

std::vector<std::string> KnowledgeBase::types_of(std::string_view id) const {
  std::vector<std::string> out;
  for (auto c : individuals_[require_individual(id, "individual")].types) out.push_back(taxonomy_.name(c));
  std::sort(out.begin(), out.end());
  return out;
}

bool KnowledgeBase::instance_of(IndividualIndex i, ConceptIndex c) const noexcept {
  for (auto t : individuals_[i].types) {
    if (taxonomy_.is_subconcept(t, c)) return true;
  }
  return false;
}

bool KnowledgeBase::instance_of(std::string_view id, std::string_view concept_name) const {
  return instance_of(require_individual(id, "individual"), taxonomy_.index_of(concept_name));
}

std::vector<std::string> KnowledgeBase::individual_ids() const {
  std::vector<std::string> out;
  for (const auto& rec : individuals_) {
    if (rec.declared) out.push_back(rec.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> KnowledgeBase::instances_of(std::string_view concept_name) const {
  const auto c = taxonomy_.index_of(concept_name);
  std::vector<std::string> out;
  for (IndividualIndex i = 0; i < individuals_.size(); ++i) {
    if (individuals_[i].declared && instance_of(i, c)) out.push_back(individuals_[i].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> KnowledgeBase::dangling_ids() const {
  std::vector<std::string> out;
  for (const auto& rec : individuals_) {
    if (!rec.declared) out.push_back(rec.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Assertions -------------------------------------------------------------------

std::optional<ObjectRef> KnowledgeBase::find_literal(const Value& v) const noexcept {
  auto it = literal_index_.find(v);
  if (it == literal_index_.end()) return std::nullopt;
  return ObjectRef{it->second, true};
}

ObjectRef KnowledgeBase::intern_object(const Value& v) {
  if (!v.is_literal()) return {intern_individual(v.text), false};
  if (auto ref = find_literal(v)) return *ref;
  const auto i = static_cast<std::uint32_t>(literals_.size());
  literals_.push_back(v);
  literal_index_.emplace(v, i);
  return {i, true};
}

Value KnowledgeBase::value_of(ObjectRef ref) const {
  if (ref.literal) return literals_[ref.index];
  return Value::individual(individuals_[ref.index].id);
}

std::span<const ObjectRef> KnowledgeBase::objects_at(RelationIndex r, IndividualIndex s) const noexcept {
  const auto& m = stores_[r].by_subject;
  auto it = m.find(s);
  if (it == m.end()) return {};
  return it->second;
}

std::span<const IndividualIndex> KnowledgeBase::subjects_at(RelationIndex r, ObjectRef o) const noexcept {
  const auto& m = stores_[r].by_object;
  auto it = m.find(o);
  if (it == m.end()) return {};
  return it->second;
}

std::vector<IndividualIndex> KnowledgeBase::subject_indices(RelationIndex r) const {
  std::vector<IndividualIndex> out;
  out.reserve(stores_[r].by_subject.size());
  for (const auto& [s, objs] : stores_[r].by_subject) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

bool KnowledgeBase::has_triple(IndividualIndex s, RelationIndex r, ObjectRef o) const noexcept {
  return triple_set_.count(TripleKey{s, r, o}) > 0;
}

std::span<const std::pair<RelationIndex, ObjectRef>> KnowledgeBase::outgoing(IndividualIndex s) const noexcept {
  return outgoing_[s];
}

bool KnowledgeBase::store_one(IndividualIndex s, RelationIndex r, ObjectRef o) {
  if (!triple_set_.insert(TripleKey{s, r, o}).second) return false;
  auto& store = stores_[r];
  store.by_subject[s].push_back(o);
  store.by_object[o].push_back(s);
  ++store.size;
  outgoing_[s].emplace_back(r, o);
  return true;
}

void KnowledgeBase::insert_both(IndividualIndex s, RelationIndex r, ObjectRef o) {
  if (store_one(s, r, o)) after_insert(s, r, o);
  const auto& inverse = relations_[r].inverse;
  if (inverse.empty() || o.literal) return;
  const auto q = require_relation(inverse);
  const ObjectRef back{s, false};
  if (store_one(o.index, q, back)) after_insert(o.index, q, back);
}

void KnowledgeBase::after_insert(IndividualIndex s, RelationIndex r, ObjectRef o) {
  if (o.literal) return;
  if (r == kOrderedByIdx) {
    auto order = orders_.find(individuals_[o.index].id);
    if (order == orders_.end()) return;
    std::string description;
    for (auto d : objects_at(kEncapsulatesIdx, s)) {
      const auto& id = individuals_[d.index].id;
      if (!d.literal && (description.empty() || id < description)) description = id;
    }
    order->second.add_element(individuals_[s].id, description);
    auto& owners = element_orders_[s];
    if (std::find(owners.begin(), owners.end(), order->first) == owners.end()) {
      owners.push_back(order->first);
      std::sort(owners.begin(), owners.end());
    }
  } else if (r == kEncapsulatesIdx) {
    auto it = element_orders_.find(s);
    if (it == element_orders_.end()) return;
    const auto& description = individuals_[o.index].id;
    for (const auto& order_id : it->second) {
      auto& order = orders_.at(order_id);
      const auto& current = order.encapsulated(individuals_[s].id);
      if (current.empty() || description < current) order.add_element(individuals_[s].id, description);
    }
  }
}

void KnowledgeBase::ensure_order_record(IndividualIndex i, OrderMode mode) {
  const auto& id = individuals_[i].id;
  if (orders_.count(id)) return;
  orders_.emplace(id, PreferenceOrder(id, mode));
  const std::vector<IndividualIndex> members(subjects_at(kOrderedByIdx, {i, false}).begin(),
                                             subjects_at(kOrderedByIdx, {i, false}).end());
  for (auto e : members) after_insert(e, kOrderedByIdx, {i, false});
}

void KnowledgeBase::check_functional(IndividualIndex s, RelationIndex r, ObjectRef o) const {
  const auto& decl = relations_[r];
  if (decl.functional) {
    for (auto existing : objects_at(r, s)) {
      if (existing != o) {
        throw FunctionalViolation(quoted(individuals_[s].id) + " already has " + decl.name + " " +
                                  value_of(existing).to_string() + "; cannot add " + value_of(o).to_string());
      }
    }
  }
  if (!decl.inverse.empty() && !o.literal) {
    const auto q = require_relation(decl.inverse);
    if (relations_[q].functional) check_functional(o.index, q, {s, false});
  }
}

std::vector<std::string> KnowledgeBase::brings_about_path(IndividualIndex from, IndividualIndex to) const {
  std::unordered_map<IndividualIndex, IndividualIndex> prev{{from, from}};
  std::deque<IndividualIndex> queue{from};
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    if (x == to) {
      std::vector<std::string> path{individuals_[to].id};
      for (auto y = to; y != from;) {
        y = prev.at(y);
        path.push_back(individuals_[y].id);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto o : objects_at(kBringsAboutIdx, x)) {
      if (!o.literal && prev.emplace(o.index, x).second) queue.push_back(o.index);
    }
  }
  return {};
}

void KnowledgeBase::assert_triple(const std::string& subject, const std::string& relation, const Value& object) {
  const auto r = require_relation(relation);
  const auto& decl = relations_[r];
  switch (decl.kind) {
    case RelationKind::Leq:
    case RelationKind::Geq:
      if (object.is_literal()) throw TypeMismatch(relation + " relates ordered elements, not literals");
      if (decl.kind == RelationKind::Leq) {
        add_leq(subject, object.text);
      } else {
        add_leq(object.text, subject);
      }
      return;
    case RelationKind::Satisfies:
    case RelationKind::Greater:
    case RelationKind::Less:
      throw InvalidArgument("relation " + quoted(relation) + " is computed and cannot be asserted");
    case RelationKind::Stored:
      break;
  }
  const auto s = require_individual(subject, "subject");
  if (object.is_literal()) {
    const bool ok = (decl.literal == LiteralRange::String && object.kind == ValueKind::String) ||
                    (decl.literal == LiteralRange::Integer && object.kind == ValueKind::Integer);
    if (!ok) throw TypeMismatch("relation " + quoted(relation) + " does not accept literal " + object.to_string());
  } else {
    if (decl.literal != LiteralRange::None) {
      throw TypeMismatch("relation " + quoted(relation) + " expects a literal object");
    }
    require_individual(object.text, "object");
  }
  // Interning a literal is harmless even if a later check fails.
  const auto o = intern_object(object);
  if (has_triple(s, r, o)) return;
  check_functional(s, r, o);
  if (r == kBringsAboutIdx) {
    auto back = brings_about_path(o.index, s);
    if (!back.empty()) {
      back.push_back(back.front());
      std::string text;
      for (const auto& x : back) text += (text.empty() ? "" : " -> ") + x;
      throw CycleError("bringsAbout " + subject + " -> " + object.text + " closes a cycle: " + text,
                       std::move(back));
    }
  }
  insert_both(s, r, o);
}

void KnowledgeBase::insert_unchecked(const Triple& t) {
  auto r = find_relation(t.relation);
  if (!r) {
    RelationDecl d;
    d.name = t.relation;
    r = declare_relation(d);
  }
  const auto& decl = relations_[*r];
  if (decl.kind == RelationKind::Leq || decl.kind == RelationKind::Geq) {
    if (decl.kind == RelationKind::Leq) {
      add_leq(t.subject, t.object.text);
    } else {
      add_leq(t.object.text, t.subject);
    }
    return;
  }
  if (decl.is_virtual()) {
    throw InvalidArgument("relation " + quoted(t.relation) + " is computed and cannot be asserted");
  }
  const auto s = intern_individual(t.subject);
  const auto o = intern_object(t.object);
  insert_both(s, *r, o);
}

bool KnowledgeBase::contains(const std::string& subject, const std::string& relation, const Value& object) const {
  auto s = find_individual(subject);
  auto r = find_relation(relation);
  if (!s || !r) return false;
  std::optional<ObjectRef> o;
  if (object.is_literal()) {
    o = find_literal(object);
  } else if (auto i = find_individual(object.text)) {
    o = ObjectRef{*i, false};
  }
  return o && has_triple(*s, *r, *o);
}

std::vector<Triple> KnowledgeBase::triples() const {
  std::vector<Triple> out;
  out.reserve(triple_set_.size());
  for (const auto& k : triple_set_) {
    out.push_back({individuals_[k.s].id, relations_[k.r].name, value_of(k.o)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Value> KnowledgeBase::objects(std::string_view subject, std::string_view relation) const {
  std::vector<Value> out;
  auto s = find_individual(subject);
  if (!s) return out;
  for (auto o : objects_at(require_relation(relation), *s)) out.push_back(value_of(o));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> KnowledgeBase::subjects(std::string_view relation, const Value& object) const {
  std::vector<std::string> out;
  const auto r = require_relation(relation);
  std::optional<ObjectRef> o;
  if (object.is_literal()) {
    o = find_literal(object);
  } else if (auto i = find_individual(object.text)) {
    o = ObjectRef{*i, false};
  }
  if (!o) return out;
  for (auto s : subjects_at(r, *o)) out.push_back(individuals_[s].id);
  std::sort(out.begin(), out.end());
  return out;
}

// Descriptions -----------------------------------------------------------------

void KnowledgeBase::add_description(const DescriptionPattern& pattern) {
  if (has_description(pattern.id())) {
    throw InvalidPattern("description " + quoted(pattern.id()) + " already registered");
  }
  CompiledPattern compiled;
  for (const auto& v : pattern.vars()) compiled.var_concepts.push_back(taxonomy_.index_of(v.concept_name));
  for (const auto& e : pattern.edges()) {
    const auto r = require_relation(e.relation);
    if (relations_[r].is_virtual() || relations_[r].literal != LiteralRange::None) {
      throw InvalidPattern("description " + quoted(pattern.id()) + ": relation " + quoted(e.relation) +
                           " cannot be used as a pattern edge");
    }
    compiled.edges.push_back({*pattern.var_index(e.from), r, *pattern.var_index(e.to)});
  }
  for (const auto& [a, b] : pattern.distinct()) {
    compiled.distinct.emplace_back(*pattern.var_index(a), *pattern.var_index(b));
  }
  declare_individual(pattern.id(), {std::string(concepts::kDescription)});
  const auto i = *find_individual(pattern.id());
  description_index_.emplace(i, descriptions_.size());
  descriptions_.push_back({pattern, std::move(compiled), i});
}

bool KnowledgeBase::has_description(std::string_view id) const noexcept {
  auto i = find_individual(id);
  return i && description_index_.count(*i) > 0;
}

const DescriptionPattern& KnowledgeBase::description(std::string_view id) const {
  auto i = find_individual(id);
  if (i) {
    if (const auto* rec = description_record(*i)) return rec->pattern;
  }
  throw UnknownDescription("unknown description " + quoted(id));
}

std::vector<std::string> KnowledgeBase::description_ids() const {
  std::vector<std::string> out;
  for (const auto& d : descriptions_) out.push_back(d.pattern.id());
  std::sort(out.begin(), out.end());
  return out;
}

const DescriptionRecord* KnowledgeBase::description_record(IndividualIndex i) const noexcept {
  auto it = description_index_.find(i);
  if (it == description_index_.end()) return nullptr;
  return &descriptions_[it->second];
}

// Orders -----------------------------------------------------------------------

const PreferenceOrder& KnowledgeBase::add_order(const std::string& id, OrderMode mode) {
  auto it = orders_.find(id);
  if (it != orders_.end() && it->second.mode() != mode) {
    // Rebuild under the requested mode; strict replay rejects existing cycles.
    PreferenceOrder rebuilt(id, mode);
    for (const auto& e : it->second.elements()) rebuilt.add_element(e, it->second.encapsulated(e));
    for (const auto& [a, b] : it->second.asserted_pairs()) rebuilt.add_leq(a, b);
    it->second = std::move(rebuilt);
  }
  declare_individual(id, {std::string(concepts::kPreferenceOrder)});
  it = orders_.find(id);
  if (it == orders_.end()) {
    ensure_order_record(*find_individual(id), mode);
    it = orders_.find(id);
  }
  return it->second;
}

void KnowledgeBase::add_element(const std::string& order, const std::string& element, const std::string& description) {
  if (!has_order(order)) throw UnknownOrder("unknown order " + quoted(order));
  if (!has_individual(description)) throw UnknownIndividual("unknown description " + quoted(description));
  declare_individual(element, {std::string(concepts::kOrderedElement)});
  assert_triple(element, std::string(relations::kOrderedBy), order);
  assert_triple(element, std::string(relations::kEncapsulates), description);
}

namespace {

std::string common_order(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  for (const auto& x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return x;
  }
  return {};
}

}  // namespace

void KnowledgeBase::add_leq(const std::string& a, const std::string& b) {
  const auto oa = orders_of_element(a), ob = orders_of_element(b);
  if (oa.empty()) throw UnknownElement("no order contains element " + quoted(a));
  if (ob.empty()) throw UnknownElement("no order contains element " + quoted(b));
  const auto shared = common_order(oa, ob);
  if (shared.empty()) {
    throw CrossOrderError("elements " + quoted(a) + " (" + oa.front() + ") and " + quoted(b) + " (" +
                          ob.front() + ") belong to different orders");
  }
  orders_.at(shared).add_leq(a, b);
}

bool KnowledgeBase::leq(const std::string& a, const std::string& b) const {
  const auto oa = orders_of_element(a), ob = orders_of_element(b);
  if (oa.empty()) throw UnknownElement("no order contains element " + quoted(a));
  if (ob.empty()) throw UnknownElement("no order contains element " + quoted(b));
  const auto shared = common_order(oa, ob);
  if (shared.empty()) {
    throw CrossOrderError("elements " + quoted(a) + " and " + quoted(b) + " belong to different orders");
  }
  return orders_.at(shared).leq(a, b);
}

bool KnowledgeBase::has_order(std::string_view id) const noexcept { return orders_.find(id) != orders_.end(); }

const PreferenceOrder& KnowledgeBase::order(std::string_view id) const {
  auto it = orders_.find(id);
  if (it == orders_.end()) throw UnknownOrder("unknown order " + quoted(id));
  return it->second;
}

std::vector<std::string> KnowledgeBase::order_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, o] : orders_) out.push_back(id);
  return out;
}

std::vector<std::string> KnowledgeBase::orders_of_element(std::string_view element) const {
  auto i = find_individual(element);
  if (!i) return {};
  auto it = element_orders_.find(*i);
  if (it == element_orders_.end()) return {};
  return it->second;
}

const PreferenceOrder* KnowledgeBase::order_of_element(IndividualIndex i) const noexcept {
  auto it = element_orders_.find(i);
  if (it == element_orders_.end() || it->second.empty()) return nullptr;
  return &orders_.find(it->second.front())->second;
}

// Preferences ------------------------------------------------------------------

void KnowledgeBase::add_preference(const std::string& id, const std::string& bearer, const std::string& order) {
  const auto b = require_individual(bearer, "bearer");
  if (!instance_of(b, taxonomy_.index_of(concepts::kAgent))) {
    throw TypeMismatch("preference bearer " + quoted(bearer) + " is not an Agent");
  }
  if (!has_order(order)) throw UnknownOrder("unknown order " + quoted(order));
  declare_individual(id, {std::string(concepts::kPreference)});
  assert_triple(bearer, std::string(relations::kHasPreference), id);
  assert_triple(order, std::string(relations::kDescribes), id);
}

Preference KnowledgeBase::preference(std::string_view id) const {
  auto i = find_individual(id);
  if (!i || !individuals_[*i].declared || !instance_of(*i, taxonomy_.index_of(concepts::kPreference))) {
    throw UnknownPreference("unknown preference " + quoted(id));
  }
  Preference p{std::string(id), {}, {}};
  for (auto s : subjects_at(kHasPreferenceIdx, {*i, false})) {
    const auto& b = individuals_[s].id;
    if (p.bearer.empty() || b < p.bearer) p.bearer = b;
  }
  for (auto s : subjects_at(kDescribesIdx, {*i, false})) {
    const auto& o = individuals_[s].id;
    if (orders_.count(o) && (p.order.empty() || o < p.order)) p.order = o;
  }
  return p;
}

std::vector<std::string> KnowledgeBase::preference_ids() const {
  return instances_of(concepts::kPreference);
}

std::vector<std::string> KnowledgeBase::preferences_of(std::string_view agent) const {
  std::vector<std::string> out;
  auto a = find_individual(agent);
  if (!a) return out;
  const auto pref = taxonomy_.index_of(concepts::kPreference);
  for (auto o : objects_at(kHasPreferenceIdx, *a)) {
    if (!o.literal && individuals_[o.index].declared && instance_of(o.index, pref)) {
      out.push_back(individuals_[o.index].id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Causal links -----------------------------------------------------------------

void KnowledgeBase::add_causal_link(const std::string& cause, const std::string& effect) {
  if (!has_description(cause)) throw UnknownDescription("unknown description " + quoted(cause));
  if (!has_description(effect)) throw UnknownDescription("unknown description " + quoted(effect));
  assert_triple(cause, std::string(relations::kBringsAbout), effect);
}

std::vector<CausalLink> KnowledgeBase::causal_links() const {
  std::vector<CausalLink> out;
  for (auto s : subject_indices(kBringsAboutIdx)) {
    for (auto o : objects_at(kBringsAboutIdx, s)) {
      if (!o.literal) out.push_back({individuals_[s].id, individuals_[o.index].id});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace prefkb
