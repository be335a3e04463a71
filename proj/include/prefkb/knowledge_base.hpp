#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "prefkb/pattern.hpp"
#include "prefkb/preference_order.hpp"
#include "prefkb/taxonomy.hpp"
#include "prefkb/value.hpp"

namespace prefkb {

using IndividualIndex = std::uint32_t;
using RelationIndex = std::uint32_t;

namespace relations {
inline constexpr std::string_view kHasSetting = "hasSetting";
inline constexpr std::string_view kSatisfies = "satisfies";
inline constexpr std::string_view kHasPreference = "hasPreference";
inline constexpr std::string_view kDescribes = "describes";
inline constexpr std::string_view kOrders = "orders";
inline constexpr std::string_view kOrderedBy = "orderedBy";
inline constexpr std::string_view kEncapsulates = "encapsulates";
inline constexpr std::string_view kLeq = "leq";
inline constexpr std::string_view kGeq = "geq";
inline constexpr std::string_view kGreater = "greater";
inline constexpr std::string_view kLess = "less";
inline constexpr std::string_view kPerformedBy = "performedBy";
inline constexpr std::string_view kObjectActedOn = "objectActedOn";
inline constexpr std::string_view kBringsAbout = "bringsAbout";
}  // namespace relations

/// Stored relations live in the triple store. The others are computed on
/// demand: satisfies by pattern matching, the order relations from the
/// closure of the element's preference order.
enum class RelationKind : std::uint8_t { Stored, Satisfies, Leq, Geq, Greater, Less };

/// Literal-valued relations carry strings or integers instead of individuals.
enum class LiteralRange : std::uint8_t { None, String, Integer };

struct RelationDecl {
  std::string name;
  std::string domain = std::string(concepts::kEntity);
  std::string range = std::string(concepts::kEntity);  // ignored for literal relations
  bool functional = false;
  std::string inverse;  // empty when none
  LiteralRange literal = LiteralRange::None;
  RelationKind kind = RelationKind::Stored;

  bool is_virtual() const noexcept { return kind != RelationKind::Stored; }
  bool operator==(const RelationDecl&) const = default;
};

struct ObjectRef {
  std::uint32_t index = 0;
  bool literal = false;

  auto operator<=>(const ObjectRef&) const = default;
  bool operator==(const ObjectRef&) const = default;
};

struct ObjectRefHash {
  std::size_t operator()(ObjectRef r) const noexcept {
    return (static_cast<std::size_t>(r.index) << 1) | static_cast<std::size_t>(r.literal);
  }
};

struct IndividualRecord {
  std::string id;
  std::vector<ConceptIndex> types;
  /// False for ids that only appear in unchecked assertions (dangling).
  bool declared = true;
};

/// Description pattern resolved against the knowledge base vocabulary.
struct CompiledPattern {
  struct Edge {
    std::size_t from;
    RelationIndex relation;
    std::size_t to;
  };
  std::vector<ConceptIndex> var_concepts;
  std::vector<Edge> edges;
  std::vector<std::pair<std::size_t, std::size_t>> distinct;
};

struct DescriptionRecord {
  DescriptionPattern pattern;
  CompiledPattern compiled;
  IndividualIndex individual;
};

struct Preference {
  std::string id;
  std::string bearer;  // empty when no hasPreference assertion names it
  std::string order;   // empty when no order describes it

  bool operator==(const Preference&) const = default;
};

struct CausalLink {
  std::string cause;
  std::string effect;

  auto operator<=>(const CausalLink&) const = default;
  bool operator==(const CausalLink&) const = default;
};

/// The ABox together with its TBox fragment: concept taxonomy, relation
/// vocabulary, individuals, assertions, description patterns, preference
/// orders and causal links.
///
/// Preference-model structure is kept in sync with the assertions that
/// express it: an orderedBy assertion registers the subject as an element of
/// the object's order, encapsulates sets the element's description, and
/// leq/geq assertions are routed into the order's closure (they are never
/// stored as plain triples). Relations with a declared inverse are
/// materialized in both directions.
///
/// Single writer, many readers: every const member is free of hidden
/// mutation and may run concurrently with other const members.
class KnowledgeBase {
 public:
  KnowledgeBase();

  // Taxonomy ----------------------------------------------------------------
  const ConceptTaxonomy& taxonomy() const noexcept { return taxonomy_; }
  ConceptIndex define_concept(const std::string& name, const std::vector<std::string>& parents = {});
  void add_parent(const std::string& child, const std::string& parent);
  bool is_subconcept(std::string_view a, std::string_view b) const { return taxonomy_.is_subconcept(a, b); }

  // Relations ---------------------------------------------------------------
  /// The inverse, when named, must already be declared (or be the relation
  /// itself). Throws DuplicateRelation, UnknownConcept, UnknownRelation.
  RelationIndex declare_relation(RelationDecl decl);
  /// Declares `a` and `b` inverses of each other and materializes existing
  /// assertions in the new direction.
  void link_inverse(const std::string& a, const std::string& b);
  bool has_relation(std::string_view name) const noexcept { return find_relation(name).has_value(); }
  const RelationDecl& relation(std::string_view name) const;
  std::vector<std::string> relation_names() const;
  bool is_builtin_relation(std::string_view name) const noexcept;

  // Individuals -------------------------------------------------------------
  /// Declares `id` with `types`, or adds `types` to an existing individual.
  void declare_individual(const std::string& id, const std::vector<std::string>& types);
  bool has_individual(std::string_view id) const noexcept;
  /// Type names sorted. Throws UnknownIndividual.
  std::vector<std::string> types_of(std::string_view id) const;
  bool instance_of(std::string_view id, std::string_view concept_name) const;
  /// Declared individuals sorted by id.
  std::vector<std::string> individual_ids() const;
  std::vector<std::string> instances_of(std::string_view concept_name) const;
  /// Ids referenced by assertions but never declared, sorted.
  std::vector<std::string> dangling_ids() const;

  // Assertions --------------------------------------------------------------
  /// Checked insertion with set semantics. Throws UnknownIndividual,
  /// UnknownRelation, TypeMismatch (literal/individual object mismatch),
  /// FunctionalViolation, CycleError (order or bringsAbout cycles),
  /// CrossOrderError. Domain and range are reported by validate() instead.
  void assert_triple(const std::string& subject, const std::string& relation, const Value& object);
  void assert_triple(const std::string& subject, const std::string& relation, const std::string& object) {
    assert_triple(subject, relation, Value::individual(object));
  }
  /// Raw insertion for loaders and fault injection: no declaration,
  /// functionality or acyclicity checks. Undeclared ids become dangling
  /// entries; undeclared relations are registered as untyped stored relations.
  void insert_unchecked(const Triple& triple);

  bool contains(const std::string& subject, const std::string& relation, const Value& object) const;
  /// Stored assertions (including materialized inverses), sorted.
  std::vector<Triple> triples() const;
  std::size_t triple_count() const noexcept { return triple_set_.size(); }
  std::vector<Value> objects(std::string_view subject, std::string_view relation) const;
  std::vector<std::string> subjects(std::string_view relation, const Value& object) const;

  // Descriptions ------------------------------------------------------------
  /// Registers a pattern and declares its id as a Description individual.
  /// Throws UnknownConcept / UnknownRelation for unknown vocabulary,
  /// InvalidPattern for virtual edge relations or a duplicate id.
  void add_description(const DescriptionPattern& pattern);
  bool has_description(std::string_view id) const noexcept;
  const DescriptionPattern& description(std::string_view id) const;  // throws UnknownDescription
  std::vector<std::string> description_ids() const;

  // Preference orders -------------------------------------------------------
  const PreferenceOrder& add_order(const std::string& id, OrderMode mode = OrderMode::Strict);
  /// Declares `element` as an OrderedElement of `order` encapsulating `description`.
  void add_element(const std::string& order, const std::string& element, const std::string& description);
  /// a <= b for two elements of the same order. Throws UnknownElement,
  /// CrossOrderError, CycleError.
  void add_leq(const std::string& a, const std::string& b);
  /// Throws UnknownElement or CrossOrderError; never silently false across orders.
  bool leq(const std::string& a, const std::string& b) const;
  bool has_order(std::string_view id) const noexcept;
  const PreferenceOrder& order(std::string_view id) const;  // throws UnknownOrder
  std::vector<std::string> order_ids() const;
  /// Orders the element is registered with, sorted (more than one only in
  /// knowledge bases that violate orderedBy functionality).
  std::vector<std::string> orders_of_element(std::string_view element) const;

  // Preferences -------------------------------------------------------------
  /// Declares the preference, asserts bearer hasPreference id and order describes id.
  void add_preference(const std::string& id, const std::string& bearer, const std::string& order);
  Preference preference(std::string_view id) const;  // throws UnknownPreference
  std::vector<std::string> preference_ids() const;
  /// Preferences borne by `agent`, sorted.
  std::vector<std::string> preferences_of(std::string_view agent) const;

  // Causal links ------------------------------------------------------------
  void add_causal_link(const std::string& cause, const std::string& effect);
  std::vector<CausalLink> causal_links() const;

  // Index-level access used by the matcher and the query evaluator ----------
  std::optional<IndividualIndex> find_individual(std::string_view id) const noexcept;
  const IndividualRecord& individual(IndividualIndex i) const { return individuals_[i]; }
  std::size_t individual_count() const noexcept { return individuals_.size(); }
  bool instance_of(IndividualIndex i, ConceptIndex c) const noexcept;

  std::optional<RelationIndex> find_relation(std::string_view name) const noexcept;
  const RelationDecl& relation_at(RelationIndex r) const { return relations_[r]; }
  std::size_t relation_count() const noexcept { return relations_.size(); }

  std::optional<ObjectRef> find_literal(const Value& v) const noexcept;
  const Value& literal(std::uint32_t i) const { return literals_[i]; }
  Value value_of(ObjectRef ref) const;

  std::span<const ObjectRef> objects_at(RelationIndex r, IndividualIndex s) const noexcept;
  std::span<const IndividualIndex> subjects_at(RelationIndex r, ObjectRef o) const noexcept;
  /// Subjects having at least one assertion of relation r.
  std::vector<IndividualIndex> subject_indices(RelationIndex r) const;
  std::size_t relation_size(RelationIndex r) const noexcept { return stores_[r].size; }
  bool has_triple(IndividualIndex s, RelationIndex r, ObjectRef o) const noexcept;
  /// All outgoing stored assertions of an individual.
  std::span<const std::pair<RelationIndex, ObjectRef>> outgoing(IndividualIndex s) const noexcept;

  const DescriptionRecord* description_record(IndividualIndex i) const noexcept;
  std::span<const DescriptionRecord> description_records() const noexcept { return descriptions_; }
  /// Order owning element `i` (first when several), or nullptr.
  const PreferenceOrder* order_of_element(IndividualIndex i) const noexcept;

 private:
  struct RelationStore {
    std::unordered_map<IndividualIndex, std::vector<ObjectRef>> by_subject;
    std::unordered_map<ObjectRef, std::vector<IndividualIndex>, ObjectRefHash> by_object;
    std::size_t size = 0;
  };
  struct TripleKey {
    IndividualIndex s;
    RelationIndex r;
    ObjectRef o;
    bool operator==(const TripleKey&) const = default;
  };
  struct TripleKeyHash {
    std::size_t operator()(const TripleKey& k) const noexcept {
      std::size_t h = k.s;
      h = h * 1000003u ^ k.r;
      h = h * 1000003u ^ ObjectRefHash{}(k.o);
      return h;
    }
  };

  RelationIndex require_relation(std::string_view name) const;
  IndividualIndex require_individual(std::string_view id, const char* role) const;
  IndividualIndex intern_individual(const std::string& id);
  ObjectRef intern_object(const Value& v);
  void add_type_index(IndividualIndex i, ConceptIndex c);
  bool store_one(IndividualIndex s, RelationIndex r, ObjectRef o);
  void insert_both(IndividualIndex s, RelationIndex r, ObjectRef o);
  void after_insert(IndividualIndex s, RelationIndex r, ObjectRef o);
  void ensure_order_record(IndividualIndex i, OrderMode mode);
  void check_functional(IndividualIndex s, RelationIndex r, ObjectRef o) const;
  std::vector<std::string> brings_about_path(IndividualIndex from, IndividualIndex to) const;

  ConceptTaxonomy taxonomy_;
  std::vector<RelationDecl> relations_;
  std::unordered_map<std::string, RelationIndex> relation_index_;
  std::size_t builtin_relations_ = 0;

  std::vector<IndividualRecord> individuals_;
  std::unordered_map<std::string, IndividualIndex> individual_index_;
  std::vector<Value> literals_;
  std::unordered_map<Value, std::uint32_t> literal_index_;

  std::vector<RelationStore> stores_;
  std::vector<std::vector<std::pair<RelationIndex, ObjectRef>>> outgoing_;
  std::unordered_set<TripleKey, TripleKeyHash> triple_set_;

  std::vector<DescriptionRecord> descriptions_;
  std::unordered_map<IndividualIndex, std::size_t> description_index_;

  std::map<std::string, PreferenceOrder, std::less<>> orders_;
  std::unordered_map<IndividualIndex, std::vector<std::string>> element_orders_;
};

}  // namespace prefkb
