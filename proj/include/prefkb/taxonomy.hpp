#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace prefkb {

using ConceptIndex = std::uint32_t;

namespace concepts {
inline constexpr std::string_view kEntity = "Entity";
inline constexpr std::string_view kAgent = "Agent";
inline constexpr std::string_view kSituation = "Situation";
inline constexpr std::string_view kDescription = "Description";
inline constexpr std::string_view kEvent = "Event";
inline constexpr std::string_view kTask = "Task";
inline constexpr std::string_view kRole = "Role";
inline constexpr std::string_view kQuality = "Quality";
inline constexpr std::string_view kDisposition = "Disposition";
inline constexpr std::string_view kPreference = "Preference";
inline constexpr std::string_view kPreferenceOrder = "PreferenceOrder";
inline constexpr std::string_view kOrderedElement = "OrderedElement";
}  // namespace concepts

/// Subsumption DAG over concept names. Every concept except Entity has at
/// least one parent, and the parent graph never contains a cycle: any
/// mutation that would introduce one is rejected before anything changes.
///
/// Ancestor sets are kept materialized as bit rows, so is_subconcept is a
/// single bit test and every const member is safe for concurrent readers.
class ConceptTaxonomy {
 public:
  /// Creates a taxonomy holding only Entity.
  ConceptTaxonomy();

  /// Taxonomy preloaded with the built-in vocabulary (Agent, Situation, ...).
  static ConceptTaxonomy with_builtins();

  /// Inserts `name` under `parents` (Entity when empty).
  /// Throws DuplicateConcept or UnknownParent.
  ConceptIndex define_concept(const std::string& name, const std::vector<std::string>& parents = {});

  /// Adds a parent link to an existing concept. Throws UnknownConcept,
  /// UnknownParent, or CycleIntroduced when `parent` is already below `child`.
  void add_parent(const std::string& child, const std::string& parent);

  /// Reflexive-transitive subsumption. Throws UnknownConcept.
  bool is_subconcept(std::string_view a, std::string_view b) const;
  bool is_subconcept(ConceptIndex a, ConceptIndex b) const noexcept {
    return (ancestors_[a][b / 64] >> (b % 64)) & 1U;
  }

  bool contains(std::string_view name) const noexcept { return find(name).has_value(); }
  std::optional<ConceptIndex> find(std::string_view name) const noexcept;
  ConceptIndex index_of(std::string_view name) const;  // throws UnknownConcept
  const std::string& name(ConceptIndex c) const { return names_[c]; }
  std::size_t size() const noexcept { return names_.size(); }

  /// Direct parents, sorted by name.
  std::vector<std::string> parents(std::string_view name) const;
  const std::vector<ConceptIndex>& parent_indices(ConceptIndex c) const { return parents_[c]; }

  /// All concept names, sorted.
  std::vector<std::string> concept_names() const;

  /// Ancestors of `name` (excluding itself) paired with their shortest
  /// parent-step distance, sorted by distance then name.
  std::vector<std::pair<std::string, int>> ancestors_by_distance(std::string_view name) const;

  bool is_builtin(std::string_view name) const noexcept;

 private:
  using Row = std::vector<std::uint64_t>;

  void grow_rows();
  bool reaches(ConceptIndex from, ConceptIndex to, std::vector<ConceptIndex>& path) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, ConceptIndex> index_;
  std::vector<std::vector<ConceptIndex>> parents_;
  std::vector<Row> ancestors_;  // ancestors_[c] has bit a set iff c is under a
  std::size_t builtin_count_ = 1;
};

}  // namespace prefkb
