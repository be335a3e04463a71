#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "prefkb/knowledge_base.hpp"
#include "prefkb/pattern.hpp"

namespace prefkb {

/// Individuals making up a situation: the situation itself, everything it
/// has as setting, and everything reachable from there along stored
/// assertions. Throws UnknownIndividual, or TypeMismatch when `situation`
/// is not a Situation.
std::set<std::string> setting_closure(const KnowledgeBase& kb, std::string_view situation);

/// Every homomorphism of the description's pattern into the situation's
/// setting closure: each variable is bound to a closure member of a subsumed
/// type, every edge is a stored assertion, and distinct pairs bind to
/// different individuals. Sorted lexicographically by (variable, individual).
/// An empty result means the situation does not satisfy the description.
std::vector<Binding> satisfies(const KnowledgeBase& kb, std::string_view situation, std::string_view description);

/// True when some mapping of general's variables onto specific's variables
/// preserves edges and distinct pairs, with each mapped variable's concept
/// subsumed by the general variable's concept.
bool pattern_subsumes(const DescriptionPattern& general, const DescriptionPattern& specific,
                      const ConceptTaxonomy& taxonomy);

/// Index-level matcher with per-instance caches for closures and
/// satisfaction results. Not thread-safe; create one per evaluation.
class SituationMatcher {
 public:
  explicit SituationMatcher(const KnowledgeBase& kb) : kb_(kb) {}

  bool is_situation(IndividualIndex i) const;
  /// Sorted closure members.
  const std::vector<IndividualIndex>& closure(IndividualIndex situation);
  /// Assignments indexed by pattern variable position. At most one when
  /// `first_only` is set.
  std::vector<std::vector<IndividualIndex>> match(IndividualIndex situation, const CompiledPattern& pattern,
                                                  bool first_only);
  bool satisfies(IndividualIndex situation, const DescriptionRecord& description);
  /// Sorted situations satisfying the description.
  const std::vector<IndividualIndex>& satisfying(const DescriptionRecord& description);
  const std::vector<IndividualIndex>& situations();

 private:
  const std::vector<bool>& closure_bits(IndividualIndex situation);
  const std::vector<IndividualIndex>& instances(ConceptIndex c);
  bool is_situation_cached(IndividualIndex i);
  static std::optional<std::size_t> root_of(const CompiledPattern& pattern);
  std::vector<std::size_t> plan(const CompiledPattern& pattern, std::size_t universe, std::size_t seed);
  void search(const CompiledPattern& pattern, const std::vector<std::size_t>& order, const std::vector<bool>* in,
              std::size_t seed, IndividualIndex seed_value, bool first_only,
              std::vector<std::vector<IndividualIndex>>& results, bool avoid_situations);

  const KnowledgeBase& kb_;
  std::unordered_map<IndividualIndex, std::vector<IndividualIndex>> closures_;
  std::unordered_map<IndividualIndex, std::vector<bool>> closure_bits_;
  std::unordered_map<ConceptIndex, std::vector<IndividualIndex>> instances_;
  std::unordered_map<IndividualIndex, std::vector<IndividualIndex>> satisfying_;
  std::vector<std::vector<IndividualIndex>> incoming_;
  bool incoming_built_ = false;
  std::vector<IndividualIndex> situations_;
  bool situations_built_ = false;
  std::vector<bool> situation_flags_;
  std::unordered_map<std::uint64_t, bool> satisfied_;
};

}  // namespace prefkb
