#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace prefkb {

/// Strict orders reject any pair that would make two distinct elements
/// mutually ordered. Lenient orders accept such pairs and treat each strongly
/// connected group as one indifference class. Lenient mode goes beyond a
/// plain partial order and is opt-in.
enum class OrderMode { Strict, Lenient };

struct OrderedElement {
  std::string id;
  std::string encapsulates;  // description id; empty when not yet known
  std::string ordered_by;    // owning order id

  bool operator==(const OrderedElement&) const = default;
};

using ElementPair = std::pair<std::string, std::string>;

/// A partial order over ordered elements, each of which encapsulates one
/// description. Asserted pairs are stored as given; the reflexive-transitive
/// closure is maintained incrementally on every add_leq.
///
/// Element ids are local to the order: asking about an element the order
/// does not contain is an UnknownElement error.
class PreferenceOrder {
 public:
  explicit PreferenceOrder(std::string id, OrderMode mode = OrderMode::Strict);

  const std::string& id() const noexcept { return id_; }
  OrderMode mode() const noexcept { return mode_; }

  /// Provenance for orders produced by inference rules.
  const std::optional<std::string>& derived_from() const noexcept { return derived_from_; }
  void set_derived_from(std::string source) { derived_from_ = std::move(source); }

  /// Adds an element, or updates the encapsulated description of an
  /// existing element when `description` is non-empty.
  void add_element(const std::string& element, const std::string& description = {});
  bool contains(const std::string& element) const noexcept { return index_.count(element) > 0; }
  std::size_t size() const noexcept { return elements_.size(); }

  /// Element ids sorted.
  std::vector<std::string> elements() const;
  OrderedElement element(const std::string& element) const;
  const std::string& encapsulated(const std::string& element) const;

  /// Records a <= b. Throws UnknownElement, or CycleError (strict mode) with
  /// the cycle path [b, ..., a, b] when b <= a already holds for a != b.
  void add_leq(const std::string& a, const std::string& b);

  bool leq(const std::string& a, const std::string& b) const;
  bool geq(const std::string& a, const std::string& b) const { return leq(b, a); }
  /// Strict part: a <= b and not b <= a.
  bool less(const std::string& a, const std::string& b) const;
  bool comparable(const std::string& a, const std::string& b) const;

  /// Members of `subset` with no strictly greater member of `subset`, sorted.
  std::vector<std::string> maximal_elements(std::span<const std::string> subset) const;

  /// Asserted pairs sorted; never contains reflexive pairs.
  std::vector<ElementPair> asserted_pairs() const;
  bool is_asserted(const std::string& a, const std::string& b) const;
  /// Closure pairs (a != b) that are not asserted, sorted.
  std::vector<ElementPair> derived_pairs() const;
  /// All closure pairs including reflexive ones, sorted.
  std::vector<ElementPair> closure_pairs() const;

  /// A chain of asserted pairs witnessing leq(a, b): [a, ..., b]. Empty when
  /// leq(a, b) is false; [a] when a == b.
  std::vector<std::string> path(const std::string& a, const std::string& b) const;

  /// Groups of mutually ordered elements (singletons in strict mode), sorted.
  std::vector<std::vector<std::string>> indifference_classes() const;

  // Index-level access for evaluators that cache element positions.
  std::optional<std::size_t> index_of(const std::string& element) const noexcept;
  const std::string& element_at(std::size_t i) const { return elements_[i].id; }
  bool leq_at(std::size_t a, std::size_t b) const noexcept { return closure_[a][b]; }
  bool less_at(std::size_t a, std::size_t b) const noexcept { return closure_[a][b] && !closure_[b][a]; }

 private:
  std::size_t require(const std::string& element) const;
  std::vector<std::size_t> asserted_path(std::size_t from, std::size_t to) const;

  std::string id_;
  OrderMode mode_;
  std::optional<std::string> derived_from_;
  std::vector<OrderedElement> elements_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> successors_;  // asserted edges
  std::vector<std::vector<bool>> closure_;
};

}  // namespace prefkb
