#pragma once

#include <string>
#include <vector>

#include "prefkb/knowledge_base.hpp"

namespace prefkb {

enum class ViolationKind { Domain, Range, Functional, Dangling };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string subject;
  std::string relation;
  std::string object;   // rendered object; empty for functional violations
  std::string message;

  auto operator<=>(const Violation&) const = default;
  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;  // sorted

  bool ok() const noexcept { return violations.empty(); }
  std::size_t size() const noexcept { return violations.size(); }
};

/// Checks every stored assertion against the declared vocabulary.
///
/// One entry per offending (subject, relation, object) for domain, range and
/// dangling-id problems, and one per (subject, relation) for functional
/// relations with more than one object. A dangling subject suppresses the
/// domain check for that assertion (there is no type to check); likewise for
/// a dangling object and the range check. Materialized inverse assertions are
/// not reported a second time. Pure and deterministic.
ValidationReport validate(const KnowledgeBase& kb);

}  // namespace prefkb
