#include "prefkb/validation.hpp"

#include <algorithm>

namespace prefkb {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Domain: return "domain";
    case ViolationKind::Range: return "range";
    case ViolationKind::Functional: return "functional";
    case ViolationKind::Dangling: return "dangling";
  }
  return "unknown";
}

namespace {

// For inverse pairs only the lexicographically smaller name is checked, so
// a single fault is reported once.
bool canonical_direction(const RelationDecl& decl, IndividualIndex s, ObjectRef o) {
  if (decl.inverse.empty() || o.literal) return true;
  if (decl.inverse == decl.name) return s <= o.index;
  return decl.name < decl.inverse;
}

}  // namespace

ValidationReport validate(const KnowledgeBase& kb) {
  ValidationReport report;
  auto& out = report.violations;
  const auto& tax = kb.taxonomy();

  for (RelationIndex r = 0; r < kb.relation_count(); ++r) {
    const auto& decl = kb.relation_at(r);
    if (decl.is_virtual()) continue;
    const auto domain = tax.index_of(decl.domain);
    const auto range = decl.literal == LiteralRange::None ? tax.index_of(decl.range) : ConceptIndex{0};

    for (auto s : kb.subject_indices(r)) {
      const auto& subject = kb.individual(s);
      const auto objects = kb.objects_at(r, s);

      if (decl.functional && objects.size() > 1) {
        std::vector<std::string> rendered;
        for (auto o : objects) rendered.push_back(kb.value_of(o).to_string());
        std::sort(rendered.begin(), rendered.end());
        std::string list;
        for (const auto& x : rendered) list += (list.empty() ? "" : ", ") + x;
        out.push_back({ViolationKind::Functional, subject.id, decl.name, "",
                       "'" + subject.id + "' has " + std::to_string(objects.size()) + " " + decl.name +
                           " values (" + list + ") but " + decl.name + " is functional"});
      }

      for (auto o : objects) {
        if (!canonical_direction(decl, s, o)) continue;
        const auto object = kb.value_of(o).to_string();
        const bool object_dangling = !o.literal && !kb.individual(o.index).declared;
        if (!subject.declared || object_dangling) {
          const std::string which = !subject.declared ? "subject '" + subject.id + "'" : "object '" + object + "'";
          out.push_back({ViolationKind::Dangling, subject.id, decl.name, object,
                         which + " of " + decl.name + " is not a declared individual"});
        }
        if (subject.declared && !kb.instance_of(s, domain)) {
          out.push_back({ViolationKind::Domain, subject.id, decl.name, object,
                         "subject '" + subject.id + "' of " + decl.name + " is not a " + decl.domain});
        }
        if (decl.literal == LiteralRange::None) {
          if (o.literal) {
            out.push_back({ViolationKind::Range, subject.id, decl.name, object,
                           decl.name + " expects an individual, got literal " + object});
          } else if (!object_dangling && !kb.instance_of(o.index, range)) {
            out.push_back({ViolationKind::Range, subject.id, decl.name, object,
                           "object '" + object + "' of " + decl.name + " is not a " + decl.range});
          }
        } else {
          bool ok = false;
          if (o.literal) {
            const auto kind = kb.literal(o.index).kind;
            ok = (decl.literal == LiteralRange::String && kind == ValueKind::String) ||
                 (decl.literal == LiteralRange::Integer && kind == ValueKind::Integer);
          }
          if (!ok) {
            out.push_back({ViolationKind::Range, subject.id, decl.name, object,
                           decl.name + " expects a " +
                               (decl.literal == LiteralRange::String ? "string" : "integer") +
                               " literal, got " + object});
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return report;
}

}  // namespace prefkb
