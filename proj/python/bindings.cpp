#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "prefkb/prefkb.hpp"

namespace py = pybind11;
using namespace prefkb;

namespace {

py::object to_python(const Value& v) {
  switch (v.kind) {
    case ValueKind::Individual:
    case ValueKind::String: return py::str(v.text);
    case ValueKind::Integer: return py::int_(v.number);
  }
  return py::none();
}

Value individual_or_literal(const py::object& o, bool literal) {
  if (py::isinstance<py::int_>(o) && !py::isinstance<py::bool_>(o)) return Value::integer(o.cast<std::int64_t>());
  auto s = o.cast<std::string>();
  return literal ? Value::string(std::move(s)) : Value::individual(std::move(s));
}

py::dict report_dict(const FulfillabilityReport& r) {
  py::list subs;
  for (const auto& s : r.substitutions) {
    subs.append(py::dict(py::arg("var") = s.var, py::arg("required") = s.required, py::arg("supplied") = s.supplied,
                         py::arg("ancestor") = s.ancestor));
  }
  return py::dict(py::arg("fulfillable") = r.fulfillable, py::arg("bindings") = r.bindings,
                  py::arg("substitutions") = subs, py::arg("missing") = r.missing);
}

py::dict order_dict(const PreferenceOrder& o) {
  py::dict elements;
  for (const auto& e : o.elements()) elements[py::str(e)] = o.encapsulated(e);
  return py::dict(py::arg("id") = o.id(), py::arg("derived_from") = o.derived_from(),
                  py::arg("lenient") = o.mode() == OrderMode::Lenient, py::arg("elements") = elements,
                  py::arg("leq") = o.asserted_pairs(), py::arg("closure") = o.closure_pairs());
}

Inventory make_inventory(const std::vector<std::string>& ids) {
  Inventory inv;
  inv.available.insert(ids.begin(), ids.end());
  return inv;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Preference knowledge base: situations, descriptions, preference orders, decisions and queries";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
#define PREFKB_PY_ERROR(Name) py::register_exception<Name>(m, #Name, base.ptr())
  PREFKB_PY_ERROR(DuplicateConcept);
  PREFKB_PY_ERROR(UnknownParent);
  PREFKB_PY_ERROR(UnknownConcept);
  PREFKB_PY_ERROR(DuplicateRelation);
  PREFKB_PY_ERROR(UnknownRelation);
  PREFKB_PY_ERROR(UnknownIndividual);
  PREFKB_PY_ERROR(UnknownDescription);
  PREFKB_PY_ERROR(UnknownOrder);
  PREFKB_PY_ERROR(UnknownElement);
  PREFKB_PY_ERROR(UnknownPreference);
  PREFKB_PY_ERROR(FunctionalViolation);
  PREFKB_PY_ERROR(TypeMismatch);
  PREFKB_PY_ERROR(InvalidPattern);
  PREFKB_PY_ERROR(InvalidArgument);
  PREFKB_PY_ERROR(CrossOrderError);
  PREFKB_PY_ERROR(NoApplicablePreference);
  PREFKB_PY_ERROR(AmbiguousCause);
  PREFKB_PY_ERROR(EvaluationError);
  PREFKB_PY_ERROR(ReferenceError);
  PREFKB_PY_ERROR(ValidationFailed);
  PREFKB_PY_ERROR(IoError);
  PREFKB_PY_ERROR(CycleIntroduced);
  PREFKB_PY_ERROR(CycleError);
  PREFKB_PY_ERROR(NoUniqueMatch);
  PREFKB_PY_ERROR(AmbiguousPreference);
  PREFKB_PY_ERROR(SyntaxError);
  PREFKB_PY_ERROR(ParseError);
#undef PREFKB_PY_ERROR

  py::class_<KnowledgeBase>(m, "KnowledgeBase")
      .def(py::init<>())
      .def("define_concept", &KnowledgeBase::define_concept, py::arg("name"),
           py::arg("parents") = std::vector<std::string>{})
      .def("add_parent", &KnowledgeBase::add_parent, py::arg("child"), py::arg("parent"))
      .def("is_subconcept", &KnowledgeBase::is_subconcept, py::arg("specific"), py::arg("general"))
      .def("concepts", [](const KnowledgeBase& kb) { return kb.taxonomy().concept_names(); })
      .def(
          "declare_relation",
          [](KnowledgeBase& kb, const std::string& name, const std::string& domain, const std::string& range,
             bool functional, const std::string& inverse, const std::string& literal) {
            RelationDecl d{.name = name, .domain = domain, .range = range, .functional = functional, .inverse = inverse};
            if (literal == "string") {
              d.literal = LiteralRange::String;
            } else if (literal == "integer") {
              d.literal = LiteralRange::Integer;
            } else if (!literal.empty()) {
              throw InvalidArgument("literal must be 'string' or 'integer'");
            }
            kb.declare_relation(d);
          },
          py::arg("name"), py::arg("domain") = "Entity", py::arg("range") = "Entity", py::arg("functional") = false,
          py::arg("inverse") = "", py::arg("literal") = "")
      .def("relations", &KnowledgeBase::relation_names)
      .def("declare_individual", &KnowledgeBase::declare_individual, py::arg("id"), py::arg("types"))
      .def("individuals", &KnowledgeBase::individual_ids)
      .def("types_of", &KnowledgeBase::types_of, py::arg("id"))
      .def("instance_of", py::overload_cast<std::string_view, std::string_view>(&KnowledgeBase::instance_of, py::const_),
           py::arg("id"), py::arg("concept"))
      .def(
          "assert_triple",
          [](KnowledgeBase& kb, const std::string& s, const std::string& p, const py::object& o, bool literal) {
            kb.assert_triple(s, p, individual_or_literal(o, literal));
          },
          py::arg("subject"), py::arg("relation"), py::arg("object"), py::arg("literal") = false)
      .def("triples",
           [](const KnowledgeBase& kb) {
             py::list out;
             for (const auto& t : kb.triples()) out.append(py::make_tuple(t.subject, t.relation, to_python(t.object)));
             return out;
           })
      .def(
          "add_description",
          [](KnowledgeBase& kb, const std::string& id, const std::vector<std::pair<std::string, std::string>>& vars,
             const std::vector<std::tuple<std::string, std::string, std::string>>& edges,
             const std::vector<std::pair<std::string, std::string>>& distinct) {
            std::vector<PatternVar> vs;
            for (const auto& [n, c] : vars) vs.push_back({n, c});
            std::vector<PatternEdge> es;
            for (const auto& [a, r, b] : edges) es.push_back({a, r, b});
            kb.add_description(DescriptionPattern(id, vs, es, distinct));
          },
          py::arg("id"), py::arg("vars"), py::arg("edges") = std::vector<std::tuple<std::string, std::string, std::string>>{},
          py::arg("distinct") = std::vector<std::pair<std::string, std::string>>{})
      .def("descriptions", &KnowledgeBase::description_ids)
      .def(
          "add_order",
          [](KnowledgeBase& kb, const std::string& id, bool lenient) {
            kb.add_order(id, lenient ? OrderMode::Lenient : OrderMode::Strict);
          },
          py::arg("id"), py::arg("lenient") = false)
      .def("add_element", &KnowledgeBase::add_element, py::arg("order"), py::arg("element"), py::arg("description"))
      .def("add_leq", &KnowledgeBase::add_leq, py::arg("a"), py::arg("b"))
      .def("leq", &KnowledgeBase::leq, py::arg("a"), py::arg("b"))
      .def("orders", &KnowledgeBase::order_ids)
      .def("order", [](const KnowledgeBase& kb, const std::string& id) { return order_dict(kb.order(id)); })
      .def("add_preference", &KnowledgeBase::add_preference, py::arg("id"), py::arg("bearer"), py::arg("order"))
      .def("preferences", &KnowledgeBase::preference_ids)
      .def("preferences_of", &KnowledgeBase::preferences_of, py::arg("agent"))
      .def("add_causal_link", &KnowledgeBase::add_causal_link, py::arg("cause"), py::arg("effect"))
      .def("causal_links",
           [](const KnowledgeBase& kb) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto& l : kb.causal_links()) out.emplace_back(l.cause, l.effect);
             return out;
           })
      .def("__len__", &KnowledgeBase::triple_count);

  m.def(
      "validate",
      [](const KnowledgeBase& kb) {
        py::list out;
        for (const auto& v : validate(kb).violations) {
          out.append(py::dict(py::arg("kind") = to_string(v.kind), py::arg("subject") = v.subject,
                              py::arg("relation") = v.relation, py::arg("object") = v.object,
                              py::arg("message") = v.message));
        }
        return out;
      },
      py::arg("kb"));

  m.def(
      "load", [](const std::filesystem::path& path, bool strict) { return load(path, LoadOptions{strict}).kb; },
      py::arg("path"), py::arg("strict") = true);
  m.def(
      "loads", [](const std::string& text, bool strict) { return load_string(text, LoadOptions{strict}).kb; },
      py::arg("text"), py::arg("strict") = true);
  m.def("dumps", &to_document_string, py::arg("kb"));
  m.def("save", &save, py::arg("kb"), py::arg("path"));

  m.def("format_query", [](const std::string& text) { return print_query(parse_query(text)); }, py::arg("text"));
  m.def(
      "query",
      [](const KnowledgeBase& kb, const std::string& text, const std::map<std::string, std::string>& bound) {
        std::map<std::string, Value> b;
        for (const auto& [k, v] : bound) b.emplace(k, Value::individual(v));
        const auto table = evaluate(parse_query(text), kb, b);
        py::list rows;
        for (const auto& row : table.rows) {
          py::tuple t(row.size());
          for (std::size_t i = 0; i < row.size(); ++i) t[i] = to_python(row[i]);
          rows.append(t);
        }
        return py::make_tuple(table.columns, rows);
      },
      py::arg("kb"), py::arg("text"), py::arg("bound") = std::map<std::string, std::string>{});
  m.def("query_a_text", [] { return std::string(query_a_text()); });
  m.def("query_b_text", [] { return std::string(query_b_text()); });
  m.def("cq1", &cq1, py::arg("kb"), py::arg("user"), py::arg("situation"));
  m.def("cq2", &cq2, py::arg("kb"), py::arg("user"), py::arg("situation"));

  m.def(
      "setting_closure",
      [](const KnowledgeBase& kb, const std::string& sit) { return setting_closure(kb, sit); }, py::arg("kb"),
      py::arg("situation"));
  m.def(
      "satisfies",
      [](const KnowledgeBase& kb, const std::string& sit, const std::string& desc) { return satisfies(kb, sit, desc); },
      py::arg("kb"), py::arg("situation"), py::arg("description"));

  m.def(
      "decide",
      [](const KnowledgeBase& kb, const std::string& agent, const std::vector<std::string>& options,
         std::optional<std::string> context, std::optional<std::vector<std::string>> inventory, int depth) {
        Inventory inv;
        DecideOptions opts;
        opts.substitution_depth = depth;
        if (inventory) {
          inv = make_inventory(*inventory);
          opts.inventory = &inv;
        }
        const auto r = decide(kb, {agent, options, context}, opts);
        py::list matched;
        for (const auto& mm : r.matched) {
          matched.append(py::dict(py::arg("option") = mm.option, py::arg("preference") = mm.preference,
                                  py::arg("order") = mm.order, py::arg("element") = mm.element));
        }
        return py::dict(py::arg("choices") = r.choices, py::arg("matched") = matched,
                        py::arg("unmatched") = r.unmatched, py::arg("unfulfillable") = r.unfulfillable,
                        py::arg("orders") = r.orders, py::arg("preferences") = r.preferences);
      },
      py::arg("kb"), py::arg("agent"), py::arg("options"), py::arg("context") = py::none(),
      py::arg("inventory") = py::none(), py::arg("depth") = 1);

  m.def(
      "fulfillable",
      [](const KnowledgeBase& kb, const std::string& option, const std::vector<std::string>& inventory, int depth) {
        return report_dict(fulfillable(kb, option, make_inventory(inventory), depth));
      },
      py::arg("kb"), py::arg("option"), py::arg("inventory"), py::arg("depth") = 1);

  m.def(
      "derive_cause_preferences",
      [](const KnowledgeBase& kb, const std::string& order,
         std::optional<std::vector<std::pair<std::string, std::string>>> links, const std::string& derived_id) {
        std::vector<CausalLink> ls;
        if (links) {
          for (const auto& [c, e] : *links) ls.push_back({c, e});
        } else {
          ls = kb.causal_links();
        }
        return order_dict(derive_cause_preferences(kb.order(order), ls, derived_id));
      },
      py::arg("kb"), py::arg("order"), py::arg("links") = py::none(), py::arg("derived_id") = "");
}
