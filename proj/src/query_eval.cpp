#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include "prefkb/error.hpp"
#include "prefkb/query.hpp"
#include "prefkb/situation.hpp"

namespace prefkb {

namespace {

constexpr std::size_t kNoSlot = std::numeric_limits<std::size_t>::max();

struct Slot {
  bool bound = false;
  ObjectRef ref;
};

/// A resolved term: either a variable slot or a constant. `known` is false for
/// constants absent from the knowledge base, which never match.
struct Operand {
  std::size_t slot = kNoSlot;
  ObjectRef constant;
  bool known = true;

  bool is_var() const noexcept { return slot != kNoSlot; }
};

enum class Op { Type, Stored, Satisfies, Leq, Geq, Greater, Less };

struct Compiled {
  Op op;
  Operand s, o;
  ConceptIndex concept_index = 0;
  RelationIndex relation = 0;
};

struct Membership {
  const PreferenceOrder* order;
  std::size_t position;
};

class Evaluator {
 public:
  Evaluator(const KnowledgeBase& kb) : kb_(kb), matcher_(kb) {}

  std::size_t slot_of(const std::string& var) {
    auto [it, inserted] = slot_index_.try_emplace(var, names_.size());
    if (inserted) names_.push_back(var);
    return it->second;
  }

  std::vector<Compiled> compile(const std::vector<TriplePattern>& patterns) {
    std::vector<Compiled> out;
    for (const auto& p : patterns) {
      Compiled c{};
      c.s = operand(p.subject);
      if (p.is_type()) {
        c.op = Op::Type;
        auto ci = kb_.taxonomy().find(p.object.text);
        if (p.object.kind != Term::Kind::Name || !ci) throw UnknownConcept("unknown concept '" + p.object.text + "'");
        c.concept_index = *ci;
        out.push_back(c);
        continue;
      }
      auto r = kb_.find_relation(p.predicate);
      if (!r) throw UnknownRelation("unknown relation '" + p.predicate + "'");
      c.relation = *r;
      c.o = operand(p.object);
      switch (kb_.relation_at(*r).kind) {
        case RelationKind::Stored: c.op = Op::Stored; break;
        case RelationKind::Satisfies: c.op = Op::Satisfies; break;
        case RelationKind::Leq: c.op = Op::Leq; break;
        case RelationKind::Geq: c.op = Op::Geq; break;
        case RelationKind::Greater: c.op = Op::Greater; break;
        case RelationKind::Less: c.op = Op::Less; break;
      }
      if (is_order_op(c.op) && !c.s.is_var() && !c.o.is_var()) check_same_order(c, p);
      out.push_back(c);
    }
    return out;
  }

  /// Calls `emit` for each extension of `slots` satisfying all patterns;
  /// stops early when `emit` returns false. Returns false when stopped.
  template <typename F>
  bool solve(std::vector<Compiled>& patterns, std::size_t done, std::vector<Slot>& slots, F&& emit) {
    if (done == patterns.size()) return emit();
    std::size_t best = done;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t i = done; i < patterns.size(); ++i) {
      const double cost = estimate(patterns[i], slots);
      if (cost < best_cost) {
        best_cost = cost;
        best = i;
      }
    }
    std::swap(patterns[done], patterns[best]);
    const Compiled p = patterns[done];
    bool keep_going = true;
    candidates(p, slots, [&](ObjectRef s, ObjectRef o) {
      const bool bind_s = p.s.is_var() && !slots[p.s.slot].bound;
      if (bind_s) slots[p.s.slot] = {true, s};
      const bool bind_o = p.op != Op::Type && p.o.is_var() && !slots[p.o.slot].bound;
      bool consistent = true;
      if (bind_o) {
        slots[p.o.slot] = {true, o};
      } else if (p.op != Op::Type && p.o.is_var() && !(slots[p.o.slot].ref == o)) {
        consistent = false;  // same variable in both positions
      }
      if (consistent) keep_going = solve(patterns, done + 1, slots, emit);
      if (bind_o) slots[p.o.slot].bound = false;
      if (bind_s) slots[p.s.slot].bound = false;
      return keep_going;
    });
    std::swap(patterns[done], patterns[best]);
    return keep_going;
  }

  std::size_t slot_count() const noexcept { return names_.size(); }

 private:
  static bool is_order_op(Op op) { return op == Op::Leq || op == Op::Geq || op == Op::Greater || op == Op::Less; }

  Operand operand(const Term& t) {
    Operand op;
    switch (t.kind) {
      case Term::Kind::Variable:
        op.slot = slot_of(t.text);
        break;
      case Term::Kind::Name: {
        auto i = kb_.find_individual(t.text);
        op.known = i.has_value();
        if (i) op.constant = {*i, false};
        break;
      }
      case Term::Kind::String:
      case Term::Kind::Integer: {
        auto ref = kb_.find_literal(t.kind == Term::Kind::String ? Value::string(t.text) : Value::integer(t.number));
        op.known = ref.has_value();
        if (ref) op.constant = *ref;
        break;
      }
    }
    return op;
  }

  const std::vector<Membership>& memberships(IndividualIndex i) {
    if (!orders_built_) {
      for (const auto& id : kb_.order_ids()) {
        const auto& order = kb_.order(id);
        for (std::size_t k = 0; k < order.size(); ++k) {
          if (auto e = kb_.find_individual(order.element_at(k))) member_of_[*e].push_back({&order, k});
        }
      }
      orders_built_ = true;
    }
    static const std::vector<Membership> none;
    auto it = member_of_.find(i);
    return it == member_of_.end() ? none : it->second;
  }

  void check_same_order(const Compiled& c, const TriplePattern& p) {
    if (!c.s.known || !c.o.known || c.s.constant.literal || c.o.constant.literal) return;
    const auto& ms = memberships(c.s.constant.index);
    const auto& mo = memberships(c.o.constant.index);
    if (ms.empty() || mo.empty()) return;
    for (const auto& a : ms) {
      for (const auto& b : mo) {
        if (a.order == b.order) return;
      }
    }
    throw EvaluationError("'" + p.subject.text + " " + p.predicate + " " + p.object.text +
                          "' compares elements of different preference orders");
  }

  bool order_holds(Op op, const PreferenceOrder& order, std::size_t a, std::size_t b) const {
    switch (op) {
      case Op::Leq: return order.leq_at(a, b);
      case Op::Geq: return order.leq_at(b, a);
      case Op::Greater: return order.less_at(b, a);
      case Op::Less: return order.less_at(a, b);
      default: return false;
    }
  }

  const std::vector<IndividualIndex>& instances(ConceptIndex c) {
    auto [it, inserted] = instances_.try_emplace(c);
    if (inserted) {
      for (IndividualIndex i = 0; i < kb_.individual_count(); ++i) {
        if (kb_.instance_of(i, c)) it->second.push_back(i);
      }
    }
    return it->second;
  }

  const std::vector<IndividualIndex>& situations() { return matcher_.situations(); }

  bool satisfied(IndividualIndex sit, IndividualIndex desc) {
    const auto& sits = satisfying(desc);
    return std::binary_search(sits.begin(), sits.end(), sit);
  }

  const std::vector<IndividualIndex>& satisfying(IndividualIndex desc) {
    static const std::vector<IndividualIndex> none;
    const auto* record = kb_.description_record(desc);
    return record ? matcher_.satisfying(*record) : none;
  }

  // Current value of an operand, or nullopt when it is an unbound variable.
  std::optional<ObjectRef> value(const Operand& op, const std::vector<Slot>& slots) const {
    if (op.is_var()) {
      if (!slots[op.slot].bound) return std::nullopt;
      return slots[op.slot].ref;
    }
    return op.constant;
  }

  bool dead(const Compiled& p) const { return !p.s.known || (p.op != Op::Type && !p.o.known); }

  double estimate(const Compiled& p, const std::vector<Slot>& slots) {
    if (dead(p)) return 0;
    auto s = value(p.s, slots);
    auto o = p.op == Op::Type ? std::optional<ObjectRef>(ObjectRef{}) : value(p.o, slots);
    if (s && o) return 0;
    if (s && s->literal) return 0;
    switch (p.op) {
      case Op::Type:
        return static_cast<double>(instances(p.concept_index).size());
      case Op::Stored:
        if (s) return static_cast<double>(kb_.objects_at(p.relation, s->index).size());
        if (o) return static_cast<double>(kb_.subjects_at(p.relation, *o).size());
        return static_cast<double>(kb_.relation_size(p.relation)) + 1;
      case Op::Satisfies: {
        const double descs = static_cast<double>(kb_.description_records().size());
        const double sits = static_cast<double>(situations().size());
        // Matching is the expensive part; prefer running it late.
        if (s) return descs * 4 + 1;
        if (o) return o->literal ? 0 : static_cast<double>(satisfying(o->index).size());
        return descs * sits * 4 + 1;
      }
      default: {
        if (s) return static_cast<double>(memberships(s->index).size()) * 8 + 1;
        if (o && !o->literal) return static_cast<double>(memberships(o->index).size()) * 8 + 1;
        double total = 1;
        for (const auto& id : kb_.order_ids()) {
          const double n = static_cast<double>(kb_.order(id).size());
          total += n * n;
        }
        return total;
      }
    }
  }

  // Enumerates (subject, object) pairs consistent with the bound operands.
  template <typename F>
  void candidates(const Compiled& p, const std::vector<Slot>& slots, F&& f) {
    if (dead(p)) return;
    auto s = value(p.s, slots);
    if (s && s->literal) return;

    if (p.op == Op::Type) {
      if (s) {
        if (kb_.instance_of(s->index, p.concept_index)) f(*s, ObjectRef{});
        return;
      }
      for (auto i : instances(p.concept_index)) {
        if (!f(ObjectRef{i, false}, ObjectRef{})) return;
      }
      return;
    }

    auto o = value(p.o, slots);
    switch (p.op) {
      case Op::Stored: {
        if (s && o) {
          if (kb_.has_triple(s->index, p.relation, *o)) f(*s, *o);
        } else if (s) {
          for (auto ref : kb_.objects_at(p.relation, s->index)) {
            if (!f(*s, ref)) return;
          }
        } else if (o) {
          for (auto i : kb_.subjects_at(p.relation, *o)) {
            if (!f(ObjectRef{i, false}, *o)) return;
          }
        } else {
          for (auto i : kb_.subject_indices(p.relation)) {
            for (auto ref : kb_.objects_at(p.relation, i)) {
              if (!f(ObjectRef{i, false}, ref)) return;
            }
          }
        }
        return;
      }
      case Op::Satisfies: {
        if (o && o->literal) return;
        if (s && o) {
          if (satisfied(s->index, o->index)) f(*s, *o);
        } else if (s) {
          for (const auto& d : kb_.description_records()) {
            if (satisfied(s->index, d.individual) && !f(*s, ObjectRef{d.individual, false})) return;
          }
        } else if (o) {
          for (auto sit : satisfying(o->index)) {
            if (!f(ObjectRef{sit, false}, *o)) return;
          }
        } else {
          for (auto sit : situations()) {
            for (const auto& d : kb_.description_records()) {
              if (satisfied(sit, d.individual) && !f(ObjectRef{sit, false}, ObjectRef{d.individual, false})) return;
            }
          }
        }
        return;
      }
      default: {
        if (o && o->literal) return;
        auto emit_pairs = [&](const PreferenceOrder& order, std::size_t a, std::size_t b) {
          if (!order_holds(p.op, order, a, b)) return true;
          auto ea = kb_.find_individual(order.element_at(a));
          auto eb = kb_.find_individual(order.element_at(b));
          if (!ea || !eb) return true;
          return f(ObjectRef{*ea, false}, ObjectRef{*eb, false});
        };
        if (s && o) {
          for (const auto& ms : memberships(s->index)) {
            for (const auto& mo : memberships(o->index)) {
              if (ms.order == mo.order && order_holds(p.op, *ms.order, ms.position, mo.position)) {
                f(*s, *o);
                return;
              }
            }
          }
        } else if (s) {
          for (const auto& ms : memberships(s->index)) {
            for (std::size_t b = 0; b < ms.order->size(); ++b) {
              if (!emit_pairs(*ms.order, ms.position, b)) return;
            }
          }
        } else if (o) {
          for (const auto& mo : memberships(o->index)) {
            for (std::size_t a = 0; a < mo.order->size(); ++a) {
              if (!emit_pairs(*mo.order, a, mo.position)) return;
            }
          }
        } else {
          for (const auto& id : kb_.order_ids()) {
            const auto& order = kb_.order(id);
            for (std::size_t a = 0; a < order.size(); ++a) {
              for (std::size_t b = 0; b < order.size(); ++b) {
                if (!emit_pairs(order, a, b)) return;
              }
            }
          }
        }
        return;
      }
    }
  }

  const KnowledgeBase& kb_;
  SituationMatcher matcher_;
  std::unordered_map<std::string, std::size_t> slot_index_;
  std::vector<std::string> names_;
  std::unordered_map<ConceptIndex, std::vector<IndividualIndex>> instances_;
  std::unordered_map<IndividualIndex, std::vector<Membership>> member_of_;
  bool orders_built_ = false;
};

}  // namespace

BindingTable evaluate(const QueryAst& query, const KnowledgeBase& kb, const std::map<std::string, Value>& bound) {
  std::set<std::string> where_vars;
  for (const auto& p : query.where) {
    if (p.subject.is_variable()) where_vars.insert(p.subject.text);
    if (p.object.is_variable()) where_vars.insert(p.object.text);
  }
  for (const auto& v : query.select) {
    if (!where_vars.count(v)) throw EvaluationError("select variable '?" + v + "' does not occur in the WHERE clause");
  }
  for (const auto& [v, value] : bound) {
    if (!where_vars.count(v)) throw EvaluationError("bound variable '?" + v + "' does not occur in the WHERE clause");
  }

  Evaluator ev(kb);
  auto where = ev.compile(query.where);
  std::vector<std::vector<Compiled>> blocks;
  for (const auto& b : query.not_exists) blocks.push_back(ev.compile(b.patterns));
  std::vector<std::size_t> select_slots;
  for (const auto& v : query.select) select_slots.push_back(ev.slot_of(v));

  BindingTable table;
  table.columns = query.select;
  std::vector<Slot> slots(ev.slot_count());
  for (const auto& [v, value] : bound) {
    std::optional<ObjectRef> ref;
    if (value.is_literal()) {
      ref = kb.find_literal(value);
    } else if (auto i = kb.find_individual(value.text)) {
      ref = ObjectRef{*i, false};
    }
    if (!ref) return table;
    slots[ev.slot_of(v)] = {true, *ref};
  }

  std::set<std::vector<Value>> rows;
  ev.solve(where, 0, slots, [&] {
    for (auto& block : blocks) {
      bool found = false;
      ev.solve(block, 0, slots, [&] {
        found = true;
        return false;
      });
      if (found) return true;
    }
    std::vector<Value> row;
    row.reserve(select_slots.size());
    for (auto s : select_slots) row.push_back(kb.value_of(slots[s].ref));
    rows.insert(std::move(row));
    return true;
  });
  table.rows.assign(rows.begin(), rows.end());
  return table;
}

}  // namespace prefkb
