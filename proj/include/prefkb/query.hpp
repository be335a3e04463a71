#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "prefkb/knowledge_base.hpp"
#include "prefkb/value.hpp"

namespace prefkb {

/// A subject or object position in a triple pattern.
struct Term {
  enum class Kind : std::uint8_t { Variable, Name, String, Integer };
  Kind kind = Kind::Name;
  std::string text;  // variable name without '?', or the name / string value
  std::int64_t number = 0;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name), 0}; }
  static Term name(std::string id) { return {Kind::Name, std::move(id), 0}; }
  static Term string(std::string s) { return {Kind::String, std::move(s), 0}; }
  static Term integer(std::int64_t n) { return {Kind::Integer, {}, n}; }

  bool is_variable() const noexcept { return kind == Kind::Variable; }
  std::string to_string() const;
  bool operator==(const Term&) const = default;
};

/// `predicate` is "a" for type assertions, otherwise a relation name.
struct TriplePattern {
  Term subject;
  std::string predicate;
  Term object;

  bool is_type() const noexcept { return predicate == "a"; }
  bool operator==(const TriplePattern&) const = default;
};

struct NotExistsBlock {
  /// Variables that occur only inside the block, sorted.
  std::vector<std::string> local_vars;
  std::vector<TriplePattern> patterns;

  bool operator==(const NotExistsBlock&) const = default;
};

struct QueryAst {
  std::vector<std::string> select;
  std::vector<TriplePattern> where;
  std::vector<NotExistsBlock> not_exists;

  bool operator==(const QueryAst&) const = default;
};

/// Grammar (keywords case-insensitive):
///
///   query     := SELECT var+ WHERE '{' statement* '}'
///   statement := triple (';' predicate object)* '.'?
///              | predicate object '.'        -- continues the previous subject
///              | FILTER NOT EXISTS '{' statement* '}'
///              | NOT IN '(' SELECT var WHERE ('{' statement* '}' | statement*) ')'
///
/// `NOT IN (SELECT ?e WHERE ...)` excludes the subject of the preceding
/// statement: it is normalized to a not-exists block with ?e replaced by
/// that subject. Variables local to such a block that collide with outer
/// variables are renamed apart. Throws SyntaxError.
QueryAst parse_query(std::string_view text);

/// Canonical text; parse_query(print_query(q)) == q for every parsed q.
std::string print_query(const QueryAst& query);

struct BindingTable {
  std::vector<std::string> columns;     // select variables without '?'
  std::vector<std::vector<Value>> rows;  // duplicate-free, sorted

  bool operator==(const BindingTable&) const = default;
};

/// Closed-world evaluation over stored and computed facts. `?x a C` holds
/// when some type of x is subsumed by C; satisfies, leq, geq, greater and
/// less are computed on demand, the order relations only between elements of
/// the same order. Rows satisfy every where pattern and no not-exists block.
///
/// `bound` pre-binds variables. Throws UnknownRelation, UnknownConcept, and
/// EvaluationError for order comparisons between constants of different
/// orders or a select variable missing from the where clause.
BindingTable evaluate(const QueryAst& query, const KnowledgeBase& kb, const std::map<std::string, Value>& bound = {});

}  // namespace prefkb
