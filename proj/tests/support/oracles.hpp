#pragma once

// Brute-force reference implementations. They work from the public,
// string-level view of a knowledge base (triples, type names, parent lists,
// asserted order pairs) and share no code with the engine's indexes.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prefkb/knowledge_base.hpp"
#include "prefkb/query.hpp"

namespace prefkb::oracle {

/// Depth-first search over declared parents.
bool subsumes(const ConceptTaxonomy& tax, const std::string& specific, const std::string& general);

/// Reflexive-transitive closure of `pairs` over `elements` (Floyd-Warshall).
std::set<std::pair<std::string, std::string>> closure(const std::vector<std::string>& elements,
                                                      const std::vector<std::pair<std::string, std::string>>& pairs);

/// Members of `closure` with no strictly greater member of `subset`.
std::vector<std::string> maximal(const std::set<std::pair<std::string, std::string>>& closure,
                                 const std::vector<std::string>& subset);

bool instance_of(const KnowledgeBase& kb, const std::string& id, const std::string& concept_name);

/// Situation plus everything reachable from its settings, by breadth-first
/// search over the stored triple list; undeclared ids are not members.
std::set<std::string> setting_members(const KnowledgeBase& kb, const std::string& situation);

/// All homomorphisms, by enumerating every assignment of closure members.
std::vector<std::map<std::string, std::string>> homomorphisms(const KnowledgeBase& kb, const std::string& situation,
                                                              const std::string& description);

/// Query answers by enumerating assignments of every variable over every
/// individual and literal of the knowledge base (variables in textual order,
/// patterns checked as soon as their variables are assigned).
BindingTable evaluate(const QueryAst& query, const KnowledgeBase& kb,
                      const std::map<std::string, Value>& bound = {});

/// Empty when equal; otherwise a description of the first difference.
std::string structural_diff(const KnowledgeBase& a, const KnowledgeBase& b);

}  // namespace prefkb::oracle
