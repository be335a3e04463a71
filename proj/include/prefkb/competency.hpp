#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "prefkb/knowledge_base.hpp"

namespace prefkb {

/// Query text asking for the preferences a user has in a situation.
std::string_view query_a_text();

/// Query text asking for the preferences whose satisfied element has no
/// strictly greater element in its order.
std::string_view query_b_text();

/// Preferences of `user` whose order has an element encapsulating a
/// description that `situation` satisfies. Same answer as query A with ?user
/// and ?sit bound. Sorted. Throws UnknownIndividual.
std::vector<std::string> cq1(const KnowledgeBase& kb, const std::string& user, const std::string& situation);

/// Descriptions encapsulated by elements that make some preference relevant
/// to the situation and that have no strictly greater element in their own
/// order. Sorted. Throws UnknownIndividual, and NoApplicablePreference when
/// no preference of the user is relevant.
std::vector<std::string> cq2(const KnowledgeBase& kb, const std::string& user, const std::string& situation);

}  // namespace prefkb
