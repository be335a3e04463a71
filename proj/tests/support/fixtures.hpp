#pragma once

#include "prefkb/knowledge_base.hpp"

namespace prefkb::testing {

/// Running example: user1 drinks coffee and tea in sit1, prefers tea
/// (elCoffee <= elTea in ordBeverage), and brewing descriptions bring the
/// drinking ones about. data/coffee_tea.kb holds the same knowledge base.
KnowledgeBase coffee_tea();

/// The situation structure of the robot-serves-user figure: a user, a robot,
/// a serving event and a beverage, without any preferences.
KnowledgeBase serving_situation();

}  // namespace prefkb::testing
