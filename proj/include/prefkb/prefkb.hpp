#pragma once

#include "prefkb/competency.hpp"
#include "prefkb/decision.hpp"
#include "prefkb/document.hpp"
#include "prefkb/error.hpp"
#include "prefkb/inference.hpp"
#include "prefkb/knowledge_base.hpp"
#include "prefkb/pattern.hpp"
#include "prefkb/preference_order.hpp"
#include "prefkb/query.hpp"
#include "prefkb/situation.hpp"
#include "prefkb/taxonomy.hpp"
#include "prefkb/validation.hpp"
#include "prefkb/value.hpp"
