#include "prefkb/pattern.hpp"

#include <algorithm>
#include <set>

#include "prefkb/error.hpp"

namespace prefkb {

DescriptionPattern::DescriptionPattern(std::string id, std::vector<PatternVar> vars,
                                       std::vector<PatternEdge> edges,
                                       std::vector<std::pair<std::string, std::string>> distinct)
    : id_(std::move(id)), vars_(std::move(vars)), edges_(std::move(edges)), distinct_(std::move(distinct)) {
  if (id_.empty()) throw InvalidPattern("description id must not be empty");
  if (vars_.empty()) throw InvalidPattern("description '" + id_ + "' declares no variables");
  std::set<std::string> names;
  for (const auto& v : vars_) {
    if (v.name.empty()) throw InvalidPattern("description '" + id_ + "': empty variable name");
    if (!names.insert(v.name).second) {
      throw InvalidPattern("description '" + id_ + "': duplicate variable '" + v.name + "'");
    }
  }
  auto require = [&](const std::string& var, const char* what) {
    if (!names.count(var)) {
      throw InvalidPattern("description '" + id_ + "': " + what + " references undeclared variable '" +
                           var + "'");
    }
  };
  for (const auto& e : edges_) {
    require(e.from, "edge");
    require(e.to, "edge");
    if (e.relation.empty()) throw InvalidPattern("description '" + id_ + "': edge without relation");
  }
  for (auto& [a, b] : distinct_) {
    require(a, "distinct pair");
    require(b, "distinct pair");
    if (a == b) throw InvalidPattern("description '" + id_ + "': variable '" + a + "' distinct from itself");
    if (b < a) std::swap(a, b);
  }
  std::sort(distinct_.begin(), distinct_.end());
  distinct_.erase(std::unique(distinct_.begin(), distinct_.end()), distinct_.end());

  // Connectivity over the undirected edge graph.
  std::set<std::string> seen{vars_.front().name};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& e : edges_) {
      const bool f = seen.count(e.from) > 0, t = seen.count(e.to) > 0;
      if (f != t) {
        seen.insert(f ? e.to : e.from);
        grew = true;
      }
    }
  }
  if (seen.size() != vars_.size()) {
    throw InvalidPattern("description '" + id_ + "' is not connected");
  }
}

std::optional<std::size_t> DescriptionPattern::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  return std::nullopt;
}

const std::string& DescriptionPattern::concept_of(const std::string& var) const {
  auto i = var_index(var);
  if (!i) throw InvalidArgument("description '" + id_ + "' has no variable '" + var + "'");
  return vars_[*i].concept_name;
}

DescriptionPattern DescriptionPattern::renamed(std::string id) const {
  return DescriptionPattern(std::move(id), vars_, edges_, distinct_);
}

}  // namespace prefkb
