#include "prefkb/taxonomy.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "prefkb/error.hpp"

namespace prefkb {

ConceptTaxonomy::ConceptTaxonomy() {
  names_.emplace_back(concepts::kEntity);
  index_.emplace(std::string(concepts::kEntity), 0);
  parents_.emplace_back();
  ancestors_.emplace_back(1, 1U);
}

ConceptTaxonomy ConceptTaxonomy::with_builtins() {
  ConceptTaxonomy t;
  const std::string entity(concepts::kEntity);
  for (auto name : {concepts::kAgent, concepts::kSituation, concepts::kDescription,
                    concepts::kEvent, concepts::kTask, concepts::kRole, concepts::kQuality,
                    concepts::kOrderedElement}) {
    t.define_concept(std::string(name), {entity});
  }
  // A preference order is the description of a preference; a preference is a
  // disposition, which is a quality of its bearer.
  t.define_concept(std::string(concepts::kPreferenceOrder), {std::string(concepts::kDescription)});
  t.define_concept(std::string(concepts::kDisposition), {std::string(concepts::kQuality)});
  t.define_concept(std::string(concepts::kPreference), {std::string(concepts::kDisposition)});
  t.builtin_count_ = t.names_.size();
  return t;
}

std::optional<ConceptIndex> ConceptTaxonomy::find(std::string_view name) const noexcept {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ConceptIndex ConceptTaxonomy::index_of(std::string_view name) const {
  if (auto c = find(name)) return *c;
  throw UnknownConcept("unknown concept '" + std::string(name) + "'");
}

void ConceptTaxonomy::grow_rows() {
  const std::size_t words = (names_.size() + 63) / 64;
  for (auto& row : ancestors_) row.resize(words, 0);
}

ConceptIndex ConceptTaxonomy::define_concept(const std::string& name,
                                             const std::vector<std::string>& parents) {
  if (contains(name)) throw DuplicateConcept("concept '" + name + "' already defined");
  std::vector<ConceptIndex> parent_ids;
  if (parents.empty()) {
    parent_ids.push_back(0);
  } else {
    for (const auto& p : parents) {
      auto pid = find(p);
      if (!pid) throw UnknownParent("concept '" + name + "': unknown parent '" + p + "'");
      parent_ids.push_back(*pid);
    }
  }
  std::sort(parent_ids.begin(), parent_ids.end());
  parent_ids.erase(std::unique(parent_ids.begin(), parent_ids.end()), parent_ids.end());

  const auto id = static_cast<ConceptIndex>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  parents_.push_back(parent_ids);
  ancestors_.emplace_back();
  grow_rows();
  auto& row = ancestors_[id];
  row[id / 64] |= std::uint64_t{1} << (id % 64);
  for (auto p : parent_ids) {
    for (std::size_t w = 0; w < row.size(); ++w) row[w] |= ancestors_[p][w];
  }
  return id;
}

bool ConceptTaxonomy::reaches(ConceptIndex from, ConceptIndex to,
                              std::vector<ConceptIndex>& path) const {
  path.push_back(from);
  if (from == to) return true;
  for (auto p : parents_[from]) {
    if (is_subconcept(p, to) && reaches(p, to, path)) return true;
  }
  path.pop_back();
  return false;
}

void ConceptTaxonomy::add_parent(const std::string& child, const std::string& parent) {
  auto cid = find(child);
  if (!cid) throw UnknownConcept("unknown concept '" + child + "'");
  auto pid = find(parent);
  if (!pid) throw UnknownParent("concept '" + child + "': unknown parent '" + parent + "'");
  if (is_subconcept(*pid, *cid)) {
    std::vector<ConceptIndex> up;
    reaches(*pid, *cid, up);
    std::vector<std::string> path{child};
    for (auto c : up) path.push_back(names_[c]);
    std::string text;
    for (const auto& s : path) text += (text.empty() ? "" : " -> ") + s;
    throw CycleIntroduced("adding parent '" + parent + "' to '" + child +
                              "' introduces a cycle: " + text,
                          std::move(path));
  }
  auto& ps = parents_[*cid];
  if (std::find(ps.begin(), ps.end(), *pid) != ps.end()) return;
  ps.push_back(*pid);
  std::sort(ps.begin(), ps.end());
  // Everything under child gains parent's ancestors.
  const Row extra = ancestors_[*pid];
  for (std::size_t c = 0; c < names_.size(); ++c) {
    if (!is_subconcept(static_cast<ConceptIndex>(c), *cid)) continue;
    for (std::size_t w = 0; w < extra.size(); ++w) ancestors_[c][w] |= extra[w];
  }
}

bool ConceptTaxonomy::is_subconcept(std::string_view a, std::string_view b) const {
  return is_subconcept(index_of(a), index_of(b));
}

std::vector<std::string> ConceptTaxonomy::parents(std::string_view name) const {
  std::vector<std::string> out;
  for (auto p : parents_[index_of(name)]) out.push_back(names_[p]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> ConceptTaxonomy::concept_names() const {
  std::vector<std::string> out = names_;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::string, int>> ConceptTaxonomy::ancestors_by_distance(
    std::string_view name) const {
  const auto start = index_of(name);
  std::vector<int> dist(names_.size(), -1);
  std::deque<ConceptIndex> queue{start};
  dist[start] = 0;
  while (!queue.empty()) {
    auto c = queue.front();
    queue.pop_front();
    for (auto p : parents_[c]) {
      if (dist[p] >= 0) continue;
      dist[p] = dist[c] + 1;
      queue.push_back(p);
    }
  }
  std::vector<std::pair<std::string, int>> out;
  for (std::size_t c = 0; c < names_.size(); ++c) {
    if (dist[c] > 0) out.emplace_back(names_[c], dist[c]);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second, x.first) < std::tie(y.second, y.first);
  });
  return out;
}

bool ConceptTaxonomy::is_builtin(std::string_view name) const noexcept {
  auto c = find(name);
  return c && *c < builtin_count_;
}

}  // namespace prefkb
