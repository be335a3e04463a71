#include "prefkb/preference_order.hpp"

#include <algorithm>
#include <deque>

#include "prefkb/error.hpp"

namespace prefkb {

PreferenceOrder::PreferenceOrder(std::string id, OrderMode mode) : id_(std::move(id)), mode_(mode) {}

void PreferenceOrder::add_element(const std::string& element, const std::string& description) {
  if (element.empty()) throw InvalidArgument("order '" + id_ + "': empty element id");
  if (auto it = index_.find(element); it != index_.end()) {
    if (!description.empty()) elements_[it->second].encapsulates = description;
    return;
  }
  const std::size_t n = elements_.size();
  elements_.push_back({element, description, id_});
  index_.emplace(element, n);
  successors_.emplace_back();
  for (auto& row : closure_) row.push_back(false);
  closure_.emplace_back(n + 1, false);
  closure_[n][n] = true;
}

std::vector<std::string> PreferenceOrder::elements() const {
  std::vector<std::string> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(e.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> PreferenceOrder::index_of(const std::string& element) const noexcept {
  auto it = index_.find(element);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t PreferenceOrder::require(const std::string& element) const {
  if (auto i = index_of(element)) return *i;
  throw UnknownElement("order '" + id_ + "' has no element '" + element + "'");
}

OrderedElement PreferenceOrder::element(const std::string& element) const {
  return elements_[require(element)];
}

const std::string& PreferenceOrder::encapsulated(const std::string& element) const {
  return elements_[require(element)].encapsulates;
}

std::vector<std::size_t> PreferenceOrder::asserted_path(std::size_t from, std::size_t to) const {
  if (from == to) return {from};
  std::vector<std::size_t> prev(elements_.size(), elements_.size());
  std::deque<std::size_t> queue{from};
  prev[from] = from;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    auto next = successors_[x];
    std::sort(next.begin(), next.end(),
              [&](std::size_t l, std::size_t r) { return elements_[l].id < elements_[r].id; });
    for (auto y : next) {
      if (prev[y] != elements_.size()) continue;
      prev[y] = x;
      if (y == to) {
        std::vector<std::size_t> path{to};
        while (path.back() != from) path.push_back(prev[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(y);
    }
  }
  return {};
}

void PreferenceOrder::add_leq(const std::string& a, const std::string& b) {
  const auto ia = require(a), ib = require(b);
  if (ia == ib) return;
  if (std::find(successors_[ia].begin(), successors_[ia].end(), ib) != successors_[ia].end()) return;
  if (mode_ == OrderMode::Strict && closure_[ib][ia]) {
    std::vector<std::string> cycle;
    for (auto i : asserted_path(ib, ia)) cycle.push_back(elements_[i].id);
    cycle.push_back(b);
    std::string text;
    for (const auto& s : cycle) text += (text.empty() ? "" : " <= ") + s;
    throw CycleError("order '" + id_ + "': " + a + " <= " + b + " closes a cycle: " + text,
                     std::move(cycle));
  }
  successors_[ia].push_back(ib);
  // Everything below a is now below everything above b.
  const std::size_t n = elements_.size();
  std::vector<std::size_t> below, above;
  for (std::size_t x = 0; x < n; ++x) {
    if (closure_[x][ia]) below.push_back(x);
    if (closure_[ib][x]) above.push_back(x);
  }
  for (auto x : below) {
    for (auto y : above) closure_[x][y] = true;
  }
}

bool PreferenceOrder::leq(const std::string& a, const std::string& b) const {
  return closure_[require(a)][require(b)];
}

bool PreferenceOrder::less(const std::string& a, const std::string& b) const {
  return less_at(require(a), require(b));
}

bool PreferenceOrder::comparable(const std::string& a, const std::string& b) const {
  const auto ia = require(a), ib = require(b);
  return closure_[ia][ib] || closure_[ib][ia];
}

std::vector<std::string> PreferenceOrder::maximal_elements(std::span<const std::string> subset) const {
  std::vector<std::size_t> ids;
  for (const auto& e : subset) ids.push_back(require(e));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<std::string> out;
  for (auto e : ids) {
    const bool dominated =
        std::any_of(ids.begin(), ids.end(), [&](std::size_t f) { return less_at(e, f); });
    if (!dominated) out.push_back(elements_[e].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementPair> PreferenceOrder::asserted_pairs() const {
  std::vector<ElementPair> out;
  for (std::size_t a = 0; a < elements_.size(); ++a) {
    for (auto b : successors_[a]) out.emplace_back(elements_[a].id, elements_[b].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool PreferenceOrder::is_asserted(const std::string& a, const std::string& b) const {
  const auto& next = successors_[require(a)];
  return std::find(next.begin(), next.end(), require(b)) != next.end();
}

std::vector<ElementPair> PreferenceOrder::closure_pairs() const {
  std::vector<ElementPair> out;
  for (std::size_t a = 0; a < elements_.size(); ++a) {
    for (std::size_t b = 0; b < elements_.size(); ++b) {
      if (closure_[a][b]) out.emplace_back(elements_[a].id, elements_[b].id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ElementPair> PreferenceOrder::derived_pairs() const {
  std::vector<ElementPair> out;
  for (auto& p : closure_pairs()) {
    if (p.first != p.second && !is_asserted(p.first, p.second)) out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::string> PreferenceOrder::path(const std::string& a, const std::string& b) const {
  std::vector<std::string> out;
  for (auto i : asserted_path(require(a), require(b))) out.push_back(elements_[i].id);
  return out;
}

std::vector<std::vector<std::string>> PreferenceOrder::indifference_classes() const {
  std::vector<std::vector<std::string>> out;
  std::vector<bool> placed(elements_.size(), false);
  for (std::size_t a = 0; a < elements_.size(); ++a) {
    if (placed[a]) continue;
    std::vector<std::string> group;
    for (std::size_t b = 0; b < elements_.size(); ++b) {
      if (closure_[a][b] && closure_[b][a]) {
        placed[b] = true;
        group.push_back(elements_[b].id);
      }
    }
    std::sort(group.begin(), group.end());
    out.push_back(std::move(group));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace prefkb
