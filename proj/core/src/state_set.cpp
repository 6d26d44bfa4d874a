#include "opacity/state_set.hpp"

#include <algorithm>
#include <iterator>

namespace opacity {

StateSet::StateSet(std::initializer_list<StateId> ids) : StateSet(std::vector<StateId>(ids)) {}

StateSet::StateSet(std::vector<StateId> ids) : items_(std::move(ids)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

StateSet StateSet::range(std::size_t n) {
  StateSet s;
  s.items_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.items_.push_back(StateId{static_cast<std::uint32_t>(i)});
  return s;
}

bool StateSet::contains(StateId id) const {
  return std::binary_search(items_.begin(), items_.end(), id);
}

void StateSet::insert(StateId id) {
  auto it = std::lower_bound(items_.begin(), items_.end(), id);
  if (it == items_.end() || *it != id) items_.insert(it, id);
}

bool StateSet::is_subset_of(const StateSet& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

bool StateSet::intersects(const StateSet& other) const {
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

StateSet set_union(const StateSet& a, const StateSet& b) {
  StateSet r;
  std::set_union(a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end(),
                 std::back_inserter(r.items_));
  return r;
}

StateSet set_intersection(const StateSet& a, const StateSet& b) {
  StateSet r;
  std::set_intersection(a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end(),
                        std::back_inserter(r.items_));
  return r;
}

StateSet set_difference(const StateSet& a, const StateSet& b) {
  StateSet r;
  std::set_difference(a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end(),
                      std::back_inserter(r.items_));
  return r;
}

std::size_t StateSetHash::operator()(const StateSet& s) const noexcept {
  // FNV-1a over the member indices.
  std::size_t h = 1469598103934665603ull;
  for (StateId id : s) {
    h ^= id.index;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace opacity
