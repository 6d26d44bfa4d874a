#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace opacity {

struct StateId {
  std::uint32_t index = 0;
  friend auto operator<=>(const StateId&, const StateId&) = default;
};

struct EventId {
  std::uint32_t index = 0;
  friend auto operator<=>(const EventId&, const EventId&) = default;
};

using EventSeq = std::vector<EventId>;

/// Sorted, duplicate-free set of states. The sorted representation is the
/// canonical form, so equality and hashing are structural.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::initializer_list<StateId> ids);
  explicit StateSet(std::vector<StateId> ids);

  static StateSet range(std::size_t n);  // {0, ..., n-1}

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  bool contains(StateId id) const;
  void insert(StateId id);

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  std::span<const StateId> items() const { return items_; }

  bool is_subset_of(const StateSet& other) const;
  bool intersects(const StateSet& other) const;

  friend StateSet set_union(const StateSet& a, const StateSet& b);
  friend StateSet set_intersection(const StateSet& a, const StateSet& b);
  friend StateSet set_difference(const StateSet& a, const StateSet& b);

  friend bool operator==(const StateSet&, const StateSet&) = default;
  friend auto operator<=>(const StateSet& a, const StateSet& b) { return a.items_ <=> b.items_; }

 private:
  std::vector<StateId> items_;
};

struct StateSetHash {
  std::size_t operator()(const StateSet& s) const noexcept;
};

}  // namespace opacity

template <>
struct std::hash<opacity::StateSet> : opacity::StateSetHash {};
