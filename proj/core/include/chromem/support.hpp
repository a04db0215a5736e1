#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "chromem/skeleton.hpp"

namespace chromem {

// Dense set of transition ids.
class TransitionSet {
public:
  TransitionSet() = default;
  explicit TransitionSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

  void insert(TransitionId t) { words_[t / 64] |= std::uint64_t{1} << (t % 64); }
  bool contains(TransitionId t) const { return (words_[t / 64] >> (t % 64)) & 1U; }
  std::size_t count() const;
  bool empty() const;
  bool intersects(const TransitionSet& o) const;
  bool subset_of(const TransitionSet& o) const;
  // Least element of the intersection.
  std::optional<std::size_t> first_common(const TransitionSet& o) const;
  TransitionSet& operator|=(const TransitionSet& o);
  friend TransitionSet operator|(TransitionSet a, const TransitionSet& b) { return a |= b; }
  std::vector<TransitionId> elements() const;
  std::size_t hash() const;
  friend bool operator==(const TransitionSet&, const TransitionSet&) = default;

private:
  std::vector<std::uint64_t> words_;
};

struct TransitionSetHash {
  std::size_t operator()(const TransitionSet& s) const { return s.hash(); }
};

// Non-empty strongly connected set of transitions of one skeleton.
// Canonical order: by size, then lexicographically by sorted transition ids.
class CycleSupport {
public:
  CycleSupport() = default;
  explicit CycleSupport(std::vector<TransitionId> transitions);

  const std::vector<TransitionId>& transitions() const { return transitions_; }
  std::size_t size() const { return transitions_.size(); }
  bool contains(TransitionId t) const;
  TransitionSet bits(std::size_t universe) const;
  // Sorted source states of the transitions (for a strongly connected set these
  // are all the states it touches).
  std::vector<StateId> states(const Skeleton& m) const;

  friend bool operator==(const CycleSupport&, const CycleSupport&) = default;
  friend std::strong_ordering operator<=>(const CycleSupport& a, const CycleSupport& b);

private:
  std::vector<TransitionId> transitions_;
};

bool is_strongly_connected(const Skeleton& m, const std::vector<TransitionId>& transitions);

constexpr std::size_t kDefaultSupportCap = 100000;

// All strongly connected transition subsets, canonically ordered.
// Throws ResourceError when more than `cap` supports (or simple cycles) exist.
std::vector<CycleSupport> enumerate_cycle_supports(const Skeleton& m,
                                                   std::size_t cap = kDefaultSupportCap);

// Closed walk starting and ending at `from` that uses only transitions of the
// support and traverses each of them at least once. `from` must be a state of the support.
std::vector<ColorId> covering_walk(const Skeleton& m, const CycleSupport& support, StateId from);

}  // namespace chromem

template <>
struct std::hash<chromem::CycleSupport> {
  std::size_t operator()(const chromem::CycleSupport& s) const;
};
