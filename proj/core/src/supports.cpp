#include "chromem/support.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <string>
#include <unordered_set>

#include "chromem/errors.hpp"
#include "digraph.hpp"

namespace chromem {

std::size_t TransitionSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool TransitionSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool TransitionSet::intersects(const TransitionSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & o.words_[i]) return true;
  return false;
}

bool TransitionSet::subset_of(const TransitionSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

std::optional<std::size_t> TransitionSet::first_common(const TransitionSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (auto w = words_[i] & o.words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w));
  return std::nullopt;
}

TransitionSet& TransitionSet::operator|=(const TransitionSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

std::vector<TransitionId> TransitionSet::elements() const {
  std::vector<TransitionId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<TransitionId>(i * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t TransitionSet::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto w : words_) {
    h ^= static_cast<std::size_t>(w);
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return h;
}

CycleSupport::CycleSupport(std::vector<TransitionId> transitions) : transitions_(std::move(transitions)) {
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());
  if (transitions_.empty()) throw InputError("empty cycle support");
}

bool CycleSupport::contains(TransitionId t) const {
  return std::binary_search(transitions_.begin(), transitions_.end(), t);
}

TransitionSet CycleSupport::bits(std::size_t universe) const {
  TransitionSet s(universe);
  for (auto t : transitions_) s.insert(t);
  return s;
}

std::vector<StateId> CycleSupport::states(const Skeleton& m) const {
  std::vector<StateId> out;
  for (auto t : transitions_) out.push_back(m.source(t));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::strong_ordering operator<=>(const CycleSupport& a, const CycleSupport& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.transitions_ <=> b.transitions_;
}

bool is_strongly_connected(const Skeleton& m, const std::vector<TransitionId>& transitions) {
  if (transitions.empty()) return false;
  std::vector<StateId> states;
  for (auto t : transitions) states.push_back(m.source(t));
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  for (auto t : transitions)
    if (!std::binary_search(states.begin(), states.end(), m.target(t))) return false;
  // Forward and backward reachability from one state must cover all states.
  auto covers = [&](bool forward) {
    std::vector<StateId> seen{states.front()};
    std::deque<StateId> queue{states.front()};
    while (!queue.empty()) {
      StateId s = queue.front();
      queue.pop_front();
      for (auto t : transitions) {
        StateId from = forward ? m.source(t) : m.target(t);
        StateId to = forward ? m.target(t) : m.source(t);
        if (from == s && std::find(seen.begin(), seen.end(), to) == seen.end()) {
          seen.push_back(to);
          queue.push_back(to);
        }
      }
    }
    return seen.size() == states.size();
  };
  return covers(true) && covers(false);
}

std::vector<CycleSupport> enumerate_cycle_supports(const Skeleton& m, std::size_t cap) {
  if (cap == 0) throw InputError("support cap must be positive");
  auto found = detail::enumerate_supports(detail::digraph_of(m), {}, cap);
  std::vector<CycleSupport> out;
  out.reserve(found.size());
  for (auto& s : found) out.emplace_back(s.elements());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ColorId> covering_walk(const Skeleton& m, const CycleSupport& support, StateId from) {
  const auto& ts = support.transitions();
  // Shortest path inside the support between two states.
  auto path = [&](StateId a, StateId b) {
    std::vector<long> via(m.num_states(), -1);
    std::vector<bool> seen(m.num_states(), false);
    std::deque<StateId> queue{a};
    seen[a] = true;
    while (!queue.empty() && !seen[b]) {
      StateId s = queue.front();
      queue.pop_front();
      for (auto t : ts) {
        if (m.source(t) != s || seen[m.target(t)]) continue;
        seen[m.target(t)] = true;
        via[m.target(t)] = t;
        queue.push_back(m.target(t));
      }
    }
    if (!seen[b]) throw InputError("transition set is not strongly connected");
    std::vector<ColorId> word;
    for (StateId s = b; s != a; s = m.source(static_cast<TransitionId>(via[s])))
      word.push_back(m.color_of(static_cast<TransitionId>(via[s])));
    std::reverse(word.begin(), word.end());
    return word;
  };
  auto states = support.states(m);
  if (!std::binary_search(states.begin(), states.end(), from))
    throw InputError("walk start is not a state of the support");
  std::vector<ColorId> walk;
  StateId cur = from;
  for (auto t : ts) {
    auto p = path(cur, m.source(t));
    walk.insert(walk.end(), p.begin(), p.end());
    walk.push_back(m.color_of(t));
    cur = m.target(t);
  }
  auto back = path(cur, from);
  walk.insert(walk.end(), back.begin(), back.end());
  return walk;
}

}  // namespace chromem

std::size_t std::hash<chromem::CycleSupport>::operator()(const chromem::CycleSupport& s) const {
  std::size_t h = 0;
  for (auto t : s.transitions()) h = h * 1000003ULL + t + 1;
  return h;
}
