// Test-side reference implementations. They share no code with the library
// beyond its value types, so agreement is meaningful.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "chromem/condition.hpp"
#include "chromem/games.hpp"
#include "chromem/rational.hpp"
#include "chromem/skeleton.hpp"
#include "json_io.hpp"

namespace oracle {

using namespace chromem;

inline std::string data(const std::string& name) { return std::string(CHROMEM_TEST_DATA) + "/" + name; }

inline Skeleton load_skeleton(const std::string& name) { return io::skeleton_from_json(io::read_json_file(data(name))); }
inline Condition load_condition(const std::string& name) {
  return io::condition_from_json(io::read_json_file(data(name)));
}
inline ParityAutomaton load_automaton(const std::string& name) {
  return io::automaton_from_json(io::read_json_file(data(name)));
}

// Transition (state name, color) pairs, the form used in hand-written expectations.
using NamedSupport = std::set<std::pair<std::string, std::string>>;

inline NamedSupport named(const Skeleton& m, const CycleSupport& s) {
  NamedSupport out;
  for (auto t : s.transitions()) out.insert({m.state_name(m.source(t)), m.alphabet()[m.color_of(t)]});
  return out;
}

inline CycleSupport support_of(const Skeleton& m, const NamedSupport& s) {
  std::vector<TransitionId> ts;
  for (const auto& [st, c] : s) ts.push_back(m.transition(m.state_index(st), m.alphabet().index(c)));
  return CycleSupport(ts);
}

// Strong connectivity of the graph formed by a transition subset (bitmask over ids).
inline bool strongly_connected(const Skeleton& m, std::uint64_t mask) {
  std::vector<TransitionId> ts;
  for (TransitionId t = 0; t < m.num_transitions(); ++t)
    if (mask >> t & 1) ts.push_back(t);
  if (ts.empty()) return false;
  std::set<StateId> nodes;
  for (auto t : ts) {
    nodes.insert(m.source(t));
    nodes.insert(m.target(t));
  }
  auto reach = [&](bool forward) {
    std::set<StateId> seen{m.source(ts[0])};
    bool grew = true;
    while (grew) {
      grew = false;
      for (auto t : ts) {
        StateId a = forward ? m.source(t) : m.target(t), b = forward ? m.target(t) : m.source(t);
        if (seen.count(a) && !seen.count(b)) {
          seen.insert(b);
          grew = true;
        }
      }
    }
    return seen;
  };
  return reach(true) == nodes && reach(false) == nodes;
}

// All strongly connected transition subsets, by brute force over 2^T subsets.
inline std::set<std::vector<TransitionId>> all_supports(const Skeleton& m) {
  std::set<std::vector<TransitionId>> out;
  const std::size_t t = m.num_transitions();
  for (std::uint64_t mask = 1; mask < (1ULL << t); ++mask) {
    if (!strongly_connected(m, mask)) continue;
    std::vector<TransitionId> v;
    for (TransitionId i = 0; i < t; ++i)
      if (mask >> i & 1) v.push_back(i);
    out.insert(v);
  }
  return out;
}

// Reachable product by naive worklist over name pairs.
inline std::set<std::string> product_state_names(const Skeleton& a, const Skeleton& b) {
  std::set<std::pair<StateId, StateId>> seen{{a.init(), b.init()}};
  std::vector<std::pair<StateId, StateId>> work(seen.begin(), seen.end());
  while (!work.empty()) {
    auto [p, q] = work.back();
    work.pop_back();
    for (ColorId c = 0; c < a.num_colors(); ++c) {
      std::pair<StateId, StateId> n{a.next(p, c), b.next(q, b.alphabet().index(a.alphabet()[c]))};
      if (seen.insert(n).second) work.push_back(n);
    }
  }
  std::set<std::string> names;
  for (auto [p, q] : seen) names.insert(a.state_name(p) + "|" + b.state_name(q));
  return names;
}

// Max priority seen along the cycle of (state, period position) pairs.
inline Outcome parity_by_simulation(const ParityAutomaton& d, StateId from, const Lasso& w) {
  const Skeleton& m = d.skeleton();
  StateId s = m.run_from(from, w.prefix);
  std::map<std::pair<StateId, std::size_t>, std::size_t> first;
  std::vector<unsigned> prios;
  std::size_t i = 0;
  while (true) {
    auto key = std::make_pair(s, i % w.period.size());
    if (auto it = first.find(key); it != first.end()) {
      unsigned best = *std::max_element(prios.begin() + static_cast<long>(it->second), prios.end());
      return best % 2 == 0 ? Outcome::Win : Outcome::Lose;
    }
    first[key] = prios.size();
    ColorId c = w.period[i % w.period.size()];
    prios.push_back(d.priority(s, c));
    s = m.next(s, c);
    ++i;
  }
}

// Büchi(a) and Büchi(b): the period must contain both.
inline Outcome genbuchi(const UltimatelyPeriodicWord& w) {
  bool a = std::count(w.period.begin(), w.period.end(), "a") > 0;
  bool b = std::count(w.period.begin(), w.period.end(), "b") > 0;
  return a && b ? Outcome::Win : Outcome::Lose;
}

// Words starting with ab.
inline Outcome starts_ab(const UltimatelyPeriodicWord& w) {
  Word full = w.prefix;
  while (full.size() < 2) full.insert(full.end(), w.period.begin(), w.period.end());
  return full[0] == "a" && full[1] == "b" ? Outcome::Win : Outcome::Lose;
}

// Discounted sum sign via partial sums with the tail enclosure, falling back to
// the fixed point x = S_v + lambda^{|v|} x of the period only when the enclosure
// never excludes 0.
inline Outcome ds_by_partial_sums(const Rational& lambda, unsigned k, const std::vector<long>& prefix,
                                  const std::vector<long>& period) {
  Rational bound = Rational(static_cast<long>(k)) / (Rational(1) - lambda);
  Rational sum(0), weight(1);
  std::size_t n = 0;
  auto letter = [&](std::size_t i) { return i < prefix.size() ? prefix[i] : period[(i - prefix.size()) % period.size()]; };
  for (; n < 400; ++n) {
    sum += weight * Rational(letter(n));
    weight *= lambda;
    Rational tail = bound * weight;
    if (sum - tail >= Rational(0)) return Outcome::Win;
    if (sum + tail < Rational(0)) return Outcome::Lose;
  }
  Rational sp(0), w(1);
  for (long c : period) {
    sp += w * Rational(c);
    w *= lambda;
  }
  Rational fixed = sp / (Rational(1) - w);
  Rational su(0), wu(1);
  for (long c : prefix) {
    su += wu * Rational(c);
    wu *= lambda;
  }
  return su + wu * fixed >= Rational(0) ? Outcome::Win : Outcome::Lose;
}

inline std::vector<long> ints(const Word& w) {
  std::vector<long> out;
  for (const auto& c : w) out.push_back(std::stol(c));
  return out;
}

// All lassos over `a` with |prefix| + |period| <= bound.
inline void for_each_lasso(const Alphabet& a, std::size_t bound, const std::function<void(const Lasso&)>& f) {
  for (std::size_t total = 1; total <= bound; ++total) {
    std::vector<ColorId> buf(total, 0);
    // Enumerate all words of length `total`, split at every position with a non-empty period.
    std::size_t count = 1;
    for (std::size_t i = 0; i < total; ++i) count *= a.size();
    for (std::size_t code = 0; code < count; ++code) {
      std::size_t x = code;
      for (std::size_t i = 0; i < total; ++i) {
        buf[i] = static_cast<ColorId>(x % a.size());
        x /= a.size();
      }
      for (std::size_t split = 0; split < total; ++split) {
        Lasso l;
        l.prefix.assign(buf.begin(), buf.begin() + static_cast<long>(split));
        l.period.assign(buf.begin() + static_cast<long>(split), buf.end());
        f(l);
      }
    }
  }
}

inline Lasso random_lasso(const Alphabet& a, std::mt19937_64& rng, std::size_t max_prefix = 6,
                          std::size_t max_period = 6) {
  std::uniform_int_distribution<std::size_t> pl(0, max_prefix), ql(1, max_period), col(0, a.size() - 1);
  Lasso l;
  for (std::size_t i = pl(rng); i > 0; --i) l.prefix.push_back(static_cast<ColorId>(col(rng)));
  for (std::size_t i = ql(rng); i > 0; --i) l.period.push_back(static_cast<ColorId>(col(rng)));
  return l;
}

// Random complete skeleton with every state reachable (chain backbone on color 0).
inline Skeleton random_skeleton(const Alphabet& a, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<StateId> st(0, static_cast<StateId>(n - 1));
  std::vector<StateId> table(n * a.size());
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t c = 0; c < a.size(); ++c) table[s * a.size() + c] = st(rng);
  for (std::size_t s = 0; s + 1 < n; ++s) table[s * a.size()] = static_cast<StateId>(s + 1);
  std::vector<std::string> names;
  for (std::size_t s = 0; s < n; ++s) names.push_back("r" + std::to_string(s));
  return Skeleton::from_table(a, names, 0, table);
}

// Random parity game with at most `n` vertices and priorities below `prios`.
inline ParityGame random_game(std::size_t n, unsigned prios, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> deg(1, 3), tgt(0, n - 1);
  std::uniform_int_distribution<unsigned> pr(0, prios - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  ParityGame g;
  for (std::size_t v = 0; v < n; ++v) {
    g.names.push_back("v" + std::to_string(v));
    g.owner.push_back(coin(rng) ? Player::P2 : Player::P1);
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t d = deg(rng); d > 0; --d)
      g.edges.push_back({static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(tgt(rng)), pr(rng), 0, 0});
  g.finalize();
  return g;
}

// Winner of the play from `v` when both players follow positional choices (edge ids per vertex).
inline Player play_winner(const ParityGame& g, const std::vector<std::size_t>& choice, std::size_t v) {
  std::map<std::size_t, std::size_t> seen;
  std::vector<unsigned> prios;
  while (!seen.count(v)) {
    seen[v] = prios.size();
    prios.push_back(g.edges[choice[v]].priority);
    v = g.edges[choice[v]].dst;
  }
  unsigned best = *std::max_element(prios.begin() + static_cast<long>(seen[v]), prios.end());
  return best % 2 == 0 ? Player::P1 : Player::P2;
}

}  // namespace oracle
