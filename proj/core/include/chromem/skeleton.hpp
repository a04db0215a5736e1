#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chromem {

using Color = std::string;
using Word = std::vector<Color>;
using StateId = std::uint32_t;
using ColorId = std::uint32_t;
// Transition (s, c) of a skeleton with k colors has id s * k + c.
using TransitionId = std::uint32_t;

// Finite color alphabet, kept in canonical (byte-wise string) order.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Color> colors);

  std::size_t size() const { return colors_.size(); }
  const Color& operator[](ColorId c) const { return colors_[c]; }
  const std::vector<Color>& colors() const { return colors_; }
  std::optional<ColorId> find(std::string_view color) const;
  ColorId index(std::string_view color) const;  // throws InputError on unknown color
  std::vector<ColorId> encode(const Word& word) const;
  Word decode(const std::vector<ColorId>& ids) const;
  // True when every color is a single byte, so words print without separators.
  bool single_char() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
  std::vector<Color> colors_;
};

// Deterministic complete automaton without acceptance. States carry opaque
// string names and are stored in canonical name order; every state is
// reachable from the initial state.
class Skeleton {
public:
  struct Edge {
    std::string src;
    Color color;
    std::string dst;
  };

  Skeleton() = default;
  Skeleton(Alphabet alphabet, std::vector<std::string> states, const std::string& init,
           const std::vector<Edge>& upd);
  // `table[s * k + c]` is the successor of caller-indexed state s on color c.
  static Skeleton from_table(Alphabet alphabet, std::vector<std::string> names, StateId init,
                             const std::vector<StateId>& table);
  // One state named "init" looping on every color.
  static Skeleton trivial(Alphabet alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return names_.size(); }
  std::size_t num_colors() const { return alphabet_.size(); }
  std::size_t num_transitions() const { return table_.size(); }
  StateId init() const { return init_; }
  StateId next(StateId s, ColorId c) const { return table_[s * num_colors() + c]; }
  const std::string& state_name(StateId s) const { return names_[s]; }
  const std::vector<std::string>& state_names() const { return names_; }
  std::optional<StateId> find_state(std::string_view name) const;
  StateId state_index(std::string_view name) const;  // throws InputError

  TransitionId transition(StateId s, ColorId c) const {
    return static_cast<TransitionId>(s * num_colors() + c);
  }
  StateId source(TransitionId t) const { return static_cast<StateId>(t / num_colors()); }
  ColorId color_of(TransitionId t) const { return static_cast<ColorId>(t % num_colors()); }
  StateId target(TransitionId t) const { return table_[t]; }
  const std::vector<StateId>& table() const { return table_; }

  // State reached from `from` after reading `word`.
  StateId run_from(StateId from, const std::vector<ColorId>& word) const;

  friend bool operator==(const Skeleton&, const Skeleton&) = default;

private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  StateId init_ = 0;
  std::vector<StateId> table_;
};

// States m_1 = init, ..., m_{|word|+1}.
std::vector<StateId> run(const Skeleton& m, const Word& word);

struct ProductSkeleton {
  Skeleton skeleton;
  // components[s] = (state of m1, state of m2) for product state s.
  std::vector<std::pair<StateId, StateId>> components;
};

// Reachable part of the synchronous product; states are named "s1|s2".
ProductSkeleton product_with_components(const Skeleton& m1, const Skeleton& m2);
Skeleton product(const Skeleton& m1, const Skeleton& m2);

// Structural isomorphism of two skeletons (initial state to initial state).
bool isomorphic(const Skeleton& a, const Skeleton& b);

class ParityAutomaton {
public:
  ParityAutomaton() = default;
  // `priority` is indexed by TransitionId.
  ParityAutomaton(Skeleton skeleton, std::vector<unsigned> priority);

  const Skeleton& skeleton() const { return skeleton_; }
  const Alphabet& alphabet() const { return skeleton_.alphabet(); }
  unsigned priority(TransitionId t) const { return priority_[t]; }
  unsigned priority(StateId s, ColorId c) const { return priority_[skeleton_.transition(s, c)]; }
  const std::vector<unsigned>& priorities() const { return priority_; }
  unsigned max_priority() const;

  friend bool operator==(const ParityAutomaton&, const ParityAutomaton&) = default;

private:
  Skeleton skeleton_;
  std::vector<unsigned> priority_;
};

struct ColorPartition {
  // representative[c] = least color equivalent to c.
  std::vector<ColorId> representative;
  std::vector<std::vector<ColorId>> classes;
};

// Coarsest partition of colors acting identically (successor and priority) at every state.
ColorPartition color_abstraction(const ParityAutomaton& a);

// Strongly connected components, each sorted, listed by least member.
std::vector<std::vector<StateId>> strongly_connected_components(const Skeleton& m);

// Canonically least shortest color word leading from `from` to `to`, if any.
std::optional<std::vector<ColorId>> shortest_word(const Skeleton& m, StateId from, StateId to);

}  // namespace chromem
