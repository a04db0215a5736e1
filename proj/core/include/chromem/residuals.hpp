#pragma once

#include <optional>
#include <vector>

#include "chromem/condition.hpp"
#include "chromem/support.hpp"

namespace chromem {

enum class Comparison { Equal, Less, Greater, Incomparable };

const char* to_string(Comparison c);

// Deterministic automaton deciding a condition from the set of transitions
// visited infinitely often: parity acceptance or an explicit Muller table.
class Acceptor {
public:
  // Dpa and Muller conditions as given; discounted sum through its
  // right-congruence automaton. Throws UnsupportedError otherwise.
  static Acceptor of(const Condition& cond);

  const Skeleton& skeleton() const;
  bool accepts(const CycleSupport& support) const;
  // Non-null for parity acceptance.
  const ParityAutomaton* parity() const { return parity_ ? &*parity_ : nullptr; }

  // included[p][q] iff the residual language of state p is contained in that of q.
  std::vector<std::vector<bool>> inclusion_matrix(std::size_t cap = kDefaultSupportCap) const;

private:
  std::optional<ParityAutomaton> parity_;
  std::optional<MullerCondition> muller_;
};

Comparison residual_compare(const Condition& cond, const Word& w1, const Word& w2,
                            std::size_t cap = kDefaultSupportCap);

// Minimal-state automaton of the right congruence.
struct ClassAutomaton {
  Skeleton skeleton;
  // Canonically least shortest word reaching each state.
  std::vector<Word> representatives;
};

// Label "[w]" of a class with representative w ("[ε]" for the empty word).
std::string class_label(const Alphabet& alphabet, const Word& representative);

ClassAutomaton right_congruence_automaton(const Condition& cond, std::size_t cap = kDefaultSupportCap);

}  // namespace chromem
