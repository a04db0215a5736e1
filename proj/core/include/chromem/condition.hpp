#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "chromem/rational.hpp"
#include "chromem/skeleton.hpp"
#include "chromem/support.hpp"

namespace chromem {

enum class Outcome { Lose, Win };

inline const char* to_string(Outcome o) { return o == Outcome::Win ? "win" : "lose"; }

// prefix . period^omega
struct UltimatelyPeriodicWord {
  Word prefix;
  Word period;

  UltimatelyPeriodicWord() = default;
  UltimatelyPeriodicWord(Word prefix_, Word period_);
};

// Lasso with colors already encoded against an alphabet.
struct Lasso {
  std::vector<ColorId> prefix;
  std::vector<ColorId> period;
};

struct DpaCondition {
  ParityAutomaton automaton;
};

// Winning iff the set of skeleton transitions seen infinitely often is listed.
struct MullerCondition {
  Skeleton skeleton;
  std::set<CycleSupport> winning;
};

// Winning iff sum_i c_i lambda^i >= 0, colors the integers in [-k, k].
struct DiscountedSumCondition {
  Rational lambda;
  unsigned k = 0;
};

// Winning iff liminf of running averages is >= 0 (for lassos: period average >= 0).
struct MeanPayoffCondition {};
// Winning iff limsup of running sums is >= 0.
struct TotalPayoffCondition {};

enum class ConditionKind { Dpa, Muller, DiscountedSum, MeanPayoff, TotalPayoff };

const char* to_string(ConditionKind k);

class Condition {
public:
  static Condition dpa(ParityAutomaton automaton);
  // Every listed support must be strongly connected in `skeleton`.
  static Condition muller(Skeleton skeleton, std::vector<CycleSupport> winning);
  static Condition discounted_sum(Rational lambda, unsigned k);
  // Colors must be integer or rational literals.
  static Condition mean_payoff(Alphabet alphabet);
  static Condition total_payoff(Alphabet alphabet);

  ConditionKind kind() const;
  const Alphabet& alphabet() const { return alphabet_; }
  // True when a cycle's value depends only on its set of transitions.
  bool union_invariant() const;

  const DpaCondition* as_dpa() const { return std::get_if<DpaCondition>(&spec_); }
  const MullerCondition* as_muller() const { return std::get_if<MullerCondition>(&spec_); }
  const DiscountedSumCondition* as_discounted_sum() const {
    return std::get_if<DiscountedSumCondition>(&spec_);
  }
  // Numeric weight of each color (payoff conditions and discounted sum).
  const std::vector<Rational>& weights() const { return weights_; }

private:
  using Spec = std::variant<DpaCondition, MullerCondition, DiscountedSumCondition, MeanPayoffCondition,
                            TotalPayoffCondition>;
  Condition(Spec spec, Alphabet alphabet);

  Spec spec_;
  Alphabet alphabet_;
  std::vector<Rational> weights_;
};

// Colors "-k", ..., "k".
Alphabet integer_alphabet(unsigned k);

Outcome lasso_value(const Condition& cond, const UltimatelyPeriodicWord& w);
Outcome lasso_value(const Condition& cond, const Lasso& w);

// Transitions of `m` visited infinitely often along prefix . period^omega from `from`.
CycleSupport limit_support(const Skeleton& m, StateId from, const Lasso& w);

// Exact discounted sum sum_i w_i lambda^i of a finite sequence of weights.
Rational discounted_sum(const std::vector<Rational>& weights, const Rational& lambda);

class GapValue {
public:
  enum class Kind { Finite, Top, Bot };

  static GapValue top() { return GapValue(Kind::Top, {}); }
  static GapValue bot() { return GapValue(Kind::Bot, {}); }
  static GapValue finite(Rational g) { return GapValue(Kind::Finite, std::move(g)); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  const Rational& value() const { return value_; }
  // "⊤", "⊥", or the rational literal.
  std::string label() const;

  friend bool operator==(const GapValue&, const GapValue&) = default;

private:
  GapValue(Kind k, Rational v) : kind_(k), value_(std::move(v)) {}
  Kind kind_;
  Rational value_;
};

// Largest achievable discounted sum k / (1 - lambda).
Rational max_discounted_sum(const Rational& lambda, unsigned k);
// One step of the gap recurrence (g + c) / lambda with clamping; Top and Bot absorb.
GapValue gap_step(const GapValue& g, const Rational& c, const Rational& lambda, unsigned k);
GapValue gap(const Word& w, const Rational& lambda, unsigned k);

}  // namespace chromem

namespace chromem {

// Muller condition on the automaton's own skeleton whose winning supports are
// those with even maximal priority.
Condition muller_abstraction(const ParityAutomaton& a, std::size_t cap = kDefaultSupportCap);

}  // namespace chromem
