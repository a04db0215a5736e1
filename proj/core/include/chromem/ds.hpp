#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chromem/condition.hpp"
#include "chromem/rational.hpp"
#include "chromem/skeleton.hpp"

namespace chromem {

enum class DsVerdict { ThreeClass, FiniteGap, InfiniteIndex };

const char* to_string(DsVerdict v);

struct DsClassification {
  Rational lambda;
  unsigned k = 0;
  DsVerdict verdict = DsVerdict::InfiniteIndex;
  // Reachable states of the right-congruence automaton (0 for InfiniteIndex).
  std::size_t states = 0;
};

// ThreeClass when k < 1/lambda - 1; FiniteGap when lambda = 1/n otherwise;
// InfiniteIndex in every other case.
DsClassification classify_ds(const Rational& lambda, unsigned k);

// Right-congruence automaton of a discounted-sum condition together with the
// parity acceptance "the losing sink is never reached".
struct DsAutomaton {
  ParityAutomaton automaton;
  // Gap of each state when built from the gap recurrence; empty for the three-class build.
  std::vector<GapValue> gaps;
};

// States [ε], [1], [-1] (only the reachable ones).
DsAutomaton three_class_automaton(const Rational& lambda, unsigned k);
// lambda = 1/n: BFS over gaps from 0; otherwise delegates to the three-class
// build when k < 1/lambda - 1, and throws UnsupportedError (infinite index) else.
DsAutomaton gap_automaton(const Rational& lambda, unsigned k);
// Automaton of the classification verdict (three-class takes precedence).
DsAutomaton ds_right_congruence(const Rational& lambda, unsigned k);

struct GreedyExpansion {
  std::vector<long> digits;
  // x - sum_i digits[i] lambda^i.
  Rational remainder;
};

// Digits in {0..k} (in {-k..0} for negative x), each maximal in absolute value
// keeping the partial sum on the same side of x.
GreedyExpansion greedy_expansion(const Rational& x, const Rational& lambda, unsigned k, std::size_t n_digits);
// Tail bound (k / (1 - lambda)) lambda^n on |remainder| after n digits.
Rational greedy_tail_bound(const Rational& lambda, unsigned k, std::size_t n);

struct GapSequence {
  Rational lambda;
  std::vector<long> colors;     // c_1 = 1, c_i = -floor(g_{i-1})
  std::vector<Rational> gaps;   // g_1 .. g_n
  bool pairwise_distinct = false;
  std::vector<bool> denominator_ok;  // reduced denominator of g_i equals p^i
  std::vector<bool> in_range;        // 0 < g_i < 1/lambda (i >= 2); g_1 = 1/lambda
  bool all_ok() const;
};

// lambda = p/q with p >= 2; throws UnsupportedError for lambda = 1/n.
GapSequence infinite_gap_sequence(const Rational& lambda, std::size_t n_terms);

struct DsFamilyCheck {
  Outcome family_value = Outcome::Win;
  bool vacuous = false;
  bool consistent = true;
  bool resolved_by_tail_bound = false;  // generic +-(k/(1-lambda)) lambda^N interval sufficed
  std::size_t letters = 0;              // truncation length after the prefix
  Rational lower, upper;                // enclosure of the discounted sum of the infinite word
};

// Concatenates `n_cycles` cycles drawn from `family` after `prefix` (random
// interleaving), encloses the discounted sum of the infinite continuation and
// checks that its sign agrees with the common value of the family's cycles.
// Throws InputError for families mixing winning and losing cycles.
DsFamilyCheck ds_check_family(const Condition& ds, const Word& prefix, const std::vector<Word>& family,
                              std::size_t n_cycles, std::mt19937_64& rng);

struct DsDemoSample {
  Word prefix;
  std::vector<Word> family;
  DsFamilyCheck check;
};

struct DsDemoReport {
  Rational lambda;
  unsigned k = 0;
  std::uint64_t seed = 0;
  std::vector<DsDemoSample> samples;
  std::size_t consistent = 0;
};

DsDemoReport ds_cycle_consistency_demo(const Rational& lambda, unsigned k, std::size_t samples,
                                       std::uint64_t seed);

}  // namespace chromem
