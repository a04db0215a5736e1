#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chromem/condition.hpp"
#include "chromem/rational.hpp"
#include "chromem/skeleton.hpp"
#include "chromem/support.hpp"

namespace chromem {

enum class Verdict { Pass, Fail };

inline const char* to_string(Verdict v) { return v == Verdict::Pass ? "pass" : "fail"; }

// Two prefixes reaching the same skeleton state with different residuals.
struct PrefixWitness {
  Word first, second;
  std::string state;
};

// Two cycle supports of equal value through a common state whose union has the other value.
struct SupportWitness {
  StateId state = 0;
  CycleSupport first, second;
  Outcome value = Outcome::Win;
  Outcome union_value = Outcome::Lose;
};

struct ConsistencyReport {
  Verdict verdict = Verdict::Pass;
  std::optional<PrefixWitness> prefixes;
  std::optional<SupportWitness> supports;
  // Skeleton the support witness refers to (m times the right-congruence automaton).
  std::optional<Skeleton> arena_skeleton;
  std::string description;
};

// Value of a cycle support of `m`: the condition's verdict on the lasso that
// reaches the support's least state by a shortest word and then repeats a
// closed walk covering the support.
Outcome support_value(const Condition& cond, const Skeleton& m, const CycleSupport& support);
Lasso support_lasso(const Skeleton& m, const CycleSupport& support);

ConsistencyReport check_prefix_independence(const Condition& cond, const Skeleton& m,
                                            std::size_t cap = kDefaultSupportCap);
// Refuses (UnsupportedError) conditions that are not union-invariant.
ConsistencyReport check_cycle_consistency(const Condition& cond, const Skeleton& m,
                                          std::size_t cap = kDefaultSupportCap);

struct MpRow {
  unsigned n = 0;
  Rational mean_payoff;         // of (w_n)^omega
  std::size_t zero_position = 0;  // n^2 + n
  Rational running_sum;         // running sum of w_0 w_1 ... at that position
  bool mean_payoff_ok = false;  // equals -1/(2n+1)
  bool zero_ok = false;         // running sum is exactly 0
};

struct MpCounterexampleReport {
  unsigned n_max = 0;
  std::vector<MpRow> rows;
  bool claims_hold = false;
  // Fail when the claims hold: mean payoff is not cycle-consistent.
  ConsistencyReport consistency;
};

// w_n = 1^n (-1)^{n+1}: every (w_n)^omega is losing while w_0 w_1 w_2 ... keeps
// returning to running sum 0.
MpCounterexampleReport mp_counterexample_report(unsigned n_max);

}  // namespace chromem
