#include "chromem/consistency.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "chromem/errors.hpp"
#include "chromem/residuals.hpp"

namespace chromem {

Lasso support_lasso(const Skeleton& m, const CycleSupport& support) {
  StateId q = support.states(m).front();
  auto prefix = shortest_word(m, m.init(), q);
  if (!prefix) throw InternalError("support state unreachable");
  return Lasso{*prefix, covering_walk(m, support, q)};
}

Outcome support_value(const Condition& cond, const Skeleton& m, const CycleSupport& support) {
  return lasso_value(cond, support_lasso(m, support));
}

ConsistencyReport check_prefix_independence(const Condition& cond, const Skeleton& m, std::size_t cap) {
  if (!(cond.alphabet() == m.alphabet())) throw InputError("condition and skeleton use different alphabets");
  ClassAutomaton rc = right_congruence_automaton(cond, cap);
  ProductSkeleton p = product_with_components(m, rc.skeleton);
  const Skeleton& ps = p.skeleton;
  constexpr StateId unset = static_cast<StateId>(-1);
  // BFS in canonical color order gives canonically least shortest prefixes.
  std::vector<std::vector<ColorId>> word(ps.num_states());
  std::vector<bool> seen(ps.num_states(), false);
  std::vector<StateId> first_class(m.num_states(), unset), first_state(m.num_states(), unset);
  std::deque<StateId> queue{ps.init()};
  seen[ps.init()] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    auto [q, cls] = p.components[s];
    if (first_class[q] == unset) {
      first_class[q] = cls;
      first_state[q] = s;
    } else if (first_class[q] != cls) {
      ConsistencyReport r;
      r.verdict = Verdict::Fail;
      r.prefixes = PrefixWitness{m.alphabet().decode(word[first_state[q]]), m.alphabet().decode(word[s]),
                                 m.state_name(q)};
      r.description = "prefixes reaching state " + m.state_name(q) + " have different residuals";
      return r;
    }
    for (ColorId c = 0; c < ps.num_colors(); ++c) {
      StateId t = ps.next(s, c);
      if (seen[t]) continue;
      seen[t] = true;
      word[t] = word[s];
      word[t].push_back(c);
      queue.push_back(t);
    }
  }
  ConsistencyReport r;
  r.description = "every state determines the residual of the prefixes reaching it";
  return r;
}

ConsistencyReport check_cycle_consistency(const Condition& cond, const Skeleton& m, std::size_t cap) {
  if (!cond.union_invariant())
    throw UnsupportedError("cycle-consistency check unsupported for general conditions; use dedicated demos");
  if (!(cond.alphabet() == m.alphabet())) throw InputError("condition and skeleton use different alphabets");
  Skeleton ps = product(m, right_congruence_automaton(cond, cap).skeleton);
  auto supports = enumerate_cycle_supports(ps, cap);
  const std::size_t universe = ps.num_transitions();
  std::vector<TransitionSet> bits;
  std::vector<Outcome> value;
  std::vector<std::vector<bool>> touches;
  std::unordered_map<TransitionSet, std::size_t, TransitionSetHash> index;
  for (std::size_t i = 0; i < supports.size(); ++i) {
    bits.push_back(supports[i].bits(universe));
    value.push_back(support_value(cond, ps, supports[i]));
    index.emplace(bits.back(), i);
    std::vector<bool> st(ps.num_states(), false);
    for (auto s : supports[i].states(ps)) st[s] = true;
    touches.push_back(std::move(st));
  }
  for (std::size_t i = 0; i < supports.size(); ++i) {
    for (std::size_t j = i + 1; j < supports.size(); ++j) {
      if (value[i] != value[j]) continue;
      std::optional<StateId> shared;
      for (StateId s = 0; s < ps.num_states() && !shared; ++s)
        if (touches[i][s] && touches[j][s]) shared = s;
      if (!shared) continue;
      auto it = index.find(bits[i] | bits[j]);
      if (it == index.end()) throw InternalError("union of supports sharing a state was not enumerated");
      if (value[it->second] == value[i]) continue;
      ConsistencyReport r;
      r.verdict = Verdict::Fail;
      r.supports = SupportWitness{*shared, supports[i], supports[j], value[i], value[it->second]};
      r.arena_skeleton = ps;
      r.description = std::string("two ") + (value[i] == Outcome::Win ? "winning" : "losing") +
                      " cycles through " + ps.state_name(*shared) + " combine into a " +
                      (value[it->second] == Outcome::Win ? "winning" : "losing") + " cycle";
      return r;
    }
  }
  ConsistencyReport r;
  r.arena_skeleton = ps;
  r.description = "winning and losing cycles are closed under union at every state";
  return r;
}

MpCounterexampleReport mp_counterexample_report(unsigned n_max) {
  if (n_max < 1) throw InputError("n_max must be at least 1");
  MpCounterexampleReport out;
  out.n_max = n_max;
  // Concatenation w_0 w_1 ... w_{n_max} with its running sums.
  std::vector<long> running{0};
  for (unsigned n = 0; n <= n_max; ++n) {
    for (unsigned i = 0; i < n; ++i) running.push_back(running.back() + 1);
    for (unsigned i = 0; i <= n; ++i) running.push_back(running.back() - 1);
  }
  out.claims_hold = true;
  for (unsigned n = 1; n <= n_max; ++n) {
    MpRow row;
    row.n = n;
    Rational sum(0);
    for (unsigned i = 0; i < n; ++i) sum += Rational(1);
    for (unsigned i = 0; i <= n; ++i) sum -= Rational(1);
    row.mean_payoff = sum / Rational(static_cast<long>(2 * n + 1));
    row.mean_payoff_ok = row.mean_payoff == Rational(-1, static_cast<long>(2 * n + 1));
    row.zero_position = static_cast<std::size_t>(n) * n + n;
    row.running_sum = Rational(running.at(row.zero_position));
    row.zero_ok = row.running_sum.sign() == 0;
    out.claims_hold = out.claims_hold && row.mean_payoff_ok && row.zero_ok;
    out.rows.push_back(std::move(row));
  }
  if (out.claims_hold) {
    out.consistency.verdict = Verdict::Fail;
    out.consistency.description =
        "each (w_n)^omega with w_n = 1^n(-1)^(n+1) has negative mean payoff, yet w_0 w_1 w_2 ... returns to "
        "running sum 0 at every position n^2+n and is winning";
  } else {
    out.consistency.description = "the word family did not behave as expected";
  }
  return out;
}

}  // namespace chromem
