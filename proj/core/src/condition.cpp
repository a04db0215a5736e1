#include "chromem/condition.hpp"

#include <algorithm>
#include <map>

#include "chromem/errors.hpp"

namespace chromem {

UltimatelyPeriodicWord::UltimatelyPeriodicWord(Word prefix_, Word period_)
    : prefix(std::move(prefix_)), period(std::move(period_)) {
  if (period.empty()) throw InputError("lasso with empty period");
}

const char* to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::Dpa: return "dpa";
    case ConditionKind::Muller: return "muller";
    case ConditionKind::DiscountedSum: return "discounted-sum";
    case ConditionKind::MeanPayoff: return "mean-payoff";
    case ConditionKind::TotalPayoff: return "total-payoff";
  }
  return "?";
}

Alphabet integer_alphabet(unsigned k) {
  std::vector<Color> colors;
  for (long c = -static_cast<long>(k); c <= static_cast<long>(k); ++c) colors.push_back(std::to_string(c));
  return Alphabet(std::move(colors));
}

Condition::Condition(Spec spec, Alphabet alphabet) : spec_(std::move(spec)), alphabet_(std::move(alphabet)) {}

Condition Condition::dpa(ParityAutomaton automaton) {
  Alphabet a = automaton.alphabet();
  return Condition(DpaCondition{std::move(automaton)}, std::move(a));
}

Condition Condition::muller(Skeleton skeleton, std::vector<CycleSupport> winning) {
  for (const auto& s : winning) {
    for (auto t : s.transitions())
      if (t >= skeleton.num_transitions()) throw InputError("Muller support mentions an unknown transition");
    if (!is_strongly_connected(skeleton, s.transitions()))
      throw InputError("Muller support is not strongly connected");
  }
  Alphabet a = skeleton.alphabet();
  MullerCondition m{std::move(skeleton), std::set<CycleSupport>(winning.begin(), winning.end())};
  return Condition(std::move(m), std::move(a));
}

Condition Condition::discounted_sum(Rational lambda, unsigned k) {
  if (lambda.sign() <= 0 || lambda >= Rational(1))
    throw InputError("discount factor must lie strictly between 0 and 1");
  Condition c(DiscountedSumCondition{std::move(lambda), k}, integer_alphabet(k));
  for (const auto& color : c.alphabet_.colors()) c.weights_.push_back(Rational::parse(color));
  return c;
}

namespace {

std::vector<Rational> parse_weights(const Alphabet& a) {
  std::vector<Rational> w;
  for (const auto& color : a.colors()) w.push_back(Rational::parse(color));
  return w;
}

}  // namespace

Condition Condition::mean_payoff(Alphabet alphabet) {
  auto w = parse_weights(alphabet);
  Condition c(MeanPayoffCondition{}, std::move(alphabet));
  c.weights_ = std::move(w);
  return c;
}

Condition Condition::total_payoff(Alphabet alphabet) {
  auto w = parse_weights(alphabet);
  Condition c(TotalPayoffCondition{}, std::move(alphabet));
  c.weights_ = std::move(w);
  return c;
}

ConditionKind Condition::kind() const { return static_cast<ConditionKind>(spec_.index()); }

bool Condition::union_invariant() const {
  switch (kind()) {
    case ConditionKind::Dpa:
    case ConditionKind::Muller: return true;
    case ConditionKind::DiscountedSum: {
      const auto& l = std::get<DiscountedSumCondition>(spec_).lambda;
      return l.numerator_str() == "1";
    }
    default: return false;
  }
}

CycleSupport limit_support(const Skeleton& m, StateId from, const Lasso& w) {
  if (w.period.empty()) throw InputError("lasso with empty period");
  StateId s = m.run_from(from, w.prefix);
  std::map<StateId, std::size_t> first_seen;
  while (first_seen.emplace(s, first_seen.size()).second) s = m.run_from(s, w.period);
  // s now starts a period iteration already seen: the loop repeats from here.
  std::vector<TransitionId> ts;
  StateId cur = s;
  do {
    for (auto c : w.period) {
      ts.push_back(m.transition(cur, c));
      cur = m.next(cur, c);
    }
  } while (cur != s);
  return CycleSupport(std::move(ts));
}

Rational discounted_sum(const std::vector<Rational>& weights, const Rational& lambda) {
  // Horner from the back: w0 + l (w1 + l (w2 + ...)).
  Rational acc(0);
  for (auto it = weights.rbegin(); it != weights.rend(); ++it) acc = *it + lambda * acc;
  return acc;
}

namespace {

std::vector<Rational> weights_of(const Condition& cond, const std::vector<ColorId>& ids) {
  std::vector<Rational> out;
  out.reserve(ids.size());
  for (auto c : ids) out.push_back(cond.weights()[c]);
  return out;
}

Rational sum(const std::vector<Rational>& v) {
  Rational s(0);
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace

Outcome lasso_value(const Condition& cond, const Lasso& w) {
  if (w.period.empty()) throw InputError("lasso with empty period");
  for (auto c : w.prefix)
    if (c >= cond.alphabet().size()) throw InputError("color outside the condition's alphabet");
  for (auto c : w.period)
    if (c >= cond.alphabet().size()) throw InputError("color outside the condition's alphabet");
  switch (cond.kind()) {
    case ConditionKind::Dpa: {
      const auto& a = cond.as_dpa()->automaton;
      unsigned best = 0;
      const CycleSupport limit = limit_support(a.skeleton(), a.skeleton().init(), w);
      for (auto t : limit.transitions())
        best = std::max(best, a.priority(t));
      return best % 2 == 0 ? Outcome::Win : Outcome::Lose;
    }
    case ConditionKind::Muller: {
      const auto& mc = *cond.as_muller();
      auto s = limit_support(mc.skeleton, mc.skeleton.init(), w);
      return mc.winning.count(s) ? Outcome::Win : Outcome::Lose;
    }
    case ConditionKind::DiscountedSum: {
      const auto& lambda = cond.as_discounted_sum()->lambda;
      Rational u = discounted_sum(weights_of(cond, w.prefix), lambda);
      Rational v = discounted_sum(weights_of(cond, w.period), lambda);
      auto lp = static_cast<unsigned>(w.period.size());
      Rational total = u + lambda.pow(static_cast<unsigned>(w.prefix.size())) * v / (Rational(1) - lambda.pow(lp));
      return total.sign() >= 0 ? Outcome::Win : Outcome::Lose;
    }
    case ConditionKind::MeanPayoff:
      return sum(weights_of(cond, w.period)).sign() >= 0 ? Outcome::Win : Outcome::Lose;
    case ConditionKind::TotalPayoff: {
      auto period = weights_of(cond, w.period);
      Rational ps = sum(period);
      if (ps.sign() != 0) return ps.sign() > 0 ? Outcome::Win : Outcome::Lose;
      Rational running = sum(weights_of(cond, w.prefix));
      Rational best = running;
      for (const auto& x : period) {
        running += x;
        best = std::max(best, running);
      }
      return best.sign() >= 0 ? Outcome::Win : Outcome::Lose;
    }
  }
  throw InternalError("unhandled condition kind");
}

Outcome lasso_value(const Condition& cond, const UltimatelyPeriodicWord& w) {
  if (w.period.empty()) throw InputError("lasso with empty period");
  return lasso_value(cond, Lasso{cond.alphabet().encode(w.prefix), cond.alphabet().encode(w.period)});
}

std::string GapValue::label() const {
  switch (kind_) {
    case Kind::Top: return "⊤";
    case Kind::Bot: return "⊥";
    case Kind::Finite: return value_.str();
  }
  return "?";
}

Rational max_discounted_sum(const Rational& lambda, unsigned k) {
  return Rational(static_cast<long>(k)) / (Rational(1) - lambda);
}

GapValue gap_step(const GapValue& g, const Rational& c, const Rational& lambda, unsigned k) {
  if (!g.is_finite()) return g;
  Rational next = (g.value() + c) / lambda;
  Rational bound = max_discounted_sum(lambda, k);
  // With k = 0 the only word is 0^omega: the gap stays 0.
  if (k == 0) return GapValue::finite(Rational(0));
  if (next >= bound) return GapValue::top();
  if (next < -bound) return GapValue::bot();
  return GapValue::finite(std::move(next));
}

GapValue gap(const Word& w, const Rational& lambda, unsigned k) {
  if (lambda.sign() <= 0 || lambda >= Rational(1))
    throw InputError("discount factor must lie strictly between 0 and 1");
  GapValue g = GapValue::finite(Rational(0));
  for (const auto& color : w) {
    Rational c = Rational::parse(color);
    if (!c.is_integer() || c.abs() > Rational(static_cast<long>(k)))
      throw InputError("color '" + color + "' outside [-k, k]");
    g = gap_step(g, c, lambda, k);
  }
  return g;
}

}  // namespace chromem

namespace chromem {

Condition muller_abstraction(const ParityAutomaton& a, std::size_t cap) {
  std::vector<CycleSupport> winning;
  for (auto& s : enumerate_cycle_supports(a.skeleton(), cap)) {
    unsigned best = 0;
    for (auto t : s.transitions()) best = std::max(best, a.priority(t));
    if (best % 2 == 0) winning.push_back(std::move(s));
  }
  return Condition::muller(a.skeleton(), std::move(winning));
}

}  // namespace chromem
