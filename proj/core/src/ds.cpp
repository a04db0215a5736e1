#include "chromem/ds.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "chromem/errors.hpp"

namespace chromem {

const char* to_string(DsVerdict v) {
  switch (v) {
    case DsVerdict::ThreeClass: return "three-class";
    case DsVerdict::FiniteGap: return "finite-gap";
    case DsVerdict::InfiniteIndex: return "infinite-index";
  }
  return "?";
}

namespace {

void check_lambda(const Rational& lambda) {
  if (lambda.sign() <= 0 || lambda >= Rational(1))
    throw InputError("discount factor must lie strictly between 0 and 1");
}

bool is_unit_fraction(const Rational& lambda) { return lambda.numerator_str() == "1"; }

bool three_class_regime(const Rational& lambda, unsigned k) {
  return Rational(static_cast<long>(k)) < lambda.reciprocal() - Rational(1);
}

[[noreturn]] void infinite_index(const Rational& lambda, unsigned k) {
  throw UnsupportedError("infinite index: the discounted-sum right congruence for lambda = " + lambda.str() +
                         ", k = " + std::to_string(k) +
                         " has infinitely many classes (finite only when k < 1/lambda - 1 or lambda = 1/n)");
}

DsAutomaton bfs_gap_automaton(const Rational& lambda, unsigned k) {
  const Alphabet alphabet = integer_alphabet(k);
  std::vector<Rational> weights;
  for (const auto& c : alphabet.colors()) weights.push_back(Rational::parse(c));
  std::vector<GapValue> gaps{GapValue::finite(Rational(0))};
  std::map<std::string, StateId> index{{gaps[0].label(), 0}};
  std::vector<StateId> table;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    for (const auto& w : weights) {
      GapValue next = gap_step(gaps[i], w, lambda, k);
      auto [it, fresh] = index.emplace(next.label(), static_cast<StateId>(gaps.size()));
      if (fresh) gaps.push_back(next);
      table.push_back(it->second);
    }
  }
  std::vector<std::string> names;
  for (const auto& g : gaps) names.push_back(g.label());
  Skeleton m = Skeleton::from_table(alphabet, names, 0, table);
  std::vector<GapValue> sorted_gaps;
  std::vector<unsigned> priority(m.num_transitions(), 0);
  for (StateId s = 0; s < m.num_states(); ++s) sorted_gaps.push_back(gaps[index.at(m.state_name(s))]);
  for (TransitionId t = 0; t < m.num_transitions(); ++t)
    if (sorted_gaps[m.target(t)].kind() == GapValue::Kind::Bot) priority[t] = 1;
  return DsAutomaton{ParityAutomaton(std::move(m), std::move(priority)), std::move(sorted_gaps)};
}

}  // namespace

DsClassification classify_ds(const Rational& lambda, unsigned k) {
  check_lambda(lambda);
  DsClassification c{lambda, k, DsVerdict::InfiniteIndex, 0};
  if (three_class_regime(lambda, k)) {
    c.verdict = DsVerdict::ThreeClass;
    c.states = k == 0 ? 1 : 3;
  } else if (is_unit_fraction(lambda)) {
    c.verdict = DsVerdict::FiniteGap;
    c.states = bfs_gap_automaton(lambda, k).automaton.skeleton().num_states();
  }
  return c;
}

DsAutomaton three_class_automaton(const Rational& lambda, unsigned k) {
  check_lambda(lambda);
  if (!three_class_regime(lambda, k))
    throw InputError("three-class automaton requires k < 1/lambda - 1");
  const Alphabet alphabet = integer_alphabet(k);
  // Caller-order states: 0 = [ε], 1 = [1], 2 = [-1].
  std::vector<StateId> table;
  for (StateId s = 0; s < 3; ++s) {
    for (const auto& color : alphabet.colors()) {
      int sign = Rational::parse(color).sign();
      table.push_back(s != 0 ? s : (sign > 0 ? 1 : (sign < 0 ? 2 : 0)));
    }
  }
  std::vector<std::string> names{"[ε]", "[1]", "[-1]"};
  if (k == 0) {
    names.resize(1);
    table.resize(1);
  }
  Skeleton m = Skeleton::from_table(alphabet, names, 0, table);
  std::vector<unsigned> priority(m.num_transitions(), 0);
  if (auto neg = m.find_state("[-1]"))
    for (TransitionId t = 0; t < m.num_transitions(); ++t)
      if (m.target(t) == *neg) priority[t] = 1;
  return DsAutomaton{ParityAutomaton(std::move(m), std::move(priority)), {}};
}

DsAutomaton gap_automaton(const Rational& lambda, unsigned k) {
  check_lambda(lambda);
  if (is_unit_fraction(lambda)) return bfs_gap_automaton(lambda, k);
  if (three_class_regime(lambda, k)) return three_class_automaton(lambda, k);
  infinite_index(lambda, k);
}

DsAutomaton ds_right_congruence(const Rational& lambda, unsigned k) {
  auto c = classify_ds(lambda, k);
  switch (c.verdict) {
    case DsVerdict::ThreeClass: return three_class_automaton(lambda, k);
    case DsVerdict::FiniteGap: return bfs_gap_automaton(lambda, k);
    case DsVerdict::InfiniteIndex: break;
  }
  infinite_index(lambda, k);
}

Rational greedy_tail_bound(const Rational& lambda, unsigned k, std::size_t n) {
  return max_discounted_sum(lambda, k) * lambda.pow(static_cast<unsigned>(n));
}

GreedyExpansion greedy_expansion(const Rational& x, const Rational& lambda, unsigned k, std::size_t n_digits) {
  check_lambda(lambda);
  if (Rational(static_cast<long>(k)) < (lambda.reciprocal() - Rational(1)).ceil())
    throw InputError("greedy expansion needs k >= ceil(1/lambda - 1)");
  Rational bound = max_discounted_sum(lambda, k);
  if (x > bound || x < -bound) throw InputError("x outside [-k/(1-lambda), k/(1-lambda)]");
  const bool negative = x.sign() < 0;
  Rational rest = negative ? -x : x;
  GreedyExpansion out;
  Rational scale(1);
  for (std::size_t i = 0; i < n_digits; ++i) {
    // Largest d in {0..k} with d * lambda^i <= rest.
    Rational d = (rest / scale).floor();
    long digit = std::min<long>(static_cast<long>(k), d.numerator_long());
    if (digit < 0) digit = 0;
    rest -= Rational(digit) * scale;
    out.digits.push_back(negative ? -digit : digit);
    scale *= lambda;
  }
  out.remainder = negative ? -rest : rest;
  return out;
}

bool GapSequence::all_ok() const {
  return pairwise_distinct && std::all_of(denominator_ok.begin(), denominator_ok.end(), [](bool b) { return b; }) &&
         std::all_of(in_range.begin(), in_range.end(), [](bool b) { return b; });
}

GapSequence infinite_gap_sequence(const Rational& lambda, std::size_t n_terms) {
  check_lambda(lambda);
  if (is_unit_fraction(lambda))
    throw UnsupportedError("infinite gap sequence not applicable: lambda = 1/n has finitely many gaps");
  GapSequence out;
  out.lambda = lambda;
  const Rational inv = lambda.reciprocal();
  const Rational p = Rational::parse(lambda.numerator_str());
  Rational g;
  for (std::size_t i = 1; i <= n_terms; ++i) {
    long c = i == 1 ? 1 : -out.gaps.back().floor().numerator_long();
    g = (i == 1 ? Rational(c) : out.gaps.back() + Rational(c)) / lambda;
    out.colors.push_back(c);
    out.gaps.push_back(g);
    out.denominator_ok.push_back(Rational::parse(g.denominator_str()) == p.pow(static_cast<unsigned>(i)));
    out.in_range.push_back(i == 1 ? g == inv : (g.sign() > 0 && g < inv));
  }
  std::set<std::string> distinct;
  for (const auto& x : out.gaps) distinct.insert(x.str());
  out.pairwise_distinct = distinct.size() == out.gaps.size();
  return out;
}

DsFamilyCheck ds_check_family(const Condition& ds, const Word& prefix, const std::vector<Word>& family,
                              std::size_t n_cycles, std::mt19937_64& rng) {
  const auto* spec = ds.as_discounted_sum();
  if (!spec) throw InputError("discounted-sum condition required");
  const Rational& lambda = spec->lambda;
  DsFamilyCheck out;
  if (family.empty()) {
    out.vacuous = true;
    return out;
  }
  const auto& alphabet = ds.alphabet();
  auto weights = [&](const Word& w) {
    std::vector<Rational> v;
    for (auto c : alphabet.encode(w)) v.push_back(ds.weights()[c]);
    return v;
  };
  // Value of each cycle after the prefix, and the discounted sum of its repetition.
  std::vector<Rational> cycle_ds, periodic;
  std::vector<std::size_t> length;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& v = family[i];
    if (v.empty()) throw InputError("empty cycle in family");
    Outcome o = lasso_value(ds, UltimatelyPeriodicWord(prefix, v));
    if (i == 0) out.family_value = o;
    else if (o != out.family_value) throw InputError("family mixes winning and losing cycles");
    cycle_ds.push_back(discounted_sum(weights(v), lambda));
    length.push_back(v.size());
    periodic.push_back(cycle_ds.back() / (Rational(1) - lambda.pow(static_cast<unsigned>(v.size()))));
  }
  const Rational tail_lo = *std::min_element(periodic.begin(), periodic.end());
  const Rational tail_hi = *std::max_element(periodic.begin(), periodic.end());

  Rational sum = discounted_sum(weights(prefix), lambda);
  Rational scale = lambda.pow(static_cast<unsigned>(prefix.size()));
  std::uniform_int_distribution<std::size_t> pick(0, family.size() - 1);
  for (std::size_t j = 0; j < n_cycles; ++j) {
    std::size_t i = pick(rng);
    sum += scale * cycle_ds[i];
    scale *= lambda.pow(static_cast<unsigned>(length[i]));
    out.letters += length[i];
  }
  // Generic enclosure from the truncation alone.
  Rational bound = max_discounted_sum(lambda, spec->k) * scale;
  Rational lo = sum - bound, hi = sum + bound;
  bool decided = out.family_value == Outcome::Win ? lo.sign() >= 0 : hi.sign() < 0;
  if (decided) {
    out.resolved_by_tail_bound = true;
  } else {
    // Any infinite concatenation of family cycles has discounted sum within
    // [min, max] of the family's periodic values.
    lo = sum + scale * tail_lo;
    hi = sum + scale * tail_hi;
  }
  out.lower = lo;
  out.upper = hi;
  out.consistent = out.family_value == Outcome::Win ? lo.sign() >= 0 : hi.sign() < 0;
  return out;
}

DsDemoReport ds_cycle_consistency_demo(const Rational& lambda, unsigned k, std::size_t samples,
                                       std::uint64_t seed) {
  Condition ds = Condition::discounted_sum(lambda, k);
  const auto& colors = ds.alphabet().colors();
  DsDemoReport report{lambda, k, seed, {}, 0};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> color(0, colors.size() - 1);
  std::uniform_int_distribution<std::size_t> prefix_len(0, 4), cycle_len(1, 4), family_size(1, 3);
  auto random_word = [&](std::size_t n) {
    Word w;
    for (std::size_t i = 0; i < n; ++i) w.push_back(colors[color(rng)]);
    return w;
  };
  for (std::size_t s = 0; s < samples; ++s) {
    DsDemoSample sample;
    const Outcome wanted = s % 2 == 0 ? Outcome::Lose : Outcome::Win;
    // Retry prefixes until the wanted kind of cycle exists after them.
    for (int attempt = 0; attempt < 64 && sample.family.empty(); ++attempt) {
      sample.prefix = random_word(prefix_len(rng));
      const std::size_t target = family_size(rng);
      for (int tries = 0; tries < 200 && sample.family.size() < target; ++tries) {
        Word v = random_word(cycle_len(rng));
        if (lasso_value(ds, UltimatelyPeriodicWord(sample.prefix, v)) == wanted) sample.family.push_back(v);
      }
    }
    sample.check = ds_check_family(ds, sample.prefix, sample.family, 24, rng);
    if (sample.check.consistent) ++report.consistent;
    report.samples.push_back(std::move(sample));
  }
  return report;
}

}  // namespace chromem
