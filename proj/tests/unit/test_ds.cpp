#include <doctest.h>

#include <map>
#include <random>

#include "chromem/ds.hpp"
#include "chromem/errors.hpp"
#include "chromem/residuals.hpp"
#include "oracles.hpp"

using namespace chromem;

namespace {

// Independent gap step over labels, for the table check.
std::string step_label(const std::string& g, long c, long n, long k) {
  if (g == "⊤" || g == "⊥") return g;
  long next = (std::stol(g) + c) * n;
  long bound = k * n / (n - 1);  // k / (1 - 1/n), integral for the cases used here
  if (next >= bound) return "⊤";
  if (next < -bound) return "⊥";
  return std::to_string(next);
}

}  // namespace

TEST_CASE("classification") {
  auto a = classify_ds(Rational(2, 5), 1);
  CHECK(a.verdict == DsVerdict::ThreeClass);
  CHECK(a.states == 3);
  auto b = classify_ds(Rational(1, 2), 2);
  CHECK(b.verdict == DsVerdict::FiniteGap);
  CHECK(b.states == 6);
  CHECK(classify_ds(Rational(2, 3), 1).verdict == DsVerdict::InfiniteIndex);
  CHECK(classify_ds(Rational(1, 3), 1).verdict == DsVerdict::ThreeClass);
  CHECK(classify_ds(Rational(1, 2), 1).verdict == DsVerdict::FiniteGap);
  CHECK_THROWS_AS(gap_automaton(Rational(2, 3), 1), UnsupportedError);
}

TEST_CASE("three-class automaton") {
  auto d = three_class_automaton(Rational(2, 5), 1);
  const Skeleton& m = d.automaton.skeleton();
  CHECK(m.num_states() == 3);
  CHECK(m.state_name(m.init()) == "[ε]");
  auto& al = m.alphabet();
  CHECK(m.state_name(m.next(m.init(), al.index("1"))) == "[1]");
  CHECK(m.state_name(m.next(m.init(), al.index("-1"))) == "[-1]");
  CHECK(m.next(m.init(), al.index("0")) == m.init());
}

TEST_CASE("gap automaton for lambda 1/2, k 2 matches the table") {
  auto d = gap_automaton(Rational(1, 2), 2);
  const Skeleton& m = d.automaton.skeleton();
  std::set<std::string> names(m.state_names().begin(), m.state_names().end());
  CHECK(names == std::set<std::string>{"0", "2", "-2", "-4", "⊤", "⊥"});
  CHECK(m.state_name(m.init()) == "0");
  for (StateId s = 0; s < m.num_states(); ++s)
    for (ColorId c = 0; c < m.num_colors(); ++c)
      CHECK(m.state_name(m.next(s, c)) == step_label(m.state_name(s), std::stol(m.alphabet()[c]), 2, 2));
  auto go = [&](const char* from, const char* c) {
    return m.state_name(m.next(m.state_index(from), m.alphabet().index(c)));
  };
  CHECK(go("0", "1") == "2");
  CHECK(go("0", "2") == "⊤");
  CHECK(go("2", "-1") == "2");
  CHECK(go("2", "-2") == "0");
  CHECK(go("-2", "1") == "-2");
  CHECK(go("-2", "0") == "-4");
  CHECK(go("-4", "2") == "-4");
  for (const char* c : {"-2", "-1", "0", "1"}) CHECK(go("-4", c) == "⊥");
  CHECK(run(m, Word{"1", "-1"}).back() == m.state_index("2"));

  // Accepted iff the losing sink is avoided.
  StateId bot = m.state_index("⊥");
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    if (m.source(t) == bot) CHECK(d.automaton.priority(t) % 2 == 1);
  }
}

TEST_CASE("gap labels follow the recurrence") {
  for (auto [n, k] : std::vector<std::pair<long, unsigned>>{{2, 2}, {2, 3}, {3, 2}, {3, 4}, {4, 3}}) {
    Rational lambda(1, n);
    auto d = gap_automaton(lambda, k);
    const Skeleton& m = d.automaton.skeleton();
    REQUIRE(d.gaps.size() == m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s)
      for (ColorId c = 0; c < m.num_colors(); ++c) {
        GapValue expect = gap_step(d.gaps[s], Rational::parse(m.alphabet()[c]), lambda, k);
        CHECK(d.gaps[m.next(s, c)] == expect);
        CHECK(m.state_name(m.next(s, c)) == expect.label());
      }
  }
}

TEST_CASE("k = 0 gives one state") {
  auto d = gap_automaton(Rational(1, 2), 0);
  CHECK(d.automaton.skeleton().num_states() == 1);
  CHECK(d.automaton.priority(0) % 2 == 0);
}

TEST_CASE("gap automaton agrees with the right-congruence quotient") {
  for (auto [n, k] : std::vector<std::pair<long, unsigned>>{{2, 2}, {3, 1}, {3, 2}, {2, 1}}) {
    Rational lambda(1, n);
    auto gap = ds_right_congruence(lambda, k).automaton.skeleton();
    auto rc = right_congruence_automaton(Condition::discounted_sum(lambda, k)).skeleton;
    CHECK(gap.num_states() == rc.num_states());
    CHECK(isomorphic(gap, rc));
  }
}

TEST_CASE("DS automaton accepts exactly the winning lassos") {
  Rational lambda(1, 2);
  auto d = ds_right_congruence(lambda, 2).automaton;
  Condition as_dpa = Condition::dpa(d);
  Condition ds = Condition::discounted_sum(lambda, 2);
  oracle::for_each_lasso(ds.alphabet(), 4, [&](const Lasso& w) {
    CHECK(lasso_value(as_dpa, w) == lasso_value(ds, w));
  });
}

TEST_CASE("greedy expansion examples") {
  auto g = greedy_expansion(Rational(1, 3), Rational(1, 2), 1, 6);
  CHECK(g.digits == std::vector<long>{0, 0, 1, 0, 1, 0});
  CHECK(g.remainder == Rational(1, 48));

  auto z = greedy_expansion(Rational(0), Rational(1, 2), 1, 8);
  CHECK(z.digits == std::vector<long>(8, 0));
  CHECK(z.remainder == Rational(0));

  Rational lambda(2, 3);
  Rational top = max_discounted_sum(lambda, 1);
  auto t = greedy_expansion(top, lambda, 1, 10);
  CHECK(t.digits == std::vector<long>(10, 1));
  CHECK(t.remainder == top * lambda.pow(10));

  auto neg = greedy_expansion(Rational(-1, 3), Rational(1, 2), 1, 6);
  CHECK(neg.digits == std::vector<long>{0, 0, -1, 0, -1, 0});
  CHECK(neg.remainder == Rational(-1, 48));

  CHECK_THROWS_AS(greedy_expansion(top + Rational(1), lambda, 1, 3), InputError);
  CHECK_THROWS_AS(greedy_expansion(Rational(1, 10), Rational(1, 3), 1, 3), InputError);
}

TEST_CASE("greedy remainders obey the tail bound") {
  std::mt19937_64 rng(11);
  const std::vector<std::pair<Rational, unsigned>> params{{Rational(1, 2), 1}, {Rational(2, 3), 1}, {Rational(1, 3), 2}};
  for (int i = 0; i < 100; ++i) {
    auto [lambda, k] = params[i % params.size()];
    Rational top = max_discounted_sum(lambda, k);
    std::uniform_int_distribution<long> num(0, 1000);
    Rational x = top * Rational(num(rng), 1000);
    auto g = greedy_expansion(x, lambda, k, 64);
    Rational partial(0), prev = x;
    for (std::size_t n = 0; n < g.digits.size(); ++n) {
      CHECK(g.digits[n] >= 0);
      CHECK(g.digits[n] <= static_cast<long>(k));
      partial += Rational(g.digits[n]) * lambda.pow(static_cast<unsigned>(n));
      Rational r = x - partial;
      CHECK(r.sign() >= 0);
      CHECK(r <= prev);
      CHECK(r <= greedy_tail_bound(lambda, k, n + 1));
      prev = r;
    }
    CHECK(prev == g.remainder);
  }
}

TEST_CASE("greedy matches exhaustive digit search") {
  Rational lambda(1, 2);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    Rational x(static_cast<long>(rng() % 97), 48);
    // Least non-negative remainder over all digit strings of length 6.
    Rational best = x;
    for (int mask = 0; mask < 64; ++mask) {
      Rational s(0);
      for (int j = 0; j < 6; ++j)
        if (mask >> j & 1) s += lambda.pow(static_cast<unsigned>(j));
      Rational r = x - s;
      if (r.sign() >= 0 && r < best) best = r;
    }
    CHECK(greedy_expansion(x, lambda, 1, 6).remainder == best);
  }
}

TEST_CASE("infinite gap sequence") {
  auto s = infinite_gap_sequence(Rational(2, 3), 20);
  REQUIRE(s.gaps.size() == 20);
  CHECK(s.gaps[0] == Rational(3, 2));
  CHECK(s.gaps[1] == Rational(3, 4));
  CHECK(s.colors[0] == 1);
  CHECK(s.colors[1] == -1);
  CHECK(s.pairwise_distinct);
  CHECK(s.all_ok());
  std::set<Rational> seen;
  for (std::size_t i = 0; i < s.gaps.size(); ++i) {
    CHECK(seen.insert(s.gaps[i]).second);
    CHECK(s.gaps[i].denominator_str() == Rational(2).pow(static_cast<unsigned>(i + 1)).str());
    // Recurrence with the library-independent gap.
    if (i > 0) CHECK(s.gaps[i] == (s.gaps[i - 1] + Rational(s.colors[i])) / Rational(2, 3));
  }
  CHECK_THROWS_AS(infinite_gap_sequence(Rational(1, 2), 5), UnsupportedError);
}

TEST_CASE("DS cycle-consistency demo") {
  auto r = ds_cycle_consistency_demo(Rational(1, 2), 2, 100, 7);
  CHECK(r.samples.size() == 100);
  CHECK(r.consistent == 100);

  std::mt19937_64 rng(1);
  Condition ds = Condition::discounted_sum(Rational(1, 2), 2);
  auto vac = ds_check_family(ds, {}, {}, 5, rng);
  CHECK(vac.vacuous);
  CHECK(vac.consistent);
  CHECK_THROWS_AS(ds_check_family(ds, {}, {{"1"}, {"-1"}}, 5, rng), InputError);

  auto lose = ds_check_family(ds, {"0"}, {{"-1"}, {"-2", "1"}}, 6, rng);
  CHECK(lose.family_value == Outcome::Lose);
  CHECK(lose.consistent);
  CHECK(lose.upper.sign() < 0);
}
