#include <doctest.h>

#include "chromem/ds.hpp"
#include "chromem/errors.hpp"
#include "chromem/residuals.hpp"
#include "oracles.hpp"

using namespace chromem;

namespace {

UltimatelyPeriodicWord upw(Word prefix, Word period) { return UltimatelyPeriodicWord(std::move(prefix), std::move(period)); }

Condition buchi_a() {
  Alphabet ab({"a", "b"});
  Skeleton m = Skeleton::trivial(ab);
  return Condition::dpa(ParityAutomaton(m, {2, 1}));
}

std::vector<Condition> all_conditions() {
  return {oracle::load_condition("fig4_dpa.json"),   oracle::load_condition("genbuchi.json"),
          oracle::load_condition("abc_omega.json"),  oracle::load_condition("ds_half_2.json"),
          Condition::discounted_sum(Rational(2, 3), 1), Condition::mean_payoff(integer_alphabet(2)),
          Condition::total_payoff(integer_alphabet(1))};
}

}  // namespace

TEST_CASE("lasso values of the documented examples") {
  CHECK(lasso_value(oracle::load_condition("fig4_dpa.json"), upw({}, {"b"})) == Outcome::Lose);
  CHECK(lasso_value(oracle::load_condition("ds_half_2.json"), upw({}, {"1", "-1"})) == Outcome::Win);
  CHECK(lasso_value(Condition::mean_payoff(integer_alphabet(1)), upw({}, {"1", "-1", "-1"})) == Outcome::Lose);
}

TEST_CASE("discounted sum of (1,-1)^omega is 2/3") {
  // 1 - 1/2 repeated with ratio 1/4: (1/2) / (3/4).
  Rational v = discounted_sum({Rational(1), Rational(-1)}, Rational(1, 2)) / (Rational(1) - Rational(1, 4));
  CHECK(v == Rational(2, 3));
}

TEST_CASE("total payoff on lassos") {
  Condition tp = Condition::total_payoff(integer_alphabet(2));
  CHECK(lasso_value(tp, upw({}, {"1", "-1"})) == Outcome::Win);
  CHECK(lasso_value(tp, upw({"-1"}, {"1", "-1"})) == Outcome::Win);
  CHECK(lasso_value(tp, upw({"-2"}, {"1", "-1"})) == Outcome::Lose);
  CHECK(lasso_value(tp, upw({"-2"}, {"1"})) == Outcome::Win);
  CHECK(lasso_value(tp, upw({"2"}, {"-1"})) == Outcome::Lose);
}

TEST_CASE("lasso values agree with independent oracles") {
  std::mt19937_64 rng(21);
  auto fig4 = oracle::load_condition("fig4_dpa.json");
  auto gb = oracle::load_condition("genbuchi.json");
  auto abc = oracle::load_condition("abc_omega.json");
  for (int i = 0; i < 500; ++i) {
    Lasso l = oracle::random_lasso(fig4.alphabet(), rng);
    const auto& d = fig4.as_dpa()->automaton;
    CHECK(lasso_value(fig4, l) == oracle::parity_by_simulation(d, d.skeleton().init(), l));
    UltimatelyPeriodicWord w(gb.alphabet().decode(l.prefix), gb.alphabet().decode(l.period));
    CHECK(lasso_value(gb, w) == oracle::genbuchi(w));
    Lasso l2 = oracle::random_lasso(abc.alphabet(), rng, 3, 3);
    UltimatelyPeriodicWord w2(abc.alphabet().decode(l2.prefix), abc.alphabet().decode(l2.period));
    CHECK(lasso_value(abc, w2) == oracle::starts_ab(w2));
  }
  for (auto [lambda, k] : std::vector<std::pair<Rational, unsigned>>{{Rational(1, 2), 2}, {Rational(2, 3), 1}}) {
    Condition ds = Condition::discounted_sum(lambda, k);
    for (int i = 0; i < 300; ++i) {
      Lasso l = oracle::random_lasso(ds.alphabet(), rng, 4, 4);
      auto pre = oracle::ints(ds.alphabet().decode(l.prefix)), per = oracle::ints(ds.alphabet().decode(l.period));
      CHECK(lasso_value(ds, l) == oracle::ds_by_partial_sums(lambda, k, pre, per));
    }
  }
}

TEST_CASE("lasso value is invariant under period repetition and rotation") {
  std::mt19937_64 rng(4);
  for (const auto& c : all_conditions()) {
    for (int i = 0; i < 200; ++i) {
      Lasso l = oracle::random_lasso(c.alphabet(), rng, 4, 5);
      Outcome v = lasso_value(c, l);
      Lasso twice = l;
      twice.period.insert(twice.period.end(), l.period.begin(), l.period.end());
      CHECK(lasso_value(c, twice) == v);
      // u (v1 v2)^omega = u v1 (v2 v1)^omega
      std::size_t cut = l.period.size() / 2;
      Lasso rot;
      rot.prefix = l.prefix;
      rot.prefix.insert(rot.prefix.end(), l.period.begin(), l.period.begin() + static_cast<long>(cut));
      rot.period.assign(l.period.begin() + static_cast<long>(cut), l.period.end());
      rot.period.insert(rot.period.end(), l.period.begin(), l.period.begin() + static_cast<long>(cut));
      CHECK(lasso_value(c, rot) == v);
    }
  }
}

TEST_CASE("lasso value rejects foreign colors") {
  CHECK_THROWS_AS(lasso_value(oracle::load_condition("fig4_dpa.json"), upw({}, {"z"})), InputError);
}

TEST_CASE("gap values") {
  Rational half(1, 2);
  CHECK(gap({}, half, 2) == GapValue::finite(Rational(0)));
  CHECK(gap({"1"}, half, 2) == GapValue::finite(Rational(2)));
  CHECK(gap({"2"}, half, 2) == GapValue::top());
  CHECK(gap({"-2"}, half, 2) == GapValue::finite(Rational(-4)));
  CHECK(gap({"-2", "-1"}, half, 2) == GapValue::bot());
  CHECK(gap({"2", "-2", "-2"}, half, 2) == GapValue::top());
}

TEST_CASE("gap recurrence equals DS(w)/lambda^|w| while finite") {
  std::mt19937_64 rng(8);
  for (auto [lambda, k] : std::vector<std::pair<Rational, unsigned>>{{Rational(1, 2), 2}, {Rational(2, 3), 1}, {Rational(1, 3), 3}}) {
    Alphabet a = integer_alphabet(k);
    for (int i = 0; i < 200; ++i) {
      Lasso l = oracle::random_lasso(a, rng, 0, 7);
      Word w = a.decode(l.period);
      GapValue g = gap(w, lambda, k);
      if (!g.is_finite()) continue;
      std::vector<Rational> ws;
      for (const auto& c : w) ws.push_back(Rational::parse(c));
      CHECK(g.value() == discounted_sum(ws, lambda) / lambda.pow(static_cast<unsigned>(w.size())));
      CHECK(g.value() < max_discounted_sum(lambda, k));
      CHECK(g.value() >= -max_discounted_sum(lambda, k));
    }
  }
}

TEST_CASE("finite gap decides the lasso value") {
  // Whenever gap(u) = g is finite, u v^omega wins iff DS(v^omega) >= -g.
  std::mt19937_64 rng(12);
  Rational lambda(1, 2);
  Condition ds = Condition::discounted_sum(lambda, 2);
  for (int i = 0; i < 300; ++i) {
    Lasso l = oracle::random_lasso(ds.alphabet(), rng, 4, 3);
    GapValue g = gap(ds.alphabet().decode(l.prefix), lambda, 2);
    if (!g.is_finite()) continue;
    std::vector<Rational> per;
    for (const auto& c : ds.alphabet().decode(l.period)) per.push_back(Rational::parse(c));
    Rational cont = discounted_sum(per, lambda) / (Rational(1) - lambda.pow(static_cast<unsigned>(per.size())));
    CHECK((lasso_value(ds, l) == Outcome::Win) == (cont >= -g.value()));
  }
}

TEST_CASE("residual comparison examples") {
  auto abc = oracle::load_condition("abc_omega.json");
  CHECK(residual_compare(abc, {"a"}, {"a"}) == Comparison::Equal);
  CHECK(residual_compare(abc, {}, {"a"}) == Comparison::Incomparable);
  CHECK(residual_compare(abc, {"b"}, {"a", "b"}) == Comparison::Less);
  CHECK(residual_compare(abc, {"a", "b"}, {"b"}) == Comparison::Greater);
  CHECK(residual_compare(abc, {"b"}, {"a", "a"}) == Comparison::Equal);
  auto ds = oracle::load_condition("ds_half_2.json");
  CHECK(residual_compare(ds, {"-1"}, {}) == Comparison::Less);
  CHECK(residual_compare(ds, {"-2"}, {"-1"}) == Comparison::Less);
  CHECK(residual_compare(ds, {"2"}, {"1"}) == Comparison::Greater);
}

TEST_CASE("residual inclusion agrees with exhaustive lasso search") {
  std::mt19937_64 rng(31);
  Alphabet ab({"a", "b"});
  const std::size_t bound = 11;
  for (int i = 0; i < 12; ++i) {
    Skeleton m = oracle::random_skeleton(ab, 2 + i % 2, rng);
    std::uniform_int_distribution<unsigned> pr(0, 3);
    std::vector<unsigned> prio(m.num_transitions());
    for (auto& p : prio) p = pr(rng);
    ParityAutomaton d(m, prio);
    auto incl = Acceptor::of(Condition::dpa(d)).inclusion_matrix();
    // witness[p][q]: some lasso accepted from p and rejected from q.
    std::vector<std::vector<bool>> witness(m.num_states(), std::vector<bool>(m.num_states(), false));
    oracle::for_each_lasso(ab, bound, [&](const Lasso& l) {
      std::vector<Outcome> v;
      for (StateId s = 0; s < m.num_states(); ++s) v.push_back(oracle::parity_by_simulation(d, s, l));
      for (StateId p = 0; p < m.num_states(); ++p)
        for (StateId q = 0; q < m.num_states(); ++q)
          if (v[p] == Outcome::Win && v[q] == Outcome::Lose) witness[p][q] = true;
    });
    for (StateId p = 0; p < m.num_states(); ++p)
      for (StateId q = 0; q < m.num_states(); ++q) CHECK(incl[p][q] == !witness[p][q]);
  }
}

TEST_CASE("right-congruence automata") {
  auto ds = right_congruence_automaton(oracle::load_condition("ds_half_2.json"));
  CHECK(ds.skeleton.num_states() == 6);
  std::set<std::string> names(ds.skeleton.state_names().begin(), ds.skeleton.state_names().end());
  CHECK(names == std::set<std::string>{"0", "2", "-2", "-4", "⊤", "⊥"});

  auto abc = right_congruence_automaton(oracle::load_condition("abc_omega.json"));
  std::set<std::string> labels(abc.skeleton.state_names().begin(), abc.skeleton.state_names().end());
  CHECK(labels == std::set<std::string>{"[ε]", "[a]", "[ab]", "[b]"});

  CHECK(right_congruence_automaton(buchi_a()).skeleton.num_states() == 1);
}

TEST_CASE("distinct right-congruence states have distinct residuals") {
  for (const char* f : {"abc_omega.json", "fig4_dpa.json"}) {
    Condition c = oracle::load_condition(f);
    auto rc = right_congruence_automaton(c);
    for (std::size_t i = 0; i < rc.representatives.size(); ++i)
      for (std::size_t j = i + 1; j < rc.representatives.size(); ++j)
        CHECK(residual_compare(c, rc.representatives[i], rc.representatives[j]) != Comparison::Equal);
  }
}

TEST_CASE("Muller abstraction of a parity automaton accepts the same lassos") {
  auto fig4 = oracle::load_automaton("fig4_dpa.json");
  Condition mu = muller_abstraction(fig4);
  Condition dpa = Condition::dpa(fig4);
  oracle::for_each_lasso(fig4.alphabet(), 5, [&](const Lasso& l) { CHECK(lasso_value(mu, l) == lasso_value(dpa, l)); });
}

TEST_CASE("union invariance flags") {
  CHECK(oracle::load_condition("fig4_dpa.json").union_invariant());
  CHECK(oracle::load_condition("genbuchi.json").union_invariant());
  CHECK(oracle::load_condition("ds_half_2.json").union_invariant());
  CHECK_FALSE(Condition::discounted_sum(Rational(2, 3), 1).union_invariant());
  CHECK_FALSE(Condition::mean_payoff(integer_alphabet(1)).union_invariant());
  CHECK_FALSE(Condition::total_payoff(integer_alphabet(1)).union_invariant());
}

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational(3, 2).floor() == Rational(1));
  CHECK(Rational(-3, 2).floor() == Rational(-2));
  CHECK(Rational(-3, 2).str() == "-3/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), InputError);
  CHECK_THROWS_AS(Rational::parse("x"), InputError);
}
