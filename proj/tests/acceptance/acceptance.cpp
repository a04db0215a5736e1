// Acceptance run: one PASS/FAIL line per criterion; exit code is the number of failures.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "chromem/consistency.hpp"
#include "chromem/ds.hpp"
#include "chromem/residuals.hpp"
#include "chromem/synthesis.hpp"
#include "oracles.hpp"

using namespace chromem;

namespace {

struct Outcome_ {
  bool ok = true;
  std::string why;
  void require(bool c, const std::string& what) {
    if (!c && ok) {
      ok = false;
      why = what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome_&)>& body) {
  Outcome_ r;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.require(false, std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) r.require(s < limit_s, "too slow");
  if (!r.ok) ++failures;
  std::printf("%s %2d %-48s %8.3fs%s%s\n", r.ok ? "PASS" : "FAIL", id, title, s, r.ok ? "" : "  ", r.why.c_str());
  std::fflush(stdout);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

UltimatelyPeriodicWord decode(const Alphabet& a, const Lasso& l) {
  Word p, q;
  for (auto c : l.prefix) p.push_back(a[c]);
  for (auto c : l.period) q.push_back(a[c]);
  return {p, q};
}

// Cycle supports: parity of the max priority matches the condition's value on
// the support's lasso. Returns the number checked, or -1 on a violation.
long parity_law(const ParityAutomaton& d, const Condition& cond) {
  long n = 0;
  for (const auto& s : enumerate_cycle_supports(d.skeleton())) {
    unsigned best = 0;
    for (auto t : s.transitions()) best = std::max(best, d.priority(t));
    Outcome want = support_value(cond, d.skeleton(), s);
    if ((best % 2 == 0) != (want == Outcome::Win)) return -1;
    ++n;
  }
  return n;
}

}  // namespace

int main() {
  const Rational half(1, 2);

  criterion(1, "gap automaton for lambda 1/2, k 2 (golden)", 1.0, [&](Outcome_& r) {
    auto out = std::filesystem::temp_directory_path() / "chromem_acceptance_gap.json";
    std::string cmd = std::string(CHROMEM_CLI) + " ds gap-automaton --lambda 1/2 --k 2 --out " + out.string();
    r.require(std::system(cmd.c_str()) == 0, "CLI exit code");
    std::string produced = slurp(out.string());
    r.require(!produced.empty() && produced == slurp(std::string(CHROMEM_GOLDEN) + "/gap_automaton_half_2.json"),
              "output differs from golden file");
    auto d = io::automaton_from_json(nlohmann::json::parse(produced));
    const Skeleton& m = d.skeleton();
    std::set<std::string> names(m.state_names().begin(), m.state_names().end());
    r.require(names == std::set<std::string>{"0", "2", "-2", "-4", "⊤", "⊥"}, "state set");
    auto go = [&](const char* s, const char* c) { return m.state_name(m.next(m.state_index(s), m.alphabet().index(c))); };
    r.require(go("0", "1") == "2" && go("0", "2") == "⊤" && go("2", "-1") == "2" && go("2", "-2") == "0" &&
                  go("-2", "1") == "-2" && go("-2", "0") == "-4" && go("-4", "2") == "-4",
              "listed transitions");
    for (const char* c : {"-2", "-1", "0", "1"}) r.require(go("-4", c) == "⊥", "-4 falls to the losing sink");
    std::filesystem::remove(out);
  });

  criterion(2, "cycle preorder of the two-state parity example", 5.0, [&](Outcome_& r) {
    auto d = oracle::load_automaton("fig4_dpa.json");
    const Skeleton& m = d.skeleton();
    auto t = build_cycle_preorder(m, muller_abstraction(d));
    r.require(t.classes.size() == 4, "class count");
    auto cls = [&](const oracle::NamedSupport& n) { return t.class_of_support(oracle::support_of(m, n)); };
    auto b1 = cls({{"m1", "b"}}), aa = cls({{"m1", "a"}, {"m2", "a"}}), c1 = cls({{"m1", "c"}}), b2 = cls({{"m2", "b"}});
    std::set<std::pair<std::size_t, std::size_t>> h;
    for (auto e : t.hasse()) h.insert(e);
    r.require(h == std::set<std::pair<std::size_t, std::size_t>>{{b1, aa}, {aa, c1}, {b2, c1}}, "Hasse edges");
  });

  criterion(3, "priorities from the extension (5, 2, 4, 1)", 5.0, [&](Outcome_& r) {
    auto d = oracle::load_automaton("fig4_dpa.json");
    const Skeleton& m = d.skeleton();
    auto t = build_cycle_preorder(m, muller_abstraction(d));
    auto cls = [&](const oracle::NamedSupport& n) { return t.class_of_support(oracle::support_of(m, n)); };
    std::vector<unsigned> pg(t.classes.size());
    pg[cls({{"m1", "c"}})] = 5;
    pg[cls({{"m1", "a"}, {"m2", "a"}})] = 2;
    pg[cls({{"m2", "b"}})] = 4;
    pg[cls({{"m1", "b"}})] = 1;
    r.require(!validate_extension(t, pg), "extension rejected");
    auto p = assign_priorities(t, pg);
    auto pr = [&](const char* s, const char* c) { return p.priority(m.state_index(s), m.alphabet().index(c)); };
    r.require(pr("m1", "c") == 5 && pr("m1", "a") == 2 && pr("m2", "a") == 2 && pr("m2", "b") == 4 &&
                  pr("m2", "c") == 4 && pr("m1", "b") == 1,
              "got p(m2,b)=" + std::to_string(pr("m2", "b")) + " p(m2,c)=" + std::to_string(pr("m2", "c")) +
                  "; the walk (m1,a)(m2,b)(m2,a) is in the class priced 2");
  });

  criterion(4, "synthesis soundness on four conditions", 30.0, [&](Outcome_& r) {
    auto fig4 = oracle::load_automaton("fig4_dpa.json");
    struct Case {
      const char* name;
      Condition cond;
      Skeleton m;
      bool transient;
      std::function<Outcome(const Lasso&)> oracle;
    };
    auto gb = oracle::load_condition("genbuchi.json");
    auto abc = oracle::load_condition("abc_omega.json");
    auto ds = Condition::discounted_sum(half, 2);
    std::vector<Case> cases{
        {"gen-Buchi", gb, oracle::load_skeleton("fig1_skeleton.json"), false,
         [&](const Lasso& l) { return oracle::genbuchi(decode(gb.alphabet(), l)); }},
        {"abC", abc, Skeleton::trivial(abc.alphabet()), true,
         [&](const Lasso& l) { return oracle::starts_ab(decode(abc.alphabet(), l)); }},
        {"parity example", muller_abstraction(fig4), fig4.skeleton(), false,
         [&](const Lasso& l) { return oracle::parity_by_simulation(fig4, fig4.skeleton().init(), l); }},
        {"DS 1/2 2", ds, Skeleton::trivial(ds.alphabet()), true, [&](const Lasso& l) {
           auto w = decode(ds.alphabet(), l);
           return oracle::ds_by_partial_sums(half, 2, oracle::ints(w.prefix), oracle::ints(w.period));
         }}};
    for (auto& c : cases) {
      SynthesisOptions opt;
      opt.allow_transient = c.transient;
      auto res = synthesize(c.cond, c.m, opt);
      auto chk = verify_synthesis(res.automaton, c.cond, 1000, 42);
      r.require(chk.verdict == Verdict::Pass && chk.samples_checked == 1000, std::string(c.name) + ": verify");
      r.require(parity_law(res.automaton, c.cond) > 0, std::string(c.name) + ": parity law on supports");
      std::mt19937_64 rng(42);
      std::size_t bad = 0;
      for (int i = 0; i < 1000; ++i) {
        Lasso l = oracle::random_lasso(c.cond.alphabet(), rng);
        if (oracle::parity_by_simulation(res.automaton, res.automaton.skeleton().init(), l) != c.oracle(l)) ++bad;
      }
      r.require(bad == 0, std::string(c.name) + ": lasso mismatches " + std::to_string(bad));
    }
  });

  criterion(5, "discounted-sum classification", 1.0, [&](Outcome_& r) {
    auto a = classify_ds(Rational(2, 5), 1);
    auto b = classify_ds(half, 2);
    auto c = classify_ds(Rational(2, 3), 1);
    r.require(a.verdict == DsVerdict::ThreeClass, "2/5,1");
    r.require(b.verdict == DsVerdict::FiniteGap && b.states == 6, "1/2,2");
    r.require(c.verdict == DsVerdict::InfiniteIndex, "2/3,1");
    r.require(ds_right_congruence(Rational(2, 5), 1).automaton.skeleton().num_states() == 3, "three-state automaton");
  });

  criterion(6, "infinitely many gaps for lambda 2/3", 1.0, [&](Outcome_& r) {
    auto s = infinite_gap_sequence(Rational(2, 3), 20);
    r.require(s.gaps.size() == 20, "length");
    r.require(s.gaps[0] == Rational(3, 2) && s.gaps[1] == Rational(3, 4), "first gaps");
    std::set<Rational> seen(s.gaps.begin(), s.gaps.end());
    r.require(seen.size() == 20, "distinct");
    for (std::size_t i = 0; i < s.gaps.size(); ++i)
      r.require(s.gaps[i].denominator_str() == Rational(2).pow(static_cast<unsigned>(i + 1)).str(), "denominators");
  });

  criterion(7, "mean-payoff counterexample up to n = 50", 10.0, [&](Outcome_& r) {
    auto rep = mp_counterexample_report(50);
    r.require(rep.claims_hold && rep.rows.size() == 50, "claims");
    for (const auto& row : rep.rows) {
      long n = row.n;
      r.require(row.mean_payoff == Rational(-1, 2 * n + 1), "mean payoff value");
      r.require(row.zero_position == static_cast<std::size_t>(n * n + n) && row.running_sum == Rational(0), "zero");
    }
  });

  criterion(8, "parity solver vs brute force, 200 games", 60.0, [&](Outcome_& r) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> size(1, 6);
    std::size_t disagree = 0;
    for (int i = 0; i < 200; ++i) {
      auto g = oracle::random_game(size(rng), 3, rng);
      auto z = solve_parity(g);
      auto bf = brute_force_regions(g);
      r.require(bf.determined, "determinacy");
      if (z.winner != bf.winner) ++disagree;
    }
    r.require(disagree == 0, std::to_string(disagree) + " disagreements");
  });

  criterion(9, "strategy lift on 100 arenas per condition", 120.0, [&](Outcome_& r) {
    auto gb = lift_experiment(oracle::load_condition("genbuchi.json"), oracle::load_skeleton("fig1_skeleton.json"),
                              100, 8, 9);
    r.require(gb.p1_pass + gb.p2_pass == 200, "gen-Buchi " + std::to_string(gb.p1_pass + gb.p2_pass) + "/200");
    SynthesisOptions opt;
    opt.allow_transient = true;
    auto ds = Condition::discounted_sum(half, 2);
    auto dr = lift_experiment(ds, Skeleton::trivial(ds.alphabet()), 100, 8, 9, opt);
    r.require(dr.p1_pass + dr.p2_pass == 200, "DS " + std::to_string(dr.p1_pass + dr.p2_pass) + "/200");
  });

  criterion(10, "negative controls with re-verified witnesses", 10.0, [&](Outcome_& r) {
    auto abc = oracle::load_condition("abc_omega.json");
    auto left = oracle::load_skeleton("fig3_left_skeleton.json");
    auto pi = check_prefix_independence(abc, left);
    r.require(pi.verdict == Verdict::Fail && pi.prefixes && pi.prefixes->first == Word{} &&
                  pi.prefixes->second == Word{"a"},
              "prefix witness");
    if (pi.prefixes)
      r.require(run(left, pi.prefixes->first).back() == run(left, pi.prefixes->second).back() &&
                    residual_compare(abc, pi.prefixes->first, pi.prefixes->second) != Comparison::Equal,
                "prefix witness re-check");

    auto gb = oracle::load_condition("genbuchi.json");
    auto cc = check_cycle_consistency(gb, Skeleton::trivial(gb.alphabet()));
    r.require(cc.verdict == Verdict::Fail && cc.supports && cc.arena_skeleton, "cycle witness");
    if (cc.supports && cc.arena_skeleton) {
      const Skeleton& m = *cc.arena_skeleton;
      std::string st = m.state_name(cc.supports->state);
      r.require(oracle::named(m, cc.supports->first) == oracle::NamedSupport{{st, "a"}} &&
                    oracle::named(m, cc.supports->second) == oracle::NamedSupport{{st, "b"}},
                "cycle witness is ({a},{b})");
      auto u = cc.supports->first.transitions();
      u.insert(u.end(), cc.supports->second.transitions().begin(), cc.supports->second.transitions().end());
      r.require(support_value(gb, m, cc.supports->first) == Outcome::Lose &&
                    support_value(gb, m, cc.supports->second) == Outcome::Lose &&
                    support_value(gb, m, CycleSupport(u)) == Outcome::Win,
                "cycle witness re-check");
    }

    auto d = oracle::load_automaton("fig4_dpa.json");
    auto mut = oracle::load_automaton("fig4_mutated_dpa.json");
    auto vs = verify_synthesis(mut, Condition::dpa(d), 1000, 0);
    r.require(vs.verdict == Verdict::Fail && vs.support_witness &&
                  oracle::named(d.skeleton(), *vs.support_witness) == oracle::NamedSupport{{"m1", "c"}},
              "synthesis witness");
    if (vs.support_witness) {
      Lasso l = support_lasso(mut.skeleton(), *vs.support_witness);
      r.require(oracle::parity_by_simulation(mut, mut.skeleton().init(), l) !=
                    oracle::parity_by_simulation(d, d.skeleton().init(), l),
                "synthesis witness re-check");
    }
  });

  criterion(11, "greedy expansion and tail bound", 10.0, [&](Outcome_& r) {
    auto g = greedy_expansion(Rational(1, 3), half, 1, 6);
    r.require(g.digits == std::vector<long>{0, 0, 1, 0, 1, 0} && g.remainder == Rational(1, 48), "worked example");
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-1000, 1000);
    for (int i = 0; i < 100; ++i) {
      Rational lambda = i % 2 ? half : Rational(2, 3);
      Rational top = max_discounted_sum(lambda, 1);
      Rational x = top * Rational(num(rng), 1000);
      for (std::size_t n = 1; n <= 64; ++n) {
        Rational rem = greedy_expansion(x, lambda, 1, n).remainder;
        r.require(rem.abs() <= greedy_tail_bound(lambda, 1, n), "tail bound");
        r.require(x.sign() < 0 ? rem.sign() <= 0 : rem.sign() >= 0, "remainder sign");
      }
    }
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
