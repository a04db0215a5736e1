#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <random>

#include "chromem/consistency.hpp"
#include "chromem/dot.hpp"
#include "chromem/ds.hpp"
#include "chromem/errors.hpp"
#include "chromem/games.hpp"
#include "chromem/residuals.hpp"
#include "chromem/synthesis.hpp"
#include "json_io.hpp"

using namespace chromem;
using io::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kInput = 2, kResource = 3, kInternal = 4 };

struct Options {
  std::string condition, arena, automaton, strategy, out, dot, lambda, x, kind, player;
  std::vector<std::string> skeletons, words, family;
  std::string w, w1, w2, c1, c2, alphabet;
  std::vector<std::size_t> indices;
  unsigned k = 0;
  bool k_given = false;
  std::uint64_t seed = 0;
  std::size_t samples = 1000, cap = kDefaultSupportCap, digits = 8, terms = 20, n = 50, n_arenas = 100,
              max_states = 8, depth = 3;
  bool allow_transient = false, timing = false;
};

// Report under construction plus the artifacts a command may write.
struct Run {
  std::vector<std::string> argv;
  json inputs = json::array();
  json report = json::object();
  std::optional<std::string> artifact;  // written by --out when present
  std::optional<std::string> dot;       // written by --dot
  int exit_code = kOk;

  json load(const std::string& path) {
    std::string text = io::read_file(path);
    inputs.push_back({{"path", path}, {"sha256", io::sha256_hex(text)}});
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
  }
};

Condition load_condition(Run& r, const Options& o) {
  if (!o.condition.empty()) return io::condition_from_json(r.load(o.condition));
  if (!o.lambda.empty()) return Condition::discounted_sum(Rational::parse(o.lambda), o.k);
  throw InputError("--condition (or --lambda/--k for discounted sum) is required");
}

// Product of all --skeleton files; the trivial skeleton when none is given.
Skeleton load_skeleton(Run& r, const Options& o, const Alphabet& fallback) {
  if (o.skeletons.empty()) return Skeleton::trivial(fallback);
  Skeleton m = io::skeleton_from_json(r.load(o.skeletons.front()));
  for (std::size_t i = 1; i < o.skeletons.size(); ++i) m = product(m, io::skeleton_from_json(r.load(o.skeletons[i])));
  return m;
}

ParityAutomaton load_automaton(Run& r, const Options& o) {
  if (!o.automaton.empty()) return io::automaton_from_json(r.load(o.automaton));
  if (!o.condition.empty()) {
    Condition c = io::condition_from_json(r.load(o.condition));
    if (auto d = c.as_dpa()) return d->automaton;
    if (c.as_discounted_sum()) return ds_right_congruence(c.as_discounted_sum()->lambda, c.as_discounted_sum()->k).automaton;
  }
  throw InputError("--automaton (or a dpa/discounted-sum --condition) is required");
}

Rational lambda_of(const Options& o) {
  if (o.lambda.empty()) throw InputError("--lambda is required");
  return Rational::parse(o.lambda);
}

json support_witness_json(const SupportWitness& w, const Skeleton& m) {
  return {{"state", m.state_name(w.state)},
          {"first", io::to_json(w.first, m)},
          {"second", io::to_json(w.second, m)},
          {"value", to_string(w.value)},
          {"union_value", to_string(w.union_value)}};
}

json consistency_json(const ConsistencyReport& c) {
  json j{{"verdict", to_string(c.verdict)}, {"description", c.description}};
  if (c.prefixes) j["witness"] = {{"first", c.prefixes->first}, {"second", c.prefixes->second}, {"state", c.prefixes->state}};
  if (c.supports && c.arena_skeleton) {
    j["witness"] = support_witness_json(*c.supports, *c.arena_skeleton);
    j["product_skeleton"] = io::to_json(*c.arena_skeleton);
  }
  return j;
}

json synthesis_check_json(const SynthesisCheck& c, const Skeleton& m) {
  json j{{"verdict", to_string(c.verdict)},
         {"supports_checked", c.supports_checked},
         {"samples_checked", c.samples_checked},
         {"description", c.description}};
  if (c.support_witness) j["support_witness"] = io::to_json(*c.support_witness, m);
  if (c.lasso_witness) j["lasso_witness"] = io::to_json(*c.lasso_witness, m.alphabet());
  return j;
}

json class_table_json(const CycleClassTable& t, const std::vector<unsigned>& pgamma) {
  const Skeleton& m = t.values.skeleton();
  json classes = json::array();
  for (std::size_t c = 0; c < t.classes.size(); ++c) {
    const auto& cl = t.classes[c];
    json members = json::array();
    for (auto i : cl.members) members.push_back(io::to_json(t.values.support(i), m));
    classes.push_back({{"id", c},
                       {"representative", io::to_json(t.values.support(cl.representative), m)},
                       {"value", to_string(cl.value)},
                       {"priority", pgamma.at(c)},
                       {"members", members}});
  }
  json hasse = json::array();
  for (auto [a, b] : t.hasse()) hasse.push_back({a, b});
  return {{"classes", classes}, {"hasse", hasse}, {"supports", t.values.size()}};
}

json strategy_check_json(const StrategyCheck& c, const Alphabet& a) {
  json j{{"verdict", to_string(c.verdict)}, {"checked_states", c.checked_states}};
  if (c.witness_state) j["witness_state"] = *c.witness_state;
  if (c.witness) j["witness"] = io::to_json(*c.witness, a);
  return j;
}

json ds_automaton_json(const DsAutomaton& d) {
  json j = io::to_json(d.automaton);
  if (!d.gaps.empty()) {
    json g = json::array();
    for (const auto& v : d.gaps) g.push_back(v.label());
    j["gaps"] = g;
  }
  return j;
}

// ---- commands -------------------------------------------------------------

void skel_product(Run& r, const Options& o) {
  if (o.skeletons.size() < 2) throw InputError("skel product needs two --skeleton files");
  Skeleton m = load_skeleton(r, o, {});
  r.report["result"] = {{"states", m.num_states()}, {"skeleton", io::to_json(m)}};
  r.artifact = io::dump(io::to_json(m));
  r.dot = to_dot(m);
}

void skel_run(Run& r, const Options& o) {
  if (o.skeletons.size() != 1) throw InputError("skel run needs one --skeleton");
  Skeleton m = load_skeleton(r, o, {});
  Word w = io::parse_word(o.words.empty() ? "" : o.words.front());
  json states = json::array();
  for (auto s : run(m, w)) states.push_back(m.state_name(s));
  r.report["result"] = {{"word", w}, {"states", states}};
}

void skel_supports(Run& r, const Options& o) {
  if (o.skeletons.size() != 1) throw InputError("skel supports needs one --skeleton");
  Skeleton m = load_skeleton(r, o, {});
  auto supports = enumerate_cycle_supports(m, o.cap);
  json list = json::array();
  for (const auto& s : supports) list.push_back(io::to_json(s, m));
  r.report["result"] = {{"count", supports.size()}, {"supports", list}};
}

void cond_residuals(Run& r, const Options& o) {
  if (o.words.size() != 2) throw InputError("cond residuals needs two --word values");
  Condition c = load_condition(r, o);
  Word w1 = io::parse_word(o.words[0]), w2 = io::parse_word(o.words[1]);
  r.report["result"] = {{"first", w1}, {"second", w2}, {"comparison", to_string(residual_compare(c, w1, w2, o.cap))}};
}

void cond_rc_automaton(Run& r, const Options& o) {
  Condition c = load_condition(r, o);
  ClassAutomaton rc = right_congruence_automaton(c, o.cap);
  json reps = json::object();
  for (StateId s = 0; s < rc.skeleton.num_states(); ++s) reps[rc.skeleton.state_name(s)] = rc.representatives[s];
  r.report["result"] = {{"states", rc.skeleton.num_states()}, {"skeleton", io::to_json(rc.skeleton)}, {"representatives", reps}};
  r.artifact = io::dump(io::to_json(rc.skeleton));
  r.dot = to_dot(rc.skeleton, "right_congruence");
}

void check(Run& r, const Options& o, bool prefix) {
  Condition c = load_condition(r, o);
  Skeleton m = load_skeleton(r, o, c.alphabet());
  ConsistencyReport rep = prefix ? check_prefix_independence(c, m, o.cap) : check_cycle_consistency(c, m, o.cap);
  r.report["verdict"] = to_string(rep.verdict);
  r.report["result"] = consistency_json(rep);
  if (rep.verdict == Verdict::Fail) r.exit_code = kFail;
}

void synthesize_cmd(Run& r, const Options& o) {
  Condition c = load_condition(r, o);
  Skeleton m = load_skeleton(r, o, c.alphabet());
  SynthesisOptions opt{o.cap, o.allow_transient, o.samples, o.seed};
  r.report["seed"] = o.seed;
  try {
    SynthesisResult s = synthesize(c, m, opt);
    r.report["verdict"] = to_string(s.check.verdict);
    r.report["result"] = {{"automaton", io::to_json(s.automaton)},
                          {"states", s.automaton.skeleton().num_states()},
                          {"class_table", class_table_json(s.table, s.pgamma)},
                          {"prefix_independence", consistency_json(s.prefix_independence)},
                          {"cycle_consistency", consistency_json(s.cycle_consistency)},
                          {"check", synthesis_check_json(s.check, s.automaton.skeleton())}};
    r.artifact = io::dump(io::to_json(s.automaton));
    r.dot = to_dot(s.automaton, "synthesized");
  } catch (const StageError& e) {
    r.report["verdict"] = "fail";
    r.report["result"] = {{"stage", e.stage()}, {"reason", e.what()}};
    r.exit_code = kFail;
  }
}

void verify_cmd(Run& r, const Options& o) {
  if (o.automaton.empty()) throw InputError("verify needs --automaton");
  ParityAutomaton d = io::automaton_from_json(r.load(o.automaton));
  Condition c = load_condition(r, o);
  r.report["seed"] = o.seed;
  SynthesisCheck chk = verify_synthesis(d, c, o.samples, o.seed, o.cap);
  r.report["verdict"] = to_string(chk.verdict);
  r.report["result"] = synthesis_check_json(chk, d.skeleton());
  if (chk.verdict == Verdict::Fail) r.exit_code = kFail;
}

void game_solve(Run& r, const Options& o) {
  if (o.arena.empty()) throw InputError("game solve needs --arena");
  Arena a = io::arena_from_json(r.load(o.arena));
  ParityAutomaton d = load_automaton(r, o);
  ParityGame g = product_game(a, d);
  GameSolution sol = solve_parity(g);
  json winning = json::object();
  for (StateId s = 0; s < a.num_states(); ++s) winning[a.state_name(s)] = to_string(sol.winner[s]);
  json strategies = json::object();
  for (Player p : {Player::P1, Player::P2})
    strategies[to_string(p)] = io::to_json(strategy_project(g, a, d, sol, p), a);
  r.report["result"] = {{"product_states", g.num_states()}, {"winning", winning}, {"strategies", strategies}};
  Player chosen = o.player.empty() ? Player::P1 : parse_player(o.player);
  r.artifact = io::dump(strategies[to_string(chosen)]);
}

void game_verify(Run& r, const Options& o) {
  if (o.arena.empty() || o.strategy.empty()) throw InputError("game verify needs --arena and --strategy");
  Arena a = io::arena_from_json(r.load(o.arena));
  ParityAutomaton d = load_automaton(r, o);
  SkeletonStrategy s = io::strategy_from_json(r.load(o.strategy), a);
  StrategyCheck chk = verify_strategy(a, d, s);
  r.report["verdict"] = to_string(chk.verdict);
  r.report["result"] = strategy_check_json(chk, a.alphabet());
  if (chk.verdict == Verdict::Fail) r.exit_code = kFail;
}

void game_lift(Run& r, const Options& o) {
  Condition c = load_condition(r, o);
  Skeleton m = load_skeleton(r, o, c.alphabet());
  SynthesisOptions opt{o.cap, o.allow_transient, o.samples, o.seed};
  LiftReport rep = lift_experiment(c, m, o.n_arenas, o.max_states, o.seed, opt);
  json failures = json::array();
  for (const auto& f : rep.failures)
    failures.push_back({{"arena", f.arena_index}, {"player", to_string(f.player)}, {"check", strategy_check_json(f.check, c.alphabet())}});
  r.report["seed"] = o.seed;
  r.report["verdict"] = rep.failures.empty() ? "pass" : "fail";
  r.report["result"] = {{"arenas", rep.arenas},       {"p1_pass", rep.p1_pass},
                        {"p2_pass", rep.p2_pass},     {"max_states", rep.max_states},
                        {"automaton_states", rep.automaton_states}, {"failures", failures}};
  if (!rep.failures.empty()) r.exit_code = kFail;
}

void game_arena(Run& r, const Options& o) {
  if (o.kind.empty()) throw InputError("game arena needs --kind");
  ArenaParams p;
  if (!o.alphabet.empty()) p.alphabet = Alphabet(io::parse_word(o.alphabet));
  p.w1 = io::parse_word(o.w1);
  p.w2 = io::parse_word(o.w2);
  if (!o.c1.empty()) p.c1 = io::parse_lasso(o.c1);
  if (!o.c2.empty()) p.c2 = io::parse_lasso(o.c2);
  p.w = io::parse_word(o.w);
  for (const auto& f : o.family) p.family.push_back(io::parse_word(f));
  if (!o.player.empty()) p.owner = parse_player(o.player);
  if (!o.lambda.empty()) p.lambda = Rational::parse(o.lambda);
  p.depth = o.depth;
  p.indices = o.indices;
  if (!o.x.empty()) p.x = Rational::parse(o.x);
  p.digits = o.digits;
  Arena a = counterexample_arena(parse_arena_kind(o.kind), p);
  r.report["result"] = {{"states", a.num_states()}, {"arena", io::to_json(a)}};
  r.artifact = io::dump(io::to_json(a));
  r.dot = to_dot(a, o.kind);
}

void ds_classify(Run& r, const Options& o) {
  DsClassification c = classify_ds(lambda_of(o), o.k);
  json j{{"lambda", c.lambda.str()}, {"k", c.k}, {"verdict", to_string(c.verdict)}, {"states", c.states}};
  if (c.verdict != DsVerdict::InfiniteIndex) j["automaton"] = ds_automaton_json(ds_right_congruence(c.lambda, c.k));
  r.report["result"] = j;
}

void ds_gap_automaton(Run& r, const Options& o) {
  DsAutomaton d = gap_automaton(lambda_of(o), o.k);
  json j = ds_automaton_json(d);
  r.report["result"] = {{"states", d.automaton.skeleton().num_states()}, {"automaton", j}};
  r.artifact = io::dump(j);
  r.dot = to_dot(d.automaton, "gap_automaton");
}

void ds_greedy(Run& r, const Options& o) {
  if (o.x.empty()) throw InputError("ds greedy needs --x");
  Rational lambda = lambda_of(o);
  GreedyExpansion g = greedy_expansion(Rational::parse(o.x), lambda, o.k, o.digits);
  Rational bound = greedy_tail_bound(lambda, o.k, o.digits);
  r.report["result"] = {{"digits", g.digits},
                        {"remainder", g.remainder.str()},
                        {"tail_bound", bound.str()},
                        {"within_bound", g.remainder.abs() <= bound}};
}

void ds_gaps(Run& r, const Options& o) {
  GapSequence s = infinite_gap_sequence(lambda_of(o), o.terms);
  json gaps = json::array();
  for (std::size_t i = 0; i < s.gaps.size(); ++i)
    gaps.push_back({{"index", i + 1},
                    {"color", s.colors[i]},
                    {"gap", s.gaps[i].str()},
                    {"denominator", s.gaps[i].denominator_str()},
                    {"denominator_ok", static_cast<bool>(s.denominator_ok[i])},
                    {"in_range", static_cast<bool>(s.in_range[i])}});
  r.report["verdict"] = s.all_ok() ? "pass" : "fail";
  r.report["result"] = {{"lambda", s.lambda.str()}, {"pairwise_distinct", s.pairwise_distinct}, {"gaps", gaps}};
  if (!s.all_ok()) r.exit_code = kFail;
}

void ds_demo_cc(Run& r, const Options& o) {
  DsDemoReport rep = ds_cycle_consistency_demo(lambda_of(o), o.k, o.samples, o.seed);
  json samples = json::array();
  for (const auto& s : rep.samples)
    samples.push_back({{"prefix", s.prefix},
                       {"family", s.family},
                       {"value", to_string(s.check.family_value)},
                       {"consistent", s.check.consistent},
                       {"letters", s.check.letters},
                       {"lower", s.check.lower.str()},
                       {"upper", s.check.upper.str()}});
  r.report["seed"] = o.seed;
  r.report["verdict"] = rep.consistent == rep.samples.size() ? "pass" : "fail";
  r.report["result"] = {{"samples", samples}, {"consistent", rep.consistent}, {"total", rep.samples.size()}};
  if (rep.consistent != rep.samples.size()) r.exit_code = kFail;
}

void demo_mp(Run& r, const Options& o) {
  MpCounterexampleReport rep = mp_counterexample_report(static_cast<unsigned>(o.n));
  json rows = json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"n", row.n},
                    {"mean_payoff", row.mean_payoff.str()},
                    {"zero_position", row.zero_position},
                    {"running_sum", row.running_sum.str()},
                    {"mean_payoff_ok", row.mean_payoff_ok},
                    {"zero_ok", row.zero_ok}});
  // The demo succeeds when the claims hold, i.e. mean payoff is shown not cycle-consistent.
  r.report["verdict"] = rep.claims_hold ? "pass" : "fail";
  r.report["result"] = {{"rows", rows}, {"claims_hold", rep.claims_hold}, {"cycle_consistency", consistency_json(rep.consistency)}};
  if (!rep.claims_hold) r.exit_code = kFail;
}

void export_dot(Run& r, const Options& o) {
  if (!o.arena.empty()) r.dot = to_dot(io::arena_from_json(r.load(o.arena)));
  else if (!o.automaton.empty()) r.dot = to_dot(io::automaton_from_json(r.load(o.automaton)));
  else if (!o.skeletons.empty()) r.dot = to_dot(io::skeleton_from_json(r.load(o.skeletons.front())));
  else throw InputError("export dot needs --arena, --automaton or --skeleton");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chromem: chromatic memory, parity synthesis and discounted-sum analysis"};
  app.require_subcommand(1);
  Options o;
  std::function<void(Run&)> action;

  auto common = [&](CLI::App* c) {
    c->add_option("--condition", o.condition, "condition JSON file");
    c->add_option("--skeleton", o.skeletons, "skeleton JSON file (repeatable; multiple are multiplied)");
    c->add_option("--arena", o.arena, "arena JSON file");
    c->add_option("--automaton", o.automaton, "parity automaton JSON file");
    c->add_option("--lambda", o.lambda, "discount factor p/q");
    c->add_option("--k", o.k, "weight bound k (colors -k..k)");
    c->add_option("--seed", o.seed, "random seed")->capture_default_str();
    c->add_option("--samples", o.samples, "number of random samples")->capture_default_str();
    c->add_option("--cap", o.cap, "cycle-support enumeration cap")->capture_default_str();
    c->add_option("--out", o.out, "write the primary artifact (or the report) to this file");
    c->add_option("--dot", o.dot, "write a Graphviz rendering to this file");
    c->add_flag("--allow-transient", o.allow_transient, "give transitions on no cycle a priority");
    c->add_flag("--timing", o.timing, "add wall-clock timing to the report");
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<void(Run&)> fn) {
    CLI::App* c = parent->add_subcommand(name, help);
    common(c);
    c->callback([&action, fn] { action = fn; });
    return c;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  CLI::App* skel = group("skel", "skeleton operations");
  leaf(skel, "product", "product of two skeletons", [&](Run& r) { skel_product(r, o); });
  leaf(skel, "run", "states visited by a word", [&](Run& r) { skel_run(r, o); })
      ->add_option("--word", o.words, "comma-separated colors");
  leaf(skel, "supports", "enumerate cycle supports", [&](Run& r) { skel_supports(r, o); });

  CLI::App* cond = group("cond", "condition operations");
  leaf(cond, "residuals", "compare the residuals of two prefixes", [&](Run& r) { cond_residuals(r, o); })
      ->add_option("--word", o.words, "comma-separated colors (give twice)");
  leaf(cond, "rc-automaton", "right-congruence automaton", [&](Run& r) { cond_rc_automaton(r, o); });

  CLI::App* chk = group("check", "consistency checks");
  leaf(chk, "prefix-independence", "prefix-independence relative to a skeleton", [&](Run& r) { check(r, o, true); });
  leaf(chk, "cycle-consistency", "cycle-consistency relative to a skeleton", [&](Run& r) { check(r, o, false); });

  leaf(&app, "synthesize", "parity automaton on top of a skeleton", [&](Run& r) { synthesize_cmd(r, o); });
  leaf(&app, "verify", "check a parity automaton against a condition", [&](Run& r) { verify_cmd(r, o); });

  CLI::App* game = group("game", "two-player games");
  leaf(game, "solve", "solve the product of an arena and a parity automaton", [&](Run& r) { game_solve(r, o); })
      ->add_option("--player", o.player, "player whose strategy --out writes (P1 or P2)");
  leaf(game, "verify", "verify a skeleton-based strategy", [&](Run& r) { game_verify(r, o); })
      ->add_option("--strategy", o.strategy, "strategy JSON file");
  auto* lift = leaf(game, "lift-experiment", "solve random arenas with a synthesized automaton", [&](Run& r) { game_lift(r, o); });
  lift->add_option("--n-arenas", o.n_arenas, "number of random arenas")->capture_default_str();
  lift->add_option("--max-states", o.max_states, "maximal arena size")->capture_default_str();
  auto* arena = leaf(game, "arena", "generate a counterexample arena", [&](Run& r) { game_arena(r, o); });
  arena->add_option("--kind", o.kind, "fig2, fig3, fig5, fig7 or fig8");
  arena->add_option("--alphabet", o.alphabet, "comma-separated colors");
  arena->add_option("--w1", o.w1, "first chain (fig2)");
  arena->add_option("--w2", o.w2, "second chain (fig2)");
  arena->add_option("--c1", o.c1, "first continuation 'prefix;period' (fig2)");
  arena->add_option("--c2", o.c2, "second continuation 'prefix;period' (fig2)");
  arena->add_option("--w", o.w, "prefix chain (fig5)");
  arena->add_option("--family", o.family, "cycle word, repeatable (fig5)");
  arena->add_option("--player", o.player, "owner of the fig5 arena");
  arena->add_option("--depth", o.depth, "number of branches (fig7, fig8)")->capture_default_str();
  arena->add_option("--indices", o.indices, "gap prefix lengths (fig8)");
  arena->add_option("--x", o.x, "limit point of the gaps (fig8)");
  arena->add_option("--digits", o.digits, "continuation length (fig8)")->capture_default_str();

  CLI::App* ds = group("ds", "discounted sum");
  leaf(ds, "classify", "finite-index classification", [&](Run& r) { ds_classify(r, o); });
  leaf(ds, "gap-automaton", "gap automaton", [&](Run& r) { ds_gap_automaton(r, o); });
  auto* greedy = leaf(ds, "greedy", "greedy expansion", [&](Run& r) { ds_greedy(r, o); });
  greedy->add_option("--x", o.x, "value to expand");
  greedy->add_option("--digits", o.digits, "number of digits")->capture_default_str();
  leaf(ds, "gaps", "infinite gap sequence", [&](Run& r) { ds_gaps(r, o); })
      ->add_option("--terms", o.terms, "number of terms")->capture_default_str();
  leaf(ds, "demo-cc", "sampled cycle-consistency demo", [&](Run& r) { ds_demo_cc(r, o); });

  CLI::App* demo = group("demo", "demonstrations");
  leaf(demo, "mp", "mean-payoff cycle-consistency counterexample", [&](Run& r) { demo_mp(r, o); })
      ->add_option("--n", o.n, "largest n")->capture_default_str();

  CLI::App* exp = group("export", "format conversion");
  leaf(exp, "dot", "Graphviz rendering of a skeleton, automaton or arena", [&](Run& r) { export_dot(r, o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  Run r;
  for (int i = 1; i < argc; ++i) r.argv.emplace_back(argv[i]);
  int code = kOk;
  try {
    auto start = std::chrono::steady_clock::now();
    action(r);
    r.report["format"] = io::kFormat;
    r.report["command"] = r.argv;
    r.report["inputs"] = r.inputs;
    if (o.timing)
      r.report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!r.report.contains("verdict")) r.report["verdict"] = r.exit_code == kOk ? "pass" : "fail";
    if (!o.out.empty()) io::write_file(o.out, r.artifact ? *r.artifact : io::dump(r.report));
    if (!o.dot.empty()) {
      if (!r.dot) throw InputError("this command has no DOT rendering");
      io::write_file(o.dot, *r.dot);
    }
    if (o.out.empty() && o.dot.empty()) {
      if (r.dot && !r.report.contains("result")) std::cout << *r.dot;
      else std::cout << io::dump(r.report);
    }
    code = r.exit_code;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    code = kInput;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    code = kInput;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    code = kResource;
  } catch (const json::exception& e) {
    std::cerr << "input error: malformed JSON input: " << e.what() << "\n";
    code = kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    code = kInternal;
  }
  return code;
}
