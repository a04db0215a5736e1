#include "chromem/games.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "chromem/errors.hpp"

namespace chromem {

Player parse_player(const std::string& s) {
  if (s == "P1" || s == "p1" || s == "1") return Player::P1;
  if (s == "P2" || s == "p2" || s == "2") return Player::P2;
  throw InputError("unknown player '" + s + "'");
}

Arena::Arena(Alphabet alphabet, std::vector<std::string> states, std::vector<Player> owner, std::vector<Edge> edges)
    : alphabet_(std::move(alphabet)), names_(std::move(states)), owner_(std::move(owner)), edges_(std::move(edges)) {
  if (names_.empty()) throw InputError("arena without states");
  if (owner_.size() != names_.size()) throw InputError("owner must be given for every arena state");
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("duplicate arena state");
  out_.resize(names_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& ed = edges_[e];
    if (ed.src >= names_.size() || ed.dst >= names_.size() || ed.color >= alphabet_.size())
      throw InputError("arena edge out of range");
    out_[ed.src].push_back(e);
  }
  for (StateId s = 0; s < names_.size(); ++s)
    if (out_[s].empty()) throw InputError("arena state '" + names_[s] + "' has no outgoing edge");
}

Arena Arena::from_names(Alphabet alphabet, std::vector<std::string> states, std::vector<Player> owner,
                        const std::vector<NamedEdge>& edges) {
  std::map<std::string, StateId> index;
  for (std::size_t i = 0; i < states.size(); ++i) index.emplace(states[i], static_cast<StateId>(i));
  auto lookup = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) throw InputError("unknown arena state '" + s + "'");
    return it->second;
  };
  std::vector<Edge> es;
  for (const auto& e : edges) es.push_back({lookup(e.src), alphabet.index(e.color), lookup(e.dst)});
  return Arena(std::move(alphabet), std::move(states), std::move(owner), std::move(es));
}

StateId Arena::state_index(const std::string& name) const {
  for (StateId s = 0; s < names_.size(); ++s)
    if (names_[s] == name) return s;
  throw InputError("unknown arena state '" + name + "'");
}

void ParityGame::finalize() {
  out.assign(names.size(), {});
  for (std::size_t e = 0; e < edges.size(); ++e) out.at(edges[e].src).push_back(e);
  for (std::size_t v = 0; v < names.size(); ++v)
    if (out[v].empty()) throw InputError("game vertex '" + names[v] + "' has no outgoing edge");
}

ParityGame product_game(const Arena& a, const ParityAutomaton& d) {
  if (!(a.alphabet() == d.alphabet())) throw InputError("arena and automaton use different alphabets");
  const Skeleton& m = d.skeleton();
  ParityGame g;
  std::map<std::pair<StateId, StateId>, std::uint32_t> index;
  auto intern = [&](StateId s, StateId q) {
    auto [it, fresh] = index.emplace(std::make_pair(s, q), static_cast<std::uint32_t>(g.names.size()));
    if (fresh) {
      g.names.push_back(a.state_name(s) + "|" + m.state_name(q));
      g.owner.push_back(a.owner(s));
      g.components.emplace_back(s, q);
    }
    return it->second;
  };
  for (StateId s = 0; s < a.num_states(); ++s) intern(s, m.init());
  for (std::size_t v = 0; v < g.names.size(); ++v) {
    auto [s, q] = g.components[v];
    for (auto e : a.out(s)) {
      const auto& ed = a.edges()[e];
      std::uint32_t w = intern(ed.dst, m.next(q, ed.color));
      g.edges.push_back({static_cast<std::uint32_t>(v), w, d.priority(q, ed.color), ed.color, e});
    }
  }
  g.finalize();
  return g;
}

namespace {

// Vertex-priority game: original vertices (priority 0) followed by one vertex per edge.
struct VertexGame {
  std::size_t n = 0;
  std::vector<Player> owner;
  std::vector<unsigned> prio;
  std::vector<std::vector<std::uint32_t>> succ, pred;
};

VertexGame split(const ParityGame& g) {
  VertexGame vg;
  const std::size_t n = g.num_states(), m = g.edges.size();
  vg.n = n + m;
  vg.owner = g.owner;
  vg.owner.resize(n + m, Player::P1);
  vg.prio.assign(n + m, 0);
  vg.succ.resize(n + m);
  vg.pred.resize(n + m);
  for (std::size_t e = 0; e < m; ++e) {
    auto mid = static_cast<std::uint32_t>(n + e);
    vg.prio[mid] = g.edges[e].priority;
    vg.succ[g.edges[e].src].push_back(mid);
    vg.succ[mid].push_back(g.edges[e].dst);
  }
  for (std::uint32_t v = 0; v < vg.n; ++v)
    for (auto w : vg.succ[v]) vg.pred[w].push_back(v);
  return vg;
}

class Zielonka {
public:
  explicit Zielonka(const VertexGame& g) : g_(g), win_(g.n, Player::P1), strat_(g.n, 0) {}

  void solve(const std::vector<bool>& mask) {
    std::vector<std::uint32_t> verts;
    unsigned d = 0;
    for (std::uint32_t v = 0; v < g_.n; ++v)
      if (mask[v]) {
        verts.push_back(v);
        d = std::max(d, g_.prio[v]);
      }
    if (verts.empty()) return;
    const Player alpha = d % 2 == 0 ? Player::P1 : Player::P2, beta = opponent(alpha);
    std::vector<bool> target(g_.n, false);
    for (auto v : verts) target[v] = g_.prio[v] == d;
    std::vector<std::uint32_t> astrat;
    auto attr = attractor(mask, target, alpha, astrat);
    std::vector<bool> sub(g_.n, false);
    for (auto v : verts) sub[v] = !attr[v];
    solve(sub);
    bool beta_wins_somewhere = false;
    for (auto v : verts) beta_wins_somewhere = beta_wins_somewhere || (sub[v] && win_[v] == beta);
    if (!beta_wins_somewhere) {
      for (auto v : verts) {
        win_[v] = alpha;
        if (!attr[v]) continue;
        strat_[v] = (g_.owner[v] == alpha && !target[v]) ? astrat[v] : any_successor(v, mask);
      }
      return;
    }
    std::vector<bool> lost(g_.n, false);
    for (auto v : verts) lost[v] = sub[v] && win_[v] == beta;
    std::vector<std::uint32_t> bstrat;
    auto battr = attractor(mask, lost, beta, bstrat);
    std::vector<bool> rest(g_.n, false);
    for (auto v : verts) rest[v] = !battr[v];
    for (auto v : verts) {
      if (!battr[v] || lost[v]) continue;
      strat_[v] = g_.owner[v] == beta ? bstrat[v] : any_successor(v, mask);
    }
    for (auto v : verts)
      if (battr[v]) win_[v] = beta;
    solve(rest);
  }

  const std::vector<Player>& winner() const { return win_; }
  const std::vector<std::uint32_t>& strategy() const { return strat_; }

private:
  std::uint32_t any_successor(std::uint32_t v, const std::vector<bool>& mask) const {
    for (auto w : g_.succ[v])
      if (mask[w]) return w;
    throw InternalError("vertex without successor inside a subgame");
  }

  std::vector<bool> attractor(const std::vector<bool>& mask, const std::vector<bool>& target, Player p,
                              std::vector<std::uint32_t>& strat) const {
    std::vector<bool> in(g_.n, false);
    std::vector<std::size_t> remaining(g_.n, 0);
    strat.assign(g_.n, 0);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t v = 0; v < g_.n; ++v) {
      if (!mask[v]) continue;
      for (auto w : g_.succ[v]) remaining[v] += mask[w] ? 1 : 0;
      if (target[v]) {
        in[v] = true;
        queue.push_back(v);
      }
    }
    while (!queue.empty()) {
      auto w = queue.front();
      queue.pop_front();
      for (auto v : g_.pred[w]) {
        if (!mask[v] || in[v]) continue;
        if (g_.owner[v] == p) {
          in[v] = true;
          strat[v] = w;
          queue.push_back(v);
        } else if (--remaining[v] == 0) {
          in[v] = true;
          queue.push_back(v);
        }
      }
    }
    return in;
  }

  const VertexGame& g_;
  std::vector<Player> win_;
  std::vector<std::uint32_t> strat_;
};

}  // namespace

GameSolution solve_parity(const ParityGame& g) {
  VertexGame vg = split(g);
  Zielonka z(vg);
  z.solve(std::vector<bool>(vg.n, true));
  GameSolution sol;
  const std::size_t n = g.num_states();
  sol.winner.assign(z.winner().begin(), z.winner().begin() + static_cast<std::ptrdiff_t>(n));
  sol.choice.resize(n);
  for (std::size_t v = 0; v < n; ++v) sol.choice[v] = z.strategy()[v] - n;
  return sol;
}

namespace {

// Winner of the unique play from each vertex when every vertex follows choice[v].
void play_outcomes(const ParityGame& g, const std::vector<std::size_t>& choice, std::vector<Player>& out) {
  const std::size_t n = g.num_states();
  std::vector<std::size_t> pos(n);
  for (std::size_t start = 0; start < n; ++start) {
    std::fill(pos.begin(), pos.end(), static_cast<std::size_t>(-1));
    std::size_t v = start, step = 0;
    while (pos[v] == static_cast<std::size_t>(-1)) {
      pos[v] = step++;
      v = g.edges[choice[v]].dst;
    }
    unsigned best = 0;
    std::size_t u = v;
    do {
      best = std::max(best, g.edges[choice[u]].priority);
      u = g.edges[choice[u]].dst;
    } while (u != v);
    out[start] = best % 2 == 0 ? Player::P1 : Player::P2;
  }
}

}  // namespace

BruteForceRegions brute_force_regions(const ParityGame& g, std::uint64_t max_profiles) {
  const std::size_t n = g.num_states();
  if (n > 12) throw ResourceError("brute-force solver limited to 12 states");
  std::uint64_t profiles = 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.out[v].size() > 4) throw ResourceError("brute-force solver limited to out-degree 4");
    profiles *= g.out[v].size();
    if (profiles > max_profiles) throw ResourceError("brute-force strategy profiles exceed cap");
  }
  std::vector<std::size_t> mine[2];
  for (std::size_t v = 0; v < n; ++v) mine[g.owner[v] == Player::P1 ? 0 : 1].push_back(v);

  // Iterate all assignments of the vertices in `vs` (mixed radix over out-degrees).
  auto for_each_assignment = [&](const std::vector<std::size_t>& vs, std::vector<std::size_t>& choice,
                                 auto&& body) {
    std::vector<std::size_t> digit(vs.size(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i) choice[vs[i]] = g.out[vs[i]][0];
    while (true) {
      body();
      std::size_t i = 0;
      while (i < vs.size()) {
        if (++digit[i] < g.out[vs[i]].size()) {
          choice[vs[i]] = g.out[vs[i]][digit[i]];
          break;
        }
        digit[i] = 0;
        choice[vs[i]] = g.out[vs[i]][0];
        ++i;
      }
      if (i == vs.size()) return;
    }
  };

  std::vector<std::size_t> choice(n, 0);
  std::vector<Player> outcome(n);
  // region[p][v]: player p has a positional strategy winning from v against all opponent strategies.
  std::vector<bool> region[2] = {std::vector<bool>(n, false), std::vector<bool>(n, false)};
  for (int p = 0; p < 2; ++p) {
    const Player me = p == 0 ? Player::P1 : Player::P2;
    for_each_assignment(mine[p], choice, [&] {
      std::vector<bool> all(n, true);
      for_each_assignment(mine[1 - p], choice, [&] {
        play_outcomes(g, choice, outcome);
        for (std::size_t v = 0; v < n; ++v) all[v] = all[v] && outcome[v] == me;
      });
      for (std::size_t v = 0; v < n; ++v) region[p][v] = region[p][v] || all[v];
    });
  }
  BruteForceRegions r;
  r.winner.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    r.winner[v] = region[0][v] ? Player::P1 : Player::P2;
    r.determined = r.determined && (region[0][v] != region[1][v]);
  }
  return r;
}

SkeletonStrategy strategy_project(const ParityGame& g, const Arena& a, const ParityAutomaton& d,
                                  const GameSolution& solution, Player player) {
  SkeletonStrategy s;
  s.player = player;
  s.skeleton = d.skeleton();
  const std::size_t k = s.skeleton.num_states();
  s.nxt.assign(a.num_states() * k, std::nullopt);
  for (std::size_t v = 0; v < g.num_states(); ++v) {
    auto [as, ms] = g.components.at(v);
    if (a.owner(as) != player) continue;
    s.nxt[as * k + ms] = g.edges[solution.choice[v]].arena_edge;
  }
  // Memory states never met in the product still need a move.
  for (StateId as = 0; as < a.num_states(); ++as)
    if (a.owner(as) == player)
      for (std::size_t ms = 0; ms < k; ++ms)
        if (!s.nxt[as * k + ms]) s.nxt[as * k + ms] = a.out(as).front();
  return s;
}

StrategyCheck verify_strategy(const Arena& a, const ParityAutomaton& d, const SkeletonStrategy& strat) {
  if (!(strat.skeleton.alphabet() == a.alphabet())) throw InputError("strategy skeleton uses another alphabet");
  const Player player = strat.player;
  ParityGame full = product_game(a, d);
  GameSolution full_sol = solve_parity(full);

  const Skeleton& md = d.skeleton();
  const Skeleton& ms = strat.skeleton;
  ParityGame g;
  std::map<std::tuple<StateId, StateId, StateId>, std::uint32_t> index;
  std::vector<std::tuple<StateId, StateId, StateId>> comps;
  auto intern = [&](StateId s, StateId p, StateId q) {
    auto [it, fresh] = index.emplace(std::make_tuple(s, p, q), static_cast<std::uint32_t>(g.names.size()));
    if (fresh) {
      g.names.push_back(a.state_name(s) + "|" + md.state_name(p) + "|" + ms.state_name(q));
      g.owner.push_back(a.owner(s));
      comps.emplace_back(s, p, q);
    }
    return it->second;
  };
  for (StateId s = 0; s < a.num_states(); ++s) intern(s, md.init(), ms.init());
  for (std::size_t v = 0; v < g.names.size(); ++v) {
    auto [s, p, q] = comps[v];
    std::vector<std::size_t> moves;
    if (a.owner(s) == player) {
      auto e = strat.move(s, q);
      if (!e) throw InputError("strategy has no move at (" + a.state_name(s) + ", " + ms.state_name(q) + ")");
      if (*e >= a.edges().size() || a.edges()[*e].src != s)
        throw InputError("strategy move does not leave state " + a.state_name(s));
      moves.push_back(*e);
    } else {
      moves = a.out(s);
    }
    for (auto e : moves) {
      const auto& ed = a.edges()[e];
      std::uint32_t w = intern(ed.dst, md.next(p, ed.color), ms.next(q, ed.color));
      g.edges.push_back({static_cast<std::uint32_t>(v), w, d.priority(p, ed.color), ed.color, e});
    }
  }
  g.finalize();
  GameSolution sol = solve_parity(g);

  StrategyCheck r;
  for (StateId s = 0; s < a.num_states(); ++s) {
    // Vertex (s, init) of the full product is the s-th one interned.
    if (full_sol.winner[s] != player) continue;
    ++r.checked_states;
    if (sol.winner[s] == player) continue;
    r.verdict = Verdict::Fail;
    r.witness_state = a.state_name(s);
    // Follow the opponent's winning choices and the fixed strategy until a vertex repeats.
    std::vector<std::size_t> seen_at(g.num_states(), static_cast<std::size_t>(-1));
    std::vector<ColorId> colors;
    std::size_t v = s;
    while (seen_at[v] == static_cast<std::size_t>(-1)) {
      seen_at[v] = colors.size();
      const auto& e = g.edges[sol.choice[v]];
      colors.push_back(e.color);
      v = e.dst;
    }
    Lasso l;
    l.prefix.assign(colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(seen_at[v]));
    l.period.assign(colors.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), colors.end());
    r.witness = std::move(l);
    return r;
  }
  return r;
}

Arena random_arena(const Alphabet& alphabet, std::size_t n_states, std::mt19937_64& rng) {
  if (n_states == 0) throw InputError("random arena needs at least one state");
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::size_t> degree(1, 3), target(0, n_states - 1), color(0, alphabet.size() - 1);
  std::vector<std::string> names;
  std::vector<Player> owner;
  std::vector<Arena::Edge> edges;
  for (std::size_t s = 0; s < n_states; ++s) {
    names.push_back("s" + std::to_string(s));
    owner.push_back(coin(rng) ? Player::P2 : Player::P1);
  }
  for (std::size_t s = 0; s < n_states; ++s)
    for (std::size_t d = degree(rng); d > 0; --d)
      edges.push_back({static_cast<StateId>(s), static_cast<ColorId>(color(rng)), static_cast<StateId>(target(rng))});
  return Arena(alphabet, std::move(names), std::move(owner), std::move(edges));
}

LiftReport lift_experiment(const Condition& cond, const Skeleton& m, std::size_t n_arenas, std::size_t max_states,
                           std::uint64_t seed, const SynthesisOptions& options) {
  if (max_states == 0) throw InputError("max_states must be positive");
  LiftReport report;
  report.seed = seed;
  report.max_states = max_states;
  if (n_arenas == 0) return report;
  SynthesisResult synth = synthesize(cond, m, options);
  const ParityAutomaton& d = synth.automaton;
  report.automaton_states = d.skeleton().num_states();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(1, max_states);
  for (std::size_t i = 0; i < n_arenas; ++i) {
    Arena a = random_arena(cond.alphabet(), size(rng), rng);
    ParityGame g = product_game(a, d);
    GameSolution sol = solve_parity(g);
    ++report.arenas;
    for (Player p : {Player::P1, Player::P2}) {
      auto check = verify_strategy(a, d, strategy_project(g, a, d, sol, p));
      if (check.verdict == Verdict::Pass) {
        ++(p == Player::P1 ? report.p1_pass : report.p2_pass);
      } else {
        report.failures.push_back({i, p, std::move(check)});
      }
    }
  }
  return report;
}

}  // namespace chromem
