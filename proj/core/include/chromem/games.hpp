#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "chromem/condition.hpp"
#include "chromem/consistency.hpp"
#include "chromem/skeleton.hpp"
#include "chromem/synthesis.hpp"

namespace chromem {

enum class Player { P1, P2 };

inline Player opponent(Player p) { return p == Player::P1 ? Player::P2 : Player::P1; }
inline const char* to_string(Player p) { return p == Player::P1 ? "P1" : "P2"; }
Player parse_player(const std::string& s);

// Finite edge-colored two-player arena; every state has an outgoing edge.
class Arena {
public:
  struct Edge {
    StateId src;
    ColorId color;
    StateId dst;
  };

  Arena() = default;
  Arena(Alphabet alphabet, std::vector<std::string> states, std::vector<Player> owner, std::vector<Edge> edges);
  struct NamedEdge {
    std::string src;
    Color color;
    std::string dst;
  };
  static Arena from_names(Alphabet alphabet, std::vector<std::string> states, std::vector<Player> owner,
                          const std::vector<NamedEdge>& edges);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t num_states() const { return names_.size(); }
  const std::string& state_name(StateId s) const { return names_[s]; }
  const std::vector<std::string>& state_names() const { return names_; }
  StateId state_index(const std::string& name) const;
  Player owner(StateId s) const { return owner_[s]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& out(StateId s) const { return out_[s]; }

private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<Player> owner_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
};

// Parity game with priorities on edges; P1 wins plays whose maximal priority
// seen infinitely often is even.
struct ParityGame {
  struct Edge {
    std::uint32_t src, dst;
    unsigned priority;
    ColorId color;
    std::size_t arena_edge;  // originating arena edge (product games)
  };

  std::vector<std::string> names;
  std::vector<Player> owner;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> out;
  // For product games: (arena state, memory state) of each vertex.
  std::vector<std::pair<StateId, StateId>> components;

  std::size_t num_states() const { return names.size(); }
  // Builds `out` and checks that no vertex is blocking.
  void finalize();
};

// Vertices (s, m) reachable from every (s, init); edge ((s,m), c, (s', upd(m,c))) has priority p(m,c).
ParityGame product_game(const Arena& a, const ParityAutomaton& d);

struct GameSolution {
  std::vector<Player> winner;
  // Edge chosen by the owner of each vertex; winning whenever the owner wins there.
  std::vector<std::size_t> choice;
};

GameSolution solve_parity(const ParityGame& g);

struct BruteForceRegions {
  std::vector<Player> winner;  // by P1's existential choice
  bool determined = true;      // P1 and P2 regions computed separately form a partition
};

// Exhaustive enumeration of positional strategies of both players.
// Throws ResourceError above 12 states, out-degree 4 or `max_profiles` strategy pairs.
BruteForceRegions brute_force_regions(const ParityGame& g, std::uint64_t max_profiles = 1ULL << 24);

// Strategy whose moves depend on the arena state and a skeleton state updated by colors.
struct SkeletonStrategy {
  Player player = Player::P1;
  Skeleton skeleton;
  // nxt[s * |skeleton| + m] = arena edge for owned states s.
  std::vector<std::optional<std::size_t>> nxt;

  std::optional<std::size_t> move(StateId s, StateId m) const { return nxt[s * skeleton.num_states() + m]; }
};

SkeletonStrategy strategy_project(const ParityGame& g, const Arena& a, const ParityAutomaton& d,
                                  const GameSolution& solution, Player player);

struct StrategyCheck {
  Verdict verdict = Verdict::Pass;
  std::size_t checked_states = 0;
  // Start state and play (as a lasso of colors) won by the opponent.
  std::optional<std::string> witness_state;
  std::optional<Lasso> witness;
};

// Fixes the strategy in the product with `d` and the strategy's skeleton; the
// strategy passes iff the opponent wins from no start state (s, init) that the
// player wins in the unrestricted product game.
StrategyCheck verify_strategy(const Arena& a, const ParityAutomaton& d, const SkeletonStrategy& s);

struct LiftFailure {
  std::size_t arena_index = 0;
  Player player = Player::P1;
  StrategyCheck check;
};

struct LiftReport {
  std::size_t arenas = 0;
  std::size_t p1_pass = 0;
  std::size_t p2_pass = 0;
  std::uint64_t seed = 0;
  std::size_t max_states = 0;
  std::size_t automaton_states = 0;
  std::vector<LiftFailure> failures;
};

Arena random_arena(const Alphabet& alphabet, std::size_t n_states, std::mt19937_64& rng);

// Synthesizes D on (right-congruence automaton) x m, then for random arenas
// solves the product game and verifies both players' projected strategies.
LiftReport lift_experiment(const Condition& cond, const Skeleton& m, std::size_t n_arenas, std::size_t max_states,
                           std::uint64_t seed, const SynthesisOptions& options = {});

enum class ArenaKind { Fig2, Fig3, Fig5, Fig7, Fig8 };

ArenaKind parse_arena_kind(const std::string& s);

struct ArenaParams {
  Alphabet alphabet;
  // Fig2: chains w1, w2 merged into s, continuations c1, c2.
  Word w1, w2;
  UltimatelyPeriodicWord c1, c2;
  // Fig5: prefix w then a choice among the family's words looping back.
  Word w;
  std::vector<Word> family;
  Player owner = Player::P2;
  // Fig7 / Fig8: discount factor and truncation.
  Rational lambda{1, 2};
  std::size_t depth = 3;
  // Fig8: indices i_j of gap prefixes c_1..c_{i_j}; defaults to 2..depth+1.
  std::vector<std::size_t> indices;
  // Fig8: limit point x of the gaps (defaults to 1/lambda) and digits of each continuation.
  std::optional<Rational> x;
  std::size_t digits = 8;
};

// Finite truncations of the arenas used in the characterization's proofs.
Arena counterexample_arena(ArenaKind kind, const ArenaParams& params);

}  // namespace chromem
