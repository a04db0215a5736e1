#include <benchmark/benchmark.h>

#include <random>

#include "chromem/ds.hpp"
#include "chromem/games.hpp"
#include "chromem/support.hpp"
#include "chromem/synthesis.hpp"

using namespace chromem;

namespace {

// Complete skeleton on n states: color 0 walks a ring, color 1 returns to the start.
Skeleton ring(std::size_t n) {
  Alphabet ab({"a", "b"});
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
  std::vector<StateId> table;
  for (std::size_t i = 0; i < n; ++i) {
    table.push_back(static_cast<StateId>((i + 1) % n));
    table.push_back(0);
  }
  return Skeleton::from_table(ab, names, 0, table);
}

ParityGame random_game(std::size_t n, std::mt19937_64& rng) {
  ParityGame g;
  std::uniform_int_distribution<std::size_t> st(0, n - 1), deg(1, 3);
  std::uniform_int_distribution<unsigned> pr(0, 5);
  for (std::size_t v = 0; v < n; ++v) {
    g.names.push_back(std::to_string(v));
    g.owner.push_back(rng() & 1 ? Player::P1 : Player::P2);
    for (std::size_t d = deg(rng); d > 0; --d) g.edges.push_back({static_cast<StateId>(v), static_cast<StateId>(st(rng)), pr(rng), 0, 0});
  }
  g.finalize();
  return g;
}

}  // namespace

static void BM_SupportEnumeration(benchmark::State& state) {
  Skeleton m = ring(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cycle_supports(m));
}
BENCHMARK(BM_SupportEnumeration)->DenseRange(2, 10, 2);

static void BM_Zielonka(benchmark::State& state) {
  std::mt19937_64 rng(1);
  ParityGame g = random_game(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_parity(g));
}
BENCHMARK(BM_Zielonka)->RangeMultiplier(4)->Range(16, 1024);

static void BM_GapAutomaton(benchmark::State& state) {
  auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gap_automaton(Rational(1, 2), k));
}
BENCHMARK(BM_GapAutomaton)->DenseRange(1, 8);

static void BM_SynthesizeParityExample(benchmark::State& state) {
  Alphabet abc({"a", "b", "c"});
  Skeleton m = Skeleton::from_table(abc, {"m1", "m2"}, 0, {1, 0, 0, 0, 1, 1});
  ParityAutomaton d(m, {2, 1, 3, 2, 0, 0});
  Condition cond = muller_abstraction(d);
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(cond, m));
}
BENCHMARK(BM_SynthesizeParityExample);
BENCHMARK_MAIN();
