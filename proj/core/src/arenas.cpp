#include <algorithm>
#include <set>

#include "chromem/ds.hpp"
#include "chromem/errors.hpp"
#include "chromem/games.hpp"

namespace chromem {

ArenaKind parse_arena_kind(const std::string& s) {
  if (s == "fig2") return ArenaKind::Fig2;
  if (s == "fig3") return ArenaKind::Fig3;
  if (s == "fig5") return ArenaKind::Fig5;
  if (s == "fig7") return ArenaKind::Fig7;
  if (s == "fig8") return ArenaKind::Fig8;
  throw InputError("unknown arena kind '" + s + "' (expected fig2, fig3, fig5, fig7 or fig8)");
}

namespace {

struct Builder {
  std::vector<std::string> names;
  std::vector<Player> owner;
  std::vector<Arena::NamedEdge> edges;

  std::string add(const std::string& name, Player p) {
    names.push_back(name);
    owner.push_back(p);
    return names.back();
  }
  void edge(const std::string& src, const Color& c, const std::string& dst) { edges.push_back({src, c, dst}); }

  // Chain reading `word` from `from` to `to`; intermediate states are tag.1, tag.2, ...
  void chain(const std::string& tag, const std::string& from, const Word& word, const std::string& to, Player p) {
    std::string cur = from;
    for (std::size_t i = 0; i < word.size(); ++i) {
      std::string nxt = i + 1 == word.size() ? to : add(tag + "." + std::to_string(i + 1), p);
      edge(cur, word[i], nxt);
      cur = nxt;
    }
  }

  // Lasso prefix.period^omega starting at `from`, looping on its own states.
  void lasso(const std::string& tag, const std::string& from, const UltimatelyPeriodicWord& w, Player p) {
    Word all = w.prefix;
    all.insert(all.end(), w.period.begin(), w.period.end());
    std::vector<std::string> pos{from};
    for (std::size_t i = 0; i < all.size(); ++i) {
      pos.push_back(add(tag + "." + std::to_string(i + 1), p));
      edge(pos[i], all[i], pos[i + 1]);
    }
    edge(pos.back(), w.period.front(), pos[w.prefix.size() + 1]);
  }

  Arena build(Alphabet alphabet) && {
    return Arena::from_names(std::move(alphabet), std::move(names), std::move(owner), edges);
  }
};

Alphabet alphabet_of(const std::vector<Arena::NamedEdge>& edges) {
  std::set<Color> colors;
  for (const auto& e : edges) colors.insert(e.color);
  return Alphabet(std::vector<Color>(colors.begin(), colors.end()));
}

Arena fig2(const ArenaParams& p) {
  if (p.c1.period.empty() || p.c2.period.empty()) throw InputError("fig2 needs two lasso continuations");
  Builder b;
  const std::string s = b.add("s", Player::P1);
  if (!p.w1.empty()) b.chain("w1", b.add("w1.0", Player::P1), p.w1, s, Player::P1);
  if (!p.w2.empty()) b.chain("w2", b.add("w2.0", Player::P1), p.w2, s, Player::P1);
  b.lasso("c1", s, p.c1, Player::P1);
  b.lasso("c2", s, p.c2, Player::P1);
  return std::move(b).build(p.alphabet);
}

Arena fig3(const ArenaParams& p) {
  Builder b;
  const std::string s = b.add("s", Player::P1);
  for (const auto& c : p.alphabet.colors()) b.edge(s, c, s);
  return std::move(b).build(p.alphabet);
}

Arena fig5(const ArenaParams& p) {
  if (p.family.empty()) throw InputError("fig5 needs a non-empty word family");
  for (const auto& w : p.family)
    if (w.empty()) throw InputError("fig5 family words must be non-empty");
  Builder b;
  const std::string s1 = b.add("s1", p.owner);
  const std::string s2 = b.add("s2", p.owner);
  b.chain("w", s1, p.w, s2, p.owner);
  for (std::size_t i = 0; i < p.family.size(); ++i)
    b.chain("f" + std::to_string(i + 1), s2, p.family[i], s2, p.owner);
  if (p.w.empty()) {
    // s1 stands for s2 itself: replicate its first moves.
    std::vector<Arena::NamedEdge> extra;
    for (const auto& e : b.edges)
      if (e.src == s2) extra.push_back({s1, e.color, e.dst});
    b.edges.insert(b.edges.end(), extra.begin(), extra.end());
  }
  return std::move(b).build(p.alphabet);
}

Arena fig7(const ArenaParams& p) {
  if (p.depth == 0) throw InputError("fig7 needs depth >= 1");
  if (p.lambda <= Rational(0) || p.lambda >= Rational(1)) throw InputError("lambda must lie in (0,1)");
  Builder b;
  const std::string s1 = b.add("s1", Player::P2), s2 = b.add("s2", Player::P1), s3 = b.add("s3", Player::P2);
  for (std::size_t i = 1; i <= p.depth; ++i) {
    Rational r(1, static_cast<long>(i));
    b.edge(s1, r.str(), s2);
    b.edge(s2, (-(r / p.lambda)).str(), s3);
  }
  b.edge(s3, "0", s3);
  Alphabet a = alphabet_of(b.edges);
  return std::move(b).build(std::move(a));
}

Arena fig8(const ArenaParams& p) {
  if (p.depth == 0) throw InputError("fig8 needs depth >= 1");
  const Rational& lambda = p.lambda;
  Rational k_r = (lambda.reciprocal() - Rational(1)).ceil();
  const auto k = static_cast<unsigned>(k_r.numerator_long());
  std::vector<std::size_t> indices = p.indices;
  if (indices.empty())
    for (std::size_t j = 0; j < p.depth; ++j) indices.push_back(j + 2);
  std::size_t horizon = *std::max_element(indices.begin(), indices.end());
  if (*std::min_element(indices.begin(), indices.end()) == 0) throw InputError("fig8 indices start at 1");
  GapSequence seq = infinite_gap_sequence(lambda, horizon);
  const Rational x = p.x.value_or(lambda.reciprocal());

  Builder b;
  const std::string s1 = b.add("s1", Player::P1), s2 = b.add("s2", Player::P2);
  for (std::size_t j = 0; j < indices.size(); ++j) {
    const std::size_t i = indices[j];
    const Rational& g = seq.gaps[i - 1];
    if (g >= x) throw InputError("fig8 gap " + g.str() + " at index " + std::to_string(i) + " is not below x");
    Word prefix;
    for (std::size_t t = 0; t < i; ++t) prefix.push_back(std::to_string(seq.colors[t]));
    const std::string tag = "b" + std::to_string(j + 1);
    b.chain(tag + ".in", s1, prefix, s2, Player::P1);
    // P2's reply: a word whose discounted sum is close to -x + eps_j, then zeros.
    Rational eps = (x - g) / Rational(2);
    GreedyExpansion ge = greedy_expansion(-x + eps, lambda, k, p.digits);
    UltimatelyPeriodicWord cont;
    for (long d : ge.digits) cont.prefix.push_back(std::to_string(d));
    cont.period = {"0"};
    b.lasso(tag + ".out", s2, cont, Player::P2);
  }
  return std::move(b).build(integer_alphabet(k));
}

}  // namespace

Arena counterexample_arena(ArenaKind kind, const ArenaParams& params) {
  switch (kind) {
    case ArenaKind::Fig2: return fig2(params);
    case ArenaKind::Fig3: return fig3(params);
    case ArenaKind::Fig5: return fig5(params);
    case ArenaKind::Fig7: return fig7(params);
    case ArenaKind::Fig8: return fig8(params);
  }
  throw InternalError("unhandled arena kind");
}

}  // namespace chromem
