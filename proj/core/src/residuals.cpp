#include "chromem/residuals.hpp"

#include <algorithm>
#include <deque>

#include "chromem/ds.hpp"
#include "chromem/errors.hpp"
#include "digraph.hpp"

namespace chromem {

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Equal: return "equal";
    case Comparison::Less: return "less";
    case Comparison::Greater: return "greater";
    case Comparison::Incomparable: return "incomparable";
  }
  return "?";
}

Acceptor Acceptor::of(const Condition& cond) {
  Acceptor a;
  switch (cond.kind()) {
    case ConditionKind::Dpa: a.parity_ = cond.as_dpa()->automaton; break;
    case ConditionKind::Muller: a.muller_ = *cond.as_muller(); break;
    case ConditionKind::DiscountedSum: {
      const auto& ds = *cond.as_discounted_sum();
      a.parity_ = ds_right_congruence(ds.lambda, ds.k).automaton;
      break;
    }
    default:
      throw UnsupportedError(std::string("no finite acceptor for ") + to_string(cond.kind()) + " conditions");
  }
  return a;
}

const Skeleton& Acceptor::skeleton() const { return parity_ ? parity_->skeleton() : muller_->skeleton; }

bool Acceptor::accepts(const CycleSupport& support) const {
  if (parity_) {
    unsigned best = 0;
    for (auto t : support.transitions()) best = std::max(best, parity_->priority(t));
    return best % 2 == 0;
  }
  return muller_->winning.count(support) > 0;
}

namespace {

// Graph on ordered pairs of states; node p * n + q, edge node * k + c.
struct PairGraph {
  detail::Digraph g;
  std::size_t n, k;

  explicit PairGraph(const Skeleton& m) : n(m.num_states()), k(m.num_colors()) {
    g.n = n * n;
    for (std::size_t node = 0; node < n * n; ++node)
      for (ColorId c = 0; c < k; ++c) {
        auto p = static_cast<StateId>(node / n), q = static_cast<StateId>(node % n);
        g.src.push_back(static_cast<std::uint32_t>(node));
        g.dst.push_back(static_cast<std::uint32_t>(m.next(p, c) * n + m.next(q, c)));
      }
  }
  TransitionId left(std::uint32_t e) const {
    return static_cast<TransitionId>((e / k) / n * k + e % k);
  }
  TransitionId right(std::uint32_t e) const {
    return static_cast<TransitionId>((e / k) % n * k + e % k);
  }
};

}  // namespace

std::vector<std::vector<bool>> Acceptor::inclusion_matrix(std::size_t cap) const {
  const Skeleton& m = skeleton();
  PairGraph pg(m);
  const std::size_t nodes = pg.g.n, edges = pg.g.num_edges();
  // bad[node]: node lies on a cycle accepted on the left and rejected on the right.
  std::vector<bool> bad(nodes, false);
  auto mark_internal = [&](const std::vector<bool>& mask, auto&& verdict) {
    for (const auto& comp : detail::scc_of(pg.g, mask)) {
      std::vector<bool> in(nodes, false);
      for (auto v : comp) in[v] = true;
      std::vector<bool> internal(edges, false);
      bool any = false;
      for (std::uint32_t e = 0; e < edges; ++e)
        if ((mask.empty() || mask[e]) && in[pg.g.src[e]] && in[pg.g.dst[e]]) internal[e] = any = true;
      if (any && verdict(internal))
        for (auto v : comp) bad[v] = true;
    }
  };
  if (parity_) {
    const unsigned top = parity_->max_priority();
    for (unsigned i = 0; i <= top; i += 2) {
      for (unsigned j = 1; j <= top; j += 2) {
        std::vector<bool> mask(edges);
        for (std::uint32_t e = 0; e < edges; ++e)
          mask[e] = parity_->priority(pg.left(e)) <= i && parity_->priority(pg.right(e)) <= j;
        mark_internal(mask, [&](const std::vector<bool>& internal) {
          bool hit_i = false, hit_j = false;
          for (std::uint32_t e = 0; e < edges; ++e) {
            if (!internal[e]) continue;
            hit_i = hit_i || parity_->priority(pg.left(e)) == i;
            hit_j = hit_j || parity_->priority(pg.right(e)) == j;
          }
          return hit_i && hit_j;
        });
      }
    }
  } else {
    mark_internal({}, [&](const std::vector<bool>& internal) {
      for (const auto& s : detail::enumerate_supports(pg.g, internal, cap)) {
        std::vector<TransitionId> l, r;
        for (auto e : s.elements()) {
          l.push_back(pg.left(e));
          r.push_back(pg.right(e));
        }
        if (accepts(CycleSupport(l)) && !accepts(CycleSupport(r))) return true;
      }
      return false;
    });
  }
  // A pair is not included iff it reaches a bad node.
  std::vector<std::vector<std::uint32_t>> preds(nodes);
  for (std::uint32_t e = 0; e < edges; ++e) preds[pg.g.dst[e]].push_back(pg.g.src[e]);
  std::vector<bool> reach = bad;
  std::deque<std::uint32_t> queue;
  for (std::uint32_t v = 0; v < nodes; ++v)
    if (bad[v]) queue.push_back(v);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto u : preds[v])
      if (!reach[u]) {
        reach[u] = true;
        queue.push_back(u);
      }
  }
  const std::size_t n = m.num_states();
  std::vector<std::vector<bool>> included(n, std::vector<bool>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) included[p][q] = !reach[p * n + q];
  return included;
}

Comparison residual_compare(const Condition& cond, const Word& w1, const Word& w2, std::size_t cap) {
  Acceptor a = Acceptor::of(cond);
  const Skeleton& m = a.skeleton();
  StateId p = m.run_from(m.init(), m.alphabet().encode(w1));
  StateId q = m.run_from(m.init(), m.alphabet().encode(w2));
  if (p == q) return Comparison::Equal;
  auto inc = a.inclusion_matrix(cap);
  bool pq = inc[p][q], qp = inc[q][p];
  if (pq && qp) return Comparison::Equal;
  if (pq) return Comparison::Less;
  if (qp) return Comparison::Greater;
  return Comparison::Incomparable;
}

std::string class_label(const Alphabet& alphabet, const Word& representative) {
  if (representative.empty()) return "[ε]";
  std::string s = "[";
  const bool compact = alphabet.single_char();
  for (std::size_t i = 0; i < representative.size(); ++i) {
    if (i && !compact) s += ",";
    s += representative[i];
  }
  return s + "]";
}

namespace {

// Quotient of `m` by a congruence given as class ids per state; states are
// named by their class label.
ClassAutomaton quotient(const Skeleton& m, const std::vector<StateId>& cls,
                        const std::vector<std::string>* fixed_names) {
  constexpr StateId unset = static_cast<StateId>(-1);
  const std::size_t k = m.num_colors();
  // BFS over classes, keeping one member state per class.
  std::vector<StateId> order_of(m.num_states(), unset);
  std::vector<StateId> member;
  std::vector<std::vector<ColorId>> words;
  std::deque<StateId> queue{m.init()};
  order_of[cls[m.init()]] = 0;
  member.push_back(m.init());
  words.emplace_back();
  std::vector<StateId> table;
  for (std::size_t i = 0; i < member.size(); ++i) {
    for (ColorId c = 0; c < k; ++c) {
      StateId t = m.next(member[i], c);
      if (order_of[cls[t]] == unset) {
        order_of[cls[t]] = static_cast<StateId>(member.size());
        member.push_back(t);
        auto w = words[i];
        w.push_back(c);
        words.push_back(std::move(w));
      }
      table.push_back(order_of[cls[t]]);
    }
  }
  std::vector<std::string> names;
  std::vector<Word> reps;
  for (std::size_t i = 0; i < member.size(); ++i) {
    reps.push_back(m.alphabet().decode(words[i]));
    names.push_back(fixed_names ? (*fixed_names)[member[i]] : class_label(m.alphabet(), reps.back()));
  }
  ClassAutomaton out;
  out.skeleton = Skeleton::from_table(m.alphabet(), names, 0, table);
  out.representatives.resize(member.size());
  for (std::size_t i = 0; i < member.size(); ++i)
    out.representatives[out.skeleton.state_index(names[i])] = reps[i];
  return out;
}

}  // namespace

ClassAutomaton right_congruence_automaton(const Condition& cond, std::size_t cap) {
  if (const auto* ds = cond.as_discounted_sum()) {
    // Gap states are pairwise inequivalent; keep their gap labels.
    auto d = ds_right_congruence(ds->lambda, ds->k);
    const Skeleton& m = d.automaton.skeleton();
    std::vector<StateId> identity(m.num_states());
    for (StateId s = 0; s < m.num_states(); ++s) identity[s] = s;
    return quotient(m, identity, &m.state_names());
  }
  Acceptor a = Acceptor::of(cond);
  const Skeleton& m = a.skeleton();
  auto inc = a.inclusion_matrix(cap);
  std::vector<StateId> cls(m.num_states());
  for (StateId s = 0; s < m.num_states(); ++s) {
    cls[s] = s;
    for (StateId r = 0; r < s; ++r)
      if (inc[s][r] && inc[r][s]) {
        cls[s] = cls[r];
        break;
      }
  }
  return quotient(m, cls, nullptr);
}

}  // namespace chromem
