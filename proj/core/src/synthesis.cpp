#include "chromem/synthesis.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "chromem/errors.hpp"
#include "chromem/residuals.hpp"

namespace chromem {

std::vector<ClassifiedSupport> classify_supports(const Skeleton& m, const Condition& cond, std::size_t cap) {
  if (!(cond.alphabet() == m.alphabet())) throw InputError("condition and skeleton use different alphabets");
  auto supports = enumerate_cycle_supports(m, cap);
  if (supports.empty()) throw InputError("skeleton has no cycle supports");
  std::vector<ClassifiedSupport> out;
  out.reserve(supports.size());
  for (auto& s : supports) {
    Outcome v = support_value(cond, m, s);
    out.push_back({std::move(s), v});
  }
  return out;
}

SupportValues::SupportValues(Skeleton m, std::vector<ClassifiedSupport> classified) : m_(std::move(m)) {
  std::sort(classified.begin(), classified.end(),
            [](const ClassifiedSupport& a, const ClassifiedSupport& b) { return a.support < b.support; });
  const std::size_t words = (m_.num_states() + 63) / 64;
  for (auto& c : classified) {
    bits_.push_back(c.support.bits(m_.num_transitions()));
    std::vector<std::uint64_t> st(words, 0);
    for (auto s : c.support.states(m_)) st[s / 64] |= std::uint64_t{1} << (s % 64);
    states_.push_back(std::move(st));
    if (!index_.emplace(bits_.back(), supports_.size()).second) throw InputError("duplicate cycle support");
    supports_.push_back(std::move(c.support));
    values_.push_back(c.value);
  }
}

bool SupportValues::share_state(std::size_t i, std::size_t j) const {
  for (std::size_t w = 0; w < states_[i].size(); ++w)
    if (states_[i][w] & states_[j][w]) return true;
  return false;
}

std::optional<std::size_t> SupportValues::find(const TransitionSet& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SupportValues::find(const CycleSupport& s) const {
  for (auto t : s.transitions())
    if (t >= m_.num_transitions()) return std::nullopt;
  return find(s.bits(m_.num_transitions()));
}

std::size_t SupportValues::index_of(const CycleSupport& s) const {
  auto i = find(s);
  if (!i) throw InputError("not a classified cycle support");
  return *i;
}

namespace {

// Value of the union of supports known to be strongly connected together.
Outcome union_value(const SupportValues& v, const TransitionSet& u) {
  auto i = v.find(u);
  if (!i) throw InternalError("union of linked supports missing from the enumeration");
  return v.value(*i);
}

// compat[i]: supports z sharing a state with i such that i ∪ z keeps i's value.
std::vector<TransitionSet> compatibility(const SupportValues& v) {
  const std::size_t n = v.size();
  std::vector<TransitionSet> compat(n, TransitionSet(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t z = 0; z < n; ++z)
      if (v.share_state(i, z) && union_value(v, v.bits(i) | v.bits(z)) == v.value(i))
        compat[i].insert(static_cast<TransitionId>(z));
  return compat;
}

}  // namespace

std::optional<CycleSupport> competing_witness(const CycleSupport& g1, const CycleSupport& g2,
                                              const SupportValues& values) {
  std::size_t i = values.index_of(g1), j = values.index_of(g2);
  if (values.value(i) == values.value(j)) throw InputError("competing witness needs cycles of opposite values");
  for (std::size_t z = 0; z < values.size(); ++z) {
    if (!values.share_state(i, z) || !values.share_state(j, z)) continue;
    if (union_value(values, values.bits(i) | values.bits(z)) != values.value(i)) continue;
    if (union_value(values, values.bits(j) | values.bits(z)) != values.value(j)) continue;
    return values.support(z);
  }
  return std::nullopt;
}

Dominant dominates(const CycleSupport& g1, const CycleSupport& g2, const CycleSupport& zeta,
                   const SupportValues& values) {
  std::size_t i = values.index_of(g1), j = values.index_of(g2), z = values.index_of(zeta);
  if (values.value(i) == values.value(j)) throw InputError("domination needs cycles of opposite values");
  bool valid = values.share_state(i, z) && values.share_state(j, z) &&
               union_value(values, values.bits(i) | values.bits(z)) == values.value(i) &&
               union_value(values, values.bits(j) | values.bits(z)) == values.value(j);
  if (!valid) throw InputError("invalid competition witness");
  Outcome all = union_value(values, values.bits(i) | values.bits(j) | values.bits(z));
  return all == values.value(i) ? Dominant::First : Dominant::Second;
}

std::vector<std::pair<std::size_t, std::size_t>> CycleClassTable::hasse() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = classes.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!below[a][b]) continue;
      bool covered = false;
      for (std::size_t c = 0; c < n && !covered; ++c) covered = below[a][c] && below[c][b];
      if (!covered) out.emplace_back(a, b);
    }
  return out;
}

CycleClassTable build_cycle_preorder(SupportValues values) {
  const std::size_t n = values.size();
  if (n == 0) throw InputError("no cycle supports to order");
  auto compat = compatibility(values);
  // Support-level competition and domination.
  std::vector<TransitionSet> competes(n, TransitionSet(n)), dom(n, TransitionSet(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (values.value(i) == values.value(j)) continue;
      auto z = compat[i].first_common(compat[j]);
      if (!z) continue;
      competes[i].insert(static_cast<TransitionId>(j));
      if (union_value(values, values.bits(i) | values.bits(j) | values.bits(*z)) == values.value(i))
        dom[i].insert(static_cast<TransitionId>(j));
    }
  // ≃: equal value, competition set and domination set.
  std::map<std::tuple<int, std::vector<TransitionId>, std::vector<TransitionId>>, std::size_t> key_to_class;
  std::vector<std::size_t> class_of(n);
  std::vector<CycleClass> classes;
  for (std::size_t i = 0; i < n; ++i) {
    auto key = std::make_tuple(static_cast<int>(values.value(i)), competes[i].elements(), dom[i].elements());
    auto [it, fresh] = key_to_class.emplace(std::move(key), classes.size());
    if (fresh) classes.push_back(CycleClass{i, values.value(i), {}});
    class_of[i] = it->second;
    classes[it->second].members.push_back(i);
  }
  const std::size_t k = classes.size();
  std::vector<std::vector<bool>> ccomp(k, std::vector<bool>(k)), cdom(k, std::vector<bool>(k)),
      below(k, std::vector<bool>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      auto ra = classes[a].representative, rb = classes[b].representative;
      ccomp[a][b] = competes[ra].contains(static_cast<TransitionId>(rb));
      cdom[a][b] = dom[ra].contains(static_cast<TransitionId>(rb));
    }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (classes[a].value != classes[b].value) {
        below[b][a] = cdom[a][b];
        continue;
      }
      // b ⊲ a through an opposite-value class c with a dominating c and c dominating b.
      for (std::size_t c = 0; c < k && !below[b][a]; ++c)
        below[b][a] = classes[c].value != classes[a].value && cdom[c][b] && cdom[a][c];
    }
  auto describe = [&](std::size_t c) {
    std::ostringstream os;
    os << "class " << c << " {";
    for (auto t : values.support(classes[c].representative).transitions())
      os << "(" << values.skeleton().state_name(values.skeleton().source(t)) << ","
         << values.skeleton().alphabet()[values.skeleton().color_of(t)] << ")";
    os << "}";
    return os.str();
  };
  for (std::size_t a = 0; a < k; ++a) {
    if (below[a][a]) throw InternalError("cycle order is not irreflexive at " + describe(a));
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        if (below[a][b] && below[b][c] && !below[a][c])
          throw InternalError("cycle order is not transitive on " + describe(a) + ", " + describe(b) + ", " +
                              describe(c));
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (cdom[a][b] && !ccomp[a][b]) throw InternalError("domination outside competition at " + describe(a));
      if (ccomp[a][b] && classes[a].value == classes[b].value)
        throw InternalError("competition between equal values at " + describe(a));
    }
  return CycleClassTable{std::move(values), std::move(class_of), std::move(classes), std::move(ccomp),
                         std::move(cdom), std::move(below)};
}

CycleClassTable build_cycle_preorder(const Skeleton& m, const Condition& cond, std::size_t cap) {
  return build_cycle_preorder(SupportValues(m, classify_supports(m, cond, cap)));
}

std::vector<unsigned> linear_extension(const CycleClassTable& table) {
  const std::size_t k = table.classes.size();
  std::vector<std::size_t> pending(k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (table.below[a][b]) ++pending[b];
  std::vector<unsigned> p(k, 0);
  std::vector<bool> done(k, false);
  for (std::size_t step = 0; step < k; ++step) {
    std::size_t c = k;
    for (std::size_t x = 0; x < k && c == k; ++x)
      if (!done[x] && pending[x] == 0) c = x;
    if (c == k) throw InternalError("cycle order has a cycle");
    const unsigned parity = table.classes[c].value == Outcome::Win ? 0 : 1;
    unsigned floor_value = 0;
    bool any = false;
    for (std::size_t a = 0; a < k; ++a)
      if (table.below[a][c]) {
        floor_value = any ? std::max(floor_value, p[a] + 1) : p[a] + 1;
        any = true;
      }
    unsigned v = floor_value;
    if (v % 2 != parity) ++v;
    p[c] = v;
    done[c] = true;
    for (std::size_t b = 0; b < k; ++b)
      if (table.below[c][b]) --pending[b];
  }
  return p;
}

std::optional<std::string> validate_extension(const CycleClassTable& table, const std::vector<unsigned>& pgamma) {
  const std::size_t k = table.classes.size();
  if (pgamma.size() != k) return "expected " + std::to_string(k) + " class priorities";
  for (std::size_t c = 0; c < k; ++c)
    if ((pgamma[c] % 2 == 0) != (table.classes[c].value == Outcome::Win))
      return "class " + std::to_string(c) + " has a priority of the wrong parity";
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (table.below[a][b] && pgamma[a] >= pgamma[b])
        return "priority does not increase from class " + std::to_string(a) + " to class " + std::to_string(b);
  return std::nullopt;
}

ParityAutomaton assign_priorities(const CycleClassTable& table, const std::vector<unsigned>& pgamma,
                                  bool allow_transient) {
  if (auto err = validate_extension(table, pgamma)) throw InputError("invalid class priorities: " + *err);
  const Skeleton& m = table.values.skeleton();
  constexpr unsigned none = static_cast<unsigned>(-1);
  std::vector<unsigned> p(m.num_transitions(), none);
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    unsigned v = pgamma[table.class_of[i]];
    for (auto t : table.values.support(i).transitions()) p[t] = std::min(p[t], v);
  }
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    if (p[t] != none) continue;
    const std::string where =
        "(" + m.state_name(m.source(t)) + ", " + m.alphabet()[m.color_of(t)] + ")";
    if (!allow_transient)
      throw InputError("transition " + where +
                       " lies on no cycle; prune transient transitions or allow transient priorities");
    // Least class priority among supports reachable from the target.
    std::vector<bool> reach(m.num_states(), false);
    std::vector<StateId> stack{m.target(t)};
    reach[m.target(t)] = true;
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      for (ColorId c = 0; c < m.num_colors(); ++c)
        if (!reach[m.next(s, c)]) {
          reach[m.next(s, c)] = true;
          stack.push_back(m.next(s, c));
        }
    }
    for (std::size_t i = 0; i < table.values.size(); ++i)
      if (reach[m.source(table.values.support(i).transitions().front())])
        p[t] = std::min(p[t], pgamma[table.class_of[i]]);
    if (p[t] == none) throw InternalError("no cycle reachable from transition " + where);
  }
  return ParityAutomaton(m, std::move(p));
}

namespace {

bool parity_accepts(const ParityAutomaton& a, const CycleSupport& s) {
  unsigned best = 0;
  for (auto t : s.transitions()) best = std::max(best, a.priority(t));
  return best % 2 == 0;
}

}  // namespace

SynthesisCheck verify_synthesis(const ParityAutomaton& out, const Condition& cond, std::size_t samples,
                                std::uint64_t seed, std::size_t cap) {
  if (!(cond.alphabet() == out.alphabet())) throw InputError("automaton and condition use different alphabets");
  const Skeleton& m = out.skeleton();
  SynthesisCheck r;
  for (const auto& s : enumerate_cycle_supports(m, cap)) {
    ++r.supports_checked;
    bool win = support_value(cond, m, s) == Outcome::Win;
    if (parity_accepts(out, s) != win) {
      r.verdict = Verdict::Fail;
      r.support_witness = s;
      r.description = std::string("cycle support with ") + (win ? "winning" : "losing") +
                      " value has maximal priority of the wrong parity";
      return r;
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> prefix_len(0, 8), period_len(1, 8), color(0, m.num_colors() - 1);
  for (std::size_t i = 0; i < samples; ++i) {
    Lasso l;
    for (std::size_t n = prefix_len(rng); n > 0; --n) l.prefix.push_back(static_cast<ColorId>(color(rng)));
    for (std::size_t n = period_len(rng); n > 0; --n) l.period.push_back(static_cast<ColorId>(color(rng)));
    ++r.samples_checked;
    bool accepted = parity_accepts(out, limit_support(m, m.init(), l));
    if (accepted != (lasso_value(cond, l) == Outcome::Win)) {
      r.verdict = Verdict::Fail;
      r.lasso_witness = l;
      r.description = "automaton and condition disagree on a lasso";
      return r;
    }
  }
  r.description = "parity law holds on every cycle support and all sampled lassos agree";
  return r;
}

namespace {

std::string describe_prefix_witness(const ConsistencyReport& r) {
  if (!r.prefixes) return r.description;
  auto word = [](const Word& w) {
    std::string s;
    for (const auto& c : w) s += (s.empty() ? "" : " ") + c;
    return s.empty() ? std::string("ε") : s;
  };
  return r.description + " (prefixes '" + word(r.prefixes->first) + "' and '" + word(r.prefixes->second) + "')";
}

std::string describe_support_witness(const ConsistencyReport& r) {
  if (!r.supports || !r.arena_skeleton) return r.description;
  const Skeleton& m = *r.arena_skeleton;
  auto sup = [&](const CycleSupport& s) {
    std::string out = "{";
    for (auto t : s.transitions())
      out += "(" + m.state_name(m.source(t)) + "," + m.alphabet()[m.color_of(t)] + ")";
    return out + "}";
  };
  return r.description + ": " + sup(r.supports->first) + " and " + sup(r.supports->second);
}

}  // namespace

SynthesisResult synthesize(const Condition& cond, const Skeleton& m, const SynthesisOptions& options) {
  if (!cond.union_invariant())
    throw UnsupportedError("synthesis requires a condition whose cycle values depend only on transition sets");
  if (!(cond.alphabet() == m.alphabet())) throw InputError("condition and skeleton use different alphabets");
  Skeleton mp = product(right_congruence_automaton(cond, options.cap).skeleton, m);

  auto pi = check_prefix_independence(cond, mp, options.cap);
  if (pi.verdict == Verdict::Fail) throw StageError("prefix-independence", describe_prefix_witness(pi));
  auto cc = check_cycle_consistency(cond, mp, options.cap);
  if (cc.verdict == Verdict::Fail) throw StageError("cycle-consistency", describe_support_witness(cc));

  CycleClassTable table = build_cycle_preorder(SupportValues(mp, classify_supports(mp, cond, options.cap)));
  auto pgamma = linear_extension(table);
  if (auto err = validate_extension(table, pgamma)) throw InternalError("linear extension invalid: " + *err);
  ParityAutomaton out;
  try {
    out = assign_priorities(table, pgamma, options.allow_transient);
  } catch (const InputError& e) {
    throw StageError("assign-priorities", e.what());
  }
  auto check = verify_synthesis(out, cond, options.samples, options.seed, options.cap);
  if (check.verdict == Verdict::Fail) throw StageError("verify", check.description);
  return SynthesisResult{std::move(out), std::move(table), std::move(pgamma), std::move(pi), std::move(cc),
                         std::move(check)};
}

}  // namespace chromem
