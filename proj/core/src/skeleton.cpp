#include "chromem/skeleton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "chromem/errors.hpp"

namespace chromem {

Alphabet::Alphabet(std::vector<Color> colors) : colors_(std::move(colors)) {
  std::sort(colors_.begin(), colors_.end());
  if (std::adjacent_find(colors_.begin(), colors_.end()) != colors_.end())
    throw InputError("duplicate color in alphabet");
  if (colors_.empty()) throw InputError("empty alphabet");
  for (const auto& c : colors_)
    if (c.empty()) throw InputError("empty color label");
}

std::optional<ColorId> Alphabet::find(std::string_view color) const {
  auto it = std::lower_bound(colors_.begin(), colors_.end(), color);
  if (it == colors_.end() || *it != color) return std::nullopt;
  return static_cast<ColorId>(it - colors_.begin());
}

ColorId Alphabet::index(std::string_view color) const {
  auto c = find(color);
  if (!c) throw InputError("unknown color '" + std::string(color) + "'");
  return *c;
}

std::vector<ColorId> Alphabet::encode(const Word& word) const {
  std::vector<ColorId> out;
  out.reserve(word.size());
  for (const auto& c : word) out.push_back(index(c));
  return out;
}

Word Alphabet::decode(const std::vector<ColorId>& ids) const {
  Word out;
  out.reserve(ids.size());
  for (auto c : ids) out.push_back(colors_.at(c));
  return out;
}

bool Alphabet::single_char() const {
  return std::all_of(colors_.begin(), colors_.end(), [](const Color& c) { return c.size() == 1; });
}

namespace {

void check_reachable(const std::vector<std::string>& names, StateId init,
                     const std::vector<StateId>& table, std::size_t k) {
  std::vector<bool> seen(names.size(), false);
  std::deque<StateId> queue{init};
  seen[init] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (std::size_t c = 0; c < k; ++c) {
      StateId t = table[s * k + c];
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  for (std::size_t s = 0; s < names.size(); ++s)
    if (!seen[s]) throw InputError("state '" + names[s] + "' is not reachable from the initial state");
}

}  // namespace

Skeleton Skeleton::from_table(Alphabet alphabet, std::vector<std::string> names, StateId init,
                              const std::vector<StateId>& table) {
  const std::size_t n = names.size(), k = alphabet.size();
  if (n == 0) throw InputError("skeleton without states");
  if (table.size() != n * k) throw InputError("transition table has wrong size");
  if (init >= n) throw InputError("initial state out of range");
  for (auto t : table)
    if (t >= n) throw InputError("transition target out of range");

  std::vector<StateId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](StateId a, StateId b) { return names[a] < names[b]; });
  for (std::size_t i = 1; i < n; ++i)
    if (names[order[i]] == names[order[i - 1]])
      throw InputError("duplicate state name '" + names[order[i]] + "'");
  std::vector<StateId> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[order[i]] = static_cast<StateId>(i);

  Skeleton m;
  m.alphabet_ = std::move(alphabet);
  m.names_.resize(n);
  m.table_.resize(n * k);
  for (std::size_t i = 0; i < n; ++i) {
    StateId old = order[i];
    m.names_[i] = names[old];
    for (std::size_t c = 0; c < k; ++c) m.table_[i * k + c] = rank[table[old * k + c]];
  }
  m.init_ = rank[init];
  check_reachable(m.names_, m.init_, m.table_, k);
  return m;
}

Skeleton::Skeleton(Alphabet alphabet, std::vector<std::string> states, const std::string& init,
                   const std::vector<Edge>& upd) {
  const std::size_t n = states.size(), k = alphabet.size();
  std::map<std::string, StateId> index;
  for (std::size_t i = 0; i < n; ++i)
    if (!index.emplace(states[i], static_cast<StateId>(i)).second)
      throw InputError("duplicate state name '" + states[i] + "'");
  auto lookup = [&](const std::string& s) {
    auto it = index.find(s);
    if (it == index.end()) throw InputError("unknown state '" + s + "'");
    return it->second;
  };
  constexpr StateId unset = static_cast<StateId>(-1);
  std::vector<StateId> table(n * k, unset);
  for (const auto& e : upd) {
    StateId s = lookup(e.src);
    ColorId c = alphabet.index(e.color);
    StateId t = lookup(e.dst);
    auto& slot = table[s * k + c];
    if (slot != unset && slot != t)
      throw InputError("nondeterministic update at (" + e.src + ", " + e.color + ")");
    slot = t;
  }
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] == unset)
      throw InputError("update undefined at (" + states[i / k] + ", " + alphabet[i % k] + ")");
  *this = from_table(std::move(alphabet), std::move(states), lookup(init), table);
}

Skeleton Skeleton::trivial(Alphabet alphabet) {
  std::vector<StateId> table(alphabet.size(), 0);
  return from_table(std::move(alphabet), {"init"}, 0, table);
}

std::optional<StateId> Skeleton::find_state(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<StateId>(it - names_.begin());
}

StateId Skeleton::state_index(std::string_view name) const {
  auto s = find_state(name);
  if (!s) throw InputError("unknown state '" + std::string(name) + "'");
  return *s;
}

StateId Skeleton::run_from(StateId from, const std::vector<ColorId>& word) const {
  for (auto c : word) from = next(from, c);
  return from;
}

std::vector<StateId> run(const Skeleton& m, const Word& word) {
  auto ids = m.alphabet().encode(word);
  std::vector<StateId> states{m.init()};
  for (auto c : ids) states.push_back(m.next(states.back(), c));
  return states;
}

ProductSkeleton product_with_components(const Skeleton& m1, const Skeleton& m2) {
  if (!(m1.alphabet() == m2.alphabet())) throw InputError("product of skeletons over different alphabets");
  const std::size_t k = m1.num_colors();
  std::map<std::pair<StateId, StateId>, StateId> index;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<StateId> table;
  auto intern = [&](std::pair<StateId, StateId> p) {
    auto [it, fresh] = index.emplace(p, static_cast<StateId>(pairs.size()));
    if (fresh) pairs.push_back(p);
    return it->second;
  };
  intern({m1.init(), m2.init()});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    for (std::size_t c = 0; c < k; ++c)
      table.push_back(intern({m1.next(a, static_cast<ColorId>(c)), m2.next(b, static_cast<ColorId>(c))}));
  }
  std::vector<std::string> names;
  names.reserve(pairs.size());
  for (auto [a, b] : pairs) names.push_back(m1.state_name(a) + "|" + m2.state_name(b));
  ProductSkeleton out;
  out.skeleton = Skeleton::from_table(m1.alphabet(), names, 0, table);
  out.components.resize(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    out.components[out.skeleton.state_index(names[i])] = pairs[i];
  return out;
}

Skeleton product(const Skeleton& m1, const Skeleton& m2) {
  return product_with_components(m1, m2).skeleton;
}

bool isomorphic(const Skeleton& a, const Skeleton& b) {
  if (!(a.alphabet() == b.alphabet()) || a.num_states() != b.num_states()) return false;
  // Deterministic and initially connected: the bijection is forced by BFS from init.
  constexpr StateId unset = static_cast<StateId>(-1);
  std::vector<StateId> map(a.num_states(), unset), inverse(b.num_states(), unset);
  std::deque<StateId> queue{a.init()};
  map[a.init()] = b.init();
  inverse[b.init()] = a.init();
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (ColorId c = 0; c < a.num_colors(); ++c) {
      StateId sa = a.next(s, c), sb = b.next(map[s], c);
      if (map[sa] == unset && inverse[sb] == unset) {
        map[sa] = sb;
        inverse[sb] = sa;
        queue.push_back(sa);
      } else if (map[sa] != sb) {
        return false;
      }
    }
  }
  return true;
}

ParityAutomaton::ParityAutomaton(Skeleton skeleton, std::vector<unsigned> priority)
    : skeleton_(std::move(skeleton)), priority_(std::move(priority)) {
  if (priority_.size() != skeleton_.num_transitions())
    throw InputError("priority table does not cover exactly the skeleton's transitions");
}

unsigned ParityAutomaton::max_priority() const {
  return priority_.empty() ? 0 : *std::max_element(priority_.begin(), priority_.end());
}

ColorPartition color_abstraction(const ParityAutomaton& a) {
  const auto& m = a.skeleton();
  const std::size_t k = m.num_colors();
  ColorPartition out;
  out.representative.resize(k);
  for (ColorId c = 0; c < k; ++c) {
    out.representative[c] = c;
    for (auto& cls : out.classes) {
      ColorId r = cls.front();
      bool same = true;
      for (StateId s = 0; s < m.num_states() && same; ++s)
        same = m.next(s, r) == m.next(s, c) && a.priority(s, r) == a.priority(s, c);
      if (same) {
        out.representative[c] = r;
        cls.push_back(c);
        break;
      }
    }
    if (out.representative[c] == c) out.classes.push_back({c});
  }
  return out;
}

std::vector<std::vector<StateId>> strongly_connected_components(const Skeleton& m) {
  const std::size_t n = m.num_states(), k = m.num_colors();
  constexpr StateId unset = static_cast<StateId>(-1);
  std::vector<StateId> index(n, unset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> out;
  StateId counter = 0;
  // Iterative Tarjan: frames hold (state, next color to explore).
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != unset) continue;
    std::vector<std::pair<StateId, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [s, c] = frames.back();
      if (c < k) {
        StateId t = m.next(s, static_cast<ColorId>(c++));
        if (index[t] == unset) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          frames.emplace_back(t, 0);
        } else if (on_stack[t]) {
          low[s] = std::min(low[s], index[t]);
        }
        continue;
      }
      StateId done = s;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<StateId> comp;
        StateId x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[x] = false;
          comp.push_back(x);
        } while (x != done);
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<ColorId>> shortest_word(const Skeleton& m, StateId from, StateId to) {
  constexpr StateId unset = static_cast<StateId>(-1);
  std::vector<StateId> parent(m.num_states(), unset);
  std::vector<ColorId> via(m.num_states(), 0);
  std::deque<StateId> queue{from};
  parent[from] = from;
  while (!queue.empty() && parent[to] == unset) {
    StateId s = queue.front();
    queue.pop_front();
    for (ColorId c = 0; c < m.num_colors(); ++c) {
      StateId t = m.next(s, c);
      if (parent[t] == unset) {
        parent[t] = s;
        via[t] = c;
        queue.push_back(t);
      }
    }
  }
  if (parent[to] == unset) return std::nullopt;
  std::vector<ColorId> word;
  for (StateId s = to; s != from; s = parent[s]) word.push_back(via[s]);
  std::reverse(word.begin(), word.end());
  return word;
}

}  // namespace chromem
