#include "digraph.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "chromem/errors.hpp"

namespace chromem::detail {

Digraph digraph_of(const Skeleton& m) {
  Digraph g;
  g.n = m.num_states();
  for (TransitionId t = 0; t < m.num_transitions(); ++t) {
    g.src.push_back(m.source(t));
    g.dst.push_back(m.target(t));
  }
  return g;
}

namespace {

std::vector<std::vector<std::uint32_t>> out_lists(const Digraph& g, const std::vector<bool>& mask) {
  std::vector<std::vector<std::uint32_t>> out(g.n);
  for (std::uint32_t e = 0; e < g.num_edges(); ++e)
    if (mask.empty() || mask[e]) out[g.src[e]].push_back(e);
  return out;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> scc_of(const Digraph& g, const std::vector<bool>& mask) {
  const auto out = out_lists(g, mask);
  constexpr std::uint32_t unset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> index(g.n, unset), low(g.n, 0), stack;
  std::vector<bool> on_stack(g.n, false);
  std::vector<std::vector<std::uint32_t>> comps;
  std::uint32_t counter = 0;
  for (std::uint32_t root = 0; root < g.n; ++root) {
    if (index[root] != unset) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, i] = frames.back();
      if (i < out[v].size()) {
        std::uint32_t w = g.dst[out[v][i++]];
        if (index[w] == unset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      std::uint32_t done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        std::vector<std::uint32_t> comp;
        std::uint32_t x;
        do {
          x = stack.back();
          stack.pop_back();
          on_stack[x] = false;
          comp.push_back(x);
        } while (x != done);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

std::vector<TransitionSet> enumerate_supports(const Digraph& g, const std::vector<bool>& mask,
                                              std::size_t cap) {
  const auto out = out_lists(g, mask);
  const std::size_t universe = g.num_edges();

  // Simple cycles, each found once from its least vertex.
  std::vector<TransitionSet> cycles;
  std::vector<bool> on_path(g.n, false);
  std::vector<std::uint32_t> path;
  for (std::uint32_t start = 0; start < g.n; ++start) {
    std::vector<std::pair<std::uint32_t, std::size_t>> frames{{start, 0}};
    on_path[start] = true;
    while (!frames.empty()) {
      auto& [v, i] = frames.back();
      if (i == out[v].size()) {
        on_path[v] = false;
        frames.pop_back();
        if (!path.empty()) path.pop_back();
        continue;
      }
      std::uint32_t e = out[v][i++];
      std::uint32_t w = g.dst[e];
      if (w == start) {
        TransitionSet cyc(universe);
        for (auto p : path) cyc.insert(p);
        cyc.insert(e);
        cycles.push_back(std::move(cyc));
        if (cycles.size() > cap)
          throw ResourceError("simple cycle enumeration exceeded cap " + std::to_string(cap));
      } else if (w > start && !on_path[w]) {
        on_path[w] = true;
        path.push_back(e);
        frames.emplace_back(w, 0);
      }
    }
  }

  std::vector<std::vector<std::uint32_t>> cycle_vertices(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    for (auto e : cycles[i].elements()) cycle_vertices[i].push_back(g.src[e]);
  }

  std::unordered_set<TransitionSet, TransitionSetHash> seen;
  std::vector<TransitionSet> found;
  auto add = [&](TransitionSet s) {
    if (seen.insert(s).second) {
      found.push_back(std::move(s));
      if (found.size() > cap)
        throw ResourceError("cycle support enumeration exceeded cap " + std::to_string(cap));
    }
  };
  for (const auto& c : cycles) add(c);
  // A strongly connected edge set is a union of simple cycles that can be
  // adjoined one at a time, each sharing a vertex with the union so far.
  std::vector<bool> in_support(g.n);
  for (std::size_t i = 0; i < found.size(); ++i) {
    std::fill(in_support.begin(), in_support.end(), false);
    for (auto e : found[i].elements()) in_support[g.src[e]] = true;
    for (std::size_t j = 0; j < cycles.size(); ++j) {
      if (cycles[j].subset_of(found[i])) continue;
      bool shares = std::any_of(cycle_vertices[j].begin(), cycle_vertices[j].end(),
                                [&](std::uint32_t v) { return in_support[v]; });
      if (shares) add(found[i] | cycles[j]);
    }
  }
  return found;
}

}  // namespace chromem::detail
