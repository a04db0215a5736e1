#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "chromem/support.hpp"

namespace chromem::detail {

// Edge-list multigraph; edge ids index src/dst.
struct Digraph {
  std::size_t n = 0;
  std::vector<std::uint32_t> src, dst;

  std::size_t num_edges() const { return src.size(); }
};

Digraph digraph_of(const Skeleton& m);

// SCCs of the subgraph keeping edges with mask[e] (all edges when mask is empty).
// Components are sorted and listed by least member.
std::vector<std::vector<std::uint32_t>> scc_of(const Digraph& g, const std::vector<bool>& mask);

// All non-empty strongly connected edge subsets of the masked subgraph (unordered).
std::vector<TransitionSet> enumerate_supports(const Digraph& g, const std::vector<bool>& mask,
                                              std::size_t cap);

}  // namespace chromem::detail
