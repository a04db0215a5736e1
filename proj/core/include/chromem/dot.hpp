#pragma once

#include <string>

#include "chromem/games.hpp"
#include "chromem/skeleton.hpp"

namespace chromem {

// Graphviz renderings. Skeleton states are diamonds; arena states are circles
// (P1) or squares (P2). Parallel edges are merged into one label.
std::string to_dot(const Skeleton& m, const std::string& graph_name = "skeleton");
std::string to_dot(const ParityAutomaton& d, const std::string& graph_name = "automaton");
std::string to_dot(const Arena& a, const std::string& graph_name = "arena");

}  // namespace chromem
