#include "chromem/dot.hpp"

#include <map>
#include <sstream>

namespace chromem {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

using EdgeLabels = std::map<std::pair<std::string, std::string>, std::vector<std::string>>;

void emit_edges(std::ostringstream& os, const EdgeLabels& labels) {
  for (const auto& [ends, ls] : labels) {
    std::string joined;
    for (const auto& l : ls) joined += (joined.empty() ? "" : ", ") + l;
    os << "  " << quote(ends.first) << " -> " << quote(ends.second) << " [label=" << quote(joined) << "];\n";
  }
}

std::string automaton_dot(const Skeleton& m, const std::string& name, const ParityAutomaton* d) {
  std::ostringstream os;
  os << "digraph " << quote(name) << " {\n  rankdir=LR;\n  node [shape=diamond];\n";
  os << "  __start [shape=point, label=\"\"];\n";
  for (const auto& s : m.state_names()) os << "  " << quote(s) << ";\n";
  os << "  __start -> " << quote(m.state_name(m.init())) << ";\n";
  EdgeLabels labels;
  for (StateId s = 0; s < m.num_states(); ++s)
    for (ColorId c = 0; c < m.num_colors(); ++c) {
      std::string l = m.alphabet()[c];
      if (d) l += " | " + std::to_string(d->priority(s, c));
      labels[{m.state_name(s), m.state_name(m.next(s, c))}].push_back(l);
    }
  emit_edges(os, labels);
  os << "}\n";
  return os.str();
}

}  // namespace

std::string to_dot(const Skeleton& m, const std::string& graph_name) { return automaton_dot(m, graph_name, nullptr); }

std::string to_dot(const ParityAutomaton& d, const std::string& graph_name) {
  return automaton_dot(d.skeleton(), graph_name, &d);
}

std::string to_dot(const Arena& a, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << quote(graph_name) << " {\n  rankdir=LR;\n";
  for (StateId s = 0; s < a.num_states(); ++s)
    os << "  " << quote(a.state_name(s)) << " [shape=" << (a.owner(s) == Player::P1 ? "circle" : "square") << "];\n";
  EdgeLabels labels;
  for (const auto& e : a.edges())
    labels[{a.state_name(e.src), a.state_name(e.dst)}].push_back(a.alphabet()[e.color]);
  emit_edges(os, labels);
  os << "}\n";
  return os.str();
}

}  // namespace chromem
