#include "json_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "chromem/errors.hpp"

namespace chromem::io {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
}

json read_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InternalError("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Word& w) { return json(w); }

json to_json(const Lasso& l, const Alphabet& a) {
  return {{"prefix", a.decode(l.prefix)}, {"period", a.decode(l.period)}};
}

json to_json(const UltimatelyPeriodicWord& w) { return {{"prefix", w.prefix}, {"period", w.period}}; }

json to_json(const Rational& r) { return r.str(); }

json to_json(const CycleSupport& s, const Skeleton& m) {
  json out = json::array();
  for (auto t : s.transitions()) out.push_back({m.state_name(m.source(t)), m.alphabet()[m.color_of(t)]});
  return out;
}

namespace {

void check_format(const json& j) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  if (j.contains("format") && j.at("format") != kFormat)
    throw InputError("unsupported format version " + j.at("format").dump());
}

std::vector<std::string> strings(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (e.is_string()) out.push_back(e.get<std::string>());
    else if (e.is_number_integer()) out.push_back(std::to_string(e.get<long>()));
    else throw InputError(std::string(what) + " entries must be strings");
  }
  return out;
}

std::string token(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long>());
  throw InputError("expected a string, got " + j.dump());
}

}  // namespace

Alphabet alphabet_from_json(const json& j) { return Alphabet(strings(j, "alphabet")); }

Skeleton skeleton_from_json(const json& j) {
  check_format(j);
  Alphabet a = alphabet_from_json(j.at("alphabet"));
  std::vector<Skeleton::Edge> upd;
  for (const auto& e : j.at("upd")) {
    if (!e.is_array() || e.size() != 3) throw InputError("upd entries are [state, color, state]");
    upd.push_back({token(e[0]), token(e[1]), token(e[2])});
  }
  return Skeleton(std::move(a), strings(j.at("states"), "states"), token(j.at("init")), upd);
}

json to_json(const Skeleton& m) {
  json upd = json::array();
  for (StateId s = 0; s < m.num_states(); ++s)
    for (ColorId c = 0; c < m.num_colors(); ++c)
      upd.push_back({m.state_name(s), m.alphabet()[c], m.state_name(m.next(s, c))});
  return {{"format", kFormat},
          {"alphabet", m.alphabet().colors()},
          {"states", m.state_names()},
          {"init", m.state_name(m.init())},
          {"upd", upd}};
}

ParityAutomaton automaton_from_json(const json& j) {
  Skeleton m = skeleton_from_json(j);
  std::vector<std::optional<unsigned>> prio(m.num_transitions());
  for (const auto& e : j.at("priority")) {
    if (!e.is_array() || e.size() != 3) throw InputError("priority entries are [state, color, n]");
    auto t = m.transition(m.state_index(token(e[0])), m.alphabet().index(token(e[1])));
    long p = e[2].get<long>();
    if (p < 0) throw InputError("priorities are natural numbers");
    if (prio[t]) throw InputError("duplicate priority entry");
    prio[t] = static_cast<unsigned>(p);
  }
  std::vector<unsigned> out;
  for (TransitionId t = 0; t < prio.size(); ++t) {
    if (!prio[t])
      throw InputError("missing priority for (" + m.state_name(m.source(t)) + ", " + m.alphabet()[m.color_of(t)] + ")");
    out.push_back(*prio[t]);
  }
  return ParityAutomaton(std::move(m), std::move(out));
}

json to_json(const ParityAutomaton& d) {
  json j = to_json(d.skeleton());
  const Skeleton& m = d.skeleton();
  json pr = json::array();
  for (StateId s = 0; s < m.num_states(); ++s)
    for (ColorId c = 0; c < m.num_colors(); ++c) pr.push_back({m.state_name(s), m.alphabet()[c], d.priority(s, c)});
  j["priority"] = pr;
  return j;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer())
    return Rational(j[0].get<long>(), j[1].get<long>());
  throw InputError("expected a rational (\"p/q\", integer or [p, q]), got " + j.dump());
}

CycleSupport support_from_json(const json& j, const Skeleton& m) {
  if (!j.is_array()) throw InputError("a support is a list of [state, color] pairs");
  std::vector<TransitionId> ts;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw InputError("support entries are [state, color]");
    ts.push_back(m.transition(m.state_index(token(e[0])), m.alphabet().index(token(e[1]))));
  }
  return CycleSupport(std::move(ts));
}

Condition condition_from_json(const json& j) {
  check_format(j);
  const std::string kind = j.at("kind").get<std::string>();
  auto payoff_alphabet = [&] {
    if (j.contains("alphabet")) return alphabet_from_json(j.at("alphabet"));
    return integer_alphabet(j.at("k").get<unsigned>());
  };
  if (kind == "dpa") return Condition::dpa(automaton_from_json(j.contains("automaton") ? j.at("automaton") : j));
  if (kind == "muller") {
    Skeleton m = skeleton_from_json(j.at("skeleton"));
    std::vector<CycleSupport> winning;
    for (const auto& s : j.at("winning")) winning.push_back(support_from_json(s, m));
    return Condition::muller(std::move(m), std::move(winning));
  }
  if (kind == "discounted-sum") {
    long k = j.at("k").get<long>();
    if (k < 0) throw InputError("k must be a natural number");
    return Condition::discounted_sum(rational_from_json(j.at("lambda")), static_cast<unsigned>(k));
  }
  if (kind == "mean-payoff") return Condition::mean_payoff(payoff_alphabet());
  if (kind == "total-payoff") return Condition::total_payoff(payoff_alphabet());
  throw InputError("unknown condition kind '" + kind + "'");
}

json to_json(const Condition& c) {
  json j{{"format", kFormat}, {"kind", to_string(c.kind())}};
  if (auto d = c.as_dpa()) {
    j["automaton"] = to_json(d->automaton);
  } else if (auto mu = c.as_muller()) {
    j["skeleton"] = to_json(mu->skeleton);
    json w = json::array();
    for (const auto& s : mu->winning) w.push_back(to_json(s, mu->skeleton));
    j["winning"] = w;
  } else if (auto ds = c.as_discounted_sum()) {
    j["lambda"] = {ds->lambda.numerator_long(), ds->lambda.denominator_long()};
    j["k"] = ds->k;
  } else {
    j["alphabet"] = c.alphabet().colors();
  }
  return j;
}

Arena arena_from_json(const json& j) {
  check_format(j);
  Alphabet a = alphabet_from_json(j.at("alphabet"));
  std::vector<std::string> states = strings(j.at("states"), "states");
  std::map<std::string, Player> owner;
  const json& o = j.at("owner");
  if (o.is_object()) {
    for (const auto& [s, p] : o.items()) owner[s] = parse_player(p.get<std::string>());
  } else {
    for (const auto& e : o) {
      if (!e.is_array() || e.size() != 2) throw InputError("owner entries are [state, player]");
      owner[token(e[0])] = parse_player(token(e[1]));
    }
  }
  std::vector<Player> own;
  for (const auto& s : states) {
    auto it = owner.find(s);
    if (it == owner.end()) throw InputError("no owner for arena state '" + s + "'");
    own.push_back(it->second);
  }
  if (owner.size() != states.size()) throw InputError("owner lists unknown states");
  std::vector<Arena::NamedEdge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) throw InputError("edges are [state, color, state]");
    edges.push_back({token(e[0]), token(e[1]), token(e[2])});
  }
  return Arena::from_names(std::move(a), std::move(states), std::move(own), edges);
}

json to_json(const Arena& a) {
  json owner = json::array(), edges = json::array();
  for (StateId s = 0; s < a.num_states(); ++s) owner.push_back({a.state_name(s), to_string(a.owner(s))});
  for (const auto& e : a.edges()) edges.push_back({a.state_name(e.src), a.alphabet()[e.color], a.state_name(e.dst)});
  return {{"format", kFormat},
          {"alphabet", a.alphabet().colors()},
          {"states", a.state_names()},
          {"owner", owner},
          {"edges", edges}};
}

SkeletonStrategy strategy_from_json(const json& j, const Arena& a) {
  check_format(j);
  SkeletonStrategy s;
  s.player = parse_player(j.at("player").get<std::string>());
  s.skeleton = skeleton_from_json(j.at("skeleton"));
  const std::size_t k = s.skeleton.num_states();
  s.nxt.assign(a.num_states() * k, std::nullopt);
  for (const auto& e : j.at("nxt")) {
    if (!e.is_array() || e.size() != 4) throw InputError("nxt entries are [arena state, memory state, color, target]");
    StateId as = a.state_index(token(e[0]));
    StateId ms = s.skeleton.state_index(token(e[1]));
    ColorId c = a.alphabet().index(token(e[2]));
    StateId dst = a.state_index(token(e[3]));
    std::optional<std::size_t> found;
    for (auto ei : a.out(as))
      if (a.edges()[ei].color == c && a.edges()[ei].dst == dst) found = ei;
    if (!found) throw InputError("strategy move is not an arena edge");
    s.nxt[as * k + ms] = found;
  }
  return s;
}

json to_json(const SkeletonStrategy& s, const Arena& a) {
  json nxt = json::array();
  const std::size_t k = s.skeleton.num_states();
  for (StateId as = 0; as < a.num_states(); ++as)
    for (StateId ms = 0; ms < k; ++ms)
      if (auto e = s.nxt[as * k + ms]) {
        const auto& ed = a.edges()[*e];
        nxt.push_back({a.state_name(as), s.skeleton.state_name(ms), a.alphabet()[ed.color], a.state_name(ed.dst)});
      }
  return {{"format", kFormat}, {"player", to_string(s.player)}, {"skeleton", to_json(s.skeleton)}, {"nxt", nxt}};
}

Word parse_word(const std::string& text) {
  Word w;
  if (text.empty()) return w;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (part.empty()) throw InputError("empty color in word '" + text + "'");
    w.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return w;
}

UltimatelyPeriodicWord parse_lasso(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos) throw InputError("lasso must be written 'prefix;period'");
  return UltimatelyPeriodicWord(parse_word(text.substr(0, semi)), parse_word(text.substr(semi + 1)));
}

}  // namespace chromem::io
