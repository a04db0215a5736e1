#pragma once

#include <json.hpp>
#include <string>

#include "chromem/condition.hpp"
#include "chromem/games.hpp"
#include "chromem/skeleton.hpp"
#include "chromem/support.hpp"

namespace chromem::io {

using nlohmann::json;

inline constexpr int kFormat = 1;

// Reads and parses a JSON file; InputError on I/O or syntax errors.
json read_json_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);
// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

json to_json(const Word& w);
json to_json(const Lasso& l, const Alphabet& a);
json to_json(const UltimatelyPeriodicWord& w);
json to_json(const Rational& r);
json to_json(const CycleSupport& s, const Skeleton& m);

Skeleton skeleton_from_json(const json& j);
json to_json(const Skeleton& m);

ParityAutomaton automaton_from_json(const json& j);
json to_json(const ParityAutomaton& d);

// "p/q" string, integer, or [p, q].
Rational rational_from_json(const json& j);
Alphabet alphabet_from_json(const json& j);
CycleSupport support_from_json(const json& j, const Skeleton& m);

Condition condition_from_json(const json& j);
json to_json(const Condition& c);

Arena arena_from_json(const json& j);
json to_json(const Arena& a);

SkeletonStrategy strategy_from_json(const json& j, const Arena& a);
json to_json(const SkeletonStrategy& s, const Arena& a);

// Comma-separated colors; the empty string is the empty word.
Word parse_word(const std::string& text);
// "prefix;period" with comma-separated colors on each side.
UltimatelyPeriodicWord parse_lasso(const std::string& text);

}  // namespace chromem::io
