#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chromem/condition.hpp"
#include "chromem/consistency.hpp"
#include "chromem/skeleton.hpp"
#include "chromem/support.hpp"

namespace chromem {

struct ClassifiedSupport {
  CycleSupport support;
  Outcome value;
};

// Every cycle support of `m` with its value under `cond`.
std::vector<ClassifiedSupport> classify_supports(const Skeleton& m, const Condition& cond,
                                                 std::size_t cap = kDefaultSupportCap);

// Classified supports indexed for union lookups.
class SupportValues {
public:
  SupportValues(Skeleton m, std::vector<ClassifiedSupport> classified);

  const Skeleton& skeleton() const { return m_; }
  std::size_t size() const { return supports_.size(); }
  const CycleSupport& support(std::size_t i) const { return supports_[i]; }
  Outcome value(std::size_t i) const { return values_[i]; }
  const TransitionSet& bits(std::size_t i) const { return bits_[i]; }
  bool share_state(std::size_t i, std::size_t j) const;
  std::optional<std::size_t> find(const TransitionSet& s) const;
  std::optional<std::size_t> find(const CycleSupport& s) const;
  // Index of a known support; throws InputError otherwise.
  std::size_t index_of(const CycleSupport& s) const;

private:
  Skeleton m_;
  std::vector<CycleSupport> supports_;
  std::vector<Outcome> values_;
  std::vector<TransitionSet> bits_;
  std::vector<std::vector<std::uint64_t>> states_;
  std::unordered_map<TransitionSet, std::size_t, TransitionSetHash> index_;
};

// Canonically least support linking g1 and g2 without changing either value
// when adjoined; requires opposite values.
std::optional<CycleSupport> competing_witness(const CycleSupport& g1, const CycleSupport& g2,
                                              const SupportValues& values);

enum class Dominant { First, Second };

// Which of g1, g2 gives its value to g1 ∪ g2 ∪ zeta; zeta must be a witness.
Dominant dominates(const CycleSupport& g1, const CycleSupport& g2, const CycleSupport& zeta,
                   const SupportValues& values);

struct CycleClass {
  std::size_t representative = 0;  // canonically least member
  Outcome value = Outcome::Win;
  std::vector<std::size_t> members;  // support indices
};

struct CycleClassTable {
  SupportValues values;
  std::vector<std::size_t> class_of;  // per support
  std::vector<CycleClass> classes;    // ordered by representative
  std::vector<std::vector<bool>> competes;
  std::vector<std::vector<bool>> dominates;  // dominates[a][b]: class a dominates class b
  std::vector<std::vector<bool>> below;      // below[a][b]: a ⊲ b

  // Covering pairs (a, b) of ⊲, a below b.
  std::vector<std::pair<std::size_t, std::size_t>> hasse() const;
  std::size_t class_of_support(const CycleSupport& s) const { return class_of[values.index_of(s)]; }
};

// Competition, domination, the strict preorder and its ≃-quotient.
// Throws InternalError when the quotient order is not a strict order.
CycleClassTable build_cycle_preorder(SupportValues values);
CycleClassTable build_cycle_preorder(const Skeleton& m, const Condition& cond,
                                     std::size_t cap = kDefaultSupportCap);

// Layered assignment: smallest number of the class's parity above every class below it.
std::vector<unsigned> linear_extension(const CycleClassTable& table);
// Empty when valid (parity matches value, strictly increasing along ⊲), else the reason.
std::optional<std::string> validate_extension(const CycleClassTable& table, const std::vector<unsigned>& pgamma);

// p(t) = min pGamma over classes of supports containing t. Transitions on no
// cycle get the least pGamma among supports reachable from their target when
// `allow_transient`, and are an error otherwise.
ParityAutomaton assign_priorities(const CycleClassTable& table, const std::vector<unsigned>& pgamma,
                                  bool allow_transient = false);

struct SynthesisCheck {
  Verdict verdict = Verdict::Pass;
  std::size_t supports_checked = 0;
  std::size_t samples_checked = 0;
  std::optional<CycleSupport> support_witness;
  std::optional<Lasso> lasso_witness;
  std::string description;
};

// Exhaustive parity law over all cycle supports of `out`, then `samples`
// random lassos compared against the condition oracle.
SynthesisCheck verify_synthesis(const ParityAutomaton& out, const Condition& cond, std::size_t samples,
                                std::uint64_t seed, std::size_t cap = kDefaultSupportCap);

struct SynthesisOptions {
  std::size_t cap = kDefaultSupportCap;
  bool allow_transient = false;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

struct SynthesisResult {
  ParityAutomaton automaton;
  CycleClassTable table;
  std::vector<unsigned> pgamma;
  ConsistencyReport prefix_independence;
  ConsistencyReport cycle_consistency;
  SynthesisCheck check;
};

// Parity automaton for `cond` on top of (right-congruence automaton) x m.
// Stage failures throw StageError naming the stage and its witness.
SynthesisResult synthesize(const Condition& cond, const Skeleton& m, const SynthesisOptions& options = {});

}  // namespace chromem
