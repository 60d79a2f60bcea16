// Validity of modal formulas at bases of a finite universe, relative to a
// family of agent relations.
//
//   atom p        holds at B  iff  p is in the closure of B
//   bot           holds at B  iff  B is inconsistent
//   f -> g        holds at B  iff  every C >= B validating f validates g
//   [a]f          holds at B  iff  f holds at every C with R_a(B, C)
//
// "Every C >= B" ranges over the universe's bases.  The cached evaluator
// computes a formula's truth set over all bases at once: implications are
// the complement of the down-closure of (f and not g).

#ifndef BES_BES_EVAL_HPP
#define BES_BES_EVAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "bes/atomic_base.hpp"
#include "bes/formula.hpp"
#include "bes/relation.hpp"

namespace bes {

/// Memoised truth sets for one relation family.
class EvalCache {
 public:
  explicit EvalCache(const RelationFamily& fam) : fam_(&fam) {}

  /// Bases at which `f` holds.  Throws std::out_of_range for atoms outside
  /// the alphabet or agents without a relation.
  const BitSet& truth_set(const Formula& f);
  bool holds(const Formula& f, BaseId b) { return truth_set(f).test(b.index); }
  /// Bases B with ctx |= f at B (every C >= B validating ctx validates f).
  BitSet consequence_set(const std::vector<Formula>& ctx, const Formula& f);

  const RelationFamily& family() const { return *fam_; }
  std::size_t size() const { return truth_.size(); }

 private:
  const RelationFamily* fam_;
  std::unordered_map<Formula, BitSet, FormulaHash> truth_;
};

/// With a cache the truth set is computed once; without one the clauses are
/// evaluated pointwise by direct recursion over supersets and successors.
bool bes_holds(const Formula& f, BaseId b, const RelationFamily& fam, EvalCache* cache = nullptr);

/// Empty ctx delegates to bes_holds.
bool bes_consequence(const std::vector<Formula>& ctx, const Formula& f, BaseId b, const RelationFamily& fam,
                     EvalCache* cache = nullptr);

struct ExplicitMode {
  RelationFamily family;
};
struct CanonicalMode {};
struct SampledMode {
  std::size_t count = 8;
  std::uint64_t seed = 1;
};
struct ExhaustiveMode {};
using ValidityMode = std::variant<ExplicitMode, CanonicalMode, SampledMode, ExhaustiveMode>;

std::string mode_name(const ValidityMode& m);

struct Counterexample {
  BaseId base;
  std::size_t family_index = 0;
  std::string family_label;
};

struct Verdict {
  bool valid = true;
  std::optional<Counterexample> counterexample;
  std::size_t families_checked = 0;
  std::size_t bases_checked = 0;
  /// Set when a sampled run could not produce the requested number of
  /// families.
  std::string note;
};

/// Families used by a mode over the given agents.
std::vector<RelationFamily> families_for(const ValidityMode& mode, const BaseSpacePtr& space,
                                         const std::vector<std::string>& agents);

/// Checks `f` at every base of the universe under every family of the mode.
/// `agents` defaults to the formula's agents (or {"a"} when it has none).
/// The counterexample is the first failing (family, base) in family order
/// then base order.
Verdict bes_valid(const Formula& f, const BaseSpacePtr& space, const ValidityMode& mode,
                  std::vector<std::string> agents = {}, std::size_t jobs = 1);

/// `VERDICT valid` or `VERDICT invalid base=<i> agent=<a,b> family=<label>`.
std::string verdict_line(const Verdict& v, const std::vector<std::string>& agents);

}  // namespace bes

#endif  // BES_BES_EVAL_HPP
