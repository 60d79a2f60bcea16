// Universally quantified meta-properties of base validity, checked over
// every base of a universe, a list of relation families and a formula pool.

#ifndef BES_LEMMA_SUITE_HPP
#define BES_LEMMA_SUITE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bes/atomic_base.hpp"
#include "bes/formula.hpp"
#include "bes/relation.hpp"

namespace bes {

/// An axiom instance `premise -> conclusion`.  The suite checks both the
/// formula's validity and the consequence premise |= conclusion.
struct AxiomInstance {
  std::string schema;  // "1", "2", "3", "K", "T", "4", "5"
  Formula premise;
  Formula conclusion;
  Formula formula() const { return Formula::implies(premise, conclusion); }
};

struct FormulaPool {
  /// Building blocks substituted into the axiom schemas.
  std::vector<Formula> blocks;
  std::vector<AxiomInstance> axioms;
  std::vector<Formula> random;
  /// axioms, random formulas and blocks, plus all their subformulas,
  /// without duplicates, in first-seen order.
  std::vector<Formula> closure() const;
};

/// Every axiom schema instantiated with blocks {x, y, x -> y, [a]x, bot}
/// (x, y the first two alphabet atoms, a the first agent; duplicates dropped
/// for one-atom alphabets) for every agent, plus `random_count` seeded
/// random formulas of depth <= 3 over the alphabet and agents.
FormulaPool make_pool(const RuleUniverse& u, const std::vector<std::string>& agents,
                      std::size_t random_count = 100, std::uint64_t seed = 7);

/// Seeded random formula of depth <= max_depth.
Formula random_formula(std::uint64_t seed, const std::vector<Atom>& atoms, const std::vector<std::string>& agents,
                       std::size_t max_depth);

struct Violation {
  std::string property;
  std::string family;
  std::string formula;
  std::vector<std::uint64_t> bases;
  std::string detail;
};

struct LemmaReport {
  /// property -> number of (family, formula) checks performed, in property
  /// order of first use.
  std::vector<std::pair<std::string, std::size_t>> checks;
  std::map<std::string, std::size_t> violation_counts;
  /// At most `kMaxStoredViolations` per property are kept with witnesses.
  std::vector<Violation> violations;
  static constexpr std::size_t kMaxStoredViolations = 20;

  std::size_t total_violations() const;
  bool passed() const { return total_violations() == 0; }
  /// Machine-readable "SUITE property=<p> checks=<n> violations=<k>" lines
  /// followed by "SUITE total checks=<n> violations=<k>".
  std::string summary_lines() const;
  std::string to_string() const;
};

/// Properties checked, per family and pool formula f (over all bases):
///   monotonicity        f holds on an up-closed set of bases
///   ex-falso            f holds at every inconsistent base
///   maxcons-consistent  no maximally consistent base validates bot
///   maxcons-classical   at maximally consistent B, (g -> h) holds iff g fails or h holds
///   excluded-middle     at maximally consistent B, f or ~f holds
///   maxcons-refutation  if f fails at B it fails at some maximally consistent C >= B
///   maxcons-validity    f holding at every maximally consistent base holds everywhere
///   axiom-<s>           each axiom instance is valid and its premise entails its conclusion
///   mp                  (f -> g) and f hold at B implies g holds at B
///   nec                 f valid implies [a]f valid for each agent
/// Families are expected to pass check_modal_relation.
LemmaReport run_lemma_suite(const BaseSpacePtr& space, const std::vector<RelationFamily>& fams,
                            const FormulaPool& pool, std::size_t jobs = 1);

}  // namespace bes

#endif  // BES_LEMMA_SUITE_HPP
