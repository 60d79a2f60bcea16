// Turns a Kripke countermodel into world bases and a relation family over
// an enumerated rule universe, then checks the family's modal conditions
// and the world/base correspondence.

#ifndef BES_BRIDGE_HPP
#define BES_BRIDGE_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bes/atomic_base.hpp"
#include "bes/bes_eval.hpp"
#include "bes/formula.hpp"
#include "bes/kripke.hpp"
#include "bes/relation.hpp"

namespace bes {

/// Which bases rule (3a) relates.  Strict: bases whose only maximally
/// consistent proper superset is a world base.  Inclusive: bases whose only
/// maximally consistent superset is a world base, the world base included.
enum class Rule3aReading { Inclusive, Strict };

/// Which bases rule (3b) relates.  Corrected: B below a world base w, C
/// below a world base v with R_a w v, both with another maximally
/// consistent superset.  Printed: B below both w and v, C with a maximally
/// consistent superset other than the base of v.
enum class Rule3bReading { Corrected, Printed };

std::string reading_name(Rule3aReading r);
std::string reading_name(Rule3bReading r);

struct BridgeOptions {
  Rule3aReading rule_3a = Rule3aReading::Inclusive;
  Rule3bReading rule_3b = Rule3bReading::Corrected;
  std::size_t jobs = 1;
  std::size_t hard_cap = kDefaultEnumerationCap;
};

/// Adds a fresh atom q_v per world, true everywhere except at v.  Fresh
/// atoms avoid the atoms of `f` and of the model.  Throws
/// std::invalid_argument if `m` is not S5 or lacks an agent of `f`.
std::pair<KripkeModel, std::vector<Atom>> disambiguate_model(const KripkeModel& m, const Formula& f);

/// Alphabet atoms_of(f) plus the fresh atoms, premise cap 1.
UniversePtr bridge_universe(const Formula& f, const std::vector<Atom>& fresh);

/// The seed base of world w over the universe alphabet.  Throws
/// std::out_of_range if a needed rule is missing from the universe.
Base build_seed_base(std::size_t w, const KripkeModel& prime, const std::vector<Atom>& fresh, const UniversePtr& u);

/// Maximally consistent extension of `aw` not deriving q_w.
Base build_world_base(const Base& aw, const Atom& q_w);

/// Seed pairs of rules (1), (2), (3a)-(3c) per agent, closed with
/// s5_closure.
RelationFamily build_relation_family(const KripkeModel& prime, const std::vector<Base>& world_bases,
                                     const BaseSpacePtr& space, const BridgeOptions& opts = {});

struct CorrespondenceMismatch {
  std::string formula;
  std::string world;
  bool bes = false;
  bool kripke = false;
};

struct BridgeReport {
  ModalCheckReport modal;
  std::size_t correspondence_checks = 0;
  std::vector<CorrespondenceMismatch> mismatches;
  /// World bases whose closure differs from the atoms true at the world.
  std::vector<std::string> atom_mismatches;
  bool modal_passed() const { return modal.passed(); }
  bool correspondence_passed() const { return mismatches.empty() && atom_mismatches.empty(); }
  bool passed() const { return modal_passed() && correspondence_passed(); }
  std::string to_string() const;
};

struct BridgeArtifacts {
  Formula formula = Formula::bottom();
  KripkeModel original;
  KripkeModel prime;
  std::vector<Atom> fresh;  // fresh[w] is q_w
  UniversePtr universe;
  BaseSpacePtr space;
  std::vector<Base> seed_bases;
  std::vector<Base> world_bases;
  RelationFamily family;
  BridgeOptions options;
  BridgeReport report;
};

/// Checks the family's modal conditions and, for every subformula of `f`
/// and world u, that the formula holds at the base of u iff it is true at
/// u in the disambiguated model.
BridgeReport verify_bridge(const BridgeArtifacts& art, const Formula& f);

/// Whole pipeline for one model; the report is filled in.
BridgeArtifacts run_bridge(const KripkeModel& m, const Formula& f, const BridgeOptions& opts = {});

struct CounterbaseResult {
  std::optional<Countermodel> countermodel;
  std::optional<BridgeArtifacts> artifacts;
  std::optional<BaseId> base;
  /// bes_holds(f, base) evaluated without the cache is false.
  bool confirmed = false;
  std::string summary_line() const;
};

/// Countermodel search, then the bridge on the countermodel, then direct
/// evaluation of `f` at the base of the refuting world.
CounterbaseResult countermodel_to_counterbase(const Formula& f, const std::vector<std::string>& agents,
                                              std::size_t max_worlds, const BridgeOptions& opts = {});

/// model.orig, model.prime, universe.rules, base_<world>.rules,
/// relations.txt, report.txt.  Creates the directory if needed.
void write_bridge_artifacts(const BridgeArtifacts& art, const std::string& dir);

}  // namespace bes

#endif  // BES_BRIDGE_HPP
