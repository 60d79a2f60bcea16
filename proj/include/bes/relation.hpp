// Agent-indexed relations over the bases of a universe and the S5-modal
// relation conditions.
//
// A Relation stores, for every base, an index into a table of distinct
// successor sets.  Equivalence relations therefore cost one bitset per
// class, and the condition checker works on distinct successor sets rather
// than on individual bases.

#ifndef BES_RELATION_HPP
#define BES_RELATION_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bes/atomic_base.hpp"
#include "bes/bitset.hpp"

namespace bes {

using BasePair = std::pair<std::uint64_t, std::uint64_t>;

class Relation {
 public:
  /// Empty relation over `n` bases.
  explicit Relation(std::size_t n = 0);

  static Relation identity(std::size_t n);
  static Relation from_pairs(std::size_t n, const std::vector<BasePair>& pairs);
  /// rows[i] = successors of base i.
  static Relation from_rows(const std::vector<BitSet>& rows);
  /// The equivalence relation whose classes are the bases sharing a label.
  static Relation from_partition(const std::vector<std::uint32_t>& label);

  std::size_t size() const { return row_of_.size(); }
  bool related(std::uint64_t from, std::uint64_t to) const { return rows_[row_of_[from]].test(to); }
  const BitSet& successors(std::uint64_t from) const { return rows_[row_of_[from]]; }

  /// Distinct successor sets, numbered in order of first use by base index.
  const std::vector<BitSet>& rows() const { return rows_; }
  std::size_t row_of(std::uint64_t base) const { return row_of_[base]; }

  std::size_t pair_count() const;
  std::vector<BasePair> pairs() const;
  /// Classes of an equivalence relation, each sorted, ordered by least
  /// member.  Empty if the relation is not an equivalence relation.
  std::vector<std::vector<std::uint64_t>> equivalence_classes() const;

  bool operator==(const Relation& o) const { return row_of_ == o.row_of_ && rows_ == o.rows_; }

 private:
  std::vector<std::uint32_t> row_of_;
  std::vector<BitSet> rows_;
};

bool is_reflexive(const Relation& r);
bool is_symmetric(const Relation& r);
bool is_transitive(const Relation& r);
bool is_euclidean(const Relation& r);

/// Least relation containing `seed` and the identity on `n` bases that is
/// closed under transitivity and the Euclidean rule.
Relation s5_closure(const std::vector<BasePair>& seed, std::size_t n);

struct RelationFamily {
  BaseSpacePtr space;
  std::map<std::string, Relation> per_agent;
  std::string label;

  std::vector<std::string> agents() const;
  const Relation& relation(const std::string& agent) const;
  bool operator==(const RelationFamily& o) const { return per_agent == o.per_agent; }
};

/// Outcome of one condition for one agent.  Witness bases follow the
/// condition's quantifier order: (b) for reflexivity and (a)-without-
/// successor; (b, c) for a successor violating (a)/(b); (x, y, z) for the
/// frame rules; (b, c, d) for (c) and (d).
struct ConditionResult {
  std::string condition;
  bool passed = true;
  std::vector<std::uint64_t> witness;
  std::string detail;
};

struct AgentCheck {
  std::string agent;
  std::vector<ConditionResult> conditions;
  bool passed() const;
  const ConditionResult& condition(const std::string& name) const;
};

struct ModalCheckReport {
  std::vector<AgentCheck> agents;
  bool passed() const;
  /// Labels "agent:condition" of every failed condition.
  std::vector<std::string> failures() const;
  std::string to_string() const;
};

/// Conditions (a)-(d) plus reflexivity, transitivity and the Euclidean
/// property, with (c)/(d) quantifying over sub/supersets in the universe.
std::vector<ConditionResult> check_relation(const BaseSpace& space, const Relation& r);
ModalCheckReport check_modal_relation(const RelationFamily& fam, std::size_t jobs = 1);

RelationFamily identity_family(const BaseSpacePtr& space, const std::vector<std::string>& agents);
/// consistent x consistent  union  inconsistent x inconsistent, per agent.
RelationFamily two_block_family(const BaseSpacePtr& space, const std::vector<std::string>& agents);

struct SampleOutcome {
  std::vector<RelationFamily> families;
  std::size_t attempts = 0;
  bool exhausted = false;
};

/// Rejection sampling: per agent, random pairs of consistent bases closed
/// under s5_closure plus the inconsistent block; families failing
/// check_modal_relation are discarded.  Deterministic for a given seed.
SampleOutcome sample_families(const BaseSpacePtr& space, const std::vector<std::string>& agents,
                              std::size_t count, std::uint64_t seed, std::size_t budget = 10000);

/// Every family whose relations all pass check_relation.  Requires
/// |bases|^2 * |agents| <= 20.
std::vector<RelationFamily> enumerate_families(const BaseSpacePtr& space,
                                               const std::vector<std::string>& agents);

}  // namespace bes

#endif  // BES_RELATION_HPP
