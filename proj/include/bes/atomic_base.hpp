// Atomic base rules, bases and derivability over a finite rule universe.
//
// A rule universe fixes a finite ordered alphabet and a premise cap; its
// rules are every (premises => conclusion) with |premises| <= cap, ordered by
// conclusion (alphabet order) then by the premise set's bit pattern.  A base
// is a subset of the universe's rules and is stored as a bitmask against that
// order, so a base's identifier in the enumeration is its mask.
//
// Inconsistency is finitised: a base is inconsistent iff it derives every
// atom of the alphabet.

#ifndef BES_ATOMIC_BASE_HPP
#define BES_ATOMIC_BASE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bes/bitset.hpp"
#include "bes/formula.hpp"

namespace bes {

using AtomMask = std::uint64_t;
using RuleMask = std::uint64_t;

/// Ordinal of a base within its universe's enumeration (= its rule mask).
struct BaseId {
  std::uint64_t index = 0;
  auto operator<=>(const BaseId&) const = default;
};

/// Default limit on the number of rules of a universe whose bases are
/// enumerated (2^24 bases).
inline constexpr std::size_t kDefaultEnumerationCap = 24;

class UniverseTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Alphabet {
 public:
  /// Sorts and validates; throws std::invalid_argument on duplicates, an
  /// empty list, or more than 64 atoms.
  explicit Alphabet(std::vector<Atom> atoms);

  std::size_t size() const { return atoms_.size(); }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }
  std::optional<std::size_t> index_of(const Atom& a) const;
  AtomMask full_mask() const;
  std::set<Atom> to_set(AtomMask mask) const;
  bool operator==(const Alphabet&) const = default;

 private:
  std::vector<Atom> atoms_;
};

/// Premises and conclusion are indices into an alphabet.
struct BaseRule {
  AtomMask premises = 0;
  std::size_t conclusion = 0;
  bool operator==(const BaseRule&) const = default;
};

class RuleUniverse {
 public:
  /// Throws std::invalid_argument if the universe would have more than 64
  /// rules (bases are 64-bit masks).
  RuleUniverse(Alphabet alphabet, std::size_t premise_cap);

  /// |alphabet| * sum_{k=0..cap} C(|alphabet|, k).
  static std::size_t rule_count_for(std::size_t atoms, std::size_t premise_cap);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t premise_cap() const { return premise_cap_; }
  const std::vector<BaseRule>& rules() const { return rules_; }
  std::size_t rule_count() const { return rules_.size(); }
  RuleMask all_rules() const;

  std::optional<std::size_t> find_rule(const BaseRule& r) const;
  /// Index of `premises => conclusion` by atom names; throws
  /// std::out_of_range if the rule is not in the universe.
  std::size_t rule_index(const std::vector<Atom>& premises, const Atom& conclusion) const;

  /// Least set of atoms closed under the rules in `base`.
  AtomMask closure(RuleMask base) const;
  bool is_inconsistent(RuleMask base) const { return closure(base) == alphabet_.full_mask(); }

  /// "p q => r", "=> p".
  std::string rule_to_string(std::size_t rule) const;
  std::string base_to_string(RuleMask base) const;

  bool operator==(const RuleUniverse& o) const {
    return alphabet_ == o.alphabet_ && premise_cap_ == o.premise_cap_;
  }

 private:
  Alphabet alphabet_;
  std::size_t premise_cap_;
  std::vector<BaseRule> rules_;
};

using UniversePtr = std::shared_ptr<const RuleUniverse>;

UniversePtr make_universe(const std::vector<std::string>& atoms, std::size_t premise_cap);

class Base {
 public:
  Base(UniversePtr universe, RuleMask members);
  static Base empty(UniversePtr universe) { return Base(std::move(universe), 0); }
  static Base from_rules(UniversePtr universe, const std::vector<std::size_t>& rules);

  const UniversePtr& universe() const { return universe_; }
  RuleMask members() const { return members_; }
  BaseId id() const { return BaseId{members_}; }
  std::size_t size() const;
  bool contains(std::size_t rule) const { return (members_ >> rule) & 1U; }
  Base with(std::size_t rule) const { return Base(universe_, members_ | (RuleMask{1} << rule)); }
  bool is_subset_of(const Base& o) const { return (members_ & ~o.members_) == 0; }
  std::vector<std::size_t> rule_indices() const;
  std::string to_string() const { return universe_->base_to_string(members_); }

  bool operator==(const Base& o) const { return members_ == o.members_ && *universe_ == *o.universe_; }

 private:
  UniversePtr universe_;
  RuleMask members_;
};

std::set<Atom> closure(const Base& b);
/// Throws std::out_of_range if `p` is not in the alphabet.
bool proves_atom(const Base& b, const Atom& p);
bool is_inconsistent(const Base& b);
bool is_maximally_consistent(const Base& b);

/// All 2^|rules| bases in binary-counting order.
class BaseRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Base;
    using difference_type = std::ptrdiff_t;

    iterator(const UniversePtr* u, std::uint64_t i) : u_(u), i_(i) {}
    Base operator*() const { return Base(*u_, i_); }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    const UniversePtr* u_;
    std::uint64_t i_;
  };

  BaseRange(UniversePtr u, std::uint64_t count) : u_(std::move(u)), count_(count) {}
  iterator begin() const { return {&u_, 0}; }
  iterator end() const { return {&u_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  UniversePtr u_;
  std::uint64_t count_;
};

/// Throws UniverseTooLarge if the universe has more than `hard_cap` rules.
BaseRange enumerate_bases(const UniversePtr& u, std::size_t hard_cap = kDefaultEnumerationCap);

using BasePredicate = std::function<bool(const Base&)>;

/// Greedy extension: walks the universe rules in order and adds each one
/// whose addition keeps `keep` true.  Requires keep(b).
Base extend_preserving(const Base& b, const BasePredicate& keep);

/// Exhaustive search for a maximally consistent superset of `b` satisfying
/// `keep`; returns the one with the smallest identifier.
std::optional<Base> exhaustive_extension(const Base& b, const BasePredicate& keep,
                                         std::size_t hard_cap = kDefaultEnumerationCap);

/// Precomputed per-base tables for an enumerable universe: closures,
/// consistency and maximal consistency of every base.
class BaseSpace {
 public:
  explicit BaseSpace(UniversePtr u, std::size_t hard_cap = kDefaultEnumerationCap);

  const UniversePtr& universe() const { return universe_; }
  std::size_t rule_count() const { return universe_->rule_count(); }
  /// Number of bases, 2^|rules|.
  std::size_t size() const { return closures_.size(); }
  AtomMask closure(BaseId b) const { return closures_[b.index]; }
  bool inconsistent(BaseId b) const { return inconsistent_.test(b.index); }
  bool maximally_consistent(BaseId b) const { return maxcons_.test(b.index); }
  const BitSet& inconsistent_set() const { return inconsistent_; }
  const BitSet& consistent_set() const { return consistent_; }
  const BitSet& maxcons_set() const { return maxcons_; }
  /// Bases deriving atom `i` of the alphabet.
  BitSet proving(std::size_t atom) const;
  Base base(BaseId b) const { return Base(universe_, b.index); }

 private:
  UniversePtr universe_;
  std::vector<AtomMask> closures_;
  BitSet inconsistent_;
  BitSet consistent_;
  BitSet maxcons_;
};

using BaseSpacePtr = std::shared_ptr<const BaseSpace>;

}  // namespace bes

#endif  // BES_ATOMIC_BASE_HPP
