#include "bes/atomic_base.hpp"

#include <algorithm>
#include <bit>

namespace bes {

Alphabet::Alphabet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("alphabet must not be empty");
  if (atoms_.size() > 64) throw std::invalid_argument("alphabet is limited to 64 atoms");
  for (const Atom& a : atoms_)
    if (!is_identifier(a.name)) throw std::invalid_argument("invalid atom name '" + a.name + "'");
  std::sort(atoms_.begin(), atoms_.end());
  if (std::adjacent_find(atoms_.begin(), atoms_.end()) != atoms_.end())
    throw std::invalid_argument("duplicate atom in alphabet");
}

std::optional<std::size_t> Alphabet::index_of(const Atom& a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

AtomMask Alphabet::full_mask() const {
  return atoms_.size() == 64 ? ~AtomMask{0} : (AtomMask{1} << atoms_.size()) - 1;
}

std::set<Atom> Alphabet::to_set(AtomMask mask) const {
  std::set<Atom> out;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if ((mask >> i) & 1U) out.insert(atoms_[i]);
  return out;
}

std::size_t RuleUniverse::rule_count_for(std::size_t atoms, std::size_t premise_cap) {
  std::size_t total = 0, binom = 1;
  for (std::size_t k = 0; k <= std::min(premise_cap, atoms); ++k) {
    total += binom;
    binom = binom * (atoms - k) / (k + 1);
  }
  return atoms * total;
}

RuleUniverse::RuleUniverse(Alphabet alphabet, std::size_t premise_cap)
    : alphabet_(std::move(alphabet)), premise_cap_(premise_cap) {
  const std::size_t n = alphabet_.size();
  if (rule_count_for(n, premise_cap) > 64)
    throw std::invalid_argument("rule universe exceeds 64 rules (" +
                                std::to_string(rule_count_for(n, premise_cap)) + ")");
  std::vector<AtomMask> premise_sets{0};
  for (std::size_t k = 1; k <= std::min(premise_cap, n); ++k) {
    // k-subsets of n atoms via Gosper's hack
    for (AtomMask s = (AtomMask{1} << k) - 1; s <= alphabet_.full_mask() && s != 0;) {
      premise_sets.push_back(s);
      const AtomMask c = s & (~s + 1);
      const AtomMask r = s + c;
      if (r == 0) break;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  std::sort(premise_sets.begin(), premise_sets.end());
  for (std::size_t c = 0; c < n; ++c)
    for (AtomMask prem : premise_sets) rules_.push_back({prem, c});
}

RuleMask RuleUniverse::all_rules() const {
  return rules_.size() == 64 ? ~RuleMask{0} : (RuleMask{1} << rules_.size()) - 1;
}

std::optional<std::size_t> RuleUniverse::find_rule(const BaseRule& r) const {
  // Rules with the same conclusion are contiguous and sorted by premise mask.
  auto it = std::lower_bound(rules_.begin(), rules_.end(), r, [](const BaseRule& a, const BaseRule& b) {
    return a.conclusion != b.conclusion ? a.conclusion < b.conclusion : a.premises < b.premises;
  });
  if (it == rules_.end() || !(*it == r)) return std::nullopt;
  return static_cast<std::size_t>(it - rules_.begin());
}

std::size_t RuleUniverse::rule_index(const std::vector<Atom>& premises, const Atom& conclusion) const {
  BaseRule r;
  auto c = alphabet_.index_of(conclusion);
  if (!c) throw std::out_of_range("atom '" + conclusion.name + "' is not in the alphabet");
  r.conclusion = *c;
  for (const Atom& p : premises) {
    auto i = alphabet_.index_of(p);
    if (!i) throw std::out_of_range("atom '" + p.name + "' is not in the alphabet");
    r.premises |= AtomMask{1} << *i;
  }
  auto idx = find_rule(r);
  if (!idx) {
    std::string text;
    for (const Atom& p : premises) text += p.name + " ";
    throw std::out_of_range("rule '" + text + "=> " + conclusion.name + "' is not in the universe (premise cap " +
                            std::to_string(premise_cap_) + ")");
  }
  return *idx;
}

AtomMask RuleUniverse::closure(RuleMask base) const {
  AtomMask derived = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (RuleMask rest = base; rest; rest &= rest - 1) {
      const BaseRule& r = rules_[static_cast<std::size_t>(std::countr_zero(rest))];
      const AtomMask bit = AtomMask{1} << r.conclusion;
      if (!(derived & bit) && (r.premises & ~derived) == 0) {
        derived |= bit;
        changed = true;
      }
    }
  }
  return derived;
}

std::string RuleUniverse::rule_to_string(std::size_t rule) const {
  const BaseRule& r = rules_.at(rule);
  std::string out;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if ((r.premises >> i) & 1U) {
      out += alphabet_[i].name;
      out += ' ';
    }
  }
  return out + "=> " + alphabet_[r.conclusion].name;
}

std::string RuleUniverse::base_to_string(RuleMask base) const {
  std::string out = "{";
  bool first = true;
  for (RuleMask rest = base; rest; rest &= rest - 1) {
    if (!first) out += ", ";
    first = false;
    out += rule_to_string(static_cast<std::size_t>(std::countr_zero(rest)));
  }
  return out + "}";
}

UniversePtr make_universe(const std::vector<std::string>& atoms, std::size_t premise_cap) {
  std::vector<Atom> as;
  for (const auto& a : atoms) as.push_back(Atom{a});
  return std::make_shared<const RuleUniverse>(Alphabet(std::move(as)), premise_cap);
}

Base::Base(UniversePtr universe, RuleMask members) : universe_(std::move(universe)), members_(members) {
  if (!universe_) throw std::invalid_argument("base needs a universe");
  if (members_ & ~universe_->all_rules()) throw std::out_of_range("base mentions rules outside its universe");
}

Base Base::from_rules(UniversePtr universe, const std::vector<std::size_t>& rules) {
  RuleMask m = 0;
  for (std::size_t r : rules) {
    if (r >= universe->rule_count()) throw std::out_of_range("rule index out of range");
    m |= RuleMask{1} << r;
  }
  return Base(std::move(universe), m);
}

std::size_t Base::size() const { return static_cast<std::size_t>(std::popcount(members_)); }

std::vector<std::size_t> Base::rule_indices() const {
  std::vector<std::size_t> out;
  for (RuleMask rest = members_; rest; rest &= rest - 1)
    out.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
  return out;
}

std::set<Atom> closure(const Base& b) { return b.universe()->alphabet().to_set(b.universe()->closure(b.members())); }

bool proves_atom(const Base& b, const Atom& p) {
  auto i = b.universe()->alphabet().index_of(p);
  if (!i) throw std::out_of_range("atom '" + p.name + "' is not in the alphabet");
  return (b.universe()->closure(b.members()) >> *i) & 1U;
}

bool is_inconsistent(const Base& b) { return b.universe()->is_inconsistent(b.members()); }

bool is_maximally_consistent(const Base& b) {
  const RuleUniverse& u = *b.universe();
  if (u.is_inconsistent(b.members())) return false;
  for (std::size_t r = 0; r < u.rule_count(); ++r) {
    if (b.contains(r)) continue;
    if (!u.is_inconsistent(b.members() | (RuleMask{1} << r))) return false;
  }
  return true;
}

BaseRange enumerate_bases(const UniversePtr& u, std::size_t hard_cap) {
  if (u->rule_count() > hard_cap)
    throw UniverseTooLarge("universe has " + std::to_string(u->rule_count()) +
                           " rules; enumeration is capped at " + std::to_string(hard_cap));
  return BaseRange(u, std::uint64_t{1} << u->rule_count());
}

Base extend_preserving(const Base& b, const BasePredicate& keep) {
  Base cur = b;
  for (std::size_t r = 0; r < cur.universe()->rule_count(); ++r) {
    if (cur.contains(r)) continue;
    Base next = cur.with(r);
    if (keep(next)) cur = std::move(next);
  }
  return cur;
}

std::optional<Base> exhaustive_extension(const Base& b, const BasePredicate& keep, std::size_t hard_cap) {
  const UniversePtr& u = b.universe();
  if (u->rule_count() > hard_cap)
    throw UniverseTooLarge("exhaustive extension over " + std::to_string(u->rule_count()) + " rules");
  std::optional<Base> found;
  const std::uint64_t limit = std::uint64_t{1} << u->rule_count();
  for (std::uint64_t s = b.members(); s < limit && !found; s = (s + 1) | b.members()) {
    Base cand(u, s);
    if (keep(cand) && is_maximally_consistent(cand)) found = cand;
  }
  return found;
}

BaseSpace::BaseSpace(UniversePtr u, std::size_t hard_cap) : universe_(std::move(u)) {
  const std::uint64_t n = enumerate_bases(universe_, hard_cap).size();
  closures_.resize(n);
  inconsistent_ = BitSet(n);
  const AtomMask full = universe_->alphabet().full_mask();
  for (std::uint64_t b = 0; b < n; ++b) {
    closures_[b] = universe_->closure(b);
    if (closures_[b] == full) inconsistent_.set(b);
  }
  consistent_ = ~inconsistent_;
  maxcons_ = BitSet(n);
  const std::size_t k = universe_->rule_count();
  consistent_.for_each([&](std::size_t b) {
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t bit = std::size_t{1} << r;
      if (!(b & bit) && !inconsistent_.test(b | bit)) return;
    }
    maxcons_.set(b);
  });
}

BitSet BaseSpace::proving(std::size_t atom) const {
  BitSet out(size());
  for (std::size_t b = 0; b < size(); ++b)
    if ((closures_[b] >> atom) & 1U) out.set(b);
  return out;
}

}  // namespace bes
