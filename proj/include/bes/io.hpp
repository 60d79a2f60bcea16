// Text formats for rule files, relation files and Kripke model files.
//
// Rule file:      atoms: p q r / premise_cap: 1 / "p q => r" / "=> r"
// Relation file:  agent: a / "i j" pairs of BaseIds / "block: i j k"
//                 (every pair inside the block, used for equivalence
//                 relations with large classes)
// Model file:     worlds: w v / agent a: w v, v w / val p: w
// All formats take `#` comments.  Parse failures throw ParseError with the
// offending line.

#ifndef BES_IO_HPP
#define BES_IO_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "bes/atomic_base.hpp"
#include "bes/formula.hpp"
#include "bes/kripke.hpp"
#include "bes/relation.hpp"

namespace bes {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

struct RuleFile {
  UniversePtr universe;
  RuleMask members = 0;
  Base base() const { return Base(universe, members); }
};

/// The `atoms:` header defines the universe (with `premise_cap:`, default
/// 1).  Without it `fallback` is used and must be non-null.
RuleFile parse_rule_file(const std::string& text, const UniversePtr& fallback = nullptr);
std::string write_rule_file(const RuleUniverse& u, RuleMask members);
std::string write_universe_file(const RuleUniverse& u);

/// `n` is the number of bases; ids at or above it are rejected.
std::map<std::string, Relation> parse_relation_file(const std::string& text, std::size_t n);
/// Equivalence relations are written as blocks, others as pairs.
std::string write_relation_file(const RelationFamily& fam);

KripkeModel parse_model_file(const std::string& text);
std::string write_model_file(const KripkeModel& m);

}  // namespace bes

#endif  // BES_IO_HPP
