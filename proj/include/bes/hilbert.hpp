// Hilbert-style proof checking for multi-agent S5.

#ifndef BES_HILBERT_HPP
#define BES_HILBERT_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "bes/formula.hpp"

namespace bes {

enum class AxiomTag { Ax1, Ax2, Ax3, AxK, AxT, Ax4, Ax5 };

std::string tag_name(AxiomTag t);
std::optional<AxiomTag> parse_tag(const std::string& s);

/// Every schema `f` instantiates.  Negation is `x -> bot`, so Ax3 and Ax5
/// match implications into bot.
std::set<AxiomTag> match_axiom(const Formula& f);

struct ByAxiom {
  AxiomTag tag;
};
/// Step indices are 1-based, as in proof files.
struct ByMP {
  std::size_t minor;  // proves A
  std::size_t major;  // proves A -> B
};
struct ByNec {
  std::size_t step;
  std::string agent;
};
struct ByPremise {};

using Justification = std::variant<ByAxiom, ByMP, ByNec, ByPremise>;

std::string justification_to_string(const Justification& j);

struct ProofStep {
  Formula formula;
  Justification why;
};

struct Proof {
  std::vector<Formula> premises;
  std::vector<ProofStep> steps;
  const Formula& conclusion() const { return steps.back().formula; }
};

struct ProofCheck {
  bool ok = true;
  std::size_t step = 0;  // 1-based; 0 when the proof itself is malformed
  std::string reason;
};

/// Nec is only accepted in proofs without premises.
ProofCheck check_proof(const Proof& pf);

/// Parses the proof file format:
///   premise: <formula>
///   1. <formula> ; Ax1
///   2. <formula> ; MP 1 3
///   3. <formula> ; Nec 2 a
///   4. <formula> ; Premise
/// Steps must be numbered 1, 2, ... in order.  `#` starts a comment.
/// Throws ParseError with the offending line.
Proof parse_proof(const std::string& text);
std::string print_proof(const Proof& pf);

}  // namespace bes

#endif  // BES_HILBERT_HPP
