// Modal formulas over atoms, falsum, implication and agent-indexed
// knowledge operators.
//
// Formulas are immutable trees with shared children.  Negation is not a
// node of its own: ~f is Implies(f, Bottom).  Structural equality and a
// precomputed structural hash make formulas usable as cache keys.

#ifndef BES_FORMULA_HPP
#define BES_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bes {

/// Identifier of an atomic proposition.  Atoms are ordered by name.
struct Atom {
  std::string name;
  auto operator<=>(const Atom&) const = default;
};

/// Identifier of an agent.
struct Agent {
  std::string name;
  auto operator<=>(const Agent&) const = default;
};

/// True iff `s` matches [a-z][a-z0-9_]* and is not the reserved word `bot`.
bool is_identifier(std::string_view s);

class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Bottom, Implies, Know };

  static Formula atom(std::string name);
  static Formula atom(const Atom& a) { return atom(a.name); }
  static Formula bottom();
  static Formula implies(Formula lhs, Formula rhs);
  static Formula know(std::string agent, Formula body);
  static Formula know(const Agent& a, Formula body) { return know(a.name, std::move(body)); }
  static Formula negation(Formula f) { return implies(std::move(f), bottom()); }

  Kind kind() const { return node_->kind; }
  bool is_atom() const { return kind() == Kind::Atom; }
  bool is_bottom() const { return kind() == Kind::Bottom; }
  bool is_implies() const { return kind() == Kind::Implies; }
  bool is_know() const { return kind() == Kind::Know; }
  /// Implies(x, Bottom).
  bool is_negation() const { return is_implies() && rhs().is_bottom(); }

  /// Atom name for atoms, agent name for knowledge formulas, empty otherwise.
  const std::string& name() const { return node_->name; }
  const Formula& lhs() const { return *node_->left; }
  const Formula& rhs() const { return *node_->right; }
  /// Operand of a knowledge formula.
  const Formula& body() const { return *node_->left; }

  std::size_t hash() const { return node_->hash; }
  /// Number of nodes in the tree.
  std::size_t size() const { return node_->size; }
  std::size_t depth() const { return node_->depth; }

  bool operator==(const Formula& other) const;
  /// Total order: by kind, then name, then children.  Used for
  /// deterministic containers.
  std::strong_ordering operator<=>(const Formula& other) const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::unique_ptr<const Formula> left;
    std::unique_ptr<const Formula> right;
    std::size_t hash = 0;
    std::size_t size = 1;
    std::size_t depth = 0;
  };

  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Kind kind, std::string name, const Formula* l, const Formula* r);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parses the concrete syntax:
///
///   formula := imp
///   imp     := unary ("->" imp)?
///   unary   := "~" unary | "[" ident "]" unary | "K{" ident "}" unary
///            | "bot" | ident | "(" formula ")"
///
/// `->` associates to the right and `~f` becomes `f -> bot`.
/// Throws ParseError with 1-based line and column.
Formula parse_formula(std::string_view text);

/// Canonical text with minimal parentheses.  Implications into `bot` are
/// printed with `~`, so `(p -> bot) -> bot` prints as `~~p`.
std::string print_formula(const Formula& f);

/// Like print_formula but every implication nested on the right of another
/// is parenthesised: "p -> (q -> r)".  Parses back to the same formula.
std::string print_formula_bracketed(const Formula& f);

/// Constructor-style dump, e.g. Implies(Atom(p), Bottom).
std::string dump_formula(const Formula& f);

/// Post-order list of the distinct subformulas of `f`; children appear
/// before their parents.
std::vector<Formula> subformulas(const Formula& f);

std::set<Atom> atoms_of(const Formula& f);
std::set<Agent> agents_of(const Formula& f);

/// `n` pairwise distinct atoms q0, q1, ... skipping any name in `avoid`.
std::vector<Atom> fresh_atoms(std::size_t n, const std::set<Atom>& avoid);

}  // namespace bes

#endif  // BES_FORMULA_HPP
