// Independent oracles and hand-rolled generators shared by the test
// binaries.  Nothing here calls the library's closure, relation checker or
// evaluator; the oracles work on plain vectors from the definitions.

#ifndef BES_TESTS_SUPPORT_HPP
#define BES_TESTS_SUPPORT_HPP

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "bes/atomic_base.hpp"
#include "bes/formula.hpp"
#include "bes/kripke.hpp"
#include "bes/relation.hpp"

namespace oracle {

using bes::AtomMask;
using bes::Formula;
using bes::RuleMask;
using bes::RuleUniverse;

using Matrix = std::vector<std::vector<bool>>;

struct Gen {
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }
  std::uint64_t bits(std::size_t width) {
    return width >= 64 ? rng() : rng() & ((std::uint64_t{1} << width) - 1);
  }
  std::mt19937_64 rng;
};

inline Formula gen_formula(Gen& g, const std::vector<std::string>& atoms, const std::vector<std::string>& agents,
                           std::size_t depth) {
  if (depth == 0 || g.coin(0.25)) {
    if (g.coin(0.15)) return Formula::bottom();
    return Formula::atom(atoms[g.below(atoms.size())]);
  }
  const std::size_t pick = agents.empty() ? 0 : g.below(3);
  if (pick == 2) return Formula::know(agents[g.below(agents.size())], gen_formula(g, atoms, agents, depth - 1));
  auto l = gen_formula(g, atoms, agents, depth - 1);
  return Formula::implies(l, gen_formula(g, atoms, agents, depth - 1));
}

inline std::size_t node_count(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Bottom:
      return 1;
    case Formula::Kind::Implies:
      return 1 + node_count(f.lhs()) + node_count(f.rhs());
    case Formula::Kind::Know:
      return 1 + node_count(f.body());
  }
  return 0;
}

inline bool is_subtree(const Formula& s, const Formula& f) {
  if (s == f) return true;
  switch (f.kind()) {
    case Formula::Kind::Implies:
      return is_subtree(s, f.lhs()) || is_subtree(s, f.rhs());
    case Formula::Kind::Know:
      return is_subtree(s, f.body());
    default:
      return false;
  }
}

// Smallest closed set, by intersecting every closed subset of the alphabet.
inline AtomMask closure(const RuleUniverse& u, RuleMask base) {
  const std::size_t n = u.alphabet().size();
  AtomMask least = (AtomMask{1} << n) - 1;
  for (AtomMask s = 0; s < (AtomMask{1} << n); ++s) {
    bool closed = true;
    for (std::size_t r = 0; r < u.rule_count() && closed; ++r) {
      if (!((base >> r) & 1U)) continue;
      const auto& rule = u.rules()[r];
      if ((rule.premises & ~s) == 0 && !((s >> rule.conclusion) & 1U)) closed = false;
    }
    if (closed) least &= s;
  }
  return least;
}

inline bool inconsistent(const RuleUniverse& u, RuleMask base) {
  return closure(u, base) == (AtomMask{1} << u.alphabet().size()) - 1;
}

inline bool maxcons(const RuleUniverse& u, RuleMask base) {
  if (inconsistent(u, base)) return false;
  for (std::size_t r = 0; r < u.rule_count(); ++r)
    if (!((base >> r) & 1U) && !inconsistent(u, base | (RuleMask{1} << r))) return false;
  return true;
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = true;
  return m;
}

inline Matrix to_matrix(const bes::Relation& r) {
  Matrix m(r.size(), std::vector<bool>(r.size(), false));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) m[i][j] = r.related(i, j);
  return m;
}

// Naive fixpoint: add reflexive pairs, then apply transitivity and the
// Euclidean rule until nothing changes.
inline Matrix s5_fixpoint(const std::vector<bes::BasePair>& seed, std::size_t n) {
  Matrix m = identity(n);
  for (auto [x, y] : seed) m[x][y] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (!m[x][y]) continue;
        for (std::size_t z = 0; z < n; ++z) {
          if (m[y][z] && !m[x][z]) m[x][z] = changed = true;
          if (m[x][z] && !m[y][z]) m[y][z] = changed = true;
        }
      }
  }
  return m;
}

inline bool reflexive(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!m[i][i]) return false;
  return true;
}

inline bool transitive(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (m[x][y] && m[y][z] && !m[x][z]) return false;
  return true;
}

inline bool euclidean(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (m[x][y] && m[x][z] && !m[y][z]) return false;
  return true;
}

inline bool subset(std::uint64_t a, std::uint64_t b) { return (a & ~b) == 0; }

// Names of the failed conditions, checked pairwise from the definitions.
inline std::set<std::string> failed_conditions(const RuleUniverse& u, const Matrix& m) {
  const std::size_t n = m.size();
  std::vector<bool> inc(n);
  for (std::size_t b = 0; b < n; ++b) inc[b] = inconsistent(u, b);
  std::set<std::string> out;
  if (!reflexive(m)) out.insert("reflexive");
  if (!transitive(m)) out.insert("transitive");
  if (!euclidean(m)) out.insert("euclidean");
  for (std::size_t b = 0; b < n; ++b) {
    bool some_inc = false;
    for (std::size_t c = 0; c < n; ++c) {
      if (!m[b][c]) continue;
      some_inc = some_inc || inc[c];
      if (inc[b] && !inc[c]) out.insert("a");
      if (!inc[b] && inc[c]) out.insert("b");
    }
    if (inc[b] && !some_inc) out.insert("a");
  }
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t c = 0; c < n; ++c) {
      if (!m[b][c]) continue;
      for (std::size_t d = 0; d < n; ++d) {
        if (subset(b, d) && !inc[d]) {
          bool found = false;
          for (std::size_t e = 0; e < n && !found; ++e) found = subset(c, e) && m[d][e];
          if (!found) out.insert("c");
        }
        if (subset(d, b) && !inc[c]) {
          bool found = false;
          for (std::size_t e = 0; e < n && !found; ++e) found = subset(e, c) && m[d][e];
          if (!found) out.insert("d");
        }
      }
    }
  return out;
}

// Pointwise validity straight from the clauses.
struct Evaluator {
  Evaluator(const RuleUniverse& u, std::map<std::string, Matrix> rel) : u(u), rel(std::move(rel)) {
    n = std::size_t{1} << u.rule_count();
    for (std::size_t b = 0; b < n; ++b) clo.push_back(closure(u, b));
  }

  const RuleUniverse& u;
  std::map<std::string, Matrix> rel;
  std::size_t n = 0;
  std::vector<AtomMask> clo;
  mutable std::unordered_map<Formula, std::vector<signed char>, bes::FormulaHash> memo;

  bool holds(const Formula& f, std::size_t b) const {
    auto& slot = memo.try_emplace(f, n, -1).first->second;
    if (slot[b] < 0) slot[b] = compute(f, b);
    return slot[b];
  }

  bool compute(const Formula& f, std::size_t b) const {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        auto i = u.alphabet().index_of(bes::Atom{f.name()});
        return i && ((clo[b] >> *i) & 1U);
      }
      case Formula::Kind::Bottom:
        return clo[b] == (AtomMask{1} << u.alphabet().size()) - 1;
      case Formula::Kind::Implies:
        for (std::size_t c = 0; c < n; ++c)
          if (subset(b, c) && holds(f.lhs(), c) && !holds(f.rhs(), c)) return false;
        return true;
      case Formula::Kind::Know: {
        const Matrix& m = rel.at(f.name());
        for (std::size_t c = 0; c < n; ++c)
          if (m[b][c] && !holds(f.body(), c)) return false;
        return true;
      }
    }
    return false;
  }
};

// Classical truth of a modal-free formula under a valuation.
inline bool truth_table(const Formula& f, const std::set<std::string>& true_atoms) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return true_atoms.count(f.name()) > 0;
    case Formula::Kind::Bottom:
      return false;
    case Formula::Kind::Implies:
      return !truth_table(f.lhs(), true_atoms) || truth_table(f.rhs(), true_atoms);
    default:
      throw std::logic_error("modal formula in truth_table");
  }
}

inline std::uint64_t bell(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> t(n + 1);
  t[0] = {1};
  for (std::size_t i = 1; i <= n; ++i) {
    t[i].push_back(t[i - 1].back());
    for (std::size_t j = 0; j < i; ++j) t[i].push_back(t[i].back() + t[i - 1][j]);
  }
  return t[n][0];
}

}  // namespace oracle

#endif  // BES_TESTS_SUPPORT_HPP
