#include "bes/lemma_suite.hpp"

#include <random>
#include <sstream>
#include <unordered_set>

#include "bes/bes_eval.hpp"
#include "bes/parallel.hpp"

namespace bes {

namespace {

using F = Formula;

F imp(F a, F b) { return F::implies(std::move(a), std::move(b)); }
F neg(F a) { return F::negation(std::move(a)); }

Formula random_formula_rec(std::mt19937_64& rng, const std::vector<Atom>& atoms,
                           const std::vector<std::string>& agents, std::size_t depth) {
  std::uniform_int_distribution<int> leaf(0, static_cast<int>(atoms.size()));
  if (depth == 0) {
    const int i = leaf(rng);
    return i == static_cast<int>(atoms.size()) ? F::bottom() : F::atom(atoms[static_cast<std::size_t>(i)]);
  }
  std::uniform_int_distribution<int> shape(0, 5);
  std::uniform_int_distribution<std::size_t> agent(0, agents.size() - 1);
  switch (shape(rng)) {
    case 0:
      return random_formula_rec(rng, atoms, agents, 0);
    case 1:
      return neg(random_formula_rec(rng, atoms, agents, depth - 1));
    case 2:
    case 3: {
      F l = random_formula_rec(rng, atoms, agents, depth - 1);
      return imp(std::move(l), random_formula_rec(rng, atoms, agents, depth - 1));
    }
    default:
      return F::know(agents[agent(rng)], random_formula_rec(rng, atoms, agents, depth - 1));
  }
}

}  // namespace

Formula random_formula(std::uint64_t seed, const std::vector<Atom>& atoms, const std::vector<std::string>& agents,
                       std::size_t max_depth) {
  std::mt19937_64 rng(seed);
  return random_formula_rec(rng, atoms, agents, max_depth);
}

std::vector<Formula> FormulaPool::closure() const {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  auto add = [&](const Formula& f) {
    for (const Formula& g : subformulas(f))
      if (seen.insert(g).second) out.push_back(g);
  };
  for (const auto& a : axioms) add(a.formula());
  for (const auto& f : random) add(f);
  for (const auto& f : blocks) add(f);
  return out;
}

FormulaPool make_pool(const RuleUniverse& u, const std::vector<std::string>& agents, std::size_t random_count,
                      std::uint64_t seed) {
  if (agents.empty()) throw std::invalid_argument("formula pool needs at least one agent");
  const auto& atoms = u.alphabet().atoms();
  const F x = F::atom(atoms[0]);
  const F y = F::atom(atoms[std::min<std::size_t>(1, atoms.size() - 1)]);
  FormulaPool pool;
  for (F b : {x, y, imp(x, y), F::know(agents[0], x), F::bottom()}) {
    bool dup = false;
    for (const auto& have : pool.blocks) dup = dup || have == b;
    if (!dup) pool.blocks.push_back(b);
  }
  const auto& bl = pool.blocks;
  for (const F& p : bl)
    for (const F& q : bl) pool.axioms.push_back({"1", p, imp(q, p)});
  for (const F& p : bl)
    for (const F& q : bl)
      for (const F& r : bl) pool.axioms.push_back({"2", imp(p, imp(q, r)), imp(imp(p, q), imp(p, r))});
  for (const F& p : bl)
    for (const F& q : bl) pool.axioms.push_back({"3", imp(neg(p), neg(q)), imp(q, p)});
  for (const auto& a : agents) {
    for (const F& p : bl)
      for (const F& q : bl)
        pool.axioms.push_back({"K", F::know(a, imp(p, q)), imp(F::know(a, p), F::know(a, q))});
    for (const F& p : bl) pool.axioms.push_back({"T", F::know(a, p), p});
    for (const F& p : bl) pool.axioms.push_back({"4", F::know(a, p), F::know(a, F::know(a, p))});
    for (const F& p : bl) pool.axioms.push_back({"5", neg(F::know(a, p)), F::know(a, neg(F::know(a, p)))});
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_count; ++i) pool.random.push_back(random_formula_rec(rng, atoms, agents, 3));
  return pool;
}

// ---------------------------------------------------------------------------

std::size_t LemmaReport::total_violations() const {
  std::size_t n = 0;
  for (const auto& [_, k] : violation_counts) n += k;
  return n;
}

std::string LemmaReport::summary_lines() const {
  std::ostringstream os;
  std::size_t total_checks = 0;
  for (const auto& [prop, n] : checks) {
    auto it = violation_counts.find(prop);
    os << "SUITE property=" << prop << " checks=" << n
       << " violations=" << (it == violation_counts.end() ? 0 : it->second) << '\n';
    total_checks += n;
  }
  os << "SUITE total checks=" << total_checks << " violations=" << total_violations() << '\n';
  return os.str();
}

std::string LemmaReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "violation " << v.property << " family=" << v.family << " formula=" << v.formula << " bases=";
    for (std::size_t i = 0; i < v.bases.size(); ++i) os << (i ? "," : "") << v.bases[i];
    os << " " << v.detail << '\n';
  }
  os << summary_lines();
  return os.str();
}

namespace {

struct FamilyResult {
  std::vector<std::pair<std::string, std::size_t>> checks;
  std::vector<Violation> violations;
};

class FamilySuite {
 public:
  FamilySuite(const BaseSpace& space, const RelationFamily& fam, const FormulaPool& pool)
      : space_(space), fam_(fam), pool_(pool), cache_(fam), n_(space.size()) {}

  FamilyResult run() {
    const BitSet& maxcons = space_.maxcons_set();
    const BitSet& incons = space_.inconsistent_set();
    const std::vector<Formula> formulas = pool_.closure();

    count("maxcons-consistent");
    if (std::size_t b = (maxcons & cache_.truth_set(F::bottom())).first(); b < n_)
      fail("maxcons-consistent", F::bottom(), {b}, "maximally consistent base validates bot");

    for (const Formula& f : formulas) {
      const BitSet truth = cache_.truth_set(f);
      const BitSet refuted = ~truth;

      count("monotonicity");
      BitSet up = truth;
      up.up_closure();
      if (std::size_t c = up.first_not_in(truth); c < n_) {
        std::size_t b = n_;
        for_each_subset(c, [&](std::uint64_t s) {
          if (b == n_ && truth.test(s)) b = s;
        });
        fail("monotonicity", f, {b, c}, "holds at the first base but not at its superset");
      }

      count("ex-falso");
      if (std::size_t b = incons.first_not_in(truth); b < n_)
        fail("ex-falso", f, {b}, "fails at an inconsistent base");

      count("excluded-middle");
      {
        const BitSet& negated = cache_.truth_set(neg(f));
        if (std::size_t b = maxcons.first_not_in(truth | negated); b < n_)
          fail("excluded-middle", f, {b}, "neither the formula nor its negation holds");
      }

      if (f.is_implies()) {
        count("maxcons-classical");
        const BitSet classical = ~cache_.truth_set(f.lhs()) | cache_.truth_set(f.rhs());
        const BitSet mismatch = (truth ^ classical) & maxcons;
        if (std::size_t b = mismatch.first(); b < n_)
          fail("maxcons-classical", f, {b}, "implication differs from its classical reading");
      }

      count("maxcons-refutation");
      {
        BitSet witnessed = refuted & maxcons;
        witnessed.down_closure();
        if (std::size_t b = refuted.first_not_in(witnessed); b < n_)
          fail("maxcons-refutation", f, {b}, "no maximally consistent superset refutes the formula");
      }

      count("maxcons-validity");
      if (maxcons.is_subset_of(truth) && refuted.any())
        fail("maxcons-validity", f, {refuted.first()}, "valid at all maximally consistent bases but not valid");

      count("nec");
      if (refuted.none()) {
        for (const auto& agent : fam_.agents()) {
          const BitSet k = ~cache_.truth_set(F::know(agent, f));
          if (k.any()) fail("nec", f, {k.first()}, "[" + agent + "] of a valid formula is not valid");
        }
      }
    }

    for (const auto& ax : pool_.axioms) {
      const std::string prop = "axiom-" + ax.schema;
      count(prop);
      const Formula whole = ax.formula();
      if (std::size_t b = (~cache_.truth_set(whole)).first(); b < n_)
        fail(prop, whole, {b}, "axiom instance is not valid");
      if (std::size_t b = (~cache_.consequence_set({ax.premise}, ax.conclusion)).first(); b < n_)
        fail(prop, whole, {b}, "premise does not entail conclusion");
    }

    std::vector<Formula> mp_set = pool_.blocks;
    for (std::size_t i = 0; i < pool_.random.size() && i < 20; ++i) mp_set.push_back(pool_.random[i]);
    for (const Formula& g : mp_set) {
      for (const Formula& h : mp_set) {
        count("mp");
        const BitSet both = cache_.truth_set(imp(g, h)) & cache_.truth_set(g);
        if (std::size_t b = both.first_not_in(cache_.truth_set(h)); b < n_)
          fail("mp", imp(g, h), {b}, "implication and antecedent hold but consequent fails");
      }
    }
    return std::move(result_);
  }

 private:
  void count(const std::string& prop) {
    for (auto& [p, n] : result_.checks) {
      if (p == prop) {
        ++n;
        return;
      }
    }
    result_.checks.emplace_back(prop, 1);
  }

  void fail(const std::string& prop, const Formula& f, std::vector<std::uint64_t> bases, std::string detail) {
    result_.violations.push_back({prop, fam_.label, print_formula(f), std::move(bases), std::move(detail)});
  }

  const BaseSpace& space_;
  const RelationFamily& fam_;
  const FormulaPool& pool_;
  EvalCache cache_;
  std::size_t n_;
  FamilyResult result_;
};

}  // namespace

LemmaReport run_lemma_suite(const BaseSpacePtr& space, const std::vector<RelationFamily>& fams,
                            const FormulaPool& pool, std::size_t jobs) {
  std::vector<FamilyResult> results(fams.size());
  parallel_for(jobs, fams.size(), [&](std::size_t i) { results[i] = FamilySuite(*space, fams[i], pool).run(); });

  LemmaReport report;
  for (const auto& r : results) {
    for (const auto& [prop, n] : r.checks) {
      bool found = false;
      for (auto& [p, total] : report.checks) {
        if (p == prop) {
          total += n;
          found = true;
        }
      }
      if (!found) report.checks.emplace_back(prop, n);
    }
    for (const auto& v : r.violations) {
      if (report.violation_counts[v.property]++ < LemmaReport::kMaxStoredViolations) report.violations.push_back(v);
    }
  }
  return report;
}

}  // namespace bes
