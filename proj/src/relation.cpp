#include "bes/relation.hpp"

#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "bes/parallel.hpp"

namespace bes {

namespace {

class RowTable {
 public:
  std::uint32_t intern(BitSet row) {
    auto [it, inserted] = index_.try_emplace(row, static_cast<std::uint32_t>(rows_.size()));
    if (inserted) rows_.push_back(std::move(row));
    return it->second;
  }
  std::vector<BitSet> take() { return std::move(rows_); }

 private:
  std::unordered_map<BitSet, std::uint32_t, BitSetHash> index_;
  std::vector<BitSet> rows_;
};

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

Relation::Relation(std::size_t n) : row_of_(n, 0) {
  if (n) rows_.emplace_back(n);
}

Relation Relation::identity(std::size_t n) {
  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  return from_partition(label);
}

Relation Relation::from_pairs(std::size_t n, const std::vector<BasePair>& pairs) {
  std::vector<BitSet> rows(n, BitSet(n));
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw std::out_of_range("relation pair references an unknown base");
    rows[a].set(b);
  }
  return from_rows(rows);
}

Relation Relation::from_rows(const std::vector<BitSet>& rows) {
  Relation r;
  RowTable table;
  r.row_of_.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("relation rows must be square");
    r.row_of_[i] = table.intern(rows[i]);
  }
  r.rows_ = table.take();
  return r;
}

Relation Relation::from_partition(const std::vector<std::uint32_t>& label) {
  const std::size_t n = label.size();
  Relation r;
  r.row_of_.resize(n);
  std::unordered_map<std::uint32_t, std::uint32_t> row_of_label;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = row_of_label.try_emplace(label[i], static_cast<std::uint32_t>(r.rows_.size()));
    if (inserted) r.rows_.emplace_back(n);
    r.rows_[it->second].set(i);
    r.row_of_[i] = it->second;
  }
  return r;
}

std::size_t Relation::pair_count() const {
  std::size_t total = 0;
  for (auto row : row_of_) total += rows_[row].count();
  return total;
}

std::vector<BasePair> Relation::pairs() const {
  std::vector<BasePair> out;
  for (std::size_t i = 0; i < size(); ++i) successors(i).for_each([&](std::size_t j) { out.emplace_back(i, j); });
  return out;
}

std::vector<std::vector<std::uint64_t>> Relation::equivalence_classes() const {
  std::vector<std::vector<std::uint64_t>> out;
  if (!is_reflexive(*this) || !is_symmetric(*this) || !is_transitive(*this)) return out;
  std::vector<bool> emitted(rows_.size(), false);
  for (std::size_t i = 0; i < size(); ++i) {
    if (emitted[row_of_[i]]) continue;
    emitted[row_of_[i]] = true;
    auto& cls = out.emplace_back();
    rows_[row_of_[i]].for_each([&](std::size_t j) { cls.push_back(j); });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frame properties

namespace {

// Bases whose successor set is row X.
std::vector<BitSet> members_by_row(const Relation& r) {
  std::vector<BitSet> members(r.rows().size(), BitSet(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i) members[r.row_of(i)].set(i);
  return members;
}

ConditionResult check_reflexive(const Relation& r) {
  ConditionResult res{"reflexive", true, {}, {}};
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r.related(i, i)) {
      res.passed = false;
      res.witness = {i};
      res.detail = "base " + std::to_string(i) + " is not related to itself";
      break;
    }
  }
  return res;
}

// Transitive: y in R(x) implies R(y) subset of R(x).  Euclidean: y in R(x)
// implies R(x) subset of R(y).  Both only depend on (row(x), row(y)).
ConditionResult check_frame_rule(const Relation& r, const std::vector<BitSet>& members, bool euclidean) {
  ConditionResult res{euclidean ? "euclidean" : "transitive", true, {}, {}};
  const auto& rows = r.rows();
  for (std::size_t x = 0; x < rows.size(); ++x) {
    if (members[x].none()) continue;
    std::vector<bool> seen(rows.size(), false);
    std::size_t y = rows[x].first();
    for (; y < r.size(); y = rows[x].next(y + 1)) {
      const std::size_t ry = r.row_of(y);
      if (seen[ry]) continue;
      seen[ry] = true;
      const BitSet& sub = euclidean ? rows[x] : rows[ry];
      const BitSet& sup = euclidean ? rows[ry] : rows[x];
      const std::size_t z = sub.first_not_in(sup);
      if (z < r.size()) {
        const std::size_t bx = members[x].first();
        res.passed = false;
        res.witness = {bx, y, z};
        res.detail = euclidean ? "R(" + std::to_string(bx) + "," + std::to_string(y) + ") and R(" +
                                     std::to_string(bx) + "," + std::to_string(z) + ") but not R(" +
                                     std::to_string(y) + "," + std::to_string(z) + ")"
                               : "R(" + std::to_string(bx) + "," + std::to_string(y) + ") and R(" +
                                     std::to_string(y) + "," + std::to_string(z) + ") but not R(" +
                                     std::to_string(bx) + "," + std::to_string(z) + ")";
        return res;
      }
    }
  }
  return res;
}

}  // namespace

bool is_reflexive(const Relation& r) { return check_reflexive(r).passed; }

bool is_symmetric(const Relation& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    bool ok = true;
    r.successors(i).for_each([&](std::size_t j) { ok = ok && r.related(j, i); });
    if (!ok) return false;
  }
  return true;
}

bool is_transitive(const Relation& r) { return check_frame_rule(r, members_by_row(r), false).passed; }
bool is_euclidean(const Relation& r) { return check_frame_rule(r, members_by_row(r), true).passed; }

Relation s5_closure(const std::vector<BasePair>& seed, std::size_t n) {
  UnionFind uf(n);
  for (auto [a, b] : seed) {
    if (a >= n || b >= n) throw std::out_of_range("seed pair references an unknown base");
    uf.unite(a, b);
  }
  std::vector<std::uint32_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<std::uint32_t>(uf.find(i));
  return Relation::from_partition(label);
}

// ---------------------------------------------------------------------------
// Families

std::vector<std::string> RelationFamily::agents() const {
  std::vector<std::string> out;
  for (const auto& [a, _] : per_agent) out.push_back(a);
  return out;
}

const Relation& RelationFamily::relation(const std::string& agent) const {
  auto it = per_agent.find(agent);
  if (it == per_agent.end()) throw std::out_of_range("agent '" + agent + "' has no relation in family " + label);
  return it->second;
}

bool AgentCheck::passed() const {
  for (const auto& c : conditions)
    if (!c.passed) return false;
  return true;
}

const ConditionResult& AgentCheck::condition(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.condition == name) return c;
  throw std::out_of_range("no condition " + name);
}

bool ModalCheckReport::passed() const {
  for (const auto& a : agents)
    if (!a.passed()) return false;
  return true;
}

std::vector<std::string> ModalCheckReport::failures() const {
  std::vector<std::string> out;
  for (const auto& a : agents)
    for (const auto& c : a.conditions)
      if (!c.passed) out.push_back(a.agent + ":" + c.condition);
  return out;
}

std::string ModalCheckReport::to_string() const {
  std::ostringstream os;
  for (const auto& a : agents) {
    for (const auto& c : a.conditions) {
      os << "agent " << a.agent << " condition " << c.condition << ": " << (c.passed ? "pass" : "FAIL");
      if (!c.passed) {
        os << " witness=";
        for (std::size_t i = 0; i < c.witness.size(); ++i) os << (i ? "," : "") << c.witness[i];
        os << " (" << c.detail << ")";
      }
      os << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Modal relation conditions

namespace {

class ConditionChecker {
 public:
  ConditionChecker(const BaseSpace& space, const Relation& r)
      : space_(space), r_(r), n_(r.size()), members_(members_by_row(r)) {
    if (space.size() != r.size()) throw std::invalid_argument("relation and base space differ in size");
  }

  ConditionResult inconsistency_rule(bool for_inconsistent) const {
    ConditionResult res{for_inconsistent ? "a" : "b", true, {}, {}};
    const BitSet& incons = space_.inconsistent_set();
    for (std::size_t b = 0; b < n_; ++b) {
      if (space_.inconsistent(BaseId{b}) != for_inconsistent) continue;
      const BitSet& succ = r_.successors(b);
      if (for_inconsistent) {
        if (!succ.intersects(incons)) {
          res.passed = false;
          res.witness = {b};
          res.detail = "inconsistent base " + std::to_string(b) + " reaches no inconsistent base";
          return res;
        }
        if (std::size_t c = succ.first_not_in(incons); c < n_) {
          res.passed = false;
          res.witness = {b, c};
          res.detail = "inconsistent base " + std::to_string(b) + " reaches consistent base " + std::to_string(c);
          return res;
        }
      } else if (std::size_t c = (succ & incons).first(); c < n_) {
        res.passed = false;
        res.witness = {b, c};
        res.detail = "consistent base " + std::to_string(b) + " reaches inconsistent base " + std::to_string(c);
        return res;
      }
    }
    return res;
  }

  // (c): R(B,C), consistent D >= B  =>  some E >= C with R(D,E); i.e.
  //      R(B) subset of down(R(D)) for every consistent D >= B.
  // (d): R(B,C), C consistent, D <= B  =>  some E <= C with R(D,E); i.e.
  //      R(B) & consistent subset of up(R(D)) for every D <= B.
  ConditionResult extension_rule(bool superset_rule) const {
    ConditionResult res{superset_rule ? "c" : "d", true, {}, {}};
    const auto& rows = r_.rows();
    std::vector<std::optional<BitSet>> closed(rows.size());
    auto closure_of = [&](std::size_t y) -> const BitSet& {
      if (!closed[y]) {
        BitSet s = rows[y];
        superset_rule ? s.down_closure() : s.up_closure();
        closed[y] = std::move(s);
      }
      return *closed[y];
    };
    for (std::size_t x = 0; x < rows.size(); ++x) {
      if (members_[x].none()) continue;
      BitSet need = superset_rule ? rows[x] : rows[x] & space_.consistent_set();
      if (need.none()) continue;
      BitSet reach = members_[x];
      if (superset_rule) {
        reach.up_closure();
        reach &= space_.consistent_set();
      } else {
        reach.down_closure();
      }
      std::vector<bool> seen(rows.size(), false);
      for (std::size_t d = reach.first(); d < n_; d = reach.next(d + 1)) {
        const std::size_t y = r_.row_of(d);
        if (seen[y]) continue;
        seen[y] = true;
        const std::size_t c = need.first_not_in(closure_of(y));
        if (c >= n_) continue;
        // Recover a base B with row x that is a subset (c) / superset (d) of D.
        std::size_t b = n_;
        if (superset_rule) {
          for_each_subset(d, [&](std::uint64_t s) {
            if (b == n_ && members_[x].test(s)) b = s;
          });
        } else {
          for_each_superset(d, n_, [&](std::uint64_t s) {
            if (b == n_ && members_[x].test(s)) b = s;
          });
        }
        res.passed = false;
        res.witness = {b, c, d};
        res.detail = superset_rule
                         ? "R(" + std::to_string(b) + "," + std::to_string(c) + "), consistent " +
                               std::to_string(d) + " extends " + std::to_string(b) +
                               ", but no successor of " + std::to_string(d) + " extends " + std::to_string(c)
                         : "R(" + std::to_string(b) + "," + std::to_string(c) + "), " + std::to_string(d) +
                               " is contained in " + std::to_string(b) + ", but no successor of " +
                               std::to_string(d) + " is contained in " + std::to_string(c);
        return res;
      }
    }
    return res;
  }

  std::vector<ConditionResult> run() const {
    return {check_reflexive(r_),
            check_frame_rule(r_, members_, false),
            check_frame_rule(r_, members_, true),
            inconsistency_rule(true),
            inconsistency_rule(false),
            extension_rule(true),
            extension_rule(false)};
  }

 private:
  const BaseSpace& space_;
  const Relation& r_;
  std::size_t n_;
  std::vector<BitSet> members_;
};

}  // namespace

std::vector<ConditionResult> check_relation(const BaseSpace& space, const Relation& r) {
  return ConditionChecker(space, r).run();
}

ModalCheckReport check_modal_relation(const RelationFamily& fam, std::size_t jobs) {
  if (!fam.space) throw std::invalid_argument("relation family has no base space");
  if (fam.per_agent.empty()) throw std::invalid_argument("relation family has no agents");
  std::vector<std::pair<std::string, const Relation*>> work;
  for (const auto& [a, r] : fam.per_agent) work.emplace_back(a, &r);
  ModalCheckReport report;
  report.agents.resize(work.size());
  parallel_for(jobs, work.size(), [&](std::size_t i) {
    report.agents[i] = AgentCheck{work[i].first, check_relation(*fam.space, *work[i].second)};
  });
  return report;
}

namespace {

RelationFamily uniform_family(const BaseSpacePtr& space, const std::vector<std::string>& agents, Relation r,
                              std::string label) {
  if (agents.empty()) throw std::invalid_argument("a relation family needs at least one agent");
  RelationFamily fam{space, {}, std::move(label)};
  for (const auto& a : agents) fam.per_agent.emplace(a, r);
  return fam;
}

}  // namespace

RelationFamily identity_family(const BaseSpacePtr& space, const std::vector<std::string>& agents) {
  return uniform_family(space, agents, Relation::identity(space->size()), "identity");
}

RelationFamily two_block_family(const BaseSpacePtr& space, const std::vector<std::string>& agents) {
  std::vector<std::uint32_t> label(space->size());
  for (std::size_t i = 0; i < label.size(); ++i) label[i] = space->inconsistent(BaseId{i}) ? 1 : 0;
  return uniform_family(space, agents, Relation::from_partition(label), "two_block");
}

SampleOutcome sample_families(const BaseSpacePtr& space, const std::vector<std::string>& agents,
                              std::size_t count, std::uint64_t seed, std::size_t budget) {
  if (agents.empty()) throw std::invalid_argument("a relation family needs at least one agent");
  SampleOutcome out;
  if (count == 0) return out;
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> consistent;
  space->consistent_set().for_each([&](std::size_t b) { consistent.push_back(b); });
  std::vector<BasePair> inconsistent_block;
  const std::size_t first_incons = space->inconsistent_set().first();
  space->inconsistent_set().for_each([&](std::size_t b) { inconsistent_block.emplace_back(first_incons, b); });
  std::uniform_int_distribution<std::size_t> pick(0, consistent.size() - 1);
  // Pair counts are drawn log-uniformly.
  std::uniform_int_distribution<unsigned> scale(0, static_cast<unsigned>(std::bit_width(consistent.size())));

  while (out.families.size() < count) {
    if (out.attempts >= budget) {
      out.exhausted = true;
      break;
    }
    ++out.attempts;
    RelationFamily fam{space, {}, "sample" + std::to_string(out.families.size())};
    for (const auto& a : agents) {
      std::vector<BasePair> seed_pairs = inconsistent_block;
      const std::size_t pairs = (std::size_t{1} << scale(rng)) - 1;
      for (std::size_t k = 0; k < pairs; ++k) seed_pairs.emplace_back(consistent[pick(rng)], consistent[pick(rng)]);
      fam.per_agent.emplace(a, s5_closure(seed_pairs, space->size()));
    }
    if (check_modal_relation(fam).passed()) out.families.push_back(std::move(fam));
  }
  return out;
}

std::vector<RelationFamily> enumerate_families(const BaseSpacePtr& space,
                                               const std::vector<std::string>& agents) {
  if (agents.empty()) throw std::invalid_argument("a relation family needs at least one agent");
  const std::size_t n = space->size();
  if (n * n * agents.size() > 20)
    throw UniverseTooLarge("exhaustive family enumeration needs |bases|^2 * |agents| <= 20, have " +
                           std::to_string(n * n * agents.size()));
  const std::size_t slots = n * n;
  std::vector<Relation> valid;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << slots); ++code) {
    std::vector<BitSet> rows(n, BitSet(n));
    for (std::size_t s = 0; s < slots; ++s)
      if ((code >> s) & 1U) rows[s / n].set(s % n);
    Relation r = Relation::from_rows(rows);
    bool ok = true;
    for (const auto& c : check_relation(*space, r)) ok = ok && c.passed;
    if (ok) valid.push_back(std::move(r));
  }
  // Cartesian product over agents, first agent varying slowest.
  std::vector<RelationFamily> out;
  std::vector<std::size_t> idx(agents.size(), 0);
  if (valid.empty()) return out;
  while (true) {
    RelationFamily fam{space, {}, "enum" + std::to_string(out.size())};
    for (std::size_t a = 0; a < agents.size(); ++a) fam.per_agent.emplace(agents[a], valid[idx[a]]);
    out.push_back(std::move(fam));
    std::size_t k = agents.size();
    while (k > 0) {
      if (++idx[k - 1] < valid.size()) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0) break;
  }
  return out;
}

}  // namespace bes
