#include <map>
#include <string>
#include <vector>

#include "bes/bes_eval.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bes;

namespace {

BaseSpacePtr space_of(std::vector<std::string> atoms, std::size_t cap) {
  return std::make_shared<const BaseSpace>(make_universe(atoms, cap));
}

Formula F(const char* s) { return parse_formula(s); }

oracle::Evaluator evaluator(const RelationFamily& fam) {
  std::map<std::string, oracle::Matrix> rel;
  for (const auto& [a, r] : fam.per_agent) rel[a] = oracle::to_matrix(r);
  return oracle::Evaluator(*fam.space->universe(), rel);
}

BaseId base_with(const BaseSpacePtr& space, const std::vector<std::string>& text) {
  const auto& u = *space->universe();
  RuleMask m = 0;
  for (const auto& t : text)
    for (std::size_t r = 0; r < u.rule_count(); ++r)
      if (u.rule_to_string(r) == t) m |= RuleMask{1} << r;
  return BaseId{m};
}

}  // namespace

TEST_CASE("clause examples") {
  auto space = space_of({"p", "q"}, 1);
  auto id = identity_family(space, {"a"});
  auto tb = two_block_family(space, {"a"});
  CHECK(bes_holds(F("p"), base_with(space, {"=> p"}), id));
  CHECK(bes_holds(F("p"), base_with(space, {"=> p"}), tb));
  CHECK(bes_holds(F("p -> p"), BaseId{0}, id));
  CHECK_FALSE(bes_holds(F("[a]p"), BaseId{0}, tb));
  CHECK(bes_holds(F("[a](p -> p)"), BaseId{0}, tb));
  CHECK(bes_holds(F("bot"), base_with(space, {"=> p", "=> q"}), id));
  CHECK_FALSE(bes_holds(F("bot"), base_with(space, {"=> p"}), id));
  CHECK_THROWS_AS(bes_holds(F("[b]p"), BaseId{0}, id), std::out_of_range);
  EvalCache cache(id);
  CHECK_THROWS_AS(cache.truth_set(F("[b]p")), std::out_of_range);
}

TEST_CASE("consequence examples") {
  auto space = space_of({"p", "q"}, 1);
  auto id = identity_family(space, {"a"});
  auto tb = two_block_family(space, {"a"});
  for (std::uint64_t b = 0; b < space->size(); ++b) {
    CHECK(bes_consequence({F("p")}, F("p"), BaseId{b}, tb));
    CHECK(bes_consequence({F("bot")}, F("q"), BaseId{b}, tb));
    CHECK(bes_consequence({F("[a]p")}, F("p"), BaseId{b}, tb));
  }
  CHECK(bes_consequence({F("[a]p")}, F("p"), BaseId{0}, id));
  CHECK(bes_consequence({}, F("p -> p"), BaseId{0}, id));
  CHECK_FALSE(bes_consequence({F("q")}, F("p"), BaseId{0}, id));
}

TEST_CASE("validity examples") {
  auto pq = space_of({"p", "q"}, 1);
  auto v = bes_valid(F("[a](p->q) -> ([a]p -> [a]q)"), pq, CanonicalMode{});
  CHECK(v.valid);
  CHECK(v.families_checked == 2);
  CHECK(bes_valid(F("[a]p -> p"), pq, CanonicalMode{}).valid);
  auto p1 = space_of({"p"}, 1);
  auto five = bes_valid(F("~[a]p -> [a]~[a]p"), p1, ExhaustiveMode{});
  CHECK(five.valid);
  CHECK(five.families_checked == enumerate_families(p1, {"a"}).size());
  auto bad = bes_valid(F("p"), pq, CanonicalMode{});
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.counterexample);
  CHECK(bad.counterexample->base.index == 0);
  CHECK(verdict_line(bad, {"a"}) == "VERDICT invalid base=0 agent=a family=identity");
  CHECK(verdict_line(v, {"a"}) == "VERDICT valid");
  CHECK_THROWS_AS(bes_valid(F("p"), pq, ExhaustiveMode{}), UniverseTooLarge);
}

TEST_CASE("counterexample is the first failing family and base") {
  auto pq = space_of({"p", "q"}, 1);
  auto fams = families_for(CanonicalMode{}, pq, {"a"});
  for (const char* text : {"[a]p", "q -> p", "~~p -> p", "[a]q -> [a][a]p"}) {
    auto f = F(text);
    auto v = bes_valid(f, pq, CanonicalMode{});
    std::optional<std::pair<std::size_t, std::uint64_t>> first;
    for (std::size_t i = 0; i < fams.size() && !first; ++i) {
      auto ev = evaluator(fams[i]);
      for (std::uint64_t b = 0; b < pq->size() && !first; ++b)
        if (!ev.holds(f, b)) first = {i, b};
    }
    CAPTURE(text);
    REQUIRE(v.valid == !first.has_value());
    if (first) {
      CHECK(v.counterexample->family_index == first->first);
      CHECK(v.counterexample->base.index == first->second);
    }
  }
}

TEST_CASE("property: cached, pointwise and oracle evaluation agree") {
  oracle::Gen g(41);
  auto pq = space_of({"p", "q"}, 1);
  std::vector<RelationFamily> fams{identity_family(pq, {"a", "b"}), two_block_family(pq, {"a", "b"})};
  for (auto& f : sample_families(pq, {"a", "b"}, 3, 9).families) fams.push_back(f);
  for (const auto& fam : fams) {
    auto ev = evaluator(fam);
    EvalCache cache(fam);
    for (int i = 0; i < 40; ++i) {
      Formula f = oracle::gen_formula(g, {"p", "q"}, {"a", "b"}, 3);
      CAPTURE(print_formula(f));
      const BitSet& truth = cache.truth_set(f);
      for (std::uint64_t b = 0; b < pq->size(); b += 1 + g.below(3)) {
        const bool expect = ev.holds(f, b);
        CHECK(truth.test(b) == expect);
        CHECK(bes_holds(f, BaseId{b}, fam) == expect);
      }
    }
  }
}

TEST_CASE("property: evaluation agrees with the oracle under every exhaustive family") {
  oracle::Gen g(42);
  auto p1 = space_of({"p"}, 1);
  auto fams = enumerate_families(p1, {"a"});
  REQUIRE_FALSE(fams.empty());
  for (const auto& fam : fams) {
    auto ev = evaluator(fam);
    EvalCache cache(fam);
    for (int i = 0; i < 25; ++i) {
      Formula f = oracle::gen_formula(g, {"p"}, {"a"}, 4);
      for (std::uint64_t b = 0; b < p1->size(); ++b) CHECK(cache.holds(f, BaseId{b}) == ev.holds(f, b));
    }
  }
}

TEST_CASE("property: consequence agrees with its definition") {
  oracle::Gen g(43);
  auto pq = space_of({"p", "q"}, 1);
  auto fam = two_block_family(pq, {"a"});
  auto ev = evaluator(fam);
  EvalCache cache(fam);
  for (int i = 0; i < 60; ++i) {
    std::vector<Formula> ctx;
    for (std::size_t k = 1 + g.below(2); k > 0; --k) ctx.push_back(oracle::gen_formula(g, {"p", "q"}, {"a"}, 2));
    Formula f = oracle::gen_formula(g, {"p", "q"}, {"a"}, 2);
    BitSet set = cache.consequence_set(ctx, f);
    for (std::uint64_t b = 0; b < pq->size(); b += 5) {
      bool expect = true;
      for (std::uint64_t c = 0; c < pq->size() && expect; ++c) {
        if (!oracle::subset(b, c)) continue;
        bool all = true;
        for (const auto& h : ctx) all = all && ev.holds(h, c);
        if (all && !ev.holds(f, c)) expect = false;
      }
      CHECK(set.test(b) == expect);
      CHECK(bes_consequence(ctx, f, BaseId{b}, fam) == expect);
    }
  }
}

TEST_CASE("validity verdicts do not depend on the job count") {
  auto pq = space_of({"p", "q"}, 1);
  oracle::Gen g(44);
  for (int i = 0; i < 20; ++i) {
    Formula f = oracle::gen_formula(g, {"p", "q"}, {"a"}, 3);
    auto one = bes_valid(f, pq, SampledMode{4, 3}, {"a"}, 1);
    auto many = bes_valid(f, pq, SampledMode{4, 3}, {"a"}, 8);
    CHECK(one.valid == many.valid);
    CHECK(verdict_line(one, {"a"}) == verdict_line(many, {"a"}));
  }
}
