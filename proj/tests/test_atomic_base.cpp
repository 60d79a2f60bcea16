#include <string>
#include <vector>

#include "bes/atomic_base.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bes;

namespace {

// Base from rule strings such as "=> p" or "q => p".
Base rules(const UniversePtr& u, const std::vector<std::string>& text) {
  RuleMask m = 0;
  for (const auto& t : text) {
    bool found = false;
    for (std::size_t r = 0; r < u->rule_count(); ++r)
      if (u->rule_to_string(r) == t) {
        m |= RuleMask{1} << r;
        found = true;
      }
    REQUIRE_MESSAGE(found, t);
  }
  return Base(u, m);
}

std::set<Atom> atoms(std::initializer_list<const char*> names) {
  std::set<Atom> out;
  for (const char* n : names) out.insert(Atom{n});
  return out;
}

}  // namespace

TEST_CASE("rule universe sizes and order") {
  CHECK(make_universe({"p", "q"}, 1)->rule_count() == 6);
  CHECK(make_universe({"p", "q"}, 0)->rule_count() == 2);
  CHECK(make_universe({"p", "q", "r"}, 2)->rule_count() == 3 * (1 + 3 + 3));
  CHECK(RuleUniverse::rule_count_for(4, 1) == 4 * 5);
  auto u = make_universe({"q", "p"}, 1);
  std::vector<std::string> order;
  for (std::size_t r = 0; r < u->rule_count(); ++r) order.push_back(u->rule_to_string(r));
  CHECK(order == std::vector<std::string>{"=> p", "p => p", "q => p", "=> q", "p => q", "q => q"});
  CHECK(u->rule_index({Atom{"q"}}, Atom{"p"}) == 2);
  CHECK_THROWS_AS(u->rule_index({Atom{"p"}, Atom{"q"}}, Atom{"p"}), std::out_of_range);
  CHECK_THROWS_AS(make_universe({"p", "p"}, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_universe({}, 1), std::invalid_argument);
}

TEST_CASE("enumeration") {
  CHECK(enumerate_bases(make_universe({"p"}, 1)).size() == 4);
  CHECK(enumerate_bases(make_universe({"p", "q"}, 1)).size() == 64);
  CHECK(enumerate_bases(make_universe({"p", "q"}, 0)).size() == 4);
  std::uint64_t expect = 0;
  for (const Base& b : enumerate_bases(make_universe({"p", "q"}, 1))) CHECK(b.members() == expect++);
  CHECK_THROWS_AS(enumerate_bases(make_universe({"p", "q", "r", "s", "t"}, 1)), UniverseTooLarge);
  CHECK(enumerate_bases(make_universe({"p", "q", "r", "s", "t"}, 1), 30).size() == (std::uint64_t{1} << 30));
}

TEST_CASE("closure and derivability") {
  auto u = make_universe({"p", "q"}, 1);
  CHECK(closure(rules(u, {"=> p", "p => q"})) == atoms({"p", "q"}));
  CHECK(closure(rules(u, {"p => q"})).empty());
  CHECK(closure(Base::empty(u)).empty());
  CHECK(proves_atom(rules(u, {"=> p"}), Atom{"p"}));
  CHECK_FALSE(proves_atom(Base::empty(u), Atom{"p"}));
  CHECK(proves_atom(rules(u, {"q => p", "=> q"}), Atom{"p"}));
  CHECK_THROWS_AS(proves_atom(Base::empty(u), Atom{"r"}), std::out_of_range);
}

TEST_CASE("consistency") {
  auto u = make_universe({"p", "q"}, 1);
  CHECK_FALSE(is_inconsistent(Base::empty(u)));
  CHECK(is_inconsistent(rules(u, {"=> p", "=> q"})));
  CHECK_FALSE(is_inconsistent(rules(u, {"=> p"})));
  CHECK(is_maximally_consistent(rules(u, {"p => p", "p => q", "q => p", "q => q"})));
  CHECK_FALSE(is_maximally_consistent(Base::empty(u)));
  CHECK_FALSE(is_maximally_consistent(rules(u, {"=> p", "=> q"})));
  CHECK_FALSE(is_maximally_consistent(Base(u, u->all_rules())));
}

TEST_CASE("closure agrees with the smallest-closed-set oracle") {
  for (auto u : {make_universe({"p", "q"}, 1), make_universe({"p", "q", "r"}, 1), make_universe({"p", "q", "r"}, 0)}) {
    for (const Base& b : enumerate_bases(u)) {
      CHECK(u->closure(b.members()) == oracle::closure(*u, b.members()));
      CHECK(is_inconsistent(b) == oracle::inconsistent(*u, b.members()));
      CHECK(is_maximally_consistent(b) == oracle::maxcons(*u, b.members()));
    }
  }
}

TEST_CASE("base space tables agree with the oracle") {
  auto u = make_universe({"p", "q", "r"}, 1);
  BaseSpace space(u);
  REQUIRE(space.size() == 4096);
  for (std::uint64_t b = 0; b < space.size(); ++b) {
    CHECK(space.closure(BaseId{b}) == oracle::closure(*u, b));
    CHECK(space.inconsistent(BaseId{b}) == oracle::inconsistent(*u, b));
    CHECK(space.consistent_set().test(b) != space.inconsistent(BaseId{b}));
    CHECK(space.maximally_consistent(BaseId{b}) == oracle::maxcons(*u, b));
    CHECK(space.proving(1).test(b) == (((oracle::closure(*u, b)) >> 1) & 1U));
  }
}

TEST_CASE("closure is monotone and consistency is inherited by subsets") {
  auto u = make_universe({"p", "q"}, 1);
  const std::uint64_t n = 64;
  for (std::uint64_t b = 0; b < n; ++b)
    for (std::uint64_t c = 0; c < n; ++c) {
      if (!oracle::subset(b, c)) continue;
      CHECK((u->closure(b) & ~u->closure(c)) == 0);
      if (!u->is_inconsistent(c)) CHECK_FALSE(u->is_inconsistent(b));
    }
}

TEST_CASE("closure is closed under the base and reached from nothing") {
  auto u = make_universe({"p", "q", "r"}, 2);
  oracle::Gen g(21);
  for (int i = 0; i < 400; ++i) {
    const RuleMask b = g.bits(u->rule_count());
    const AtomMask s = u->closure(b);
    for (std::size_t r = 0; r < u->rule_count(); ++r) {
      if (!((b >> r) & 1U)) continue;
      const auto& rule = u->rules()[r];
      if ((rule.premises & ~s) == 0) CHECK(((s >> rule.conclusion) & 1U));
    }
    CHECK(s == oracle::closure(*u, b));
  }
}

TEST_CASE("greedy extension") {
  auto u = make_universe({"p", "q"}, 1);
  Base m = extend_preserving(Base::empty(u), [](const Base& b) { return !is_inconsistent(b); });
  CHECK(is_maximally_consistent(m));
  CHECK(oracle::maxcons(*u, m.members()));
  CHECK(extend_preserving(Base::empty(u), [](const Base&) { return true; }).members() == u->all_rules());

  Base start = rules(u, {"=> p"});
  auto keep = [](const Base& b) { return !is_inconsistent(b) && !proves_atom(b, Atom{"q"}); };
  Base ext = extend_preserving(start, keep);
  CHECK(start.is_subset_of(ext));
  CHECK(keep(ext));
  CHECK(is_maximally_consistent(ext));

  auto found = exhaustive_extension(start, keep);
  REQUIRE(found);
  CHECK(start.is_subset_of(*found));
  CHECK(keep(*found));
  CHECK(is_maximally_consistent(*found));
  for (std::uint64_t s = 0; s < found->members(); ++s)
    if (oracle::subset(start.members(), s) && oracle::maxcons(*u, s)) CHECK_FALSE(keep(Base(u, s)));
}

TEST_CASE("property: random universes and bases match the oracle") {
  oracle::Gen g(22);
  const std::vector<std::string> names{"p", "q", "r", "s"};
  for (int i = 0; i < 60; ++i) {
    std::vector<std::string> as(names.begin(), names.begin() + 1 + g.below(4));
    auto u = make_universe(as, g.below(std::min<std::size_t>(as.size(), 3) + 1));
    if (u->rule_count() > 40) continue;
    for (int k = 0; k < 40; ++k) {
      const RuleMask b = g.bits(u->rule_count());
      CHECK(u->closure(b) == oracle::closure(*u, b));
      CHECK(is_maximally_consistent(Base(u, b)) == oracle::maxcons(*u, b));
    }
  }
}

TEST_CASE("base helpers") {
  auto u = make_universe({"p", "q"}, 1);
  Base b = rules(u, {"=> p", "q => p"});
  CHECK(b.size() == 2);
  CHECK(b.to_string() == "{=> p, q => p}");
  CHECK(b.rule_indices() == std::vector<std::size_t>{0, 2});
  CHECK(Base::from_rules(u, {0, 2}) == b);
  CHECK(b.with(3).contains(3));
  CHECK_THROWS_AS(Base::from_rules(u, {6}), std::out_of_range);
}
