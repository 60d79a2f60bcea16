#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "bes/bes_eval.hpp"
#include "bes/hilbert.hpp"
#include "bes/io.hpp"
#include "bes/lemma_suite.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bes;

namespace {

Formula F(const char* s) { return parse_formula(s); }

std::set<AxiomTag> tags(std::initializer_list<AxiomTag> t) { return t; }

std::vector<std::string> corpus() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(std::string(BES_DATA_DIR) + "/proofs"))
    if (e.path().extension() == ".proof") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

Proof load(const std::string& path) { return parse_proof(read_file(path)); }

}  // namespace

TEST_CASE("axiom matching") {
  CHECK(match_axiom(F("p -> (q -> p)")) == tags({AxiomTag::Ax1}));
  CHECK(match_axiom(F("[a]p -> p")) == tags({AxiomTag::AxT}));
  CHECK(match_axiom(F("p -> p")).empty());
  CHECK(match_axiom(F("(p -> (q -> r)) -> ((p -> q) -> (p -> r))")) == tags({AxiomTag::Ax2}));
  CHECK(match_axiom(F("(~p -> ~q) -> (q -> p)")) == tags({AxiomTag::Ax3}));
  CHECK(match_axiom(F("[a](p -> q) -> ([a]p -> [a]q)")) == tags({AxiomTag::AxK}));
  CHECK(match_axiom(F("[a]p -> [a][a]p")) == tags({AxiomTag::Ax4}));
  CHECK(match_axiom(F("~[a]p -> [a]~[a]p")) == tags({AxiomTag::Ax5}));
  CHECK(match_axiom(F("[a](p -> q) -> ([b]p -> [a]q)")).empty());
  CHECK(match_axiom(F("[a]p -> [b][a]p")).empty());
  CHECK(match_axiom(F("[a][a]p -> [a]p")) == tags({AxiomTag::AxT}));
  CHECK(match_axiom(F("[a]p -> ([a]p -> [a]p)")) == tags({AxiomTag::Ax1}));
  CHECK(match_axiom(F("p -> (p -> p)")) == tags({AxiomTag::Ax1}));
}

TEST_CASE("property: instances built from schemas match them") {
  oracle::Gen g(71);
  auto gen = [&] { return oracle::gen_formula(g, {"p", "q"}, {"a", "b"}, 3); };
  auto imp = [](Formula l, Formula r) { return Formula::implies(l, r); };
  auto neg = [](Formula f) { return Formula::negation(f); };
  for (int i = 0; i < 300; ++i) {
    Formula x = gen(), y = gen(), z = gen();
    const std::string a = g.coin() ? "a" : "b";
    auto K = [&](Formula f) { return Formula::know(a, f); };
    CHECK(match_axiom(imp(x, imp(y, x))).count(AxiomTag::Ax1));
    CHECK(match_axiom(imp(imp(x, imp(y, z)), imp(imp(x, y), imp(x, z)))).count(AxiomTag::Ax2));
    CHECK(match_axiom(imp(imp(neg(x), neg(y)), imp(y, x))).count(AxiomTag::Ax3));
    CHECK(match_axiom(imp(K(imp(x, y)), imp(K(x), K(y)))).count(AxiomTag::AxK));
    CHECK(match_axiom(imp(K(x), x)).count(AxiomTag::AxT));
    CHECK(match_axiom(imp(K(x), K(K(x)))).count(AxiomTag::Ax4));
    CHECK(match_axiom(imp(neg(K(x)), K(neg(K(x))))).count(AxiomTag::Ax5));
  }
}

TEST_CASE("property: matched axioms are valid at every base") {
  oracle::Gen g(72);
  auto space = std::make_shared<const BaseSpace>(make_universe({"p", "q"}, 1));
  auto fams = families_for(CanonicalMode{}, space, {"a"});
  std::vector<EvalCache> caches;
  for (const auto& f : fams) caches.emplace_back(f);
  std::size_t matched = 0;
  for (int i = 0; i < 20000 && matched < 150; ++i) {
    Formula f = oracle::gen_formula(g, {"p", "q"}, {"a"}, 4);
    if (match_axiom(f).empty()) continue;
    ++matched;
    CAPTURE(print_formula(f));
    for (auto& c : caches) CHECK(c.truth_set(f).all());
  }
  CHECK(matched > 20);
}

TEST_CASE("proof checking examples") {
  auto ok = check_proof(load(std::string(BES_DATA_DIR) + "/proofs/01_identity.proof"));
  CHECK(ok.ok);
  auto nec = check_proof(load(std::string(BES_DATA_DIR) + "/proofs/02_nec_t.proof"));
  CHECK(nec.ok);
  auto bad = check_proof(load(std::string(BES_DATA_DIR) + "/fixtures/bad_mp.proof"));
  CHECK_FALSE(bad.ok);
  CHECK(bad.step == 3);
  auto prem = check_proof(load(std::string(BES_DATA_DIR) + "/fixtures/nec_premise.proof"));
  CHECK_FALSE(prem.ok);
  CHECK(prem.step == 2);
}

TEST_CASE("proof checking errors") {
  auto check = [](const char* text) { return check_proof(parse_proof(text)); };
  CHECK(check("1. p -> (q -> p) ; Ax2").reason == "not an instance of Ax2");
  CHECK(check("1. p -> (q -> p) ; Ax1\n2. q ; MP 1 3").reason == "MP refers to a step that is not earlier");
  CHECK(check("1. p -> (q -> p) ; Ax1\n2. [a]p ; Nec 1 a").step == 2);
  CHECK(check("1. p -> (q -> p) ; Ax1\n2. [a](p -> (q -> p)) ; Nec 1 a").ok);
  CHECK(check("1. p -> (q -> p) ; Ax1\n2. [b](p -> (q -> p)) ; Nec 1 a").step == 2);
  CHECK(check("premise: q\n1. p ; Premise").reason == "not a premise");
  CHECK(check("premise: p\npremise: p -> q\n1. p ; Premise\n2. p -> q ; Premise\n3. q ; MP 1 2").ok);
}

TEST_CASE("proof file parsing") {
  CHECK_THROWS_AS(parse_proof(""), ParseError);
  CHECK_THROWS_AS(parse_proof("2. p ; Ax1"), ParseError);
  CHECK_THROWS_AS(parse_proof("1. p ; Ax9"), ParseError);
  CHECK_THROWS_AS(parse_proof("1. p -> ; Ax1"), ParseError);
  CHECK_THROWS_AS(parse_proof("1. p ; MP 1"), ParseError);
  CHECK_THROWS_AS(parse_proof("1. p ; Ax1 extra"), ParseError);
  CHECK_THROWS_AS(parse_proof("1. p ; Premise\npremise: p"), ParseError);
  try {
    parse_proof("# comment\n\n1. p ; Bogus");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  Proof pf = load(std::string(BES_DATA_DIR) + "/proofs/11_premises_mp.proof");
  Proof again = parse_proof(print_proof(pf));
  CHECK(print_proof(again) == print_proof(pf));
  CHECK(again.premises == pf.premises);
}

TEST_CASE("bundled corpus") {
  auto files = corpus();
  CHECK(files.size() >= 10);
  for (const auto& path : files) {
    CAPTURE(path);
    Proof pf = load(path);
    auto res = check_proof(pf);
    CHECK(res.ok);
    // Every theorem is true on every S5 model with at most three worlds.
    if (!pf.premises.empty()) continue;
    std::vector<std::string> agents;
    for (const auto& a : agents_of(pf.conclusion())) agents.push_back(a.name);
    if (agents.empty()) agents.push_back("a");
    for (std::size_t n = 1; n <= 3; ++n)
      for_each_s5_model(n, agents, {"p", "q"}, [&](const KripkeModel& m) {
        for (std::size_t w = 0; w < m.size(); ++w) CHECK(kripke_eval(m, w, pf.conclusion()));
        return true;
      });
  }
}

TEST_CASE("property: unused valid steps do not change the verdict") {
  oracle::Gen g(73);
  std::vector<Proof> proofs;
  for (const auto& path : corpus()) proofs.push_back(load(path));
  proofs.push_back(load(std::string(BES_DATA_DIR) + "/fixtures/bad_mp.proof"));
  proofs.push_back(load(std::string(BES_DATA_DIR) + "/fixtures/nec_premise.proof"));
  for (int i = 0; i < 200; ++i) {
    const Proof& pf = proofs[g.below(proofs.size())];
    const auto base = check_proof(pf);
    Proof padded = pf;
    const std::size_t extra = 1 + g.below(3);
    for (std::size_t k = 0; k < extra; ++k) {
      Formula x = oracle::gen_formula(g, {"p", "q"}, {"a"}, 2);
      Formula y = oracle::gen_formula(g, {"p", "q"}, {"a"}, 2);
      padded.steps.insert(padded.steps.begin(),
                          ProofStep{Formula::implies(x, Formula::implies(y, x)), ByAxiom{AxiomTag::Ax1}});
    }
    for (auto& s : padded.steps) {
      if (auto* m = std::get_if<ByMP>(&s.why)) {
        if (m->minor) m->minor += extra;
        if (m->major) m->major += extra;
      } else if (auto* n = std::get_if<ByNec>(&s.why)) {
        n->step += extra;
      }
    }
    const auto res = check_proof(padded);
    CHECK(res.ok == base.ok);
    if (!base.ok) CHECK(res.step == base.step + extra);

    Proof middle = pf;
    middle.steps.insert(middle.steps.end() - 1, ProofStep{F("p -> (p -> p)"), ByAxiom{AxiomTag::Ax1}});
    const auto mid = check_proof(middle);
    CHECK(mid.ok == base.ok);
    if (!base.ok) CHECK(mid.step == (base.step == pf.steps.size() ? base.step + 1 : base.step));
  }
}
