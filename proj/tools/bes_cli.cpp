// bes: command-line front-end.  Exit codes: 0 ok/valid/true, 1 invalid/
// refuted/false/violation, 2 usage or input error.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bes/bes_eval.hpp"
#include "bes/bridge.hpp"
#include "bes/hilbert.hpp"
#include "bes/io.hpp"
#include "bes/kripke.hpp"
#include "bes/lemma_suite.hpp"

using namespace bes;

namespace {

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

Formula parse_arg(const std::string& text) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

struct UniverseOpts {
  std::string atoms;
  std::size_t cap = 1;

  // Alphabet from --atoms, else the formula's atoms, else {p}.
  UniversePtr make(const std::vector<Formula>& formulas = {}) const {
    std::vector<std::string> names = split_list(atoms);
    if (names.empty()) {
      std::set<std::string> seen;
      for (const Formula& f : formulas)
        for (const Atom& a : atoms_of(f)) seen.insert(a.name);
      names.assign(seen.begin(), seen.end());
    }
    if (names.empty()) names.push_back("p");
    return make_universe(names, cap);
  }
  void add(CLI::App* app) {
    app->add_option("--atoms", atoms, "comma-separated alphabet (default: atoms of the formula)");
    app->add_option("--cap", cap, "premise cap")->capture_default_str();
  }
};

std::vector<std::string> agents_or_default(const std::string& flag, const std::vector<Formula>& formulas) {
  std::vector<std::string> agents = split_list(flag);
  if (agents.empty()) {
    std::set<std::string> seen;
    for (const Formula& f : formulas)
      for (const Agent& a : agents_of(f)) seen.insert(a.name);
    agents.assign(seen.begin(), seen.end());
  }
  if (agents.empty()) agents.push_back("a");
  return agents;
}

RelationFamily family_from_file(const std::string& path, const BaseSpacePtr& space) {
  RelationFamily fam;
  fam.space = space;
  fam.per_agent = parse_relation_file(read_file(path), space->size());
  fam.label = "file";
  if (fam.per_agent.empty()) throw UsageError("relation file '" + path + "' has no agent sections");
  return fam;
}

// ---------------------------------------------------------------------------

int cmd_parse(const std::string& text) {
  Formula f = Formula::bottom();
  try {
    f = parse_formula(text);
  } catch (const ParseError& e) {
    std::cout << "error: " << e.what() << '\n';
    return kNo;
  }
  std::cout << print_formula_bracketed(f) << '\n' << dump_formula(f) << '\n';
  return kOk;
}

struct ValidOpts {
  std::string formula;
  UniverseOpts u;
  std::string mode = "canonical";
  std::string agents;
  std::string relations;
  std::size_t samples = 8;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

int cmd_bes_valid(const ValidOpts& o) {
  const Formula f = parse_arg(o.formula);
  auto space = std::make_shared<const BaseSpace>(o.u.make({f}));
  std::vector<std::string> agents = agents_or_default(o.agents, {f});
  ValidityMode mode;
  if (o.mode == "canonical") {
    mode = CanonicalMode{};
  } else if (o.mode == "exhaustive") {
    mode = ExhaustiveMode{};
  } else if (o.mode == "sampled") {
    mode = SampledMode{o.samples, o.seed};
  } else if (o.mode == "explicit") {
    if (o.relations.empty()) throw UsageError("--mode explicit needs --relations");
    RelationFamily fam = family_from_file(o.relations, space);
    agents = fam.agents();
    mode = ExplicitMode{std::move(fam)};
  } else {
    throw UsageError("unknown mode '" + o.mode + "'");
  }
  Verdict v;
  try {
    v = bes_valid(f, space, mode, agents, o.jobs);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("infeasible mode: ") + e.what());
  }
  std::cout << "CONFIG formula=" << print_formula_bracketed(f) << " atoms=";
  for (std::size_t i = 0; i < space->universe()->alphabet().size(); ++i)
    std::cout << (i ? "," : "") << space->universe()->alphabet()[i].name;
  std::cout << " cap=" << space->universe()->premise_cap() << " mode=" << mode_name(mode) << " agents=" << join(agents)
            << " seed=" << o.seed << '\n';
  std::cout << "families=" << v.families_checked << " bases=" << v.bases_checked << '\n';
  if (!v.note.empty()) std::cout << "note: " << v.note << '\n';
  if (v.valid) {
    std::cout << "valid over every checked family and base\n";
  } else {
    std::cout << "counterexample base " << v.counterexample->base.index << ": "
              << space->universe()->base_to_string(v.counterexample->base.index) << '\n';
  }
  std::cout << verdict_line(v, agents) << '\n';
  return v.valid ? kOk : kNo;
}

struct HoldsOpts {
  std::string formula;
  std::string base;
  UniverseOpts u;
  std::string relations;
  std::string family = "identity";
  std::string agents;
};

int cmd_bes_holds(const HoldsOpts& o) {
  const Formula f = parse_arg(o.formula);
  const RuleFile rf = parse_rule_file(read_file(o.base), o.u.atoms.empty() ? nullptr : o.u.make());
  auto space = std::make_shared<const BaseSpace>(rf.universe);
  RelationFamily fam;
  const auto agents = agents_or_default(o.agents, {f});
  if (!o.relations.empty()) {
    fam = family_from_file(o.relations, space);
  } else if (o.family == "identity") {
    fam = identity_family(space, agents);
  } else if (o.family == "two_block") {
    fam = two_block_family(space, agents);
  } else {
    throw UsageError("unknown family '" + o.family + "'");
  }
  const bool h = bes_holds(f, BaseId{rf.members}, fam);
  std::cout << "base " << rf.members << ": " << rf.universe->base_to_string(rf.members) << '\n';
  std::cout << "HOLDS " << (h ? "true" : "false") << " base=" << rf.members << " family=" << fam.label << '\n';
  return h ? kOk : kNo;
}

int cmd_kripke(const std::string& model, const std::string& world, const std::string& formula) {
  const KripkeModel m = parse_model_file(read_file(model));
  const Formula f = parse_arg(formula);
  if (!m.world_index(world)) throw UsageError("unknown world '" + world + "'");
  for (const Agent& a : agents_of(f))
    if (!m.has_agent(a.name)) throw UsageError("model has no relation for agent '" + a.name + "'");
  const bool t = kripke_eval(m, world, f);
  std::cout << (t ? "true" : "false") << '\n';
  return t ? kOk : kNo;
}

int cmd_frame(const std::string& model) {
  const FrameReport r = check_frame(parse_model_file(read_file(model)));
  std::cout << r.to_string();
  return r.is_s5() ? kOk : kNo;
}

int cmd_hilbert(const std::string& path) {
  const Proof pf = parse_proof(read_file(path));
  const ProofCheck c = check_proof(pf);
  if (c.ok) {
    std::cout << "PROOF ok steps=" << pf.steps.size() << " conclusion=" << print_formula_bracketed(pf.conclusion())
              << '\n';
    return kOk;
  }
  std::cout << "PROOF error step=" << c.step << " reason=" << c.reason << '\n';
  return kNo;
}

struct BridgeCliOpts {
  std::string formula;
  std::string agents;
  std::size_t max_worlds = 2;
  std::string model;
  std::string out;
  std::string rule_3a = "inclusive";
  std::string rule_3b = "corrected";
  std::size_t max_rules = kDefaultEnumerationCap;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
};

int cmd_bridge(const BridgeCliOpts& o) {
  const Formula f = parse_arg(o.formula);
  BridgeOptions opts;
  opts.jobs = o.jobs;
  opts.hard_cap = o.max_rules;
  if (o.rule_3a == "strict") opts.rule_3a = Rule3aReading::Strict;
  else if (o.rule_3a != "inclusive") throw UsageError("--rule-3a is inclusive or strict");
  if (o.rule_3b == "printed") opts.rule_3b = Rule3bReading::Printed;
  else if (o.rule_3b != "corrected") throw UsageError("--rule-3b is corrected or printed");

  std::cout << "CONFIG formula=" << print_formula_bracketed(f) << " max_worlds=" << o.max_worlds
            << " rule_3a=" << reading_name(opts.rule_3a) << " rule_3b=" << reading_name(opts.rule_3b)
            << " seed=" << o.seed << '\n';

  CounterbaseResult r;
  if (!o.model.empty()) {
    const KripkeModel m = parse_model_file(read_file(o.model));
    std::optional<std::size_t> refuting;
    for (std::size_t w = 0; w < m.size() && !refuting; ++w)
      if (!kripke_eval(m, w, f)) refuting = w;
    if (refuting) {
      r.countermodel = Countermodel{m, *refuting};
      r.artifacts = run_bridge(m, f, opts);
      r.base = r.artifacts->world_bases[*refuting].id();
      r.confirmed = !bes_holds(f, *r.base, r.artifacts->family);
    } else {
      std::cout << "formula is true at every world of the model\n";
      auto art = run_bridge(m, f, opts);
      if (!o.out.empty()) write_bridge_artifacts(art, o.out);
      std::cout << art.report.to_string();
      std::cout << "BRIDGE not refuted by model\n";
      return art.report.passed() ? kOk : kNo;
    }
  } else {
    r = countermodel_to_counterbase(f, split_list(o.agents), o.max_worlds, opts);
  }
  if (r.artifacts) {
    if (!o.out.empty()) write_bridge_artifacts(*r.artifacts, o.out);
    for (std::size_t w = 0; w < r.artifacts->prime.size(); ++w)
      std::cout << "world " << r.artifacts->prime.world(w) << " base=" << r.artifacts->world_bases[w].id().index
                << ' ' << r.artifacts->world_bases[w].to_string() << '\n';
    std::cout << r.artifacts->report.to_string();
  }
  std::cout << r.summary_line() << (r.countermodel ? "" : " max_worlds=" + std::to_string(o.max_worlds)) << '\n';
  return r.countermodel ? kNo : kOk;
}

struct SuiteOpts {
  UniverseOpts u;
  std::string families = "canonical";
  std::string relations;
  std::string agents = "a";
  std::size_t samples = 8;
  std::size_t pool = 100;
  std::uint64_t seed = 7;
  std::size_t jobs = 1;
};

int cmd_suite(const SuiteOpts& o) {
  auto space = std::make_shared<const BaseSpace>(o.u.make());
  std::vector<std::string> agents = split_list(o.agents);
  if (agents.empty()) throw UsageError("--agents must name at least one agent");
  std::vector<RelationFamily> fams;
  if (o.families == "canonical") {
    fams = {identity_family(space, agents), two_block_family(space, agents)};
  } else if (o.families == "exhaustive") {
    try {
      fams = enumerate_families(space, agents);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("infeasible: ") + e.what());
    }
  } else if (o.families == "sampled") {
    fams = sample_families(space, agents, o.samples, o.seed).families;
  } else if (o.families == "file") {
    if (o.relations.empty()) throw UsageError("--families file needs --relations");
    fams = {family_from_file(o.relations, space)};
    agents = fams[0].agents();
  } else {
    throw UsageError("unknown families '" + o.families + "'");
  }
  std::cout << "CONFIG atoms=";
  for (std::size_t i = 0; i < space->universe()->alphabet().size(); ++i)
    std::cout << (i ? "," : "") << space->universe()->alphabet()[i].name;
  std::cout << " cap=" << space->universe()->premise_cap() << " families=" << o.families
            << " count=" << fams.size() << " agents=" << join(agents) << " pool=" << o.pool << " seed=" << o.seed
            << '\n';

  bool ok = true;
  std::vector<RelationFamily> good;
  for (const auto& fam : fams) {
    const ModalCheckReport check = check_modal_relation(fam, o.jobs);
    if (!check.passed()) {
      ok = false;
      std::cout << check.to_string();
      for (const auto& f : check.failures()) std::cout << "FAMILY " << fam.label << " violation=" << f << '\n';
    } else {
      good.push_back(fam);
    }
  }
  const FormulaPool pool = make_pool(*space->universe(), agents, o.pool, o.seed);
  const LemmaReport report = run_lemma_suite(space, good, pool, o.jobs);
  std::cout << report.to_string();
  ok = ok && report.passed();
  std::cout << "SUITE result=" << (ok ? "pass" : "fail") << '\n';
  return ok ? kOk : kNo;
}

int cmd_universe(const UniverseOpts& o) {
  const UniversePtr u = o.make();
  std::cout << write_universe_file(*u);
  std::cout << "# rules=" << u->rule_count() << " bases=2^" << u->rule_count() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"base-extension semantics workbench for multi-agent S5"};
  app.require_subcommand(1);

  std::string parse_text;
  auto* parse = app.add_subcommand("parse", "print a formula canonically and dump its tree");
  parse->add_option("formula", parse_text)->required();

  ValidOpts valid;
  auto* bv = app.add_subcommand("bes-valid", "check validity over bases and relation families");
  bv->add_option("formula", valid.formula)->required();
  valid.u.add(bv);
  bv->add_option("--mode", valid.mode, "canonical|exhaustive|sampled|explicit")->capture_default_str();
  bv->add_option("--agents", valid.agents, "comma-separated agents");
  bv->add_option("--relations", valid.relations, "relation file for --mode explicit");
  bv->add_option("--samples", valid.samples, "families for --mode sampled")->capture_default_str();
  bv->add_option("--seed", valid.seed)->capture_default_str();
  bv->add_option("--jobs", valid.jobs)->capture_default_str();

  HoldsOpts holds;
  auto* bh = app.add_subcommand("bes-holds", "evaluate a formula at one base");
  bh->add_option("formula", holds.formula)->required();
  bh->add_option("--base", holds.base, "rule file")->required();
  holds.u.add(bh);
  bh->add_option("--relations", holds.relations, "relation file");
  bh->add_option("--family", holds.family, "identity|two_block when no relation file")->capture_default_str();
  bh->add_option("--agents", holds.agents);

  std::string k_model, k_world, k_formula;
  auto* kr = app.add_subcommand("kripke", "evaluate a formula at a world of a model file");
  kr->add_option("model", k_model)->required();
  kr->add_option("world", k_world)->required();
  kr->add_option("formula", k_formula)->required();

  std::string f_model;
  auto* fr = app.add_subcommand("frame", "check frame properties of a model file");
  fr->add_option("model", f_model)->required();

  std::string proof_path;
  auto* hi = app.add_subcommand("hilbert", "check a proof file");
  hi->add_option("proof", proof_path)->required();

  BridgeCliOpts bridge;
  auto* br = app.add_subcommand("bridge", "Kripke countermodel to base countermodel");
  br->add_option("formula", bridge.formula)->required();
  br->add_option("--agents", bridge.agents, "extra agents for the countermodel search");
  br->add_option("--max-worlds", bridge.max_worlds)->capture_default_str();
  br->add_option("--model", bridge.model, "use this model instead of searching");
  br->add_option("--out", bridge.out, "artifact directory");
  br->add_option("--rule-3a", bridge.rule_3a, "inclusive|strict")->capture_default_str();
  br->add_option("--rule-3b", bridge.rule_3b, "corrected|printed")->capture_default_str();
  br->add_option("--max-rules", bridge.max_rules, "largest enumerable universe")->capture_default_str();
  br->add_option("--seed", bridge.seed)->capture_default_str();
  br->add_option("--jobs", bridge.jobs)->capture_default_str();

  SuiteOpts suite;
  suite.u.atoms = "p,q";
  auto* su = app.add_subcommand("suite", "run the lemma suite");
  suite.u.add(su);
  su->add_option("--families", suite.families, "canonical|exhaustive|sampled|file")->capture_default_str();
  su->add_option("--relations", suite.relations, "relation file for --families file");
  su->add_option("--agents", suite.agents)->capture_default_str();
  su->add_option("--samples", suite.samples)->capture_default_str();
  su->add_option("--pool", suite.pool, "random formulas in the pool")->capture_default_str();
  su->add_option("--seed", suite.seed)->capture_default_str();
  su->add_option("--jobs", suite.jobs)->capture_default_str();

  UniverseOpts uni;
  uni.atoms = "p,q";
  auto* un = app.add_subcommand("universe", "dump a rule universe");
  uni.add(un);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*parse) return cmd_parse(parse_text);
    if (*bv) return cmd_bes_valid(valid);
    if (*bh) return cmd_bes_holds(holds);
    if (*kr) return cmd_kripke(k_model, k_world, k_formula);
    if (*fr) return cmd_frame(f_model);
    if (*hi) return cmd_hilbert(proof_path);
    if (*br) return cmd_bridge(bridge);
    if (*su) return cmd_suite(suite);
    if (*un) return cmd_universe(uni);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
