#include "bes/bridge.hpp"

#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "bes/io.hpp"
#include "bes/parallel.hpp"

namespace bes {

std::string reading_name(Rule3aReading r) { return r == Rule3aReading::Inclusive ? "inclusive" : "strict"; }
std::string reading_name(Rule3bReading r) { return r == Rule3bReading::Corrected ? "corrected" : "printed"; }

std::pair<KripkeModel, std::vector<Atom>> disambiguate_model(const KripkeModel& m, const Formula& f) {
  if (!check_frame(m).is_s5()) throw std::invalid_argument("model is not S5");
  if (m.size() == 0) throw std::invalid_argument("model has no worlds");
  for (const Agent& a : agents_of(f))
    if (!m.has_agent(a.name)) throw std::invalid_argument("model has no relation for agent '" + a.name + "'");
  std::set<Atom> avoid = atoms_of(f);
  for (const auto& p : m.atoms()) avoid.insert(Atom{p});
  std::vector<Atom> fresh = fresh_atoms(m.size(), avoid);
  KripkeModel prime = m;
  for (std::size_t v = 0; v < m.size(); ++v)
    for (std::size_t u = 0; u < m.size(); ++u)
      if (u != v) prime.set_true(fresh[v].name, u);
  return {std::move(prime), std::move(fresh)};
}

UniversePtr bridge_universe(const Formula& f, const std::vector<Atom>& fresh) {
  std::vector<std::string> atoms;
  for (const Atom& a : atoms_of(f)) atoms.push_back(a.name);
  for (const Atom& a : fresh) atoms.push_back(a.name);
  return make_universe(atoms, 1);
}

Base build_seed_base(std::size_t w, const KripkeModel& prime, const std::vector<Atom>& fresh, const UniversePtr& u) {
  const Atom& qw = fresh.at(w);
  std::vector<std::size_t> rules;
  for (const Atom& p : u->alphabet().atoms())
    if (prime.is_true(p.name, w)) rules.push_back(u->rule_index({}, p));
  for (std::size_t v = 0; v < fresh.size(); ++v)
    if (v != w) rules.push_back(u->rule_index({}, fresh[v]));
  for (const Atom& p : u->alphabet().atoms()) {
    if (prime.is_true(p.name, w)) continue;
    rules.push_back(u->rule_index({p}, qw));
    rules.push_back(u->rule_index({qw}, p));
  }
  return Base::from_rules(u, rules);
}

Base build_world_base(const Base& aw, const Atom& q_w) {
  auto keep = [&](const Base& b) { return !proves_atom(b, q_w); };
  if (!keep(aw)) throw std::invalid_argument("seed base already derives " + q_w.name);
  Base greedy = extend_preserving(aw, keep);
  if (is_maximally_consistent(greedy) && keep(greedy)) return greedy;
  if (auto b = exhaustive_extension(aw, keep)) return *b;
  throw std::runtime_error("no maximally consistent extension avoiding " + q_w.name);
}

namespace {

// Seeds whose equivalence closure joins every member of `s` (and of `t`)
// into one class: a spanning star instead of all pairs, same s5_closure.
void link(std::vector<BasePair>& seeds, const BitSet& s, const BitSet& t) {
  const std::size_t n = s.size();
  const std::size_t root = s.any() ? s.first() : t.first();
  if (root >= n) return;
  s.for_each([&](std::size_t b) { seeds.push_back({root, b}); });
  t.for_each([&](std::size_t b) { seeds.push_back({root, b}); });
}

}  // namespace

RelationFamily build_relation_family(const KripkeModel& prime, const std::vector<Base>& world_bases,
                                     const BaseSpacePtr& space, const BridgeOptions& opts) {
  const std::size_t n = space->size();
  const std::size_t worlds = prime.size();
  if (world_bases.size() != worlds) throw std::invalid_argument("one world base per world expected");

  // Number of maximally consistent proper supersets of each base.
  std::vector<std::uint32_t> sup(n, 0);
  space->maxcons_set().for_each([&](std::size_t b) { sup[b] = 1; });
  for (std::size_t bit = 0; bit < space->rule_count(); ++bit) {
    const std::size_t m = std::size_t{1} << bit;
    for (std::size_t b = 0; b < n; ++b)
      if (!(b & m)) sup[b] += sup[b | m];
  }
  BitSet unique(n), several(n), sole(n);
  for (std::size_t b = 0; b < n; ++b) {
    const std::uint32_t strict = sup[b] - (space->maximally_consistent(BaseId{b}) ? 1 : 0);
    if (strict == 1) unique.set(b);
    if (sup[b] == 1) sole.set(b);
    if (strict >= 2) several.set(b);
  }

  std::vector<BitSet> below(worlds, BitSet(n));
  std::vector<BitSet> strictly_below(worlds);
  BitSet any_below(n);
  for (std::size_t w = 0; w < worlds; ++w) {
    const std::size_t bw = world_bases[w].id().index;
    below[w].set(bw);
    below[w].down_closure();
    strictly_below[w] = below[w];
    strictly_below[w].reset(bw);
    any_below |= below[w];
  }
  const BitSet consistent = space->consistent_set();
  const BitSet none_below = consistent - any_below;

  RelationFamily fam;
  fam.space = space;
  fam.label = "bridge";
  const auto agents = prime.agents();
  std::vector<Relation> rels(agents.size());
  parallel_for(opts.jobs, agents.size(), [&](std::size_t ai) {
    const std::string& a = agents[ai];
    std::vector<BasePair> seeds;
    // (2)
    link(seeds, space->inconsistent_set(), BitSet(n));
    // (3c)
    link(seeds, none_below, BitSet(n));
    for (std::size_t w = 0; w < worlds; ++w) {
      for (std::size_t v = 0; v < worlds; ++v) {
        if (!prime.related(a, w, v)) continue;
        // (1)
        seeds.push_back({world_bases[w].id().index, world_bases[v].id().index});
        // (3a)
        const BitSet uw = opts.rule_3a == Rule3aReading::Inclusive ? below[w] & sole : strictly_below[w] & unique;
        const BitSet uv = opts.rule_3a == Rule3aReading::Inclusive ? below[v] & sole : strictly_below[v] & unique;
        if (uw.any() && uv.any()) link(seeds, uw, uv);
        // (3b)
        if (opts.rule_3b == Rule3bReading::Corrected) {
          const BitSet gw = strictly_below[w] & several;
          const BitSet gv = strictly_below[v] & several;
          if (gw.any() && gv.any()) link(seeds, gw, gv);
        } else {
          const BitSet h = strictly_below[w] & strictly_below[v] & several;
          const BitSet c = several | (unique - below[v]);
          if (h.any() && c.any()) link(seeds, h, c);
        }
      }
    }
    rels[ai] = s5_closure(seeds, n);
  });
  for (std::size_t ai = 0; ai < agents.size(); ++ai) fam.per_agent.emplace(agents[ai], std::move(rels[ai]));
  return fam;
}

std::string BridgeReport::to_string() const {
  std::ostringstream os;
  os << modal.to_string();
  os << "BRIDGE modal=" << (modal_passed() ? "pass" : "fail") << '\n';
  for (const auto& f : modal.failures()) os << "BRIDGE modal-failure " << f << '\n';
  for (const auto& m : atom_mismatches) os << "BRIDGE atom-mismatch " << m << '\n';
  for (const auto& m : mismatches)
    os << "BRIDGE mismatch world=" << m.world << " formula=" << m.formula << " bes=" << m.bes
       << " kripke=" << m.kripke << '\n';
  os << "BRIDGE correspondence checks=" << correspondence_checks << " mismatches=" << mismatches.size()
     << " result=" << (correspondence_passed() ? "pass" : "fail") << '\n';
  return os.str();
}

BridgeReport verify_bridge(const BridgeArtifacts& art, const Formula& f) {
  BridgeReport r;
  r.modal = check_modal_relation(art.family, art.options.jobs);
  const auto& alphabet = art.universe->alphabet();
  for (std::size_t u = 0; u < art.prime.size(); ++u) {
    AtomMask expected = 0;
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (art.prime.is_true(alphabet[i].name, u)) expected |= AtomMask{1} << i;
    if (art.space->closure(art.world_bases[u].id()) != expected)
      r.atom_mismatches.push_back(art.prime.world(u) + " " + art.world_bases[u].to_string());
  }
  EvalCache cache(art.family);
  for (const Formula& sub : subformulas(f)) {
    for (std::size_t u = 0; u < art.prime.size(); ++u) {
      ++r.correspondence_checks;
      const bool b = cache.holds(sub, art.world_bases[u].id());
      const bool k = kripke_eval(art.prime, u, sub);
      if (b != k) r.mismatches.push_back({print_formula(sub), art.prime.world(u), b, k});
    }
  }
  return r;
}

BridgeArtifacts run_bridge(const KripkeModel& m, const Formula& f, const BridgeOptions& opts) {
  BridgeArtifacts art;
  art.formula = f;
  art.options = opts;
  art.original = m;
  std::tie(art.prime, art.fresh) = disambiguate_model(m, f);
  art.universe = bridge_universe(f, art.fresh);
  art.space = std::make_shared<const BaseSpace>(art.universe, opts.hard_cap);
  const std::size_t worlds = m.size();
  art.seed_bases.assign(worlds, Base::empty(art.universe));
  art.world_bases.assign(worlds, Base::empty(art.universe));
  parallel_for(opts.jobs, worlds, [&](std::size_t w) {
    art.seed_bases[w] = build_seed_base(w, art.prime, art.fresh, art.universe);
    art.world_bases[w] = build_world_base(art.seed_bases[w], art.fresh[w]);
  });
  art.family = build_relation_family(art.prime, art.world_bases, art.space, opts);
  art.report = verify_bridge(art, f);
  return art;
}

std::string CounterbaseResult::summary_line() const {
  if (!countermodel) return "no countermodel up to bound";
  std::ostringstream os;
  os << "REFUTED at base " << base->index << " world=" << countermodel->model.world(countermodel->world)
     << " worlds=" << countermodel->model.size() << " confirmed=" << (confirmed ? "yes" : "no")
     << " modal=" << (artifacts->report.modal_passed() ? "pass" : "fail")
     << " correspondence=" << (artifacts->report.correspondence_passed() ? "pass" : "fail");
  return os.str();
}

CounterbaseResult countermodel_to_counterbase(const Formula& f, const std::vector<std::string>& agents,
                                              std::size_t max_worlds, const BridgeOptions& opts) {
  CounterbaseResult r;
  r.countermodel = kripke_countermodel_search(f, agents, max_worlds);
  if (!r.countermodel) return r;
  r.artifacts = run_bridge(r.countermodel->model, f, opts);
  r.base = r.artifacts->world_bases[r.countermodel->world].id();
  r.confirmed = !bes_holds(f, *r.base, r.artifacts->family, nullptr);
  return r;
}

void write_bridge_artifacts(const BridgeArtifacts& art, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir + "': " + ec.message());
  const fs::path root(dir);
  write_file((root / "model.orig").string(), write_model_file(art.original));
  write_file((root / "model.prime").string(), write_model_file(art.prime));
  write_file((root / "universe.rules").string(), write_universe_file(*art.universe));
  for (std::size_t w = 0; w < art.prime.size(); ++w)
    write_file((root / ("base_" + art.prime.world(w) + ".rules")).string(),
               write_rule_file(*art.universe, art.world_bases[w].members()));
  write_file((root / "relations.txt").string(), write_relation_file(art.family));

  std::ostringstream os;
  os << "formula: " << print_formula(art.formula) << '\n';
  os << "rule_3a: " << reading_name(art.options.rule_3a) << '\n';
  os << "rule_3b: " << reading_name(art.options.rule_3b) << '\n';
  os << "world bases avoid deriving their own q atom\n";
  for (std::size_t w = 0; w < art.prime.size(); ++w) {
    os << "world " << art.prime.world(w) << " q=" << art.fresh[w].name
       << " seed=" << art.seed_bases[w].to_string() << " base=" << art.world_bases[w].id().index << ' '
       << art.world_bases[w].to_string() << '\n';
  }
  os << art.report.to_string();
  write_file((root / "report.txt").string(), os.str());
}

}  // namespace bes
