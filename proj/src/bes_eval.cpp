#include "bes/bes_eval.hpp"

#include <stdexcept>

#include "bes/parallel.hpp"

namespace bes {

namespace {

std::size_t atom_index(const BaseSpace& space, const std::string& name) {
  auto i = space.universe()->alphabet().index_of(Atom{name});
  if (!i) throw std::out_of_range("atom '" + name + "' is not in the universe alphabet");
  return *i;
}

bool holds_pointwise(const Formula& f, std::uint64_t b, const RelationFamily& fam) {
  const BaseSpace& space = *fam.space;
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return (space.closure(BaseId{b}) >> atom_index(space, f.name())) & 1U;
    case Formula::Kind::Bottom:
      return space.inconsistent(BaseId{b});
    case Formula::Kind::Implies: {
      bool ok = true;
      for_each_superset(b, space.size(), [&](std::uint64_t c) {
        if (ok && holds_pointwise(f.lhs(), c, fam) && !holds_pointwise(f.rhs(), c, fam)) ok = false;
      });
      return ok;
    }
    case Formula::Kind::Know: {
      const Relation& r = fam.relation(f.name());
      bool ok = true;
      r.successors(b).for_each([&](std::size_t c) { ok = ok && holds_pointwise(f.body(), c, fam); });
      return ok;
    }
  }
  return false;
}

}  // namespace

const BitSet& EvalCache::truth_set(const Formula& f) {
  if (auto it = truth_.find(f); it != truth_.end()) return it->second;
  const BaseSpace& space = *fam_->space;
  BitSet result(space.size());
  switch (f.kind()) {
    case Formula::Kind::Atom:
      result = space.proving(atom_index(space, f.name()));
      break;
    case Formula::Kind::Bottom:
      result = space.inconsistent_set();
      break;
    case Formula::Kind::Implies: {
      BitSet bad = truth_set(f.lhs()) - truth_set(f.rhs());
      result = ~bad.down_closure();
      break;
    }
    case Formula::Kind::Know: {
      const Relation& r = fam_->relation(f.name());
      const BitSet& body = truth_set(f.body());
      std::vector<bool> row_ok(r.rows().size());
      for (std::size_t x = 0; x < r.rows().size(); ++x) row_ok[x] = r.rows()[x].is_subset_of(body);
      for (std::size_t b = 0; b < space.size(); ++b)
        if (row_ok[r.row_of(b)]) result.set(b);
      break;
    }
  }
  return truth_.emplace(f, std::move(result)).first->second;
}

BitSet EvalCache::consequence_set(const std::vector<Formula>& ctx, const Formula& f) {
  if (ctx.empty()) return truth_set(f);
  BitSet bad = BitSet::full(fam_->space->size());
  for (const Formula& g : ctx) bad &= truth_set(g);
  bad -= truth_set(f);
  return ~bad.down_closure();
}

bool bes_holds(const Formula& f, BaseId b, const RelationFamily& fam, EvalCache* cache) {
  if (b.index >= fam.space->size()) throw std::out_of_range("base id out of range");
  if (cache) {
    if (&cache->family() != &fam) throw std::invalid_argument("cache belongs to a different family");
    return cache->holds(f, b);
  }
  return holds_pointwise(f, b.index, fam);
}

bool bes_consequence(const std::vector<Formula>& ctx, const Formula& f, BaseId b, const RelationFamily& fam,
                     EvalCache* cache) {
  if (ctx.empty()) return bes_holds(f, b, fam, cache);
  if (b.index >= fam.space->size()) throw std::out_of_range("base id out of range");
  if (cache) return cache->consequence_set(ctx, f).test(b.index);
  bool ok = true;
  for_each_superset(b.index, fam.space->size(), [&](std::uint64_t c) {
    if (!ok) return;
    for (const Formula& g : ctx)
      if (!holds_pointwise(g, c, fam)) return;
    if (!holds_pointwise(f, c, fam)) ok = false;
  });
  return ok;
}

std::string mode_name(const ValidityMode& m) {
  switch (m.index()) {
    case 0:
      return "explicit";
    case 1:
      return "canonical";
    case 2:
      return "sampled";
    default:
      return "exhaustive";
  }
}

std::vector<RelationFamily> families_for(const ValidityMode& mode, const BaseSpacePtr& space,
                                         const std::vector<std::string>& agents) {
  if (const auto* e = std::get_if<ExplicitMode>(&mode)) return {e->family};
  if (std::holds_alternative<CanonicalMode>(mode))
    return {identity_family(space, agents), two_block_family(space, agents)};
  if (const auto* s = std::get_if<SampledMode>(&mode))
    return sample_families(space, agents, s->count, s->seed).families;
  return enumerate_families(space, agents);
}

Verdict bes_valid(const Formula& f, const BaseSpacePtr& space, const ValidityMode& mode,
                  std::vector<std::string> agents, std::size_t jobs) {
  if (agents.empty()) {
    if (const auto* e = std::get_if<ExplicitMode>(&mode)) {
      agents = e->family.agents();
    } else {
      for (const Agent& a : agents_of(f)) agents.push_back(a.name);
      if (agents.empty()) agents.push_back("a");
    }
  }
  Verdict v;
  std::vector<RelationFamily> fams;
  if (const auto* s = std::get_if<SampledMode>(&mode)) {
    SampleOutcome outcome = sample_families(space, agents, s->count, s->seed);
    if (outcome.exhausted)
      v.note = "sampling budget exhausted after " + std::to_string(outcome.attempts) + " attempts; " +
               std::to_string(outcome.families.size()) + " families accepted";
    fams = std::move(outcome.families);
  } else {
    fams = families_for(mode, space, agents);
  }
  for (const Agent& a : agents_of(f)) {
    for (const auto& fam : fams)
      if (!fam.per_agent.count(a.name))
        throw std::out_of_range("agent '" + a.name + "' has no relation in family " + fam.label);
  }

  std::vector<std::size_t> first_failure(fams.size(), space->size());
  parallel_for(jobs, fams.size(), [&](std::size_t i) {
    EvalCache cache(fams[i]);
    first_failure[i] = (~cache.truth_set(f)).first();
  });
  v.families_checked = fams.size();
  v.bases_checked = space->size();
  for (std::size_t i = 0; i < fams.size(); ++i) {
    if (first_failure[i] < space->size()) {
      v.valid = false;
      v.counterexample = Counterexample{BaseId{first_failure[i]}, i, fams[i].label};
      break;
    }
  }
  return v;
}

std::string verdict_line(const Verdict& v, const std::vector<std::string>& agents) {
  if (v.valid) return "VERDICT valid";
  std::string line = "VERDICT invalid base=" + std::to_string(v.counterexample->base.index) + " agent=";
  for (std::size_t i = 0; i < agents.size(); ++i) line += (i ? "," : "") + agents[i];
  return line + " family=" + v.counterexample->family_label;
}

}  // namespace bes
