#include "bes/kripke.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bes {

KripkeModel::KripkeModel(std::vector<std::string> worlds) : worlds_(std::move(worlds)) {
  std::set<std::string> seen;
  for (const auto& w : worlds_) {
    if (!is_identifier(w)) throw std::invalid_argument("invalid world name '" + w + "'");
    if (!seen.insert(w).second) throw std::invalid_argument("duplicate world '" + w + "'");
  }
}

std::optional<std::size_t> KripkeModel::world_index(const std::string& name) const {
  auto it = std::find(worlds_.begin(), worlds_.end(), name);
  if (it == worlds_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - worlds_.begin());
}

std::size_t KripkeModel::require_world(const std::string& name) const {
  auto i = world_index(name);
  if (!i) throw std::out_of_range("unknown world '" + name + "'");
  return *i;
}

void KripkeModel::add_agent(const std::string& agent) {
  if (!is_identifier(agent)) throw std::invalid_argument("invalid agent name '" + agent + "'");
  relations_.try_emplace(agent, size(), std::vector<bool>(size(), false));
}

void KripkeModel::add_edge(const std::string& agent, std::size_t from, std::size_t to) {
  if (from >= size() || to >= size()) throw std::out_of_range("edge endpoint is not a world");
  add_agent(agent);
  relations_[agent][from][to] = true;
}

void KripkeModel::set_true(const std::string& atom, std::size_t world) {
  if (world >= size()) throw std::out_of_range("valuation world is not a world");
  if (!is_identifier(atom)) throw std::invalid_argument("invalid atom name '" + atom + "'");
  valuation_.try_emplace(atom, size(), false).first->second[world] = true;
}

void KripkeModel::set_false(const std::string& atom, std::size_t world) {
  if (world >= size()) throw std::out_of_range("valuation world is not a world");
  auto it = valuation_.find(atom);
  if (it != valuation_.end()) it->second[world] = false;
}

std::vector<std::string> KripkeModel::agents() const {
  std::vector<std::string> out;
  for (const auto& [a, _] : relations_) out.push_back(a);
  return out;
}

bool KripkeModel::related(const std::string& agent, std::size_t from, std::size_t to) const {
  auto it = relations_.find(agent);
  if (it == relations_.end()) throw std::out_of_range("unknown agent '" + agent + "'");
  return it->second.at(from).at(to);
}

bool KripkeModel::is_true(const std::string& atom, std::size_t world) const {
  auto it = valuation_.find(atom);
  return it != valuation_.end() && it->second.at(world);
}

std::vector<std::string> KripkeModel::atoms() const {
  std::vector<std::string> out;
  for (const auto& [a, _] : valuation_) out.push_back(a);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> KripkeModel::edges(const std::string& agent) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (related(agent, i, j)) out.emplace_back(i, j);
  return out;
}

bool kripke_eval(const KripkeModel& m, std::size_t world, const Formula& f) {
  if (world >= m.size()) throw std::out_of_range("unknown world index " + std::to_string(world));
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return m.is_true(f.name(), world);
    case Formula::Kind::Bottom:
      return false;
    case Formula::Kind::Implies:
      return !kripke_eval(m, world, f.lhs()) || kripke_eval(m, world, f.rhs());
    case Formula::Kind::Know:
      for (std::size_t v = 0; v < m.size(); ++v)
        if (m.related(f.name(), world, v) && !kripke_eval(m, v, f.body())) return false;
      return true;
  }
  return false;
}

bool kripke_eval(const KripkeModel& m, const std::string& world, const Formula& f) {
  return kripke_eval(m, m.require_world(world), f);
}

bool FrameReport::is_s5() const {
  return std::all_of(agents.begin(), agents.end(), [](const AgentFrame& a) { return a.is_s5(); });
}

std::string FrameReport::to_string() const {
  std::ostringstream os;
  for (const auto& a : agents) {
    os << "FRAME agent=" << a.agent << " reflexive=" << a.reflexive << " transitive=" << a.transitive
       << " euclidean=" << a.euclidean << " s5=" << a.is_s5() << '\n';
  }
  os << "FRAME s5=" << is_s5() << '\n';
  return os.str();
}

FrameReport check_frame(const KripkeModel& m) {
  FrameReport report;
  const std::size_t n = m.size();
  for (const auto& agent : m.agents()) {
    auto r = [&](std::size_t i, std::size_t j) { return m.related(agent, i, j); };
    FrameReport::AgentFrame f{agent, true, true, true, true};
    for (std::size_t x = 0; x < n; ++x) {
      f.reflexive = f.reflexive && r(x, x);
      for (std::size_t y = 0; y < n; ++y) {
        if (!r(x, y)) continue;
        f.symmetric = f.symmetric && r(y, x);
        for (std::size_t z = 0; z < n; ++z) {
          if (r(y, z) && !r(x, z)) f.transitive = false;
          if (r(x, z) && !r(y, z)) f.euclidean = false;
        }
      }
    }
    report.agents.push_back(f);
  }
  return report;
}

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  if (n == 0) return {{}};
  std::vector<std::size_t> rgs(n, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t max_label) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (std::size_t l = 0; l <= max_label + 1; ++l) {
      rgs[i] = l;
      rec(i + 1, std::max(max_label, l));
    }
  };
  rec(1, 0);
  return out;
}

void for_each_s5_model(std::size_t worlds, const std::vector<std::string>& agents,
                       const std::vector<std::string>& atoms, const std::function<bool(const KripkeModel&)>& f) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < worlds; ++i) names.push_back("w" + std::to_string(i));
  const auto parts = set_partitions(worlds);
  const std::size_t val_bits = worlds * atoms.size();
  if (val_bits >= 63) throw std::invalid_argument("valuation space too large");
  std::vector<std::size_t> choice(agents.size(), 0);
  while (true) {
    KripkeModel frame(names);
    for (std::size_t a = 0; a < agents.size(); ++a) {
      frame.add_agent(agents[a]);
      const auto& p = parts[choice[a]];
      for (std::size_t i = 0; i < worlds; ++i)
        for (std::size_t j = 0; j < worlds; ++j)
          if (p[i] == p[j]) frame.add_edge(agents[a], i, j);
    }
    for (std::uint64_t val = 0; val < (std::uint64_t{1} << val_bits); ++val) {
      KripkeModel m = frame;
      for (std::size_t k = 0; k < atoms.size(); ++k)
        for (std::size_t w = 0; w < worlds; ++w)
          if ((val >> (k * worlds + w)) & 1U) m.set_true(atoms[k], w);
      if (!f(m)) return;
    }
    std::size_t k = agents.size();
    while (k > 0) {
      if (++choice[k - 1] < parts.size()) break;
      choice[k - 1] = 0;
      --k;
    }
    if (k == 0) return;
  }
}

std::optional<Countermodel> kripke_countermodel_search(const Formula& f, std::vector<std::string> agents,
                                                       std::size_t max_worlds) {
  if (max_worlds == 0) throw std::invalid_argument("max_worlds must be at least 1");
  for (const Agent& a : agents_of(f))
    if (std::find(agents.begin(), agents.end(), a.name) == agents.end()) agents.push_back(a.name);
  std::sort(agents.begin(), agents.end());
  if (agents.empty()) agents.push_back("a");
  std::vector<std::string> atoms;
  for (const Atom& a : atoms_of(f)) atoms.push_back(a.name);

  std::optional<Countermodel> found;
  for (std::size_t n = 1; n <= max_worlds && !found; ++n) {
    for_each_s5_model(n, agents, atoms, [&](const KripkeModel& m) {
      for (std::size_t w = 0; w < m.size(); ++w) {
        if (!kripke_eval(m, w, f)) {
          found = Countermodel{m, w};
          return false;
        }
      }
      return true;
    });
  }
  return found;
}

}  // namespace bes
