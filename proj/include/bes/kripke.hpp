// Multi-agent Kripke models: evaluation, frame conditions and bounded
// countermodel search over S5 models.

#ifndef BES_KRIPKE_HPP
#define BES_KRIPKE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bes/formula.hpp"

namespace bes {

class KripkeModel {
 public:
  KripkeModel() = default;
  /// World names must be distinct identifiers.
  explicit KripkeModel(std::vector<std::string> worlds);

  std::size_t size() const { return worlds_.size(); }
  const std::vector<std::string>& worlds() const { return worlds_; }
  const std::string& world(std::size_t i) const { return worlds_.at(i); }
  std::optional<std::size_t> world_index(const std::string& name) const;
  /// Throws std::out_of_range for an unknown world.
  std::size_t require_world(const std::string& name) const;

  /// Declares an agent with an empty relation if it has none yet.
  void add_agent(const std::string& agent);
  void add_edge(const std::string& agent, std::size_t from, std::size_t to);
  void set_true(const std::string& atom, std::size_t world);
  void set_false(const std::string& atom, std::size_t world);

  std::vector<std::string> agents() const;
  bool has_agent(const std::string& agent) const { return relations_.count(agent) > 0; }
  bool related(const std::string& agent, std::size_t from, std::size_t to) const;
  /// Atoms absent from the valuation are false everywhere.
  bool is_true(const std::string& atom, std::size_t world) const;
  std::vector<std::string> atoms() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges(const std::string& agent) const;

  bool operator==(const KripkeModel&) const = default;

 private:
  std::vector<std::string> worlds_;
  std::map<std::string, std::vector<std::vector<bool>>> relations_;
  std::map<std::string, std::vector<bool>> valuation_;
};

/// Throws std::out_of_range for an unknown world index or agent.
bool kripke_eval(const KripkeModel& m, std::size_t world, const Formula& f);
bool kripke_eval(const KripkeModel& m, const std::string& world, const Formula& f);

struct FrameReport {
  struct AgentFrame {
    std::string agent;
    bool reflexive = false;
    bool transitive = false;
    bool euclidean = false;
    bool symmetric = false;
    bool is_s5() const { return reflexive && transitive && euclidean; }
  };
  std::vector<AgentFrame> agents;
  bool is_s5() const;
  std::string to_string() const;
};

FrameReport check_frame(const KripkeModel& m);

/// Restricted growth strings of length n: every set partition of n
/// elements, block labels in order of first occurrence.
std::vector<std::vector<std::size_t>> set_partitions(std::size_t n);

/// Calls f(model) for every S5 model with exactly `worlds` worlds named
/// w0, w1, ..., one partition per agent and every valuation of `atoms`.
/// Order: agent partitions (first agent slowest), then valuations in
/// binary counting order.  Stops early when f returns false.
void for_each_s5_model(std::size_t worlds, const std::vector<std::string>& agents,
                       const std::vector<std::string>& atoms, const std::function<bool(const KripkeModel&)>& f);

struct Countermodel {
  KripkeModel model;
  std::size_t world = 0;
};

/// First (model, world) refuting `f` among S5 models with 1..max_worlds
/// worlds over atoms_of(f).  nullopt means none exists up to the bound, not
/// that `f` is valid.
std::optional<Countermodel> kripke_countermodel_search(const Formula& f, std::vector<std::string> agents,
                                                       std::size_t max_worlds);

}  // namespace bes

#endif  // BES_KRIPKE_HPP
