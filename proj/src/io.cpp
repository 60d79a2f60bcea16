#include "bes/io.hpp"

#include <fstream>
#include <sstream>

namespace bes {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Calls f(line number, stripped line) for each non-empty line.
template <class F>
void for_each_line(const std::string& text, F f) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (!line.empty()) f(lineno, line);
  }
}

ParseError line_error(int lineno, const std::string& msg) {
  return ParseError("line " + std::to_string(lineno) + ": " + msg, lineno, 1);
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

std::uint64_t parse_id(int lineno, const std::string& w, std::size_t n) {
  std::uint64_t v = 0;
  try {
    std::size_t used = 0;
    v = std::stoull(w, &used);
    if (used != w.size()) throw std::invalid_argument(w);
  } catch (const std::exception&) {
    throw line_error(lineno, "bad base id '" + w + "'");
  }
  if (v >= n) throw line_error(lineno, "base id " + w + " is outside the universe");
  return v;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

RuleFile parse_rule_file(const std::string& text, const UniversePtr& fallback) {
  std::optional<std::vector<std::string>> atoms;
  std::size_t cap = fallback ? fallback->premise_cap() : 1;
  std::vector<std::pair<int, std::string>> rule_lines;
  for_each_line(text, [&](int lineno, const std::string& line) {
    if (starts_with(line, "atoms:")) {
      if (atoms) throw line_error(lineno, "duplicate atoms header");
      atoms = words(line.substr(6));
    } else if (starts_with(line, "premise_cap:")) {
      try {
        cap = std::stoul(trim(line.substr(12)));
      } catch (const std::exception&) {
        throw line_error(lineno, "bad premise_cap");
      }
    } else {
      rule_lines.emplace_back(lineno, line);
    }
  });
  RuleFile rf;
  if (atoms) {
    try {
      rf.universe = make_universe(*atoms, cap);
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad universe header: ") + e.what(), 1, 1);
    }
  } else if (fallback) {
    rf.universe = fallback;
  } else {
    throw ParseError("rule file has no atoms: header", 1, 1);
  }
  for (const auto& [lineno, line] : rule_lines) {
    const auto arrow = line.find("=>");
    if (arrow == std::string::npos) throw line_error(lineno, "expected '=>'");
    std::vector<Atom> premises;
    for (const auto& w : words(line.substr(0, arrow))) premises.push_back(Atom{w});
    const auto concl = words(line.substr(arrow + 2));
    if (concl.size() != 1) throw line_error(lineno, "a rule has exactly one conclusion");
    try {
      rf.members |= RuleMask{1} << rf.universe->rule_index(premises, Atom{concl[0]});
    } catch (const std::exception& e) {
      throw line_error(lineno, std::string("rule not in universe: ") + e.what());
    }
  }
  return rf;
}

std::string write_rule_file(const RuleUniverse& u, RuleMask members) {
  std::ostringstream os;
  os << "atoms:";
  for (const auto& a : u.alphabet().atoms()) os << ' ' << a.name;
  os << "\npremise_cap: " << u.premise_cap() << '\n';
  for (std::size_t i = 0; i < u.rule_count(); ++i)
    if ((members >> i) & 1U) os << u.rule_to_string(i) << '\n';
  return os.str();
}

std::string write_universe_file(const RuleUniverse& u) { return write_rule_file(u, u.all_rules()); }

std::map<std::string, Relation> parse_relation_file(const std::string& text, std::size_t n) {
  std::map<std::string, std::vector<BitSet>> rows;
  std::vector<BitSet>* current = nullptr;
  for_each_line(text, [&](int lineno, const std::string& line) {
    if (starts_with(line, "agent:")) {
      const auto w = words(line.substr(6));
      if (w.size() != 1 || !is_identifier(w[0])) throw line_error(lineno, "expected 'agent: <name>'");
      if (rows.count(w[0])) throw line_error(lineno, "duplicate agent section '" + w[0] + "'");
      current = &rows.emplace(w[0], std::vector<BitSet>(n, BitSet(n))).first->second;
      return;
    }
    if (!current) throw line_error(lineno, "pair before any agent header");
    if (starts_with(line, "block:")) {
      BitSet block(n);
      for (const auto& w : words(line.substr(6))) block.set(parse_id(lineno, w, n));
      block.for_each([&](std::size_t i) { (*current)[i] |= block; });
      return;
    }
    const auto w = words(line);
    if (w.size() != 2) throw line_error(lineno, "expected 'i j'");
    (*current)[parse_id(lineno, w[0], n)].set(parse_id(lineno, w[1], n));
  });
  std::map<std::string, Relation> out;
  for (auto& [agent, r] : rows) out.emplace(agent, Relation::from_rows(r));
  return out;
}

std::string write_relation_file(const RelationFamily& fam) {
  std::ostringstream os;
  for (const auto& [agent, r] : fam.per_agent) {
    os << "agent: " << agent << '\n';
    const auto classes = r.equivalence_classes();
    if (!classes.empty()) {
      for (const auto& cls : classes) {
        os << "block:";
        for (auto b : cls) os << ' ' << b;
        os << '\n';
      }
    } else {
      for (auto [a, b] : r.pairs()) os << a << ' ' << b << '\n';
    }
  }
  return os.str();
}

KripkeModel parse_model_file(const std::string& text) {
  std::optional<KripkeModel> m;
  for_each_line(text, [&](int lineno, const std::string& line) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw line_error(lineno, "expected a 'key: value' line");
    const auto key = words(line.substr(0, colon));
    const std::string rest = line.substr(colon + 1);
    auto world = [&](const std::string& name) {
      auto i = m->world_index(name);
      if (!i) throw line_error(lineno, "unknown world '" + name + "'");
      return *i;
    };
    try {
      if (key.size() == 1 && key[0] == "worlds") {
        if (m) throw line_error(lineno, "duplicate worlds line");
        m = KripkeModel(words(rest));
        return;
      }
      if (!m) throw line_error(lineno, "worlds line must come first");
      if (key.size() == 2 && key[0] == "agent") {
        m->add_agent(key[1]);
        std::istringstream pairs(rest);
        for (std::string item; std::getline(pairs, item, ',');) {
          const auto w = words(item);
          if (w.empty()) continue;
          if (w.size() != 2) throw line_error(lineno, "expected world pairs 'w v'");
          m->add_edge(key[1], world(w[0]), world(w[1]));
        }
      } else if (key.size() == 2 && key[0] == "val") {
        if (!is_identifier(key[1]) || key[1] == "bot") throw line_error(lineno, "bad atom '" + key[1] + "'");
        for (const auto& w : words(rest)) m->set_true(key[1], world(w));
      } else {
        throw line_error(lineno, "unknown line '" + line + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw line_error(lineno, e.what());
    }
  });
  if (!m) throw ParseError("model file has no worlds line", 1, 1);
  return *m;
}

std::string write_model_file(const KripkeModel& m) {
  std::ostringstream os;
  os << "worlds:";
  for (const auto& w : m.worlds()) os << ' ' << w;
  os << '\n';
  for (const auto& a : m.agents()) {
    os << "agent " << a << ":";
    bool first = true;
    for (auto [i, j] : m.edges(a)) {
      os << (first ? " " : ", ") << m.world(i) << ' ' << m.world(j);
      first = false;
    }
    os << '\n';
  }
  for (const auto& p : m.atoms()) {
    os << "val " << p << ":";
    for (std::size_t w = 0; w < m.size(); ++w)
      if (m.is_true(p, w)) os << ' ' << m.world(w);
    os << '\n';
  }
  return os.str();
}

}  // namespace bes
