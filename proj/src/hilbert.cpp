#include "bes/hilbert.hpp"

#include <sstream>

namespace bes {

namespace {

bool is_neg(const Formula& f) { return f.is_negation(); }

bool ax1(const Formula& f) {
  return f.is_implies() && f.rhs().is_implies() && f.rhs().rhs() == f.lhs();
}

bool ax2(const Formula& f) {
  if (!f.is_implies()) return false;
  const Formula& l = f.lhs();
  const Formula& r = f.rhs();
  if (!l.is_implies() || !l.rhs().is_implies() || !r.is_implies()) return false;
  if (!r.lhs().is_implies() || !r.rhs().is_implies()) return false;
  const Formula& phi = l.lhs();
  const Formula& psi = l.rhs().lhs();
  const Formula& chi = l.rhs().rhs();
  return r.lhs().lhs() == phi && r.lhs().rhs() == psi && r.rhs().lhs() == phi && r.rhs().rhs() == chi;
}

bool ax3(const Formula& f) {
  if (!f.is_implies() || !f.lhs().is_implies() || !f.rhs().is_implies()) return false;
  const Formula& l = f.lhs();
  if (!is_neg(l.lhs()) || !is_neg(l.rhs())) return false;
  return f.rhs().lhs() == l.rhs().lhs() && f.rhs().rhs() == l.lhs().lhs();
}

bool axk(const Formula& f) {
  if (!f.is_implies() || !f.lhs().is_know() || !f.rhs().is_implies()) return false;
  const Formula& k = f.lhs();
  const Formula& a = f.rhs().lhs();
  const Formula& b = f.rhs().rhs();
  if (!k.body().is_implies() || !a.is_know() || !b.is_know()) return false;
  return a.name() == k.name() && b.name() == k.name() && a.body() == k.body().lhs() && b.body() == k.body().rhs();
}

bool axt(const Formula& f) { return f.is_implies() && f.lhs().is_know() && f.lhs().body() == f.rhs(); }

bool ax4(const Formula& f) {
  return f.is_implies() && f.lhs().is_know() && f.rhs().is_know() && f.rhs().name() == f.lhs().name() &&
         f.rhs().body() == f.lhs();
}

bool ax5(const Formula& f) {
  if (!f.is_implies() || !is_neg(f.lhs()) || !f.lhs().lhs().is_know()) return false;
  const Formula& k = f.lhs().lhs();
  return f.rhs().is_know() && f.rhs().name() == k.name() && f.rhs().body() == f.lhs();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

std::string tag_name(AxiomTag t) {
  switch (t) {
    case AxiomTag::Ax1:
      return "Ax1";
    case AxiomTag::Ax2:
      return "Ax2";
    case AxiomTag::Ax3:
      return "Ax3";
    case AxiomTag::AxK:
      return "AxK";
    case AxiomTag::AxT:
      return "AxT";
    case AxiomTag::Ax4:
      return "Ax4";
    case AxiomTag::Ax5:
      return "Ax5";
  }
  return "?";
}

std::optional<AxiomTag> parse_tag(const std::string& s) {
  for (AxiomTag t : {AxiomTag::Ax1, AxiomTag::Ax2, AxiomTag::Ax3, AxiomTag::AxK, AxiomTag::AxT, AxiomTag::Ax4,
                     AxiomTag::Ax5})
    if (tag_name(t) == s) return t;
  return std::nullopt;
}

std::set<AxiomTag> match_axiom(const Formula& f) {
  std::set<AxiomTag> out;
  if (ax1(f)) out.insert(AxiomTag::Ax1);
  if (ax2(f)) out.insert(AxiomTag::Ax2);
  if (ax3(f)) out.insert(AxiomTag::Ax3);
  if (axk(f)) out.insert(AxiomTag::AxK);
  if (axt(f)) out.insert(AxiomTag::AxT);
  if (ax4(f)) out.insert(AxiomTag::Ax4);
  if (ax5(f)) out.insert(AxiomTag::Ax5);
  return out;
}

std::string justification_to_string(const Justification& j) {
  if (const auto* a = std::get_if<ByAxiom>(&j)) return tag_name(a->tag);
  if (const auto* m = std::get_if<ByMP>(&j)) return "MP " + std::to_string(m->minor) + " " + std::to_string(m->major);
  if (const auto* n = std::get_if<ByNec>(&j)) return "Nec " + std::to_string(n->step) + " " + n->agent;
  return "Premise";
}

ProofCheck check_proof(const Proof& pf) {
  if (pf.steps.empty()) return {false, 0, "proof has no steps"};
  for (std::size_t k = 0; k < pf.steps.size(); ++k) {
    const std::size_t here = k + 1;
    const Formula& f = pf.steps[k].formula;
    auto earlier = [&](std::size_t i) { return i >= 1 && i < here; };
    const Justification& j = pf.steps[k].why;
    if (const auto* a = std::get_if<ByAxiom>(&j)) {
      if (!match_axiom(f).count(a->tag)) return {false, here, "not an instance of " + tag_name(a->tag)};
    } else if (const auto* m = std::get_if<ByMP>(&j)) {
      if (!earlier(m->minor) || !earlier(m->major)) return {false, here, "MP refers to a step that is not earlier"};
      const Formula& major = pf.steps[m->major - 1].formula;
      if (!major.is_implies() || !(major.lhs() == pf.steps[m->minor - 1].formula) || !(major.rhs() == f))
        return {false, here,
                "step " + std::to_string(m->major) + " is not step " + std::to_string(m->minor) + " -> this step"};
    } else if (const auto* n = std::get_if<ByNec>(&j)) {
      if (!pf.premises.empty()) return {false, here, "Nec is not allowed in a proof with premises"};
      if (!earlier(n->step)) return {false, here, "Nec refers to a step that is not earlier"};
      if (!f.is_know() || f.name() != n->agent || !(f.body() == pf.steps[n->step - 1].formula))
        return {false, here, "not [" + n->agent + "] of step " + std::to_string(n->step)};
    } else {
      bool found = false;
      for (const Formula& p : pf.premises) found = found || p == f;
      if (!found) return {false, here, "not a premise"};
    }
  }
  return {};
}

Proof parse_proof(const std::string& text) {
  Proof pf;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("line " + std::to_string(lineno) + ": " + msg, lineno, 1);
  };
  auto formula_at = [&](const std::string& s) {
    try {
      return parse_formula(s);
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.rfind("premise:", 0) == 0) {
      if (!pf.steps.empty()) throw fail("premises must precede the steps");
      pf.premises.push_back(formula_at(line.substr(8)));
      continue;
    }
    const auto dot = line.find('.');
    const auto semi = line.rfind(';');
    if (dot == std::string::npos || semi == std::string::npos || semi < dot) throw fail("expected '<n>. <formula> ; <rule>'");
    std::size_t number = 0;
    try {
      std::size_t used = 0;
      number = std::stoul(line.substr(0, dot), &used);
      if (used != trim(line.substr(0, dot)).size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw fail("bad step number");
    }
    if (number != pf.steps.size() + 1) throw fail("expected step " + std::to_string(pf.steps.size() + 1));
    Formula f = formula_at(line.substr(dot + 1, semi - dot - 1));
    std::istringstream js(line.substr(semi + 1));
    std::string rule;
    js >> rule;
    Justification why;
    if (auto tag = parse_tag(rule)) {
      why = ByAxiom{*tag};
    } else if (rule == "MP") {
      std::size_t i = 0, j = 0;
      if (!(js >> i >> j)) throw fail("MP needs two step numbers");
      why = ByMP{i, j};
    } else if (rule == "Nec") {
      std::size_t i = 0;
      std::string agent;
      if (!(js >> i >> agent) || !is_identifier(agent)) throw fail("Nec needs a step number and an agent");
      why = ByNec{i, agent};
    } else if (rule == "Premise") {
      why = ByPremise{};
    } else {
      throw fail("unknown rule '" + rule + "'");
    }
    std::string extra;
    if (js >> extra) throw fail("trailing text '" + extra + "'");
    pf.steps.push_back({std::move(f), std::move(why)});
  }
  if (pf.steps.empty()) throw ParseError("proof has no steps", lineno, 1);
  return pf;
}

std::string print_proof(const Proof& pf) {
  std::ostringstream os;
  for (const Formula& p : pf.premises) os << "premise: " << print_formula(p) << '\n';
  for (std::size_t i = 0; i < pf.steps.size(); ++i)
    os << i + 1 << ". " << print_formula(pf.steps[i].formula) << " ; " << justification_to_string(pf.steps[i].why)
       << '\n';
  return os.str();
}

}  // namespace bes
