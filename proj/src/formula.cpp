#include "bes/formula.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace bes {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

bool is_identifier(std::string_view s) {
  if (s.empty() || s == "bot") return false;
  if (s.front() < 'a' || s.front() > 'z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Formula Formula::make(Kind kind, std::string name, const Formula* l, const Formula* r) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  std::size_t h = mix(0, static_cast<std::size_t>(kind));
  h = mix(h, std::hash<std::string>{}(name));
  n->name = std::move(name);
  if (l) {
    n->left = std::make_unique<const Formula>(*l);
    h = mix(h, l->hash());
    n->size += l->size();
    n->depth = l->depth() + 1;
  }
  if (r) {
    n->right = std::make_unique<const Formula>(*r);
    h = mix(h, r->hash());
    n->size += r->size();
    n->depth = std::max(n->depth, r->depth() + 1);
  }
  n->hash = h;
  return Formula(std::move(n));
}

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
  return make(Kind::Atom, std::move(name), nullptr, nullptr);
}

Formula Formula::bottom() {
  static const Formula b = make(Kind::Bottom, {}, nullptr, nullptr);
  return b;
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return make(Kind::Implies, {}, &lhs, &rhs);
}

Formula Formula::know(std::string agent, Formula body) {
  if (!is_identifier(agent)) throw std::invalid_argument("invalid agent name '" + agent + "'");
  return make(Kind::Know, std::move(agent), &body, nullptr);
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (hash() != other.hash() || size() != other.size() || kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Atom:
      return name() == other.name();
    case Kind::Bottom:
      return true;
    case Kind::Implies:
      return lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Know:
      return name() == other.name() && body() == other.body();
  }
  return false;
}

std::strong_ordering Formula::operator<=>(const Formula& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  if (auto c = kind() <=> other.kind(); c != 0) return c;
  if (auto c = name() <=> other.name(); c != 0) return c;
  switch (kind()) {
    case Kind::Atom:
    case Kind::Bottom:
      return std::strong_ordering::equal;
    case Kind::Implies:
      if (auto c = lhs() <=> other.lhs(); c != 0) return c;
      return rhs() <=> other.rhs();
    case Kind::Know:
      return body() <=> other.body();
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Bot, Arrow, Tilde, LBracket, RBracket, KBrace, RBrace, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "end of input", line_, col_});
        return out;
      }
      const int line = line_, col = col_;
      const char c = src_[pos_];
      if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
        advance(2);
        out.push_back({Tok::Arrow, "->", line, col});
      } else if (c == '~') {
        advance(1);
        out.push_back({Tok::Tilde, "~", line, col});
      } else if (c == '[') {
        advance(1);
        out.push_back({Tok::LBracket, "[", line, col});
      } else if (c == ']') {
        advance(1);
        out.push_back({Tok::RBracket, "]", line, col});
      } else if (c == 'K' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '{') {
        advance(2);
        out.push_back({Tok::KBrace, "K{", line, col});
      } else if (c == '}') {
        advance(1);
        out.push_back({Tok::RBrace, "}", line, col});
      } else if (c == '(') {
        advance(1);
        out.push_back({Tok::LParen, "(", line, col});
      } else if (c == ')') {
        advance(1);
        out.push_back({Tok::RParen, ")", line, col});
      } else if (c >= 'a' && c <= 'z') {
        std::size_t end = pos_;
        while (end < src_.size() &&
               ((src_[end] >= 'a' && src_[end] <= 'z') || (src_[end] >= '0' && src_[end] <= '9') ||
                src_[end] == '_'))
          ++end;
        std::string word(src_.substr(pos_, end - pos_));
        advance(end - pos_);
        out.push_back({word == "bot" ? Tok::Bot : Tok::Ident, word, line, col});
      } else {
        throw ParseError("unknown token '" + std::string(1, c) + "' at " + std::to_string(line) + ":" +
                             std::to_string(col),
                         line, col);
      }
    }
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r'))
      advance(1);
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError("syntax error at " + std::to_string(t.line) + ":" + std::to_string(t.column) + ": " +
                         msg,
                     t.line, t.column);
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    ++pos_;
  }

  Formula implication() {
    Formula lhs = unary();
    if (peek().kind == Tok::Arrow) {
      ++pos_;
      return Formula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Tilde:
        ++pos_;
        return Formula::negation(unary());
      case Tok::LBracket: {
        ++pos_;
        if (peek().kind != Tok::Ident) fail("expected agent name, found '" + peek().text + "'");
        std::string agent = take().text;
        expect(Tok::RBracket, "']'");
        return Formula::know(std::move(agent), unary());
      }
      case Tok::KBrace: {
        ++pos_;
        if (peek().kind != Tok::Ident) fail("expected agent name, found '" + peek().text + "'");
        std::string agent = take().text;
        expect(Tok::RBrace, "'}'");
        return Formula::know(std::move(agent), unary());
      }
      case Tok::Bot:
        ++pos_;
        return Formula::bottom();
      case Tok::Ident:
        return Formula::atom(take().text);
      case Tok::LParen: {
        ++pos_;
        Formula f = implication();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        fail("expected a formula, found '" + peek().text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Precedence: implications are the only binary connective, so a subterm
// needs parentheses exactly when it is an implication that does not print
// as a negation and it sits in a unary or left-hand position.
bool prints_as_binary(const Formula& f) { return f.is_implies() && !f.is_negation(); }

void print_into(const Formula& f, bool bracket_right, std::string& out);

void print_operand(const Formula& f, bool bracket_right, std::string& out) {
  if (prints_as_binary(f)) {
    out += '(';
    print_into(f, bracket_right, out);
    out += ')';
  } else {
    print_into(f, bracket_right, out);
  }
}

void print_into(const Formula& f, bool bracket_right, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.name();
      return;
    case Formula::Kind::Bottom:
      out += "bot";
      return;
    case Formula::Kind::Know:
      out += '[';
      out += f.name();
      out += ']';
      print_operand(f.body(), bracket_right, out);
      return;
    case Formula::Kind::Implies:
      if (f.is_negation()) {
        out += '~';
        print_operand(f.lhs(), bracket_right, out);
        return;
      }
      print_operand(f.lhs(), bracket_right, out);
      out += " -> ";
      if (bracket_right)
        print_operand(f.rhs(), bracket_right, out);
      else
        print_into(f.rhs(), bracket_right, out);
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(Lexer(text).run()).parse(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_into(f, false, out);
  return out;
}

std::string print_formula_bracketed(const Formula& f) {
  std::string out;
  print_into(f, true, out);
  return out;
}

std::string dump_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return "Atom(" + f.name() + ")";
    case Formula::Kind::Bottom:
      return "Bottom";
    case Formula::Kind::Implies:
      return "Implies(" + dump_formula(f.lhs()) + ", " + dump_formula(f.rhs()) + ")";
    case Formula::Kind::Know:
      return "Know(" + f.name() + ", " + dump_formula(f.body()) + ")";
  }
  return {};
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> visit = [&](const Formula& g) {
    if (seen.count(g)) return;
    if (g.is_implies()) {
      visit(g.lhs());
      visit(g.rhs());
    } else if (g.is_know()) {
      visit(g.body());
    }
    seen.insert(g);
    out.push_back(g);
  };
  visit(f);
  return out;
}

std::set<Atom> atoms_of(const Formula& f) {
  std::set<Atom> out;
  for (const Formula& g : subformulas(f))
    if (g.is_atom()) out.insert(Atom{g.name()});
  return out;
}

std::set<Agent> agents_of(const Formula& f) {
  std::set<Agent> out;
  for (const Formula& g : subformulas(f))
    if (g.is_know()) out.insert(Agent{g.name()});
  return out;
}

std::vector<Atom> fresh_atoms(std::size_t n, const std::set<Atom>& avoid) {
  std::vector<Atom> out;
  for (std::size_t i = 0; out.size() < n; ++i) {
    Atom candidate{"q" + std::to_string(i)};
    if (!avoid.count(candidate)) out.push_back(std::move(candidate));
  }
  return out;
}

}  // namespace bes
