#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <vector>

#include "ambig/errors.h"
#include "ambig/syntax.h"

namespace ambig {

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& detail)
    : Error([&] {
        std::string msg = "syntax error at offset " + std::to_string(offset) +
                          ": " + detail;
        if (!expected.empty()) {
          msg += "; expected one of:";
          for (const auto& e : expected) msg += " " + e;
        }
        return msg;
      }()),
      offset_(offset),
      expected_(std::move(expected)) {}

namespace {

enum class Tok {
  kIdent, kNat, kLParen, kRParen, kLBrace, kRBrace, kComma, kBang, kAmp,
  kBar, kArrow, kIff, kGe, kLe, kEq, kGt, kLt, kPlus, kMinus, kStar, kSlash,
  kCaret, kAt, kEnd,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t offset;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, s.substr(i, len), i});
    i += len;
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      push(Tok::kIdent, j - i);
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < s.size() && is_digit(s[j])) ++j;
      push(Tok::kNat, j - i);
      continue;
    }
    auto next_is = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
    if (next_is("<->")) { push(Tok::kIff, 3); continue; }
    if (next_is("->")) { push(Tok::kArrow, 2); continue; }
    if (next_is(">=")) { push(Tok::kGe, 2); continue; }
    if (next_is("<=")) { push(Tok::kLe, 2); continue; }
    switch (c) {
      case '(': push(Tok::kLParen, 1); continue;
      case ')': push(Tok::kRParen, 1); continue;
      case '{': push(Tok::kLBrace, 1); continue;
      case '}': push(Tok::kRBrace, 1); continue;
      case ',': push(Tok::kComma, 1); continue;
      case '!': push(Tok::kBang, 1); continue;
      case '&': push(Tok::kAmp, 1); continue;
      case '|': push(Tok::kBar, 1); continue;
      case '=': push(Tok::kEq, 1); continue;
      case '>': push(Tok::kGt, 1); continue;
      case '<': push(Tok::kLt, 1); continue;
      case '+': push(Tok::kPlus, 1); continue;
      case '-': push(Tok::kMinus, 1); continue;
      case '*': push(Tok::kStar, 1); continue;
      case '/': push(Tok::kSlash, 1); continue;
      case '^': push(Tok::kCaret, 1); continue;
      case '@': push(Tok::kAt, 1); continue;
      default:
        throw SyntaxError(i, {}, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, {}, s.size()});
  return out;
}

// "B12" -> 12, "Pr3" -> 3 for prefix "Pr".
std::optional<std::string_view> numbered(std::string_view ident,
                                         std::string_view prefix) {
  if (ident.size() <= prefix.size() || ident.substr(0, prefix.size()) != prefix) {
    return std::nullopt;
  }
  std::string_view rest = ident.substr(prefix.size());
  for (char c : rest) {
    if (!is_digit(c)) return std::nullopt;
  }
  return rest;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula parse() {
    Formula f = formula();
    if (peek().kind != Tok::kEnd) {
      fail({"&", "|", "->", "<->", "end of input"}, "trailing input");
    }
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::kEnd) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    take();
    return true;
  }
  [[noreturn]] void fail(std::vector<std::string> expected,
                         const std::string& detail) const {
    throw SyntaxError(peek().offset, std::move(expected), detail);
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail({what}, std::string("expected ") + what);
    return take();
  }

  Formula formula() {
    Formula f = imp();
    while (accept(Tok::kIff)) f = Formula::iff(f, imp());
    return f;
  }
  Formula imp() {
    Formula f = disj();
    while (accept(Tok::kArrow)) f = Formula::implies(f, disj());
    return f;
  }
  Formula disj() {
    Formula f = conj();
    while (accept(Tok::kBar)) f = Formula::disj(f, conj());
    return f;
  }
  Formula conj() {
    Formula f = unary();
    while (accept(Tok::kAmp)) f = Formula::conj(f, unary());
    return f;
  }

  bool at_numbered(std::string_view prefix) const {
    const Token& t = peek();
    if (t.kind != Tok::kIdent) return false;
    if (numbered(t.text, prefix)) return true;
    return t.text == prefix && peek(1).kind == Tok::kNat;
  }

  // Consumes "B3" or "B 3" style operators and returns the agent.
  AgentId numbered_agent(std::string_view prefix) {
    const Token& t = take();
    if (auto digits = numbered(t.text, prefix)) return to_agent(*digits, t.offset + prefix.size());
    const Token& n = take();
    return to_agent(n.text, n.offset);
  }

  AgentId to_agent(std::string_view digits, std::size_t offset) const {
    unsigned long long v = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || v > 1'000'000) {
      throw SyntaxError(offset, {"NAT"}, "agent index out of range");
    }
    if (v == 0) {
      throw UnknownAgent("agent index must be positive (offset " +
                         std::to_string(offset) + ")");
    }
    return static_cast<AgentId>(v);
  }

  AgentSet agent_list() {
    expect(Tok::kLBrace, "{");
    std::vector<AgentId> agents;
    do {
      const Token& n = expect(Tok::kNat, "NAT");
      agents.push_back(to_agent(n.text, n.offset));
    } while (accept(Tok::kComma));
    expect(Tok::kRBrace, "}");
    return make_agent_set(std::move(agents));
  }

  Formula unary() {
    const Token& t = peek();
    if (accept(Tok::kBang)) return Formula::negate(unary());
    if (t.kind == Tok::kIdent) {
      if (at_numbered("B")) {
        AgentId a = numbered_agent("B");
        return Formula::belief(a, unary());
      }
      if (t.text == "E" && peek(1).kind == Tok::kLBrace) {
        take();
        AgentSet g = agent_list();
        int power = 1;
        if (accept(Tok::kCaret)) {
          const Token& n = expect(Tok::kNat, "NAT");
          int v = 0;
          auto [p, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), v);
          if (ec != std::errc() || v < 1) {
            throw SyntaxError(n.offset, {"NAT >= 1"}, "bad EB power");
          }
          power = v;
        }
        return Formula::everyone_believes(std::move(g), power, unary());
      }
      if (t.text == "CB" && peek(1).kind == Tok::kLBrace) {
        take();
        AgentSet g = agent_list();
        return Formula::common_belief(std::move(g), unary());
      }
    }
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    if (accept(Tok::kLParen)) {
      Formula f = formula();
      expect(Tok::kRParen, ")");
      return f;
    }
    if (t.kind == Tok::kNat || t.kind == Tok::kMinus || at_numbered("Pr")) {
      return probcmp();
    }
    if (t.kind == Tok::kIdent) {
      if (t.text == "true") { take(); return Formula::truth(); }
      if (t.text == "false") { take(); return Formula::falsity(); }
      if (is_reserved_word(t.text)) {
        fail({"proposition"}, "reserved word '" + std::string(t.text) + "'");
      }
      take();
      std::string name(t.text);
      if (accept(Tok::kAt)) {
        const Token& n = expect(Tok::kNat, "NAT");
        return Formula::indexed(std::move(name), to_agent(n.text, n.offset));
      }
      return Formula::prop(std::move(name));
    }
    fail({"proposition", "(", "!", "B<n>", "E{", "CB{", "Pr<n>(", "rational",
          "true", "false"},
         "expected a formula");
  }

  Rational rational() {
    std::string text;
    std::size_t offset = peek().offset;
    if (accept(Tok::kMinus)) text = "-";
    text += expect(Tok::kNat, "NAT").text;
    if (accept(Tok::kSlash)) {
      text += "/";
      const Token& d = expect(Tok::kNat, "NAT");
      text += d.text;
    }
    try {
      return Rational::parse(text);
    } catch (const std::invalid_argument& e) {
      throw SyntaxError(offset, {"rational"}, e.what());
    }
  }

  Formula probcmp() {
    std::vector<ProbTerm> terms;
    AgentId agent = 0;
    do {
      Rational coeff(1);
      if (peek().kind == Tok::kNat || peek().kind == Tok::kMinus) {
        coeff = rational();
        expect(Tok::kStar, "*");
      }
      if (!at_numbered("Pr")) fail({"Pr<n>"}, "expected a probability term");
      std::size_t at = peek().offset;
      AgentId a = numbered_agent("Pr");
      if (agent != 0 && a != agent) {
        throw SyntaxError(at, {"Pr" + std::to_string(agent)},
                          "all terms of a probability formula must name the same agent");
      }
      agent = a;
      expect(Tok::kLParen, "(");
      Formula arg = formula();
      expect(Tok::kRParen, ")");
      terms.push_back({std::move(coeff), std::move(arg)});
    } while (accept(Tok::kPlus));
    Cmp cmp;
    switch (peek().kind) {
      case Tok::kGe: cmp = Cmp::kGe; break;
      case Tok::kLe: cmp = Cmp::kLe; break;
      case Tok::kEq: cmp = Cmp::kEq; break;
      case Tok::kGt: cmp = Cmp::kGt; break;
      case Tok::kLt: cmp = Cmp::kLt; break;
      default:
        fail({"+", ">=", "<=", "=", ">", "<"}, "expected a comparison");
    }
    take();
    Rational bound = rational();
    return Formula::prob(agent, std::move(terms), cmp, std::move(bound));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_reserved_word(std::string_view name) {
  return name == "true" || name == "false" || name == "B" || name == "E" ||
         name == "CB" || name == "Pr" || numbered(name, "B") ||
         numbered(name, "Pr");
}

bool is_valid_prop_name(std::string_view name) {
  std::string_view base = name;
  if (auto at = name.find('@'); at != std::string_view::npos) {
    base = name.substr(0, at);
    std::string_view idx = name.substr(at + 1);
    if (idx.empty() || idx.front() == '0') return false;
    for (char c : idx) {
      if (!is_digit(c)) return false;
    }
  }
  if (base.empty() || !ident_start(base.front())) return false;
  for (char c : base) {
    if (!ident_char(c)) return false;
  }
  return !is_reserved_word(base);
}

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace ambig
