#include <cctype>

#include "bigrady/ctl.h"
#include "bigrady/error.h"

namespace bigrady::ctl {

namespace {

enum class Tok { kIdent, kLParen, kRParen, kLBracket, kRBracket, kNot, kAnd, kOr, kImplies, kEnd };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view w) { return s.substr(i, w.size()) == w; };
  while (i < s.size()) {
    unsigned char c = s[i];
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Tok::kIdent, std::string(s.substr(i, j - i)), at});
      i = j;
      continue;
    }
    Tok kind;
    std::size_t len = 1;
    if (starts("=>")) {
      kind = Tok::kImplies;
      len = 2;
    } else if (starts("⇒") || starts("⟹")) {
      kind = Tok::kImplies;
      len = 3;
    } else if (starts("¬")) {
      kind = Tok::kNot;
      len = 2;
    } else if (starts("∧")) {
      kind = Tok::kAnd;
      len = 3;
    } else if (starts("∨")) {
      kind = Tok::kOr;
      len = 3;
    } else {
      switch (c) {
        case '(': kind = Tok::kLParen; break;
        case ')': kind = Tok::kRParen; break;
        case '[': kind = Tok::kLBracket; break;
        case ']': kind = Tok::kRBracket; break;
        case '!': kind = Tok::kNot; break;
        case '&': kind = Tok::kAnd; break;
        case '|': kind = Tok::kOr; break;
        default:
          throw Error(ErrorKind::kSyntaxError, std::string("unexpected character '") + s[i] + "'",
                      SourcePos{0, 0, static_cast<std::ptrdiff_t>(at)});
      }
    }
    out.push_back({kind, std::string(s.substr(i, len)), at});
    i += len;
  }
  out.push_back({Tok::kEnd, "", s.size()});
  return out;
}

// Quantifier in force for bare X/G/F/U.
enum class Ctx { kNone, kA, kE };

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula parse() {
    Formula f = implies(Ctx::kNone);
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::kSyntaxError, msg, SourcePos{0, 0, static_cast<std::ptrdiff_t>(peek().offset)});
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++pos_;
  }
  static bool is_temporal(const std::string& w) { return w == "X" || w == "G" || w == "F"; }

  Formula implies(Ctx ctx) {
    Formula lhs = disj(ctx);
    if (peek().kind == Tok::kImplies) {
      ++pos_;
      return Formula::binary(Op::kImplies, std::move(lhs), implies(ctx));
    }
    return lhs;
  }

  Formula disj(Ctx ctx) {
    Formula f = conj(ctx);
    while (peek().kind == Tok::kOr) {
      ++pos_;
      f = Formula::binary(Op::kOr, std::move(f), conj(ctx));
    }
    return f;
  }

  Formula conj(Ctx ctx) {
    Formula f = unary(ctx);
    while (peek().kind == Tok::kAnd) {
      ++pos_;
      f = Formula::binary(Op::kAnd, std::move(f), unary(ctx));
    }
    return f;
  }

  Formula unary(Ctx ctx) {
    if (peek().kind == Tok::kNot) {
      ++pos_;
      return Formula::unary(Op::kNot, unary(ctx));
    }
    return primary(ctx);
  }

  static Op temporal(Ctx q, char t) {
    const bool a = q == Ctx::kA;
    switch (t) {
      case 'X': return a ? Op::kAX : Op::kEX;
      case 'G': return a ? Op::kAG : Op::kEG;
      default: return a ? Op::kAF : Op::kEF;
    }
  }

  Formula primary(Ctx ctx) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::kLParen: {
        ++pos_;
        Formula f = implies(ctx);
        expect(Tok::kRParen, "')'");
        return f;
      }
      case Tok::kIdent: break;
      case Tok::kEnd: fail("unexpected end of formula");
      default: fail("unexpected '" + t.text + "'");
    }
    const std::string w = next().text;
    if (w == "true") return Formula::truth();
    if (w == "false") return Formula::falsity();
    if (w == "A" || w == "E") {
      Ctx q = w == "A" ? Ctx::kA : Ctx::kE;
      if (peek().kind == Tok::kLBracket) {
        ++pos_;
        Formula f = path(q);
        expect(Tok::kRBracket, "']'");
        return f;
      }
      if (peek().kind == Tok::kIdent && is_temporal(peek().text)) {
        char op = next().text[0];
        return Formula::unary(temporal(q, op), unary(q));
      }
      --pos_;
      fail("expected '[' or X/G/F after path quantifier");
    }
    if (w.size() == 2 && (w[0] == 'A' || w[0] == 'E') && is_temporal(w.substr(1))) {
      Ctx q = w[0] == 'A' ? Ctx::kA : Ctx::kE;
      return Formula::unary(temporal(q, w[1]), unary(q));
    }
    if (is_temporal(w)) {
      if (ctx == Ctx::kNone) {
        --pos_;
        fail("temporal operator " + w + " needs a path quantifier");
      }
      return Formula::unary(temporal(ctx, w[0]), unary(ctx));
    }
    if (w == "U") {
      --pos_;
      fail("'U' outside A[..] or E[..]");
    }
    return Formula::var(w);
  }

  Formula path(Ctx q) {
    if (peek().kind == Tok::kIdent && is_temporal(peek().text)) {
      char op = next().text[0];
      return Formula::unary(temporal(q, op), implies(q));
    }
    Formula lhs = implies(q);
    if (!(peek().kind == Tok::kIdent && peek().text == "U")) fail("expected 'U'");
    ++pos_;
    Formula rhs = implies(q);
    return Formula::binary(q == Ctx::kA ? Op::kAU : Op::kEU, std::move(lhs), std::move(rhs));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

const char* unary_name(Op op) {
  switch (op) {
    case Op::kEX: return "EX";
    case Op::kAX: return "AX";
    case Op::kEF: return "EF";
    case Op::kAF: return "AF";
    case Op::kEG: return "EG";
    case Op::kAG: return "AG";
    default: return "";
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Formula& f) {
  switch (f.op) {
    case Op::kTrue: return "true";
    case Op::kFalse: return "false";
    case Op::kAtom: return f.atom;
    case Op::kNot: return "!(" + to_string(f.args[0]) + ")";
    case Op::kAnd: return "(" + to_string(f.args[0]) + " & " + to_string(f.args[1]) + ")";
    case Op::kOr: return "(" + to_string(f.args[0]) + " | " + to_string(f.args[1]) + ")";
    case Op::kImplies: return "(" + to_string(f.args[0]) + " => " + to_string(f.args[1]) + ")";
    case Op::kEU: return "E[" + to_string(f.args[0]) + " U " + to_string(f.args[1]) + "]";
    case Op::kAU: return "A[" + to_string(f.args[0]) + " U " + to_string(f.args[1]) + "]";
    default: return std::string(unary_name(f.op)) + " (" + to_string(f.args[0]) + ")";
  }
}

int depth(const Formula& f) {
  int d = 0;
  for (const Formula& a : f.args) d = std::max(d, depth(a));
  return f.args.empty() ? 0 : d + 1;
}

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  if (f.op == Op::kAtom) out.insert(f.atom);
  for (const Formula& a : f.args) {
    auto sub = atoms(a);
    out.insert(sub.begin(), sub.end());
  }
  return out;
}

}  // namespace bigrady::ctl
