#include <cctype>
#include <set>

#include "bigrady/dsl.h"

namespace bigrady::dsl {

namespace {

enum class Tok {
  kIdent,
  kNumber,
  kString,
  kBar2,
  kBar,
  kDot,
  kDotDot,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
  kLBracket,
  kRBracket,
  kComma,
  kSemi,
  kEq,
  kArrow,
  kSlash,
  kAt,
  kStar,
  kMinus,
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip();
    Token t;
    t.pos = here();
    if (i_ >= s_.size()) return t;
    const unsigned char c = s_[i_];
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' || s_[j] == '\'')) ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(s_.substr(i_, j - i_));
      advance(j - i_);
      return t;
    }
    if (std::isdigit(c)) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      t.kind = Tok::kNumber;
      t.text = std::string(s_.substr(i_, j - i_));
      advance(j - i_);
      return t;
    }
    if (c == '"') {
      advance(1);
      while (true) {
        if (i_ >= s_.size() || s_[i_] == '\n') throw Error(ErrorKind::kSyntaxError, "unterminated string", t.pos);
        char d = s_[i_];
        if (d == '"') break;
        if (d == '\\' && i_ + 1 < s_.size()) {
          advance(1);
          d = s_[i_];
        }
        t.text += d;
        advance(1);
      }
      advance(1);
      t.kind = Tok::kString;
      return t;
    }
    auto two = s_.substr(i_, 2);
    if (two == "||") return punct(t, Tok::kBar2, 2);
    if (two == "..") return punct(t, Tok::kDotDot, 2);
    if (two == "->") return punct(t, Tok::kArrow, 2);
    if (s_.substr(i_, 3) == "→") return punct(t, Tok::kArrow, 3);
    switch (c) {
      case '|': return punct(t, Tok::kBar, 1);
      case '.': return punct(t, Tok::kDot, 1);
      case '(': return punct(t, Tok::kLParen, 1);
      case ')': return punct(t, Tok::kRParen, 1);
      case '{': return punct(t, Tok::kLBrace, 1);
      case '}': return punct(t, Tok::kRBrace, 1);
      case '[': return punct(t, Tok::kLBracket, 1);
      case ']': return punct(t, Tok::kRBracket, 1);
      case ',': return punct(t, Tok::kComma, 1);
      case ';': return punct(t, Tok::kSemi, 1);
      case '=': return punct(t, Tok::kEq, 1);
      case '/': return punct(t, Tok::kSlash, 1);
      case '@': return punct(t, Tok::kAt, 1);
      case '*': return punct(t, Tok::kStar, 1);
      case '-': return punct(t, Tok::kMinus, 1);
      default: break;
    }
    throw Error(ErrorKind::kSyntaxError, std::string("unexpected character '") + static_cast<char>(c) + "'", t.pos);
  }

  // Raw text up to the brace closing an already consumed '{'.
  std::string raw_block(SourcePos open, int* first_line) {
    *first_line = line_;
    const std::size_t start = i_;
    int depth = 1;
    while (i_ < s_.size()) {
      if (s_[i_] == '{') ++depth;
      if (s_[i_] == '}' && --depth == 0) {
        std::string out(s_.substr(start, i_ - start));
        advance(1);
        return out;
      }
      advance(1);
    }
    throw Error(ErrorKind::kSyntaxError, "unterminated sorts block", open);
  }

 private:
  Token punct(Token& t, Tok kind, std::size_t len) {
    t.kind = kind;
    t.text = std::string(s_.substr(i_, len));
    advance(len);
    return t;
  }

  SourcePos here() const { return {line_, static_cast<int>(i_ - line_start_) + 1, static_cast<std::ptrdiff_t>(i_)}; }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && i_ < s_.size(); ++k) {
      if (s_[i_] == '\n') {
        ++line_;
        line_start_ = i_ + 1;
      }
      ++i_;
    }
  }

  void skip() {
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '#' || s_.substr(i_, 2) == "//") {
        while (i_ < s_.size() && s_[i_] != '\n') advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;
};

const std::set<std::string> kKeywords = {"model", "use",   "atomic", "ctrl", "domain", "big",   "react", "init",
                                         "rules", "pred",  "prop",   "sorts", "expect", "id",   "in"};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) { cur_ = lex_.next(); }

  ModelFile file() {
    ModelFile m;
    while (cur_.kind != Tok::kEnd) m.items.push_back(item());
    return m;
  }

  Term whole_term() {
    Term t = regions();
    if (cur_.kind != Tok::kEnd) fail("unexpected '" + cur_.text + "' after term");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw Error(ErrorKind::kSyntaxError, msg, cur_.pos); }

  Token take() {
    Token t = cur_;
    cur_ = lex_.next();
    return t;
  }

  bool at(Tok kind) const { return cur_.kind == kind; }
  bool at_word(const char* w) const { return cur_.kind == Tok::kIdent && cur_.text == w; }

  Token expect(Tok kind, const char* what) {
    if (!at(kind)) fail(std::string("expected ") + what + (cur_.kind == Tok::kEnd ? " at end of input" : ", found '" + cur_.text + "'"));
    return take();
  }

  void expect_word(const char* w) {
    if (!at_word(w)) fail(std::string("expected '") + w + "'");
    take();
  }

  std::string name(const char* what) {
    if (!at(Tok::kIdent) || kKeywords.count(cur_.text)) fail(std::string("expected ") + what);
    return take().text;
  }

  // A rule name, optionally naming one instance: tagCriteria(2).
  std::string rule_ref() {
    std::string n = name("rule name");
    if (!at(Tok::kLParen)) return n;
    take();
    if (!at(Tok::kIdent) && !at(Tok::kNumber) && !at(Tok::kString)) fail("expected parameter value");
    n += "(" + take().text + ")";
    expect(Tok::kRParen, "')'");
    return n;
  }

  void end_item() { expect(Tok::kSemi, "';'"); }

  Item item() {
    const SourcePos pos = cur_.pos;
    if (!at(Tok::kIdent)) fail("expected a declaration");
    const std::string kw = cur_.text;
    if (kw == "model") {
      take();
      ModelDecl d{name("model name")};
      end_item();
      return d;
    }
    if (kw == "use") {
      take();
      UseDecl d;
      d.pos = pos;
      d.module = name("module name");
      if (at(Tok::kLParen)) {
        take();
        expect_word("criteria");
        expect(Tok::kEq, "'='");
        d.criteria = domain();
        expect(Tok::kRParen, "')'");
      }
      end_item();
      return d;
    }
    if (kw == "atomic" || kw == "ctrl") {
      CtrlDecl d;
      d.pos = pos;
      if (kw == "atomic") {
        take();
        d.atomic = true;
        if (!at_word("ctrl")) fail("expected 'ctrl'");
      }
      take();
      d.name = name("control name");
      if (at(Tok::kLParen)) {
        take();
        if (at(Tok::kStar)) {
          take();
          d.param = "*";
        } else {
          d.param = name("domain name");
        }
        expect(Tok::kRParen, "')'");
      }
      expect(Tok::kEq, "'='");
      d.arity = std::stoi(expect(Tok::kNumber, "arity").text);
      end_item();
      return d;
    }
    if (kw == "domain") {
      take();
      DomainDecl d;
      d.name = name("domain name");
      expect(Tok::kEq, "'='");
      d.domain = domain();
      end_item();
      return d;
    }
    if (kw == "big") {
      take();
      BigDecl d;
      d.name = name("bigraph name");
      expect(Tok::kEq, "'='");
      d.term = regions();
      end_item();
      return d;
    }
    if (kw == "react") {
      take();
      RuleDecl d;
      d.pos = pos;
      d.name = name("rule name");
      if (at(Tok::kLParen)) {
        take();
        std::string var = name("parameter");
        expect_word("in");
        std::string dom = name("domain name");
        expect(Tok::kRParen, "')'");
        d.param = std::make_pair(var, dom);
      }
      expect(Tok::kEq, "'='");
      d.redex = regions();
      expect(Tok::kArrow, "'->'");
      d.reactum = regions();
      if (at(Tok::kAt)) {
        take();
        expect(Tok::kLBracket, "'['");
        std::vector<int> eta;
        while (!at(Tok::kRBracket)) {
          eta.push_back(std::stoi(expect(Tok::kNumber, "site index").text));
          if (!at(Tok::kComma)) break;
          take();
        }
        expect(Tok::kRBracket, "']'");
        d.eta = std::move(eta);
      }
      end_item();
      return d;
    }
    if (kw == "init") {
      take();
      InitDecl d{regions(), pos};
      end_item();
      return d;
    }
    if (kw == "rules") {
      take();
      RulesDecl d;
      d.pos = pos;
      expect(Tok::kEq, "'='");
      expect(Tok::kLBracket, "'['");
      while (!at(Tok::kRBracket)) {
        ClassRef c;
        if (at(Tok::kLBrace)) {
          take();
          c.braced = true;
          while (!at(Tok::kRBrace)) {
            c.names.push_back(rule_ref());
            if (!at(Tok::kComma)) break;
            take();
          }
          expect(Tok::kRBrace, "'}'");
        } else if (at_word("gdpr")) {
          take();
          c.gdpr = true;
        } else {
          c.names.push_back(rule_ref());
        }
        d.classes.push_back(std::move(c));
        if (!at(Tok::kComma)) break;
        take();
      }
      expect(Tok::kRBracket, "']'");
      end_item();
      return d;
    }
    if (kw == "pred") {
      take();
      PredDecl d;
      d.name = name("predicate name");
      expect(Tok::kEq, "'='");
      d.term = regions();
      end_item();
      return d;
    }
    if (kw == "prop") {
      take();
      PropDecl d;
      d.pos = pos;
      d.name = name("property name");
      expect(Tok::kEq, "'='");
      d.formula = expect(Tok::kString, "quoted formula").text;
      end_item();
      return d;
    }
    if (kw == "sorts") {
      take();
      if (!at(Tok::kLBrace)) fail("expected '{'");
      // cur_ holds '{'; the lexer sits right after it.
      SortsDecl d;
      d.text = lex_.raw_block(cur_.pos, &d.line);
      cur_ = lex_.next();
      if (at(Tok::kSemi)) take();
      return d;
    }
    if (kw == "expect") {
      take();
      ExpectDecl d;
      if (at_word("sorts")) {
        d.name = take().text;
      } else {
        d.name = name("property name");
      }
      expect(Tok::kEq, "'='");
      if (at_word("holds")) {
        d.holds = true;
      } else if (at_word("fails")) {
        d.holds = false;
      } else {
        fail("expected 'holds' or 'fails'");
      }
      take();
      end_item();
      return d;
    }
    fail("unknown declaration '" + kw + "'");
  }

  Domain domain() {
    Domain d;
    if (at(Tok::kLBrace)) {
      take();
      while (!at(Tok::kRBrace)) {
        if (at(Tok::kString) || at(Tok::kNumber) || at(Tok::kIdent)) {
          d.values.push_back(take().text);
        } else {
          fail("expected domain value");
        }
        if (!at(Tok::kComma)) break;
        take();
      }
      expect(Tok::kRBrace, "'}'");
      if (d.values.empty()) fail("empty domain");
      return d;
    }
    long lo = integer();
    expect(Tok::kDotDot, "'..'");
    long hi = integer();
    d.range = std::make_pair(lo, hi);
    return d;
  }

  long integer() {
    bool neg = false;
    if (at(Tok::kMinus)) {
      take();
      neg = true;
    }
    long v = std::stol(expect(Tok::kNumber, "number").text);
    return neg ? -v : v;
  }

  Term regions() {
    const SourcePos pos = cur_.pos;
    Term first = par();
    if (!at(Tok::kBar2)) return first;
    Term t{Term::Kind::kRegions, {}, {}, {}, {std::move(first)}, pos};
    while (at(Tok::kBar2)) {
      take();
      t.kids.push_back(par());
    }
    return t;
  }

  Term par() {
    const SourcePos pos = cur_.pos;
    Term first = nest();
    if (!at(Tok::kBar)) return first;
    Term t{Term::Kind::kPar, {}, {}, {}, {std::move(first)}, pos};
    while (at(Tok::kBar)) {
      take();
      t.kids.push_back(nest());
    }
    return t;
  }

  Term nest() {
    const SourcePos pos = cur_.pos;
    if (at(Tok::kSlash)) {
      take();
      if (!at(Tok::kIdent)) fail("expected name after '/'");
      Term t{Term::Kind::kClose, take().text, {}, {}, {}, pos};
      t.kids.push_back(nest());
      return t;
    }
    if (at(Tok::kNumber)) {
      if (cur_.text != "1") fail("expected '1' or a term");
      take();
      return Term{Term::Kind::kEmpty, {}, {}, {}, {}, pos};
    }
    if (at_word("id")) {
      take();
      return Term{Term::Kind::kSite, {}, {}, {}, {}, pos};
    }
    if (at(Tok::kLParen)) {
      take();
      Term t = par();
      expect(Tok::kRParen, "')'");
      if (at(Tok::kDot)) fail("only a control can be followed by '.'");
      return t;
    }
    Term t{Term::Kind::kNode, name("control or term"), {}, {}, {}, pos};
    if (at(Tok::kLParen)) {
      take();
      if (at(Tok::kString) || at(Tok::kNumber)) {
        t.param = Param{take().text, false};
      } else if (at(Tok::kIdent)) {
        t.param = Param{take().text, true};
      } else {
        fail("expected parameter");
      }
      expect(Tok::kRParen, "')'");
    }
    if (at(Tok::kLBrace)) {
      take();
      while (!at(Tok::kRBrace)) {
        t.ports.push_back(name("link name"));
        if (!at(Tok::kComma)) break;
        take();
      }
      expect(Tok::kRBrace, "'}'");
    }
    if (at(Tok::kDot)) {
      take();
      t.kids.push_back(nest());
    }
    return t;
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

std::vector<std::string> Domain::expand() const {
  if (!range) return values;
  std::vector<std::string> out;
  for (long v = range->first; v <= range->second; ++v) out.push_back(std::to_string(v));
  return out;
}

ModelFile parse_model(std::string_view text) { return Parser(text).file(); }

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }

}  // namespace bigrady::dsl
