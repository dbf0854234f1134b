#include <cctype>
#include <map>
#include <set>

#include "bigrady/error.h"
#include "bigrady/sorting.h"

namespace bigrady {

namespace {

enum class Tok { kIdent, kNumber, kLParen, kRParen, kLBrace, kRBrace, kStar, kPlus, kTimes, kArrow, kBar, kEq, kSemi, kComma, kEnd };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
  bool spaced = true;  // whitespace before the token
};

std::vector<Token> lex(std::string_view s, int first_line) {
  std::vector<Token> out;
  int line = first_line;
  std::size_t line_start = 0;
  bool spaced = true;
  std::size_t i = 0;
  auto starts = [&](std::string_view w) { return s.substr(i, w.size()) == w; };
  while (i < s.size()) {
    const unsigned char c = s[i];
    if (c == '\n') {
      ++line;
      line_start = ++i;
      spaced = true;
      continue;
    }
    if (std::isspace(c)) {
      ++i;
      spaced = true;
      continue;
    }
    if (c == '#' || starts("//")) {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    Token t{Tok::kEnd, "", SourcePos{line, static_cast<int>(i - line_start) + 1, static_cast<std::ptrdiff_t>(i)},
            spaced};
    spaced = false;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      t.kind = Tok::kIdent;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::kNumber;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else if (starts("->")) {
      t.kind = Tok::kArrow;
      i += 2;
    } else if (starts("→")) {
      t.kind = Tok::kArrow;
      i += 3;
    } else if (starts("×")) {
      t.kind = Tok::kTimes;
      i += 2;
    } else {
      switch (c) {
        case '(': t.kind = Tok::kLParen; break;
        case ')': t.kind = Tok::kRParen; break;
        case '{': t.kind = Tok::kLBrace; break;
        case '}': t.kind = Tok::kRBrace; break;
        case '*': t.kind = Tok::kStar; break;
        case '+': t.kind = Tok::kPlus; break;
        case '&': t.kind = Tok::kTimes; break;
        case '|': t.kind = Tok::kBar; break;
        case '=': t.kind = Tok::kEq; break;
        case ';': t.kind = Tok::kSemi; break;
        case ',': t.kind = Tok::kComma; break;
        default:
          throw Error(ErrorKind::kSyntaxError, std::string("unexpected character '") + s[i] + "' in sort scheme", t.pos);
      }
      t.text = std::string(1, static_cast<char>(c));
      ++i;
    }
    out.push_back(std::move(t));
  }
  out.push_back({Tok::kEnd, "", SourcePos{line, static_cast<int>(i - line_start) + 1, static_cast<std::ptrdiff_t>(i)},
                 true});
  return out;
}

struct Ref {
  std::string sort;
  SourcePos pos;
};

class Parser {
 public:
  Parser(std::string_view text, int first_line) : text_(text), toks_(lex(text, first_line)) {}

  SortScheme parse() {
    while (peek().kind != Tok::kEnd) {
      if (peek().kind == Tok::kSemi || peek().kind == Tok::kComma) {
        ++pos_;
        continue;
      }
      decl();
    }
    return finish();
  }

 private:
  const Token& peek(int ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw Error(ErrorKind::kSyntaxError, msg, peek().pos); }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + (peek().text.empty() ? "" : " near '" + peek().text + "'"));
    ++pos_;
  }
  bool is_keyword() const { return peek().kind == Tok::kIdent && peek().text == "sort"; }

  void decl() {
    if (!is_keyword()) fail("expected 'sort'");
    ++pos_;
    if (peek().kind != Tok::kIdent || is_keyword()) fail("expected sort name");
    const Token name = next();
    SortDecl* d = upsert(name.text);
    if (peek().kind != Tok::kEq) return;
    ++pos_;
    d->members.push_back(member());
    while (peek().kind == Tok::kBar) {
      ++pos_;
      d->members.push_back(member());
    }
  }

  SortDecl* upsert(const std::string& name) {
    for (auto& d : decls_) {
      if (d.name == name) return &d;
    }
    decls_.push_back({name, {}, false});
    return &decls_.back();
  }

  SortMember member() {
    if (peek().kind != Tok::kIdent || is_keyword()) fail("expected control name");
    const Token ctrl = next();
    SortMember m;
    m.control = ctrl.text;
    // A parameter is written directly against the control name: L(Ireland).
    if (peek().kind == Tok::kLParen && !peek().spaced) {
      const std::size_t open = peek().pos.offset;
      while (peek().kind != Tok::kRParen) {
        if (peek().kind == Tok::kEnd) fail("unterminated parameter");
        ++pos_;
      }
      const std::size_t close = peek().pos.offset;
      ++pos_;
      std::string param(text_.substr(open + 1, close - open - 1));
      while (!param.empty() && std::isspace(static_cast<unsigned char>(param.back()))) param.pop_back();
      while (!param.empty() && std::isspace(static_cast<unsigned char>(param.front()))) param.erase(param.begin());
      if (param.empty()) fail("empty parameter");
      m.param = param;
    }
    const SourcePos at = ctrl.pos;
    auto key = m.control + (m.param ? "(" + *m.param + ")" : "");
    if (!controls_.insert(key).second) {
      throw Error(ErrorKind::kDuplicateControlSort, "control " + key + " belongs to more than one sort", at);
    }
    if (peek().kind == Tok::kLBrace) {
      ++pos_;
      while (true) {
        if (peek().kind != Tok::kIdent) fail("expected port sort");
        const Token port = next();
        port_uses_.push_back({port.text, port.pos});
        expect(Tok::kArrow, "'->'");
        m.ports.push_back({port.text, sum()});
        if (peek().kind == Tok::kComma) {
          ++pos_;
          continue;
        }
        expect(Tok::kRBrace, "'}'");
        break;
      }
    }
    if (starts_expr()) m.children = sum();
    return m;
  }

  bool starts_expr() const {
    switch (peek().kind) {
      case Tok::kIdent: return !is_keyword();
      case Tok::kNumber:
      case Tok::kLParen: return true;
      default: return false;
    }
  }

  SortExpr sum() {
    SortExpr first = prod();
    if (peek().kind != Tok::kPlus) return first;
    SortExpr e{SortExpr::Kind::kSum, {}, {std::move(first)}};
    while (peek().kind == Tok::kPlus) {
      ++pos_;
      e.args.push_back(prod());
    }
    return e;
  }

  SortExpr prod() {
    SortExpr first = post();
    if (peek().kind != Tok::kTimes) return first;
    SortExpr e{SortExpr::Kind::kProd, {}, {std::move(first)}};
    while (peek().kind == Tok::kTimes) {
      ++pos_;
      e.args.push_back(post());
    }
    return e;
  }

  SortExpr post() {
    SortExpr a = atom();
    if (peek().kind == Tok::kStar) {
      ++pos_;
      if (peek().kind == Tok::kStar) fail("repeated '*'");
      return SortExpr::star(std::move(a));
    }
    return a;
  }

  SortExpr atom() {
    const Token& t = peek();
    if (t.kind == Tok::kNumber) {
      if (t.text != "1") fail("only 1 may appear as a number in a sort expression");
      ++pos_;
      return SortExpr::one();
    }
    if (t.kind == Tok::kLParen) {
      ++pos_;
      SortExpr e = sum();
      expect(Tok::kRParen, "')'");
      return e;
    }
    if (t.kind == Tok::kIdent && !is_keyword()) {
      refs_.push_back({t.text, t.pos});
      ++pos_;
      return SortExpr::named(t.text);
    }
    fail("expected sort expression");
  }

  SortScheme finish() {
    SortScheme s;
    std::set<std::string> declared;
    for (const auto& d : decls_) declared.insert(d.name);
    for (const Ref& r : port_uses_) {
      if (declared.insert(r.sort).second) {
        decls_.push_back({r.sort, {}, true});
        s.warnings.push_back("port sort '" + r.sort + "' used without a declaration; declared implicitly");
      }
    }
    std::set<std::string> used;
    for (const Ref& r : refs_) {
      if (!declared.count(r.sort)) throw Error(ErrorKind::kUndeclaredSort, "undeclared sort '" + r.sort + "'", r.pos);
      used.insert(r.sort);
    }
    for (const Ref& r : port_uses_) used.insert(r.sort);
    for (const auto& d : decls_) {
      if (d.members.empty() && !used.count(d.name)) {
        s.warnings.push_back("sort '" + d.name + "' is declared but never used");
      }
    }
    s.decls = std::move(decls_);
    return s;
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<SortDecl> decls_;
  std::set<std::string> controls_;
  std::vector<Ref> refs_;
  std::vector<Ref> port_uses_;
};

std::string render(const SortExpr& e, int context) {
  // context: 0 top, 1 inside product, 2 under star
  switch (e.kind) {
    case SortExpr::Kind::kSort: return e.sort;
    case SortExpr::Kind::kOne: return "1";
    case SortExpr::Kind::kStar: return render(e.args[0], 2) + "*";
    case SortExpr::Kind::kProd: {
      std::string out;
      for (std::size_t i = 0; i < e.args.size(); ++i) out += (i ? " × " : "") + render(e.args[i], 1);
      return context == 2 ? "(" + out + ")" : out;
    }
    case SortExpr::Kind::kSum: {
      std::string out;
      for (std::size_t i = 0; i < e.args.size(); ++i) out += (i ? " + " : "") + render(e.args[i], 0);
      return context ? "(" + out + ")" : out;
    }
  }
  return "";
}

void collect(const SortExpr& e, std::vector<std::string>& out) {
  if (e.kind == SortExpr::Kind::kSort) out.push_back(e.sort);
  for (const auto& a : e.args) collect(a, out);
}

}  // namespace

std::string to_string(const SortExpr& e) { return render(e, 0); }

std::vector<std::string> sorts_in(const SortExpr& e) {
  std::vector<std::string> out;
  collect(e, out);
  return out;
}

std::string SortMember::label() const { return param ? control + "(" + *param + ")" : control; }

const SortDecl* SortScheme::find(std::string_view name) const {
  for (const auto& d : decls) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::pair<const SortDecl*, const SortMember*> SortScheme::member_for(const Control& c) const {
  std::pair<const SortDecl*, const SortMember*> generic{nullptr, nullptr};
  for (const auto& d : decls) {
    for (const auto& m : d.members) {
      if (m.control != c.name) continue;
      if (m.param && c.param && *m.param == *c.param) return {&d, &m};
      if (!m.param && !generic.second) generic = {&d, &m};
    }
  }
  return generic;
}

SortScheme parse_sort_scheme(std::string_view text, int first_line) { return Parser(text, first_line).parse(); }

}  // namespace bigrady
