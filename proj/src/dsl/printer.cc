#include <algorithm>
#include <cctype>
#include <sstream>

#include "bigrady/dsl.h"

namespace bigrady::dsl {

namespace {

bool numeric(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string literal(const std::string& s) { return numeric(s) ? s : quote(s); }

void print(std::ostream& os, const Term& t, int level);

// level 0: regions, 1: parallel, 2: nesting
void print(std::ostream& os, const Term& t, int level) {
  switch (t.kind) {
    case Term::Kind::kEmpty:
      os << "1";
      return;
    case Term::Kind::kSite:
      os << "id";
      return;
    case Term::Kind::kNode:
      os << t.name;
      if (t.param) os << "(" << (t.param->bare ? t.param->value : literal(t.param->value)) << ")";
      if (!t.ports.empty()) {
        os << "{";
        for (std::size_t i = 0; i < t.ports.size(); ++i) os << (i ? ", " : "") << t.ports[i];
        os << "}";
      }
      if (!t.kids.empty()) {
        os << ".";
        print(os, t.kids[0], 2);
      }
      return;
    case Term::Kind::kClose:
      os << "/" << t.name << " ";
      print(os, t.kids.at(0), 2);
      return;
    case Term::Kind::kPar:
      if (level > 1) os << "(";
      for (std::size_t i = 0; i < t.kids.size(); ++i) {
        if (i) os << " | ";
        print(os, t.kids[i], 2);
      }
      if (level > 1) os << ")";
      return;
    case Term::Kind::kRegions:
      if (level > 0) throw Error(ErrorKind::kSyntaxError, "regions may only appear at the top of a term");
      for (std::size_t i = 0; i < t.kids.size(); ++i) {
        if (i) os << " || ";
        print(os, t.kids[i], 1);
      }
      return;
  }
}

std::string domain_text(const Domain& d) {
  if (d.range) return std::to_string(d.range->first) + ".." + std::to_string(d.range->second);
  std::string out = "{";
  for (std::size_t i = 0; i < d.values.size(); ++i) out += (i ? ", " : "") + literal(d.values[i]);
  return out + "}";
}

struct ItemPrinter {
  std::ostream& os;

  void operator()(const ModelDecl& d) { os << "model " << d.name << ";\n"; }
  void operator()(const UseDecl& d) {
    os << "use " << d.module;
    if (d.criteria) os << "(criteria = " << domain_text(*d.criteria) << ")";
    os << ";\n";
  }
  void operator()(const CtrlDecl& d) {
    os << (d.atomic ? "atomic ctrl " : "ctrl ") << d.name;
    if (d.param) os << "(" << *d.param << ")";
    os << " = " << d.arity << ";\n";
  }
  void operator()(const DomainDecl& d) { os << "domain " << d.name << " = " << domain_text(d.domain) << ";\n"; }
  void operator()(const BigDecl& d) { os << "big " << d.name << " = " << print_term(d.term) << ";\n"; }
  void operator()(const RuleDecl& d) {
    os << "react " << d.name;
    if (d.param) os << "(" << d.param->first << " in " << d.param->second << ")";
    os << " =\n    " << print_term(d.redex) << "\n  -> " << print_term(d.reactum);
    if (d.eta) {
      os << " @ [";
      for (std::size_t i = 0; i < d.eta->size(); ++i) os << (i ? ", " : "") << (*d.eta)[i];
      os << "]";
    }
    os << ";\n";
  }
  void operator()(const InitDecl& d) { os << "init " << print_term(d.term) << ";\n"; }
  void operator()(const RulesDecl& d) {
    os << "rules = [";
    for (std::size_t i = 0; i < d.classes.size(); ++i) {
      const ClassRef& c = d.classes[i];
      os << (i ? ", " : "");
      if (c.gdpr) {
        os << "gdpr";
      } else if (c.braced) {
        os << "{";
        for (std::size_t j = 0; j < c.names.size(); ++j) os << (j ? ", " : "") << c.names[j];
        os << "}";
      } else {
        os << c.names.at(0);
      }
    }
    os << "];\n";
  }
  void operator()(const PredDecl& d) { os << "pred " << d.name << " = " << print_term(d.term) << ";\n"; }
  void operator()(const PropDecl& d) { os << "prop " << d.name << " = " << quote(d.formula) << ";\n"; }
  void operator()(const SortsDecl& d) { os << "sorts {" << d.text << "}\n"; }
  void operator()(const ExpectDecl& d) { os << "expect " << d.name << " = " << (d.holds ? "holds" : "fails") << ";\n"; }
};

}  // namespace

std::string print_term(const Term& t) {
  std::ostringstream os;
  print(os, t, 0);
  return os.str();
}

std::string print_model(const ModelFile& m) {
  std::ostringstream os;
  ItemPrinter p{os};
  for (const Item& it : m.items) std::visit(p, it);
  return os.str();
}

}  // namespace bigrady::dsl
