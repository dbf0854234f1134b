#include <fstream>
#include <set>
#include <sstream>

#include "bigrady/gdpr.h"
#include "bigrady/model.h"

namespace bigrady {

namespace {

using dsl::Term;

[[noreturn]] void rethrow(const Error& e, const std::string& where, SourcePos pos) {
  throw Error(e.kind(), where + ": " + e.detail(), e.pos().line > 0 ? e.pos() : pos);
}

class TermBuilder {
 public:
  TermBuilder(const Signature& sig, const std::map<std::string, std::string>& vars,
              const std::map<std::string, Term>& bigs)
      : sig_(sig), vars_(vars), bigs_(bigs) {}

  Bigraph build(const Term& top) {
    const Term& t = resolve(top);
    if (t.kind == Term::Kind::kRegions) {
      spec_.regions = static_cast<int>(t.kids.size());
      for (std::size_t r = 0; r < t.kids.size(); ++r) place(t.kids[r], Parent::region(static_cast<int>(r)));
    } else {
      spec_.regions = 1;
      place(t, Parent::region(0));
    }
    spec_.closed.assign(closed_.begin(), closed_.end());
    try {
      return build_bigraph(sig_, spec_);
    } catch (const Error& e) {
      rethrow(e, "term", top.pos);
    }
  }

 private:
  bool is_big_ref(const Term& t) const {
    return t.kind == Term::Kind::kNode && !t.param && t.ports.empty() && t.kids.empty() && bigs_.count(t.name) &&
           !sig_.contains(t.name);
  }

  const Term& resolve(const Term& t) {
    const Term* cur = &t;
    int hops = 0;
    while (is_big_ref(*cur)) {
      if (++hops > 64) throw Error(ErrorKind::kInvalidModel, "big " + t.name + " refers to itself", t.pos);
      cur = &bigs_.at(cur->name);
    }
    return *cur;
  }

  void place(const Term& raw, Parent p) {
    if (++depth_ > 256) throw Error(ErrorKind::kInvalidModel, "term nests too deeply or a big refers to itself", raw.pos);
    const Term& t = resolve(raw);
    switch (t.kind) {
      case Term::Kind::kEmpty:
        break;
      case Term::Kind::kSite:
        spec_.add_site(p);
        break;
      case Term::Kind::kRegions:
        throw Error(ErrorKind::kInvalidModel, "'||' may only appear at the top of a term", raw.pos);
      case Term::Kind::kPar:
        for (const Term& k : t.kids) place(k, p);
        break;
      case Term::Kind::kClose:
        closed_.insert(t.name);
        place(t.kids.at(0), p);
        break;
      case Term::Kind::kNode: {
        std::optional<std::string> param;
        if (t.param) {
          auto v = t.param->bare ? vars_.find(t.param->value) : vars_.end();
          param = v != vars_.end() ? v->second : t.param->value;
        }
        Control c;
        try {
          c = sig_.instantiate(t.name, param);
        } catch (const Error& e) {
          throw Error(e.kind(), e.detail(), t.pos);
        }
        if (static_cast<int>(t.ports.size()) != c.arity) {
          throw Error(ErrorKind::kArityMismatch,
                      c.label() + " has arity " + std::to_string(c.arity) + " but " +
                          std::to_string(t.ports.size()) + " links are given",
                      t.pos);
        }
        const int n = spec_.add_node(t.name, p, t.ports, param);
        if (!t.kids.empty()) place(t.kids[0], Parent::node(n));
        break;
      }
    }
    --depth_;
  }

  const Signature& sig_;
  const std::map<std::string, std::string>& vars_;
  const std::map<std::string, Term>& bigs_;
  BigraphSpec spec_;
  std::set<std::string> closed_;
  int depth_ = 0;
};

int count_newlines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

struct Tagged {
  const dsl::Item* item;
  bool pack;
};

template <class T>
std::vector<std::pair<const T*, bool>> all_of_kind(const std::vector<Tagged>& items) {
  std::vector<std::pair<const T*, bool>> out;
  for (const Tagged& t : items) {
    if (const T* d = std::get_if<T>(t.item)) out.emplace_back(d, t.pack);
  }
  return out;
}

}  // namespace

Bigraph compile_term(const Signature& sig, const Term& term, const std::map<std::string, std::string>& vars,
                     const std::map<std::string, Term>& bigs) {
  return TermBuilder(sig, vars, bigs).build(term);
}

Model compile_model(const dsl::ModelFile& file) {
  Model m;
  m.ast = file;

  dsl::ModelFile pack;
  const dsl::UseDecl* use = nullptr;
  for (const dsl::Item& it : file.items) {
    const auto* d = std::get_if<dsl::UseDecl>(&it);
    if (!d) continue;
    if (d->module != "gdpr") throw Error(ErrorKind::kUnknownImport, "unknown module '" + d->module + "'", d->pos);
    if (use) throw Error(ErrorKind::kInvalidModel, "gdpr is imported twice", d->pos);
    use = d;
    std::vector<std::string> crit = d->criteria ? d->criteria->expand() : gdpr::default_criteria();
    if (crit.empty()) throw Error(ErrorKind::kEmptyCriteriaDomain, "criteria domain is empty", d->pos);
    m.criteria = crit;
    pack = dsl::parse_model(gdpr::pack_text(crit));
  }

  std::vector<Tagged> items;
  for (const dsl::Item& it : pack.items) items.push_back({&it, true});
  for (const dsl::Item& it : file.items) items.push_back({&it, false});

  for (auto [d, from_pack] : all_of_kind<dsl::ModelDecl>(items)) {
    if (!from_pack) m.name = d->name;
  }

  std::map<std::string, std::vector<std::string>> domains;
  for (auto [d, from_pack] : all_of_kind<dsl::DomainDecl>(items)) {
    if (!domains.emplace(d->name, d->domain.expand()).second) {
      throw Error(ErrorKind::kInvalidModel, "domain " + d->name + " is declared twice");
    }
    if (domains[d->name].empty()) throw Error(ErrorKind::kInvalidModel, "domain " + d->name + " is empty");
  }

  for (auto [d, from_pack] : all_of_kind<dsl::CtrlDecl>(items)) {
    if (m.signature.contains(d->name)) {
      throw Error(ErrorKind::kInvalidModel,
                  "control " + d->name + (from_pack || !use ? " is declared twice" : " is already declared by gdpr"),
                  d->pos);
    }
    ControlDecl c{d->name, d->arity, d->atomic, d->param.has_value(), {}};
    if (d->param && *d->param != "*") {
      auto dom = domains.find(*d->param);
      if (dom == domains.end()) throw Error(ErrorKind::kInvalidModel, "unknown domain " + *d->param, d->pos);
      c.domain = dom->second;
    }
    m.signature.add(std::move(c));
  }

  std::map<std::string, Term> bigs;
  for (auto [d, from_pack] : all_of_kind<dsl::BigDecl>(items)) {
    if (m.signature.contains(d->name)) throw Error(ErrorKind::kInvalidModel, "big " + d->name + " shadows a control");
    if (!bigs.emplace(d->name, d->term).second) throw Error(ErrorKind::kInvalidModel, "big " + d->name + " is declared twice");
  }

  // Rules and their instances.
  std::map<std::string, std::vector<std::size_t>> by_name;
  std::vector<bool> is_pack;
  for (auto [d, from_pack] : all_of_kind<dsl::RuleDecl>(items)) {
    if (by_name.count(d->name)) throw Error(ErrorKind::kDuplicateRule, "rule " + d->name + " is defined twice", d->pos);
    std::vector<std::pair<std::string, std::map<std::string, std::string>>> instances;
    if (d->param) {
      auto dom = domains.find(d->param->second);
      if (dom == domains.end()) throw Error(ErrorKind::kInvalidModel, "unknown domain " + d->param->second, d->pos);
      for (const std::string& v : dom->second) {
        instances.push_back({d->name + "(" + v + ")", {{d->param->first, v}}});
      }
    } else {
      instances.push_back({d->name, {}});
    }
    auto& slot = by_name[d->name];
    for (auto& [name, vars] : instances) {
      try {
        Bigraph redex = compile_term(m.signature, d->redex, vars, bigs);
        Bigraph reactum = compile_term(m.signature, d->reactum, vars, bigs);
        m.rules.push_back(make_rule(name, std::move(redex), std::move(reactum), d->eta.value_or(std::vector<int>{})));
      } catch (const Error& e) {
        rethrow(e, "rule " + name, d->pos);
      }
      is_pack.push_back(from_pack);
      slot.push_back(m.rules.size() - 1);
      if (d->param) by_name[name] = {m.rules.size() - 1};
    }
  }

  auto inits = all_of_kind<dsl::InitDecl>(items);
  if (inits.empty()) throw Error(ErrorKind::kInvalidModel, "the model has no init");
  if (inits.size() > 1) throw Error(ErrorKind::kInvalidModel, "the model has more than one init", inits[1].first->pos);
  try {
    m.initial = compile_term(m.signature, inits[0].first->term, {}, bigs);
  } catch (const Error& e) {
    rethrow(e, "init", inits[0].first->pos);
  }

  // Priority classes.
  std::vector<std::vector<std::size_t>> pack_classes;
  if (use) {
    for (const auto& names : gdpr::pack_priorities()) {
      std::vector<std::size_t> cls;
      for (const std::string& n : names) {
        for (std::size_t i : by_name.at(n)) cls.push_back(i);
      }
      pack_classes.push_back(std::move(cls));
    }
  }
  std::vector<std::vector<std::size_t>> classes;
  auto decls = all_of_kind<dsl::RulesDecl>(items);
  if (decls.size() > 1) throw Error(ErrorKind::kInvalidModel, "rules is given twice", decls[1].first->pos);
  if (decls.empty()) {
    classes = pack_classes;
    std::vector<std::size_t> user;
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
      if (!is_pack[i]) user.push_back(i);
    }
    if (!user.empty()) classes.push_back(std::move(user));
  } else {
    const dsl::RulesDecl& rd = *decls[0].first;
    auto lookup = [&](const std::string& n) -> const std::vector<std::size_t>& {
      auto it = by_name.find(n);
      if (it == by_name.end()) throw Error(ErrorKind::kUnknownRule, "rules mentions undefined rule " + n, rd.pos);
      return it->second;
    };
    bool splices = false;
    bool names_pack = false;
    for (const dsl::ClassRef& c : rd.classes) {
      splices |= c.gdpr;
      for (const std::string& n : c.names) {
        for (std::size_t i : lookup(n)) names_pack |= is_pack[i];
      }
    }
    if (splices && !use) throw Error(ErrorKind::kUnknownRule, "rules mentions gdpr but it is not imported", rd.pos);
    if (use && !splices && !names_pack) classes = pack_classes;
    for (const dsl::ClassRef& c : rd.classes) {
      if (c.gdpr) {
        classes.insert(classes.end(), pack_classes.begin(), pack_classes.end());
        continue;
      }
      std::vector<std::size_t> cls;
      for (const std::string& n : c.names) {
        const auto& ids = lookup(n);
        cls.insert(cls.end(), ids.begin(), ids.end());
      }
      if (!cls.empty()) classes.push_back(std::move(cls));
    }
    std::vector<int> used(m.rules.size(), 0);
    for (const auto& cls : classes) {
      for (std::size_t i : cls) {
        if (used[i]++) throw Error(ErrorKind::kDuplicateRule, "rule " + m.rules[i].name + " is listed twice", rd.pos);
      }
    }
    for (std::size_t i = 0; i < m.rules.size(); ++i) {
      if (!used[i]) throw Error(ErrorKind::kInvalidModel, "rule " + m.rules[i].name + " is missing from rules", rd.pos);
    }
  }
  for (const auto& cls : classes) {
    std::vector<ReactionRule> rs;
    for (std::size_t i : cls) rs.push_back(m.rules[i]);
    m.classes.push_back(std::move(rs));
  }

  std::set<std::string> pred_names;
  for (auto [d, from_pack] : all_of_kind<dsl::PredDecl>(items)) {
    if (!pred_names.insert(d->name).second) {
      throw Error(ErrorKind::kInvalidModel, "predicate " + d->name + " is declared twice", d->term.pos);
    }
    try {
      m.predicates.push_back({d->name, compile_term(m.signature, d->term, {}, bigs)});
    } catch (const Error& e) {
      rethrow(e, "predicate " + d->name, d->term.pos);
    }
  }

  for (auto [d, from_pack] : all_of_kind<dsl::PropDecl>(items)) {
    for (const Property& p : m.properties) {
      if (p.name == d->name) throw Error(ErrorKind::kInvalidModel, "property " + d->name + " is declared twice", d->pos);
    }
    ctl::Formula f;
    try {
      f = ctl::parse_formula(d->formula);
    } catch (const Error& e) {
      throw Error(e.kind(), "property " + d->name + ": " + e.detail() + " (at formula offset " +
                                std::to_string(e.pos().offset) + ")",
                  d->pos);
    }
    for (const std::string& a : ctl::atoms(f)) {
      if (!pred_names.count(a)) {
        throw Error(ErrorKind::kUnknownPredicate,
                    "property " + d->name + " uses undeclared predicate " + a +
                        (from_pack ? "; the model must define it with pred" : ""),
                    d->pos);
      }
    }
    m.properties.push_back({d->name, d->formula, std::move(f)});
  }

  auto sorts = all_of_kind<dsl::SortsDecl>(items);
  const dsl::SortsDecl* pack_sorts = nullptr;
  const dsl::SortsDecl* user_sorts = nullptr;
  for (auto [d, from_pack] : sorts) {
    if (from_pack) {
      pack_sorts = d;
    } else {
      if (user_sorts) throw Error(ErrorKind::kInvalidModel, "more than one sorts block", {d->line, 1, -1});
      user_sorts = d;
    }
  }
  if (pack_sorts && user_sorts) {
    m.sorts = parse_sort_scheme(pack_sorts->text + "\n" + user_sorts->text,
                                user_sorts->line - count_newlines(pack_sorts->text) - 1);
  } else if (pack_sorts) {
    m.sorts = parse_sort_scheme(pack_sorts->text, pack_sorts->line);
  } else if (user_sorts) {
    m.sorts = parse_sort_scheme(user_sorts->text, user_sorts->line);
  }
  if (m.sorts) m.warnings = m.sorts->warnings;

  for (auto [d, from_pack] : all_of_kind<dsl::ExpectDecl>(items)) {
    if (d->name == "sorts") {
      m.expect_sorts = d->holds;
      continue;
    }
    bool known = false;
    for (const Property& p : m.properties) known |= p.name == d->name;
    if (!known) throw Error(ErrorKind::kInvalidModel, "expect names unknown property " + d->name);
    m.expectations.push_back({d->name, d->holds});
  }
  return m;
}

Model load_model(std::string_view text) { return compile_model(dsl::parse_model(text)); }

Model load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kInvalidModel, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

}  // namespace bigrady
