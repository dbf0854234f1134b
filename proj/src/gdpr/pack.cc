#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "bigrady/gdpr.h"

namespace bigrady::gdpr {

namespace {

bool numeric(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string literal(const std::string& v) {
  if (numeric(v)) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* kControls = R"(
ctrl L(*) = 0;
ctrl Adeq = 1;
ctrl Contract = 1;
atomic ctrl SCCs = 0;
ctrl Scheme = 1;
atomic ctrl ExpiryDate = 0;
atomic ctrl C(criteria) = 0;
atomic ctrl C'(criteria) = 0;
ctrl Cert = 1;
ctrl CompliantCert = 1;
ctrl InvalidCert = 1;
atomic ctrl WithdrawnCert = 1;
atomic ctrl InvalidContract = 1;
atomic ctrl P = 1;
atomic ctrl P' = 1;
atomic ctrl Ps = 1;
atomic ctrl Cont = 1;
atomic ctrl Proc = 1;
ctrl SType = 1;
ctrl RType = 1;
atomic ctrl CheckReg = 0;
atomic ctrl SameRegion = 0;
atomic ctrl Adequate = 0;
ctrl CheckExp = 0;
atomic ctrl CurrentDate = 0;
ctrl Greater = 0;
atomic ctrl WithdReq = 0;
)";

// Rules sit in the regions that the system places them in: markers such as CheckReg
// live inside the sending entity, pointers inside their location.
const char* kRules = R"(
react checkSType = CheckReg || SType{l}.id || P{l} -> CheckReg || SType{l}.id || Ps{l};
react checkRType = CheckReg || RType{l}.id || P{l} -> CheckReg || RType{l}.id || P'{l};
react sameReg = CheckReg || (Ps{l} | P'{l2}) -> SameRegion || (P{l} | P{l2});
react checkingAdeq =
    CheckReg || Ps{l2} || (P'{l} | P{a}) || Adeq{a}
  -> Adequate || P{l2} || (P{l} | P{a}) || Adeq{a};
react checkingSCCs = CheckReg || (P'{l} | Contract{c}) -> 1 || (P{l} | /x InvalidContract{x});
react tagCriteria(x in criteria) =
    CheckReg || (Cert{s}.(C(x) | id) | P'{l}) || Scheme{s}.(C(x) | id)
  -> CheckReg || (Cert{s}.(C'(x) | id) | P'{l}) || Scheme{s}.(C(x) | id);
react tagInvalidCert = CheckReg || (P'{l} | Cert{s}.id) -> 1 || (P'{l} | /x InvalidCert{x}.id);
react ExpiredDate =
    CheckExp.CurrentDate || CompliantCert{s}.(Greater.ExpiryDate | id)
  -> 1 || /x InvalidCert{x}.(Greater.ExpiryDate | id);
react processWithdReq = WithdReq || CompliantCert{c}.id -> 1 || /x WithdrawnCert{x};
)";

const char* kPredicates = R"(
pred adequateCountry = Adequate || P{l2} || (P{l} | P{a}) || Adeq{a};
pred invalidContra = P{l} | /x InvalidContract{x};
pred invalidCert = P'{l} | /x InvalidCert{x}.id;
pred withdrawCert = /x WithdrawnCert{x};
pred sameRegion = SameRegion || (P{l} | P{l2});
)";

struct PropText {
  const char* name;
  const char* formula;
};

const PropText kProperties[] = {
    {"no_transfer_inadequate", "A[G (!adequateCountry => !dataTransfer)]"},
    {"no_transfer_invalid_contract", "A[G (invalidContra => !dataTransfer)]"},
    {"no_transfer_invalid_cert", "A[G (invalidCert => !dataTransfer)]"},
    {"no_transfer_after_withdrawal", "A[G (withdrawCert => (X !dataTransfer))]"},
};

// Port sorts: a entity link seen from Cont/Proc, p/tp plain and tagged pointers, et entity
// types, sy system entities, c certificates, sc schemes, t contracts, i invalid contracts,
// d adequacy lists.
const char* kSorts = R"(
sort a; sort p; sort tp; sort et; sort sy; sort c; sort sc; sort t; sort i; sort d;
sort sr = Cont{a -> (p + tp) × sy × (et + 1)} | Proc{a -> (p + tp) × sy × (et + 1)};
sort ent = SType{et -> (p + tp) × a × sy} sr | RType{et -> (p + tp) × a × sy} sr;
sort srt = SRType (sr + ent)* × (sr + ent);
sort cr = C;
sort tcr = C';
sort e = ExpiryDate;
sort g = Greater e;
sort s = SCCs;
sort ad = Adeq{d -> p × p*};
sort pnt = P{p -> (sy × a × (et + 1)) + d} | P'{tp -> sy × a × (et + 1)} | Ps{tp -> sy × a × (et + 1)};
sort scm = Scheme{sc -> c*} cr × cr*;
sort certf = Cert{c -> sc} (cr + tcr)* × (e + g) | InvalidCert{c -> 1} (cr + tcr)* × (e + g)
           | CompliantCert{c -> sc} tcr × tcr* × (e + g) | WithdrawnCert{c -> 1};
sort ctr = Contract{t -> t*} s + 1;
sort inctr = InvalidContract{i -> 1};
sort l = L pnt × pnt* × (ad + 1) × (scm + 1) × (ctr + inctr + certf + 1);
sort loc = Locations l × l*;
sort chk = CheckReg | SameRegion | Adequate;
sort cd = CurrentDate;
sort chex = CheckExp cd;
sort wreq = WithdReq;
)";

}  // namespace

const char* role_name(Role r) {
  switch (r) {
    case Role::kLocation: return "location";
    case Role::kAdequacy: return "adequacy";
    case Role::kSafeguard: return "safeguard";
    case Role::kCriterion: return "criterion";
    case Role::kCertificate: return "certificate";
    case Role::kMarker: return "marker";
    case Role::kPointer: return "pointer";
    case Role::kEntity: return "entity";
    case Role::kEntityType: return "entity type";
    case Role::kCheck: return "check";
  }
  return "?";
}

const std::vector<CatalogEntry>& privacy_catalog() {
  static const std::vector<CatalogEntry> catalog = {
      {"L", 0, false, true, Role::kLocation},
      {"Adeq", 1, false, false, Role::kAdequacy},
      {"Contract", 1, false, false, Role::kSafeguard},
      {"SCCs", 0, true, false, Role::kSafeguard},
      {"Scheme", 1, false, false, Role::kCertificate},
      {"ExpiryDate", 0, true, false, Role::kCertificate},
      {"C", 0, true, true, Role::kCriterion},
      {"C'", 0, true, true, Role::kCriterion},
      {"Cert", 1, false, false, Role::kCertificate},
      {"CompliantCert", 1, false, false, Role::kCertificate},
      {"InvalidCert", 1, false, false, Role::kCertificate},
      {"WithdrawnCert", 1, true, false, Role::kCertificate},
      {"InvalidContract", 1, true, false, Role::kSafeguard},
      {"P", 1, true, false, Role::kPointer},
      {"P'", 1, true, false, Role::kPointer},
      {"Ps", 1, true, false, Role::kPointer},
      {"Cont", 1, true, false, Role::kEntity},
      {"Proc", 1, true, false, Role::kEntity},
      {"SType", 1, false, false, Role::kEntityType},
      {"RType", 1, false, false, Role::kEntityType},
      {"CheckReg", 0, true, false, Role::kCheck},
      {"SameRegion", 0, true, false, Role::kCheck},
      {"Adequate", 0, true, false, Role::kCheck},
      {"CheckExp", 0, false, false, Role::kCheck},
      {"CurrentDate", 0, true, false, Role::kMarker},
      {"Greater", 0, false, false, Role::kMarker},
      {"WithdReq", 0, true, false, Role::kMarker},
  };
  return catalog;
}

const CatalogEntry* find_control(std::string_view name) {
  for (const CatalogEntry& e : privacy_catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::vector<std::string> default_criteria() { return {"1", "2", "3"}; }

std::string pack_sorts() { return kSorts; }

std::string pack_text(const std::vector<std::string>& criteria) {
  if (criteria.empty()) throw Error(ErrorKind::kEmptyCriteriaDomain, "criteria domain is empty");
  std::set<std::string> seen;
  std::ostringstream os;
  os << "domain criteria = {";
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!seen.insert(criteria[i]).second) {
      throw Error(ErrorKind::kEmptyCriteriaDomain, "criterion " + criteria[i] + " is listed twice");
    }
    os << (i ? ", " : "") << literal(criteria[i]);
  }
  os << "};\n" << kControls << kRules;
  // A certificate is compliant once every criterion is tagged.
  std::string tagged;
  for (std::size_t i = 0; i < criteria.size(); ++i) tagged += "C'(" + literal(criteria[i]) + ") | ";
  os << "react checkingCertResult =\n    CheckReg || Cert{s}.(" << tagged << "id)\n"
     << "  -> CheckExp.CurrentDate || CompliantCert{s}.(" << tagged << "id);\n";
  os << kPredicates;
  for (const PropText& p : kProperties) os << "prop " << p.name << " = \"" << p.formula << "\";\n";
  os << "sorts {" << kSorts << "}\n";
  return os.str();
}

const std::vector<std::vector<std::string>>& pack_priorities() {
  static const std::vector<std::vector<std::string>> order = {
      {"checkSType", "checkRType"},
      {"sameReg"},
      {"tagCriteria"},
      {"checkingSCCs", "checkingCertResult", "ExpiredDate", "processWithdReq"},
      {"tagInvalidCert"},
      {"checkingAdeq"},
  };
  return order;
}

RulePack privacy_rules(const std::vector<std::string>& criteria) {
  if (criteria.empty()) throw Error(ErrorKind::kEmptyCriteriaDomain, "criteria domain is empty");
  std::string text = "use gdpr(criteria = {";
  for (std::size_t i = 0; i < criteria.size(); ++i) text += (i ? ", " : "") + literal(criteria[i]);
  // dataTransfer only needs to exist here; nothing is checked.
  text += "});\ninit 1;\npred dataTransfer = 1;\n";
  Model m = load_model(text);
  return {std::move(m.rules), std::move(m.classes)};
}

Signature privacy_signature(const std::vector<std::string>& criteria) {
  return compile_model(dsl::parse_model(pack_text(criteria) + "init 1;\npred dataTransfer = 1;\n")).signature;
}

Bigraph build_location(const LocationSpec& spec) {
  if (spec.country.empty()) throw Error(ErrorKind::kInconsistentSpec, "location needs a country name");
  if (spec.contract && spec.certification) {
    throw Error(ErrorKind::kInconsistentSpec, spec.country + " cannot offer both a contract and a certification");
  }
  if (spec.certification && spec.certification->criteria.empty()) {
    throw Error(ErrorKind::kInconsistentSpec, spec.country + ": certification without criteria");
  }
  if (spec.scheme && spec.scheme->empty()) throw Error(ErrorKind::kInconsistentSpec, spec.country + ": empty scheme");
  std::set<std::string> reserved = {"adq", "ct", "sch"};
  std::set<std::string> names;
  for (const std::string& p : spec.pointers) {
    if (p.empty() || reserved.count(p) || !names.insert(p).second) {
      throw Error(ErrorKind::kInconsistentSpec, spec.country + ": bad or repeated pointer name '" + p + "'");
    }
  }
  if (spec.pointers.empty() && !spec.adequacy_list) {
    throw Error(ErrorKind::kInconsistentSpec, spec.country + " has no pointers");
  }

  std::vector<std::string> kids;
  for (const std::string& p : spec.pointers) kids.push_back("P{" + p + "}");
  if (spec.adequacy_list) kids.push_back("P{adq}");
  if (spec.adequate) kids.push_back("Adeq{adq}");
  std::vector<std::string> crit;
  if (spec.scheme) crit = *spec.scheme;
  if (spec.certification) crit.insert(crit.end(), spec.certification->criteria.begin(), spec.certification->criteria.end());
  if (spec.scheme) {
    std::string s = "Scheme{sch}.(";
    for (std::size_t i = 0; i < spec.scheme->size(); ++i) s += (i ? " | " : "") + ("C(" + literal((*spec.scheme)[i]) + ")");
    kids.push_back(s + ")");
  }
  if (spec.contract) kids.push_back(spec.contract->valid ? "Contract{ct}.SCCs" : "Contract{ct}");
  if (spec.certification) {
    std::string s = "Cert{sch}.(";
    s += spec.certification->expired ? "Greater.ExpiryDate" : "ExpiryDate";
    for (const std::string& c : spec.certification->criteria) s += " | C(" + literal(c) + ")";
    kids.push_back(s + ")");
  }
  std::string text = "L(" + literal(spec.country) + ").(";
  for (std::size_t i = 0; i < kids.size(); ++i) text += (i ? " | " : "") + kids[i];
  text += ")";

  std::vector<std::string> domain;
  std::set<std::string> dedup;
  for (const std::string& c : crit) {
    if (dedup.insert(c).second) domain.push_back(c);
  }
  if (domain.empty()) domain = default_criteria();
  return compile_term(privacy_signature(domain), dsl::parse_term(text));
}

StandardProperties standard_properties(const Bigraph& data_transfer) {
  StandardProperties out;
  Model m = compile_model(dsl::parse_model(pack_text(default_criteria()) + "init 1;\npred dataTransfer = 1;\n"));
  for (Predicate& p : m.predicates) {
    if (p.name == "dataTransfer") {
      p.pattern = data_transfer;
    }
  }
  // Pack predicates first, dataTransfer last.
  std::stable_partition(m.predicates.begin(), m.predicates.end(),
                        [](const Predicate& p) { return p.name != "dataTransfer"; });
  out.predicates = std::move(m.predicates);
  out.properties = std::move(m.properties);
  return out;
}

}  // namespace bigrady::gdpr
