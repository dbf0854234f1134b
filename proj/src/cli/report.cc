#include <cmath>
#include <sstream>

#include "bigrady/pipeline.h"
#include "json.hpp"

namespace bigrady {

namespace {

using Json = nlohmann::ordered_json;

Json diag_json(const SortDiagnostic& d) {
  return Json{{"where", d.where == SortDiagnostic::Where::kNode ? "node" : "link"},
              {"index", d.index},
              {"constraint", d.constraint},
              {"message", d.message},
              {"context", d.context}};
}

Json trace_json(const std::vector<ctl::TraceStep>& trace) {
  Json out = Json::array();
  for (const ctl::TraceStep& s : trace) out.push_back(Json{{"state", s.state}, {"rule", s.rule}});
  return out;
}

Json properties_json(const RunReport& r) {
  Json out = Json::array();
  for (const PropertyResult& p : r.properties) {
    Json j{{"name", p.name}, {"formula", p.formula}, {"verdict", p.holds ? "holds" : "fails"}};
    j["expected"] = p.expected ? Json(*p.expected ? "holds" : "fails") : Json(nullptr);
    j["trace"] = p.trace ? trace_json(*p.trace) : Json(nullptr);
    j["offending_rule"] = p.offending_rule ? Json(*p.offending_rule) : Json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string report_json(const RunReport& r) {
  Json j;
  j["schema"] = 1;
  j["model"] = r.model;
  j["explored"] = r.explored;
  j["states"] = r.states;
  j["transitions"] = r.transitions;
  Json labels = Json::object();
  for (const auto& [name, n] : r.label_counts) labels[name] = n;
  j["labels"] = labels;
  j["properties"] = properties_json(r);
  j["sorts_ok"] = r.sorts_ok();
  Json diags = Json::array();
  for (const SortDiagnostic& d : r.sort_diagnostics) diags.push_back(diag_json(d));
  j["sort_diagnostics"] = diags;
  j["dynamic_sorts_checked"] = r.dynamic_sorts_checked;
  Json dyn = Json::array();
  for (const SortDiagnostic& d : r.dynamic_sort_diagnostics) dyn.push_back(diag_json(d));
  j["dynamic_sort_diagnostics"] = dyn;
  j["warnings"] = r.warnings;
  j["exit_code"] = exit_code(r);
  j["duration_ms"] = std::round(r.duration_ms * 1000) / 1000;
  return j.dump(2) + "\n";
}

std::string report_text(const RunReport& r) {
  std::ostringstream os;
  for (const std::string& w : r.warnings) os << "warning: " << w << "\n";
  if (!r.sort_diagnostics.empty()) {
    os << r.model << ": sort check failed (" << r.sort_diagnostics.size() << " diagnostics)\n";
    for (const SortDiagnostic& d : r.sort_diagnostics) os << "  " << to_string(d) << "\n";
    return os.str();
  }
  os << r.model << ": " << r.states << " states, " << r.transitions << " transitions\n";
  if (!r.label_counts.empty()) {
    os << "labels:";
    for (const auto& [name, n] : r.label_counts) os << " " << name << "=" << n;
    os << "\n";
  }
  if (r.dynamic_sorts_checked) {
    if (r.dynamic_sort_diagnostics.empty()) {
      os << "every reachable state is well sorted\n";
    } else {
      os << r.dynamic_sort_diagnostics.size() << " sort diagnostics in reachable states\n";
      for (const SortDiagnostic& d : r.dynamic_sort_diagnostics) os << "  " << to_string(d) << "\n";
    }
  }
  for (const PropertyResult& p : r.properties) {
    os << "  " << (p.holds ? "holds " : "FAILS ") << p.name << "  " << p.formula;
    if (p.expected && *p.expected != p.holds) os << "  (expected " << (*p.expected ? "holds" : "fails") << ")";
    os << "\n";
  }
  if (!r.sorts_ok()) {
    os << "verdict: the model is not well sorted\n";
  } else if (r.all_hold()) {
    os << "verdict: "
       << (r.gdpr ? "the system meets the GDPR requirements for cross-border data transfers" : "all properties hold")
       << "\n";
  } else {
    os << "verdict: the system model should be fixed\n";
    for (const PropertyResult& p : r.properties) {
      if (p.holds) continue;
      os << "  " << p.name << " fails";
      if (p.offending_rule) os << "; offending rule: " << *p.offending_rule;
      os << "\n";
      if (p.trace) {
        os << "    trace: " << p.trace->front().state;
        for (std::size_t i = 1; i < p.trace->size(); ++i) {
          os << " -" << (*p.trace)[i].rule << "-> " << (*p.trace)[i].state;
        }
        os << "\n";
      }
    }
  }
  return os.str();
}

std::string export_dot(const TransitionSystem& ts, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  node [shape=box];\n";
  for (std::size_t s = 0; s < ts.states.size(); ++s) {
    os << "  s" << s << " [label=\"" << s;
    for (const std::string& l : ts.labels[s]) os << "\\n" << dot_escape(l);
    os << "\"";
    if (static_cast<int>(s) == ts.initial) os << ", peripheries=2";
    os << "];\n";
  }
  for (const Transition& t : ts.transitions) {
    os << "  s" << t.source << " -> s" << t.target << " [label=\"" << dot_escape(t.rule) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_json(const TransitionSystem& ts, const RunReport& r) {
  Json j;
  j["schema"] = 1;
  j["model"] = r.model;
  j["initial"] = ts.initial;
  Json states = Json::array();
  for (std::size_t s = 0; s < ts.states.size(); ++s) {
    states.push_back(Json{{"id", s}, {"key", ts.keys[s]}, {"labels", ts.labels[s]}});
  }
  j["states"] = states;
  Json trans = Json::array();
  for (const Transition& t : ts.transitions) {
    trans.push_back(Json{{"source", t.source}, {"rule", t.rule}, {"target", t.target}});
  }
  j["transitions"] = trans;
  j["properties"] = properties_json(r);
  return j.dump(2) + "\n";
}

}  // namespace bigrady
