#include <algorithm>
#include <deque>

#include "bigrady/ctl.h"
#include "bigrady/error.h"

namespace bigrady::ctl {

namespace {

using Set = std::vector<char>;

Set negate(Set s) {
  for (auto& v : s) v = !v;
  return s;
}

Set pre_exists(const Kripke& k, const Set& s) {
  Set out(k.size(), 0);
  for (int i = 0; i < k.size(); ++i) {
    for (const auto& e : k.out[i]) {
      if (s[e.target]) {
        out[i] = 1;
        break;
      }
    }
  }
  return out;
}

Set until(const Kripke& k, const Set& a, const Set& b) {
  Set z = b;
  while (true) {
    Set pre = pre_exists(k, z);
    bool changed = false;
    for (int i = 0; i < k.size(); ++i) {
      if (!z[i] && a[i] && pre[i]) {
        z[i] = 1;
        changed = true;
      }
    }
    if (!changed) return z;
  }
}

Set globally(const Kripke& k, const Set& a) {
  Set z = a;
  while (true) {
    Set pre = pre_exists(k, z);
    bool changed = false;
    for (int i = 0; i < k.size(); ++i) {
      if (z[i] && !pre[i]) {
        z[i] = 0;
        changed = true;
      }
    }
    if (!changed) return z;
  }
}

Set both(const Set& a, const Set& b) {
  Set out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

Set either(const Set& a, const Set& b) {
  Set out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] || b[i];
  return out;
}

bool is_next_shape(const Formula& body) {
  return body.op == Op::kImplies && body.args[1].op == Op::kAX;
}

}  // namespace

Kripke to_kripke(const TransitionSystem& ts) {
  Kripke k;
  k.initial = ts.initial;
  k.out.resize(ts.states.size());
  for (const Transition& t : ts.transitions) k.out[t.source].push_back({t.target, t.rule});
  for (const auto& l : ts.labels) k.labels.emplace_back(l.begin(), l.end());
  k.atoms.insert(ts.predicate_names.begin(), ts.predicate_names.end());
  return k;
}

std::vector<char> satisfying(const Formula& f, const Kripke& k) {
  const int n = k.size();
  switch (f.op) {
    case Op::kTrue: return Set(n, 1);
    case Op::kFalse: return Set(n, 0);
    case Op::kAtom: {
      if (!k.atoms.count(f.atom)) throw Error(ErrorKind::kUnknownPredicate, "unknown predicate " + f.atom);
      Set s(n, 0);
      for (int i = 0; i < n; ++i) s[i] = k.labels[i].count(f.atom) > 0;
      return s;
    }
    case Op::kNot: return negate(satisfying(f.args[0], k));
    case Op::kAnd: return both(satisfying(f.args[0], k), satisfying(f.args[1], k));
    case Op::kOr: return either(satisfying(f.args[0], k), satisfying(f.args[1], k));
    case Op::kImplies: return either(negate(satisfying(f.args[0], k)), satisfying(f.args[1], k));
    case Op::kEX: return pre_exists(k, satisfying(f.args[0], k));
    case Op::kAX: return negate(pre_exists(k, negate(satisfying(f.args[0], k))));
    case Op::kEF: return until(k, Set(n, 1), satisfying(f.args[0], k));
    case Op::kAF: return negate(globally(k, negate(satisfying(f.args[0], k))));
    case Op::kEG: return globally(k, satisfying(f.args[0], k));
    case Op::kAG: return negate(until(k, Set(n, 1), negate(satisfying(f.args[0], k))));
    case Op::kEU: return until(k, satisfying(f.args[0], k), satisfying(f.args[1], k));
    case Op::kAU: {
      Set a = satisfying(f.args[0], k);
      Set b = satisfying(f.args[1], k);
      Set nb = negate(b);
      Set bad = either(until(k, nb, both(negate(a), nb)), globally(k, nb));
      return negate(bad);
    }
  }
  return Set(n, 0);
}

Verdict check(const Formula& f, const Kripke& k) {
  Verdict v;
  Set sat = satisfying(f, k);
  v.holds = k.size() > 0 && sat[k.initial];
  if (v.holds || f.op != Op::kAG || k.size() == 0) return v;

  const Formula& body = f.args[0];
  Set good = satisfying(body, k);
  std::vector<int> prev(k.size(), -2);
  std::vector<std::string> via(k.size());
  std::deque<int> queue{k.initial};
  prev[k.initial] = -1;
  int bad = -1;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (!good[s]) {
      bad = s;
      break;
    }
    for (const auto& e : k.out[s]) {
      if (prev[e.target] != -2) continue;
      prev[e.target] = s;
      via[e.target] = e.rule;
      queue.push_back(e.target);
    }
  }
  if (bad < 0) return v;
  std::vector<TraceStep> trace;
  for (int s = bad; s != -1; s = prev[s]) trace.push_back({s, s == k.initial ? "" : via[s]});
  std::reverse(trace.begin(), trace.end());
  trace.front().rule.clear();
  if (is_next_shape(body)) {
    Set q = satisfying(body.args[1].args[0], k);
    for (const auto& e : k.out[bad]) {
      if (!q[e.target]) {
        trace.push_back({e.target, e.rule});
        break;
      }
    }
  }
  v.witness = std::move(trace);
  return v;
}

Verdict check(const Formula& f, const TransitionSystem& ts) { return check(f, to_kripke(ts)); }

bool witness_is_valid(const Formula& f, const Kripke& k, const std::vector<TraceStep>& trace) {
  if (f.op != Op::kAG || trace.empty() || trace.front().state != k.initial) return false;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    bool found = false;
    for (const auto& e : k.out[trace[i - 1].state]) {
      if (e.target == trace[i].state && e.rule == trace[i].rule) found = true;
    }
    if (!found) return false;
  }
  const Formula& body = f.args[0];
  if (is_next_shape(body)) {
    if (trace.size() < 2) return false;
    Set p = satisfying(body.args[0], k);
    Set q = satisfying(body.args[1].args[0], k);
    return p[trace[trace.size() - 2].state] && !q[trace.back().state];
  }
  return !satisfying(body, k)[trace.back().state];
}

}  // namespace bigrady::ctl
