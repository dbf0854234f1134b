#pragma once

// CTL by unrolling the computation tree from each state, cutting a branch when it
// revisits a state already on the current path. No fixpoints.

#include <vector>

#include "bigrady/ctl.h"

namespace bigrady::testing {

class BruteCtl {
 public:
  explicit BruteCtl(const ctl::Kripke& k) : k_(k) {}

  bool holds(const ctl::Formula& f, int s) {
    using ctl::Op;
    const auto& a = f.args;
    switch (f.op) {
      case Op::kTrue: return true;
      case Op::kFalse: return false;
      case Op::kAtom: return k_.labels[s].count(f.atom) > 0;
      case Op::kNot: return !holds(a[0], s);
      case Op::kAnd: return holds(a[0], s) && holds(a[1], s);
      case Op::kOr: return holds(a[0], s) || holds(a[1], s);
      case Op::kImplies: return !holds(a[0], s) || holds(a[1], s);
      case Op::kEX:
        for (const auto& e : k_.out[s]) {
          if (holds(a[0], e.target)) return true;
        }
        return false;
      case Op::kAX:
        for (const auto& e : k_.out[s]) {
          if (!holds(a[0], e.target)) return false;
        }
        return true;
      case Op::kEF: return exists_until(ctl::Formula::truth(), a[0], s);
      case Op::kEU: return exists_until(a[0], a[1], s);
      case Op::kAF: return all_until(ctl::Formula::truth(), a[0], s);
      case Op::kAU: return all_until(a[0], a[1], s);
      case Op::kEG: return exists_always(a[0], s);
      case Op::kAG: return all_always(a[0], s);
    }
    return false;
  }

 private:
  bool exists_until(const ctl::Formula& a, const ctl::Formula& b, int s) {
    std::vector<char> on(k_.size(), 0);
    return eu(a, b, s, on);
  }
  bool eu(const ctl::Formula& a, const ctl::Formula& b, int s, std::vector<char>& on) {
    if (holds(b, s)) return true;
    if (!holds(a, s) || on[s]) return false;
    on[s] = 1;
    bool r = false;
    for (const auto& e : k_.out[s]) {
      if (eu(a, b, e.target, on)) {
        r = true;
        break;
      }
    }
    on[s] = 0;
    return r;
  }

  bool all_until(const ctl::Formula& a, const ctl::Formula& b, int s) {
    std::vector<char> on(k_.size(), 0);
    return au(a, b, s, on);
  }
  bool au(const ctl::Formula& a, const ctl::Formula& b, int s, std::vector<char>& on) {
    if (holds(b, s)) return true;
    if (!holds(a, s) || on[s]) return false;
    if (k_.out[s].empty()) return false;
    on[s] = 1;
    bool r = true;
    for (const auto& e : k_.out[s]) {
      if (!au(a, b, e.target, on)) {
        r = false;
        break;
      }
    }
    on[s] = 0;
    return r;
  }

  bool exists_always(const ctl::Formula& a, int s) {
    std::vector<char> on(k_.size(), 0);
    return eg(a, s, on);
  }
  bool eg(const ctl::Formula& a, int s, std::vector<char>& on) {
    if (!holds(a, s)) return false;
    if (on[s]) return true;
    on[s] = 1;
    bool r = false;
    for (const auto& e : k_.out[s]) {
      if (eg(a, e.target, on)) {
        r = true;
        break;
      }
    }
    on[s] = 0;
    return r;
  }

  bool all_always(const ctl::Formula& a, int s) {
    std::vector<char> on(k_.size(), 0);
    return ag(a, s, on);
  }
  bool ag(const ctl::Formula& a, int s, std::vector<char>& on) {
    if (!holds(a, s)) return false;
    if (on[s]) return true;
    on[s] = 1;
    bool r = true;
    for (const auto& e : k_.out[s]) {
      if (!ag(a, e.target, on)) {
        r = false;
        break;
      }
    }
    on[s] = 0;
    return r;
  }

  const ctl::Kripke& k_;
};

}  // namespace bigrady::testing
