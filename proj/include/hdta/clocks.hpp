#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdta/rational.hpp"

namespace hdta {

enum class Rel { Lt, Le, Ge, Gt };

inline std::string rel_str(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Ge: return ">=";
    default: return ">";
  }
}

/// Conjunction of comparisons clock ⋈ k with integer bounds.
struct ClockConstraint {
  struct Conjunct {
    std::string clock;
    Rel rel;
    long long bound;

    bool operator==(const Conjunct&) const = default;
  };
  std::vector<Conjunct> conjuncts;

  bool operator==(const ClockConstraint&) const = default;

  static ClockConstraint top() { return {}; }

  long long max_bound() const {
    long long m = 0;
    for (const auto& c : conjuncts)
      if (c.bound > m) m = c.bound;
    return m;
  }

  std::set<std::string> clocks() const {
    std::set<std::string> cs;
    for (const auto& c : conjuncts) cs.insert(c.clock);
    return cs;
  }
};

/// Parses `x<=4 & y>=1`; `true` is the empty conjunction.
inline ClockConstraint parse_constraint(const std::string& text) {
  ClockConstraint phi;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "true") return phi;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '&')) {
    size_t i = part.find_first_of("<>");
    if (i == std::string::npos || i == 0) throw std::invalid_argument("bad constraint: " + part);
    ClockConstraint::Conjunct c;
    c.clock = part.substr(0, i);
    bool eq = i + 1 < part.size() && part[i + 1] == '=';
    c.rel = part[i] == '<' ? (eq ? Rel::Le : Rel::Lt) : (eq ? Rel::Ge : Rel::Gt);
    std::string num = part.substr(i + 1 + (eq ? 1 : 0));
    if (num.empty()) throw std::invalid_argument("bad constraint: " + part);
    c.bound = std::stoll(num);
    if (c.bound < 0) throw std::invalid_argument("negative bound: " + part);
    phi.conjuncts.push_back(c);
  }
  return phi;
}

inline std::string constraint_str(const ClockConstraint& phi) {
  if (phi.conjuncts.empty()) return "true";
  std::string s;
  for (const auto& c : phi.conjuncts) {
    if (!s.empty()) s += " & ";
    s += c.clock + rel_str(c.rel) + std::to_string(c.bound);
  }
  return s;
}

using Valuation = std::map<std::string, Rat>;

inline bool satisfies(const Valuation& v, const ClockConstraint& phi) {
  for (const auto& c : phi.conjuncts) {
    auto it = v.find(c.clock);
    if (it == v.end()) throw std::invalid_argument("valuation misses clock " + c.clock);
    const Rat& x = it->second;
    Rat k(c.bound);
    bool ok = c.rel == Rel::Lt ? x < k : c.rel == Rel::Le ? x <= k : c.rel == Rel::Ge ? x >= k : x > k;
    if (!ok) return false;
  }
  return true;
}

inline Valuation delay_valuation(Valuation v, const Rat& d) {
  for (auto& [c, x] : v) x += d;
  return v;
}

inline Valuation reset_valuation(Valuation v, const std::set<std::string>& resets) {
  for (const auto& c : resets) {
    auto it = v.find(c);
    if (it == v.end()) throw std::invalid_argument("reset of unknown clock " + c);
    it->second = Rat(0);
  }
  return v;
}

inline Valuation zero_valuation(const std::set<std::string>& clocks) {
  Valuation v;
  for (const auto& c : clocks) v[c] = Rat(0);
  return v;
}

}  // namespace hdta
