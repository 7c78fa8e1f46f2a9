#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hdta/ipomset.hpp"
#include "hdta/rational.hpp"

namespace hdta {

/// Ipomset with an activity interval per event and a total duration.
struct Tipomset {
  Ipomset under;
  std::vector<Rat> start;  // sigma-
  std::vector<Rat> end;    // sigma+
  Rat duration;

  size_t size() const { return under.size(); }
};

inline std::vector<std::string> tipomset_violations(const Tipomset& t) {
  std::vector<std::string> bad = ipomset_violations(t.under);
  size_t n = t.size();
  if (t.start.size() != n || t.end.size() != n) return {"inconsistent timestamp vectors"};
  if (t.duration < Rat(0)) bad.push_back("negative duration");
  for (size_t x = 0; x < n; ++x) {
    if (t.start[x] < Rat(0) || t.start[x] > t.end[x] || t.end[x] > t.duration)
      bad.push_back("activity interval of event " + std::to_string(x) + " out of range");
    if (t.under.source[x] && t.start[x] != Rat(0))
      bad.push_back("source event " + std::to_string(x) + " does not start at 0");
    if (t.under.target[x] && t.end[x] != t.duration)
      bad.push_back("target event " + std::to_string(x) + " does not end at the duration");
  }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      if (t.end[x] < t.start[y] && !t.under.prec[x][y])
        bad.push_back("separated intervals without precedence");
      if (t.under.prec[x][y] && t.end[x] > t.start[y])
        bad.push_back("precedence against overlapping intervals");
    }
  return bad;
}

inline Tipomset make_tipomset(Ipomset under, std::vector<Rat> start, std::vector<Rat> end,
                              Rat duration) {
  Tipomset t{std::move(under), std::move(start), std::move(end), duration};
  auto bad = tipomset_violations(t);
  if (!bad.empty()) throw std::invalid_argument("invalid tipomset: " + bad.front());
  return t;
}

inline const Ipomset& untime(const Tipomset& t) { return t.under; }

/// Timed gluing: durations add, the second operand's timestamps shift, and
/// glued interface events keep their start from the left and take their end
/// from the right.
inline std::optional<Tipomset> tglue(const Tipomset& p, const Tipomset& q) {
  std::vector<size_t> qmap;
  auto u = glue(p.under, q.under, &qmap);
  if (!u) return std::nullopt;
  size_t n = u->size();
  std::vector<Rat> start(n), end(n);
  for (size_t i = 0; i < p.size(); ++i) {
    start[i] = p.start[i];
    end[i] = p.end[i];  // glued events overwritten below
  }
  for (size_t j = 0; j < q.size(); ++j) {
    if (!q.under.source[j]) start[qmap[j]] = q.start[j] + p.duration;
    end[qmap[j]] = q.end[j] + p.duration;
  }
  return make_tipomset(std::move(*u), std::move(start), std::move(end), p.duration + q.duration);
}

/// Isomorphism of tipomsets: untimed isomorphism with exactly matching
/// activity intervals and equal duration.
inline bool tipomset_isomorphic(const Tipomset& p, const Tipomset& q) {
  if (p.size() != q.size() || p.duration != q.duration) return false;
  std::vector<size_t> f(p.size());
  std::vector<bool> used(q.size(), false);
  auto ok = [&](const std::vector<size_t>& f) {
    for (size_t x = 0; x < p.size(); ++x) {
      if (p.start[x] != q.start[f[x]] || p.end[x] != q.end[f[x]]) return false;
      for (size_t y = 0; y < p.size(); ++y) {
        if (x == y) continue;
        if (p.under.prec[x][y] != q.under.prec[f[x]][f[y]]) return false;
        if (p.under.concurrent(x, y) && p.under.evord[x][y] != q.under.evord[f[x]][f[y]])
          return false;
      }
    }
    return true;
  };
  return detail::search_bijection(p.under, q.under, f, used, 0, ok);
}

}  // namespace hdta
