#pragma once

// Random instance generators shared by the property tests and the acceptance
// suite. All randomness flows through a caller-owned engine so every test run
// is reproducible from its seed.
//
// Ipomsets and tipomsets are generated from explicit interval representations:
// each event gets an activity interval, precedence is "ends before the other
// starts" (with optional edges at touching boundaries realized by open/closed
// endpoint choices, which keeps the relation an interval order by
// construction), and the event order is a fixed linear extension.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "hdta/idword.hpp"
#include "hdta/ipomset.hpp"
#include "hdta/model.hpp"
#include "hdta/tipomset.hpp"

namespace gen {

inline size_t pick(std::mt19937& rng, size_t n) { return static_cast<size_t>(rng() % n); }

inline bool coin(std::mt19937& rng) { return rng() % 2 == 0; }

namespace detail {

// Shared skeleton: intervals plus open/closed endpoint flags induce the
// precedence relation, a linear extension of it the event order.
struct IntervalSkeleton {
  std::vector<std::string> labels;
  std::vector<hdta::Rat> lo, hi;
  hdta::Relation prec, evord;
};

inline IntervalSkeleton skeleton(std::mt19937& rng, size_t n, size_t nlabels,
                                 const std::vector<hdta::Rat>& lo,
                                 const std::vector<hdta::Rat>& hi) {
  static const std::vector<std::string> names{"a", "b", "c"};
  IntervalSkeleton s;
  s.lo = lo;
  s.hi = hi;
  for (size_t i = 0; i < n; ++i) s.labels.push_back(names[pick(rng, nlabels)]);

  // endOpen/startOpen realize "touching intervals may or may not be ordered";
  // degenerate point intervals stay closed so the representation is genuine.
  std::vector<bool> endOpen(n), startOpen(n);
  for (size_t i = 0; i < n; ++i) {
    if (lo[i] < hi[i]) {
      endOpen[i] = coin(rng);
      startOpen[i] = coin(rng);
    }
  }
  s.prec = hdta::empty_relation(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      s.prec[i][j] = hi[i] < lo[j] || (hi[i] == lo[j] && (endOpen[i] || startOpen[j]));
    }

  // (lo, hi, index) sorts into a linear extension of prec; use it as the
  // (total) event order.
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    if (lo[x] != lo[y]) return lo[x] < lo[y];
    if (hi[x] != hi[y]) return hi[x] < hi[y];
    return x < y;
  });
  s.evord = hdta::empty_relation(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) s.evord[order[i]][order[j]] = true;
  return s;
}

}  // namespace detail

inline hdta::Ipomset random_ipomset(std::mt19937& rng, size_t maxEvents = 6, size_t nlabels = 3) {
  size_t n = pick(rng, maxEvents + 1);
  std::vector<hdta::Rat> lo(n), hi(n);
  for (size_t i = 0; i < n; ++i) {
    lo[i] = hdta::Rat(static_cast<long long>(pick(rng, 5)));
    hi[i] = lo[i] + hdta::Rat(static_cast<long long>(pick(rng, 5)));
  }
  auto s = detail::skeleton(rng, n, nlabels, lo, hi);

  std::vector<bool> source(n, false), target(n, false);
  for (size_t i = 0; i < n; ++i) {
    bool minimal = true, maximal = true;
    for (size_t j = 0; j < n; ++j) {
      if (s.prec[j][i]) minimal = false;
      if (s.prec[i][j]) maximal = false;
    }
    if (minimal && coin(rng)) source[i] = true;
    if (maximal && coin(rng)) target[i] = true;
  }
  return hdta::make_ipomset(std::move(s.labels), std::move(s.prec), std::move(s.evord),
                            std::move(source), std::move(target));
}

inline hdta::Tipomset random_tipomset(std::mt19937& rng, size_t maxEvents = 6,
                                      size_t nlabels = 3) {
  size_t n = pick(rng, maxEvents + 1);
  std::vector<hdta::Rat> lo(n), hi(n);
  for (size_t i = 0; i < n; ++i) {
    lo[i] = hdta::Rat(static_cast<long long>(pick(rng, 9)), 2);
    hi[i] = lo[i] + hdta::Rat(static_cast<long long>(pick(rng, 7)), 2);
  }
  auto s = detail::skeleton(rng, n, nlabels, lo, hi);

  hdta::Rat d(0);
  for (size_t i = 0; i < n; ++i) d = std::max(d, hi[i]);
  if (n == 0 || coin(rng)) d += hdta::Rat(static_cast<long long>(1 + pick(rng, 4)), 2);

  std::vector<bool> source(n, false), target(n, false);
  for (size_t i = 0; i < n; ++i) {
    bool minimal = true, maximal = true;
    for (size_t j = 0; j < n; ++j) {
      if (s.prec[j][i]) minimal = false;
      if (s.prec[i][j]) maximal = false;
    }
    if (minimal && lo[i] == hdta::Rat(0) && coin(rng)) source[i] = true;
    if (maximal && hi[i] == d && coin(rng)) target[i] = true;
  }
  auto p = hdta::make_ipomset(std::move(s.labels), std::move(s.prec), std::move(s.evord),
                              std::move(source), std::move(target));
  return hdta::make_tipomset(std::move(p), std::move(lo), std::move(hi), d);
}

/// Splits a tipomset at an instant tau into two coherent factors whose timed
/// gluing reproduces it: events crossing tau become terminating interfaces of
/// the left part and starting interfaces of the right part.
inline std::pair<hdta::Tipomset, hdta::Tipomset> split_tipomset(std::mt19937& rng,
                                                                const hdta::Tipomset& t) {
  std::vector<hdta::Rat> cuts{hdta::Rat(0), t.duration};
  for (size_t x = 0; x < t.size(); ++x) {
    cuts.push_back(t.start[x]);
    cuts.push_back(t.end[x]);
  }
  std::sort(cuts.begin(), cuts.end());
  size_t m = cuts.size();
  for (size_t i = 0; i + 1 < m; ++i)
    if (cuts[i] < cuts[i + 1]) cuts.push_back((cuts[i] + cuts[i + 1]) / hdta::Rat(2));
  hdta::Rat tau = cuts[pick(rng, cuts.size())];

  size_t n = t.size();
  std::vector<bool> inP(n), inQ(n);
  for (size_t x = 0; x < n; ++x) {
    inQ[x] = t.end[x] > tau || t.under.target[x] ||
             (t.start[x] == tau && !t.under.source[x]);
    inP[x] = t.start[x] < tau || t.under.source[x];
  }
  // An event ending exactly at tau must pass through the interface whenever
  // it is concurrent with a Q-only event starting at tau; otherwise the glue
  // would serialize the pair.
  for (size_t x = 0; x < n; ++x) {
    if (!inP[x] || inQ[x] || t.end[x] != tau) continue;
    for (size_t y = 0; y < n; ++y)
      if (inQ[y] && !inP[y] && t.start[y] == tau && !t.under.prec[x][y] &&
          !t.under.prec[y][x])
        inQ[x] = true;
  }
  std::vector<size_t> keepP, keepQ;
  std::vector<bool> srcP, tgtP, srcQ, tgtQ;
  std::vector<hdta::Rat> loP, hiP, loQ, hiQ;
  for (size_t x = 0; x < n; ++x) {
    if (inP[x]) {
      keepP.push_back(x);
      srcP.push_back(t.under.source[x]);
      tgtP.push_back(inQ[x]);
      loP.push_back(t.start[x]);
      hiP.push_back(std::min(t.end[x], tau));
    }
    if (inQ[x]) {
      keepQ.push_back(x);
      srcQ.push_back(inP[x]);
      tgtQ.push_back(t.under.target[x]);
      loQ.push_back(std::max(t.start[x], tau) - tau);
      hiQ.push_back(t.end[x] - tau);
    }
  }
  auto P = hdta::make_tipomset(
      hdta::detail::restrict_ipomset(t.under, keepP, srcP, tgtP), std::move(loP), std::move(hiP),
      tau);
  auto Q = hdta::make_tipomset(
      hdta::detail::restrict_ipomset(t.under, keepQ, srcQ, tgtQ), std::move(loQ), std::move(hiQ),
      t.duration - tau);
  return {std::move(P), std::move(Q)};
}

inline hdta::DelayWord random_delay_word(std::mt19937& rng, size_t maxSymbols = 5) {
  static const std::vector<std::string> names{"a", "b"};
  hdta::DelayWord w;
  size_t n = pick(rng, maxSymbols + 1);
  for (size_t i = 0; i < n; ++i) w.symbols.push_back(names[pick(rng, names.size())]);
  for (size_t i = 0; i <= n; ++i)
    w.delays.push_back(hdta::Rat(static_cast<long long>(pick(rng, 7)), 2));
  return w;
}

/// Small random timed automata over {a, b} with at most two clocks and
/// constants at most 3.
inline hdta::TimedAutomaton random_ta(std::mt19937& rng) {
  hdta::TimedAutomaton A;
  A.name = "random";
  A.alphabet = {"a", "b"};
  std::vector<std::string> clockPool{"x", "y"};
  size_t nc = 1 + pick(rng, 2);
  for (size_t i = 0; i < nc; ++i) A.clocks.insert(clockPool[i]);

  auto rand_constraint = [&](size_t maxConj) {
    hdta::ClockConstraint phi;
    size_t k = pick(rng, maxConj + 1);
    static const hdta::Rel rels[] = {hdta::Rel::Lt, hdta::Rel::Le, hdta::Rel::Ge, hdta::Rel::Gt};
    for (size_t i = 0; i < k; ++i)
      phi.conjuncts.push_back({clockPool[pick(rng, nc)], rels[pick(rng, 4)],
                               static_cast<long long>(pick(rng, 4))});
    return phi;
  };
  auto rand_resets = [&] {
    std::set<std::string> r;
    for (size_t i = 0; i < nc; ++i)
      if (coin(rng)) r.insert(clockPool[i]);
    return r;
  };

  size_t nq = 1 + pick(rng, 3);
  for (size_t q = 0; q < nq; ++q) {
    A.locations.push_back("q" + std::to_string(q));
    A.inv.push_back(rand_constraint(1));
  }
  size_t ne = 1 + pick(rng, 4);
  static const std::vector<std::string> letters{"a", "b"};
  for (size_t i = 0; i < ne; ++i)
    A.edges.push_back({pick(rng, nq), rand_constraint(2), letters[pick(rng, 2)], rand_resets(),
                       pick(rng, nq)});
  A.start = {0};
  A.accept = {pick(rng, nq)};
  return A;
}

}  // namespace gen
