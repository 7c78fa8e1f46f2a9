#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdta/conclist.hpp"

namespace hdta {

using Relation = std::vector<std::vector<bool>>;

inline Relation empty_relation(size_t n) { return Relation(n, std::vector<bool>(n, false)); }

inline void transitive_close(Relation& r) {
  size_t n = r.size();
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
}

/// Interval pomset with interfaces. Events are opaque indices local to the
/// instance; isomorphism classes are the public equality.
struct Ipomset {
  std::vector<std::string> labels;
  Relation prec;   // strict partial order, interval
  Relation evord;  // strict partial order
  std::vector<bool> source;
  std::vector<bool> target;

  size_t size() const { return labels.size(); }

  bool before(size_t x, size_t y) const { return prec[x][y]; }
  bool ordered(size_t x, size_t y) const { return evord[x][y]; }
  bool concurrent(size_t x, size_t y) const { return !prec[x][y] && !prec[y][x]; }

  Conclist source_conclist() const { return interface_conclist(source); }
  Conclist target_conclist() const { return interface_conclist(target); }

  /// Indices of an antichain sorted by event order.
  std::vector<size_t> sort_by_evord(std::vector<size_t> xs) const {
    std::sort(xs.begin(), xs.end(), [&](size_t a, size_t b) { return evord[a][b]; });
    return xs;
  }

  std::vector<size_t> interface_indices(const std::vector<bool>& flags) const {
    std::vector<size_t> xs;
    for (size_t i = 0; i < size(); ++i)
      if (flags[i]) xs.push_back(i);
    return sort_by_evord(std::move(xs));
  }

  Conclist interface_conclist(const std::vector<bool>& flags) const {
    Conclist u;
    for (size_t i : interface_indices(flags)) u.labels.push_back(labels[i]);
    return u;
  }

  bool is_word() const {
    for (size_t i = 0; i < size(); ++i)
      for (size_t j = 0; j < size(); ++j)
        if (i != j && !prec[i][j] && !prec[j][i]) return false;
    return true;
  }

  bool is_discrete() const {
    for (size_t i = 0; i < size(); ++i)
      for (size_t j = 0; j < size(); ++j)
        if (prec[i][j]) return false;
    return true;
  }
};

inline bool is_irreflexive_transitive(const Relation& r) {
  size_t n = r.size();
  for (size_t i = 0; i < n; ++i)
    if (r[i][i]) return false;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (r[i][j])
        for (size_t k = 0; k < n; ++k)
          if (r[j][k] && !r[i][k]) return false;
  return true;
}

/// Interval orders are exactly the 2+2-free partial orders; brute force is
/// fine at desk scale.
inline bool is_interval_order(const Relation& prec) {
  size_t n = prec.size();
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (prec[a][b])
        for (size_t c = 0; c < n; ++c)
          for (size_t d = 0; d < n; ++d)
            if (prec[c][d] && !prec[a][d] && !prec[c][b]) return false;
  return true;
}

inline std::vector<std::string> ipomset_violations(const Ipomset& p) {
  std::vector<std::string> bad;
  size_t n = p.size();
  if (p.prec.size() != n || p.evord.size() != n || p.source.size() != n || p.target.size() != n)
    return {"inconsistent field sizes"};
  if (!is_irreflexive_transitive(p.prec)) bad.push_back("precedence not a strict partial order");
  if (!is_irreflexive_transitive(p.evord)) bad.push_back("event order not a strict partial order");
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      if (x != y && !p.prec[x][y] && !p.prec[y][x] && !p.evord[x][y] && !p.evord[y][x])
        bad.push_back("events " + std::to_string(x) + "," + std::to_string(y) + " unordered by both relations");
  for (size_t x = 0; x < n; ++x) {
    if (p.source[x])
      for (size_t y = 0; y < n; ++y)
        if (p.prec[y][x]) bad.push_back("source event " + std::to_string(x) + " not minimal");
    if (p.target[x])
      for (size_t y = 0; y < n; ++y)
        if (p.prec[x][y]) bad.push_back("target event " + std::to_string(x) + " not maximal");
  }
  if (!is_interval_order(p.prec)) bad.push_back("precedence contains a 2+2 pattern");
  return bad;
}

inline Ipomset make_ipomset(std::vector<std::string> labels, Relation prec, Relation evord,
                            std::vector<bool> source, std::vector<bool> target) {
  Ipomset p{std::move(labels), std::move(prec), std::move(evord), std::move(source), std::move(target)};
  auto bad = ipomset_violations(p);
  if (!bad.empty()) throw std::invalid_argument("invalid ipomset: " + bad.front());
  return p;
}

/// A step letter is itself a discrete ipomset; events keep carrier order.
inline Ipomset letter_to_ipomset(const StepLetter& l) {
  size_t n = l.carrier.size();
  Relation evord = empty_relation(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) evord[i][j] = true;
  std::vector<bool> source(n, true), target(n, true);
  for (size_t i = 0; i < n; ++i)
    if (l.moved[i]) {
      if (l.kind == LetterKind::Starter)
        source[i] = false;
      else
        target[i] = false;
    }
  return make_ipomset(l.carrier.labels, empty_relation(n), std::move(evord), std::move(source),
                      std::move(target));
}

/// Gluing composition. Interface events are matched pairwise by event-order
/// position; returns nothing when the interfaces differ as conclists.
/// On success, qmap_out (when given) receives the index each event of q got
/// in the result; events of p keep their indices.
inline std::optional<Ipomset> glue(const Ipomset& p, const Ipomset& q,
                                   std::vector<size_t>* qmap_out = nullptr) {
  auto tp = p.interface_indices(p.target);
  auto sq = q.interface_indices(q.source);
  if (tp.size() != sq.size()) return std::nullopt;
  for (size_t i = 0; i < tp.size(); ++i)
    if (p.labels[tp[i]] != q.labels[sq[i]]) return std::nullopt;

  size_t np = p.size(), nq = q.size();
  std::vector<size_t> qmap(nq, SIZE_MAX);
  for (size_t i = 0; i < sq.size(); ++i) qmap[sq[i]] = tp[i];
  size_t n = np;
  std::vector<std::string> labels = p.labels;
  for (size_t j = 0; j < nq; ++j)
    if (qmap[j] == SIZE_MAX) {
      qmap[j] = n++;
      labels.push_back(q.labels[j]);
    }

  Relation prec = empty_relation(n), evord = empty_relation(n);
  for (size_t i = 0; i < np; ++i)
    for (size_t j = 0; j < np; ++j) {
      if (p.prec[i][j]) prec[i][j] = true;
      if (p.evord[i][j]) evord[i][j] = true;
    }
  for (size_t i = 0; i < nq; ++i)
    for (size_t j = 0; j < nq; ++j) {
      if (q.prec[i][j]) prec[qmap[i]][qmap[j]] = true;
      if (q.evord[i][j]) evord[qmap[i]][qmap[j]] = true;
    }
  for (size_t i = 0; i < np; ++i)
    if (!p.target[i])
      for (size_t j = 0; j < nq; ++j)
        if (!q.source[j]) prec[i][qmap[j]] = true;
  transitive_close(prec);
  transitive_close(evord);

  std::vector<bool> source(n, false), target(n, false);
  for (size_t i = 0; i < np; ++i) source[i] = p.source[i];
  for (size_t j = 0; j < nq; ++j)
    if (q.target[j]) target[qmap[j]] = true;
  if (qmap_out) *qmap_out = qmap;
  return make_ipomset(std::move(labels), std::move(prec), std::move(evord), std::move(source),
                      std::move(target));
}

namespace detail {

template <typename Check>
inline bool search_bijection(const Ipomset& p, const Ipomset& q, std::vector<size_t>& f,
                             std::vector<bool>& used, size_t x, Check&& check) {
  if (x == p.size()) return check(f);
  for (size_t y = 0; y < q.size(); ++y) {
    if (used[y]) continue;
    if (p.labels[x] != q.labels[y]) continue;
    if (p.source[x] != q.source[y] || p.target[x] != q.target[y]) continue;
    f[x] = y;
    used[y] = true;
    if (search_bijection(p, q, f, used, x + 1, check)) return true;
    used[y] = false;
  }
  return false;
}

}  // namespace detail

/// Whether Q subsumes P (P is less concurrent). Exhaustive bijection search.
inline bool subsumes(const Ipomset& p, const Ipomset& q) {
  if (p.size() != q.size()) return false;
  std::vector<size_t> f(p.size());
  std::vector<bool> used(q.size(), false);
  auto ok = [&](const std::vector<size_t>& f) {
    for (size_t x = 0; x < p.size(); ++x)
      for (size_t y = 0; y < p.size(); ++y) {
        if (x == y) continue;
        if (q.prec[f[x]][f[y]] && !p.prec[x][y]) return false;  // reflects precedence
        // preserves essential event order
        if (p.concurrent(x, y) && p.evord[x][y] && !q.evord[f[x]][f[y]]) return false;
      }
    return true;
  };
  return detail::search_bijection(p, q, f, used, 0, ok);
}

/// Invertible subsumption: precedence coincides and essential event order
/// matches both ways.
inline bool isomorphic(const Ipomset& p, const Ipomset& q) {
  if (p.size() != q.size()) return false;
  std::vector<size_t> f(p.size());
  std::vector<bool> used(q.size(), false);
  auto ok = [&](const std::vector<size_t>& f) {
    for (size_t x = 0; x < p.size(); ++x)
      for (size_t y = 0; y < p.size(); ++y) {
        if (x == y) continue;
        if (p.prec[x][y] != q.prec[f[x]][f[y]]) return false;
        if (p.concurrent(x, y) && p.evord[x][y] != q.evord[f[x]][f[y]]) return false;
      }
    return true;
  };
  return detail::search_bijection(p, q, f, used, 0, ok);
}

}  // namespace hdta
