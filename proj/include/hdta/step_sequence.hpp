#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdta/ipomset.hpp"

namespace hdta {

/// Identity-delimited word of starters and terminators.
struct StepSequence {
  Conclist left;
  std::vector<StepLetter> letters;
  Conclist right;

  bool operator==(const StepSequence&) const = default;
};

inline std::vector<std::string> step_sequence_violations(const StepSequence& s) {
  std::vector<std::string> bad;
  Conclist cur = s.left;
  for (size_t i = 0; i < s.letters.size(); ++i) {
    if (s.letters[i].source() != cur)
      bad.push_back("letter " + std::to_string(i) + " does not glue to its predecessor");
    cur = s.letters[i].target();
  }
  if (cur != s.right) bad.push_back("right identity does not match last letter");
  return bad;
}

/// Sparse: proper letters strictly alternating between starters and
/// terminators.
inline bool is_sparse(const StepSequence& s) {
  for (size_t i = 0; i < s.letters.size(); ++i) {
    if (s.letters[i].is_identity()) return false;
    if (i > 0 && s.letters[i].kind == s.letters[i - 1].kind) return false;
  }
  return true;
}

/// Fuses two same-kind proper letters (or an identity with anything).
inline std::optional<StepLetter> fuse_letters(const StepLetter& a, const StepLetter& b) {
  if (a.target() != b.source()) return std::nullopt;
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  if (a.kind != b.kind) return std::nullopt;
  if (a.kind == LetterKind::Starter) {
    // a's carrier sits inside b's carrier as the unstarted part of b
    StepLetter r(b.carrier, LetterKind::Starter, b.moved);
    size_t k = 0;
    for (size_t j = 0; j < b.carrier.size(); ++j)
      if (!b.moved[j]) {
        if (a.moved[k]) r.moved[j] = true;
        ++k;
      }
    return r;
  }
  // terminators: b's carrier is the not-yet-ended part of a's carrier
  StepLetter r(a.carrier, LetterKind::Terminator, a.moved);
  size_t k = 0;
  for (size_t j = 0; j < a.carrier.size(); ++j)
    if (!a.moved[j]) {
      if (b.moved[k]) r.moved[j] = true;
      ++k;
    }
  return r;
}

/// Applies the step congruence: drops interior identities and fuses adjacent
/// same-kind letters. The result is the unique sparse representative.
inline StepSequence normalize_step_sequence(const std::vector<StepLetter>& word) {
  if (word.empty()) throw std::invalid_argument("empty step word: boundaries undetermined");
  StepSequence out;
  out.left = word.front().source();
  out.right = word.back().target();
  Conclist cur = out.left;
  for (const auto& l : word) {
    if (l.source() != cur) throw std::invalid_argument("incoherent step word");
    cur = l.target();
    if (l.is_identity()) continue;
    if (!out.letters.empty()) {
      auto fused = fuse_letters(out.letters.back(), l);
      if (fused) {
        out.letters.back() = *fused;
        continue;
      }
    }
    out.letters.push_back(l);
  }
  return out;
}

inline Ipomset glue_sequence(const StepSequence& s) {
  auto bad = step_sequence_violations(s);
  if (!bad.empty()) throw std::invalid_argument("incoherent step sequence: " + bad.front());
  Ipomset acc = letter_to_ipomset(StepLetter::identity(s.left));
  for (const auto& l : s.letters) {
    auto g = glue(acc, letter_to_ipomset(l));
    if (!g) throw std::invalid_argument("incoherent step sequence");
    acc = std::move(*g);
  }
  return acc;
}

namespace detail {

/// Maximal antichains of an interval order, in their canonical linear order.
/// Each is an evord-sorted index list.
inline std::vector<std::vector<size_t>> ordered_maximal_antichains(const Ipomset& p) {
  size_t n = p.size();
  if (n > 20) throw std::invalid_argument("ipomset too large for antichain enumeration");
  std::vector<std::vector<size_t>> chains;
  for (uint32_t m = 0; m < (1u << n); ++m) {
    std::vector<size_t> xs;
    for (size_t i = 0; i < n; ++i)
      if (m & (1u << i)) xs.push_back(i);
    if (xs.empty() && n > 0) continue;
    bool anti = true;
    for (size_t a : xs)
      for (size_t b : xs)
        if (p.prec[a][b]) anti = false;
    if (!anti) continue;
    bool maximal = true;
    for (size_t y = 0; y < n && maximal; ++y) {
      if (m & (1u << y)) continue;
      bool comparable = false;
      for (size_t a : xs)
        if (p.prec[a][y] || p.prec[y][a]) comparable = true;
      if (!comparable) maximal = false;
    }
    if (maximal) chains.push_back(p.sort_by_evord(std::move(xs)));
  }
  auto before = [&](const std::vector<size_t>& a, const std::vector<size_t>& b) {
    for (size_t x : a)
      for (size_t y : b)
        if (p.prec[x][y]) return true;
    return false;
  };
  std::sort(chains.begin(), chains.end(),
            [&](const auto& a, const auto& b) { return before(a, b); });
  for (size_t i = 0; i + 1 < chains.size(); ++i)
    if (!before(chains[i], chains[i + 1]))
      throw std::logic_error("maximal antichains not totally ordered: not an interval order?");
  return chains;
}

}  // namespace detail

/// Unique sparse step decomposition. Events occupy consecutive runs of
/// maximal antichains; starters begin the events entering each antichain and
/// terminators end the events leaving it.
inline StepSequence sparse_decompose(const Ipomset& p) {
  StepSequence out;
  out.left = p.source_conclist();
  out.right = p.target_conclist();
  if (p.size() == 0) return out;

  auto chains = detail::ordered_maximal_antichains(p);
  size_t m = chains.size();
  std::vector<size_t> first(p.size(), SIZE_MAX), last(p.size(), 0);
  for (size_t i = 0; i < m; ++i)
    for (size_t x : chains[i]) {
      if (first[x] == SIZE_MAX) first[x] = i;
      last[x] = i;
    }
  for (size_t x = 0; x < p.size(); ++x)
    for (size_t i = first[x]; i <= last[x]; ++i) {
      bool in = false;
      for (size_t y : chains[i])
        if (y == x) in = true;
      if (!in) throw std::logic_error("event does not span a consecutive antichain run");
    }

  for (size_t i = 0; i < m; ++i) {
    Conclist carrier;
    std::vector<bool> started, ended;
    for (size_t x : chains[i]) {
      carrier.labels.push_back(p.labels[x]);
      started.push_back(first[x] == i && !p.source[x]);
      ended.push_back(last[x] == i && !p.target[x]);
    }
    StepLetter st(carrier, LetterKind::Starter, started);
    if (!st.is_identity()) out.letters.push_back(st);
    StepLetter te(carrier, LetterKind::Terminator, ended);
    if (!te.is_identity()) out.letters.push_back(te);
  }
  return out;
}

/// Canonical textual form; equal keys are exactly isomorphic ipomsets.
inline std::string ipomset_key(const Ipomset& p) {
  StepSequence s = sparse_decompose(p);
  std::string k = "[" + conclist_key(s.left) + "]";
  for (const auto& l : s.letters) k += " " + letter_key(l);
  k += " [" + conclist_key(s.right) + "]";
  return k;
}

/// Subsumption closure of a finite set: breadth-first refinement by single
/// precedence edges, keeping interval results, deduplicated up to
/// isomorphism.
inline std::vector<Ipomset> down_closure(const std::vector<Ipomset>& lang) {
  std::map<std::string, Ipomset> result;
  for (const auto& q : lang) {
    std::set<Relation> seen;
    std::vector<Relation> frontier{q.prec};
    seen.insert(q.prec);
    while (!frontier.empty()) {
      std::vector<Relation> next;
      for (const auto& prec : frontier) {
        if (is_interval_order(prec)) {
          Ipomset cand = q;
          cand.prec = prec;
          if (ipomset_violations(cand).empty()) result.emplace(ipomset_key(cand), cand);
        }
        for (size_t x = 0; x < q.size(); ++x)
          for (size_t y = 0; y < q.size(); ++y) {
            if (x == y || prec[x][y] || prec[y][x]) continue;
            if (q.source[y] || q.target[x]) continue;  // keeps S minimal, T maximal
            Relation r = prec;
            r[x][y] = true;
            transitive_close(r);
            bool cyclic = false;
            for (size_t i = 0; i < q.size(); ++i)
              if (r[i][i]) cyclic = true;
            if (cyclic) continue;
            if (seen.insert(r).second) next.push_back(std::move(r));
          }
      }
      frontier = std::move(next);
    }
  }
  std::vector<Ipomset> out;
  for (auto& [k, v] : result) out.push_back(std::move(v));
  return out;
}

}  // namespace hdta
