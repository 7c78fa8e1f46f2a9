#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hdta/model.hpp"
#include "hdta/regions.hpp"
#include "hdta/semantics.hpp"
#include "hdta/step_sequence.hpp"

namespace hdta {

/// Region automaton R(A), restricted to its reachable part: finite automaton
/// over step letters whose language (after Glue) is the untiming of Lang(A).
struct FiniteStepAutomaton {
  struct State {
    size_t cell;
    Region r;
    bool primed;  // start copy, avoids accepting the empty word trivially

    bool operator==(const State&) const = default;
    auto operator<=>(const State&) const = default;
  };
  std::vector<State> states;
  std::vector<Conclist> conclists;       // per state, = ev(cell)
  std::vector<StepLetter> letters;       // interned proper letters
  // adjacency: per state, (letter index or -1 for an identity label, target)
  std::vector<std::vector<std::pair<int, size_t>>> adj;
  std::set<size_t> initial, accepting;

  size_t size() const { return states.size(); }
};

inline FiniteStepAutomaton build_region_automaton(const HDTA& A) {
  FiniteStepAutomaton N;
  long long M = A.max_constant();
  std::map<FiniteStepAutomaton::State, size_t> index;
  std::map<std::string, int> letterIndex;
  std::deque<size_t> work;
  auto add_state = [&](FiniteStepAutomaton::State s) {
    auto [it, fresh] = index.emplace(std::move(s), N.size());
    if (fresh) {
      N.states.push_back(it->first);
      N.conclists.push_back(A.X.ev[it->first.cell]);
      N.adj.emplace_back();
      if (A.accept.count(it->first.cell)) N.accepting.insert(it->second);
      work.push_back(it->second);
    }
    return it->second;
  };
  auto add_letter = [&](const StepLetter& l) {
    auto [it, fresh] = letterIndex.emplace(letter_key(l), static_cast<int>(N.letters.size()));
    if (fresh) N.letters.push_back(l);
    return it->second;
  };

  Valuation v0 = zero_valuation(A.clocks);
  Region r0 = region_of(v0, M);
  for (size_t l : A.start) {
    if (!satisfies(v0, A.inv[l])) continue;  // dead start
    size_t p = add_state({l, r0, true});
    N.initial.insert(p);
  }

  while (!work.empty()) {
    size_t si = work.front();
    work.pop_front();
    auto s = N.states[si];  // copy: add_state may reallocate
    size_t l = s.cell;
    if (s.primed) {
      size_t t = add_state({l, s.r, false});
      N.adj[si].emplace_back(-1, t);
      continue;
    }
    // delay transitions along the elapse chain; the self-loop appears only
    // when a positive delay can stay inside r
    auto chain = time_successors(s.r, M);
    for (size_t k = 0; k < chain.size(); ++k) {
      if (!satisfies(representative(chain[k], M), A.inv[l])) break;  // convex invariant
      if (k == 0) {
        bool open = true;
        for (size_t i = 0; i < s.r.clocks.size(); ++i)
          if (!s.r.above(i) && !s.r.block_of(i)) open = false;
        if (!open) continue;
      }
      size_t t = add_state({l, chain[k], false});
      N.adj[si].emplace_back(-1, t);
    }
    // action transitions witnessed by the representative valuation; the
    // bisimulation lemma makes this independent of the choice of valuation
    Configuration c{l, representative(s.r, M)};
    for (const auto& m : enabled_action_moves(A, c)) {
      StepLetter letter = detail::move_letter(A, m.kind == MoveKind::Start ? m.to.cell : l, m.kind,
                                              m.mask);
      int li = add_letter(letter);
      size_t t = add_state({m.to.cell, region_of(m.to.v, M), false});
      N.adj[si].emplace_back(li, t);
    }
  }
  return N;
}

/// Emitting automaton for sparse normal forms: states carry a pending
/// same-kind block; a fused letter is emitted when the kind switches (or at
/// acceptance). Its labeled paths spell exactly the sparse interiors of the
/// step words of N.
struct SparseNormalizedAutomaton {
  struct State {
    size_t base;  // state of the region automaton
    int pending;  // index into letters, or -1
    bool flushed;
  };
  std::vector<State> states;
  std::vector<StepLetter> letters;  // includes fused blocks
  std::vector<std::vector<std::pair<int, size_t>>> adj;  // -1 = silent
  std::set<size_t> initial, accepting;  // accepting: base accepting, no pending
  FiniteStepAutomaton base;

  const Conclist& right_of(size_t s) const { return base.conclists[states[s].base]; }
};

inline SparseNormalizedAutomaton sparse_normalize(const FiniteStepAutomaton& N) {
  SparseNormalizedAutomaton E;
  E.base = N;
  E.letters = N.letters;
  std::map<std::string, int> letterIndex;
  for (size_t i = 0; i < E.letters.size(); ++i)
    letterIndex[letter_key(E.letters[i])] = static_cast<int>(i);
  auto add_letter = [&](const StepLetter& l) {
    auto [it, fresh] = letterIndex.emplace(letter_key(l), static_cast<int>(E.letters.size()));
    if (fresh) E.letters.push_back(l);
    return it->second;
  };

  std::map<std::tuple<size_t, int, bool>, size_t> index;
  std::deque<size_t> work;
  auto add = [&](size_t base, int pending, bool flushed) {
    auto [it, fresh] = index.emplace(std::make_tuple(base, pending, flushed), E.states.size());
    if (fresh) {
      E.states.push_back({base, pending, flushed});
      E.adj.emplace_back();
      work.push_back(it->second);
    }
    return it->second;
  };
  for (size_t i : N.initial) E.initial.insert(add(i, -1, false));
  while (!work.empty()) {
    size_t si = work.front();
    work.pop_front();
    auto s = E.states[si];
    if (s.flushed) {
      if (N.accepting.count(s.base)) E.accepting.insert(si);
      continue;
    }
    if (s.pending < 0 && N.accepting.count(s.base)) E.accepting.insert(si);
    if (s.pending >= 0 && N.accepting.count(s.base)) {
      size_t t = add(s.base, -1, true);
      E.adj[si].emplace_back(s.pending, t);
    }
    for (const auto& [li, to] : N.adj[s.base]) {
      if (li < 0) {  // identity: silent
        size_t t = add(to, s.pending, false);
        E.adj[si].emplace_back(-1, t);
        continue;
      }
      if (s.pending < 0) {
        size_t t = add(to, li, false);
        E.adj[si].emplace_back(-1, t);
        continue;
      }
      if (auto fused = fuse_letters(E.letters[s.pending], N.letters[li])) {
        size_t t = add(to, add_letter(*fused), false);
        E.adj[si].emplace_back(-1, t);
      } else {
        size_t t = add(to, li, false);
        E.adj[si].emplace_back(s.pending, t);
      }
    }
  }
  return E;
}

namespace detail {

inline std::set<size_t> silent_closure(const SparseNormalizedAutomaton& E, std::set<size_t> s) {
  std::deque<size_t> work(s.begin(), s.end());
  while (!work.empty()) {
    size_t x = work.front();
    work.pop_front();
    for (const auto& [l, to] : E.adj[x])
      if (l < 0 && s.insert(to).second) work.push_back(to);
  }
  return s;
}

inline std::set<size_t> step_on(const SparseNormalizedAutomaton& E, const std::set<size_t>& s,
                                const StepLetter& letter) {
  std::set<size_t> out;
  for (size_t x : s)
    for (const auto& [l, to] : E.adj[x])
      if (l >= 0 && E.letters[l] == letter) out.insert(to);
  return silent_closure(E, std::move(out));
}

}  // namespace detail

/// Word membership: boundary identities must match exactly; interior letters
/// are consumed in sparse order.
inline bool word_member(const SparseNormalizedAutomaton& E, const StepSequence& w) {
  std::set<size_t> cur;
  for (size_t s : E.initial)
    if (E.base.conclists[E.states[s].base] == w.left) cur.insert(s);
  cur = detail::silent_closure(E, std::move(cur));
  for (const auto& l : w.letters) {
    cur = detail::step_on(E, cur, l);
    if (cur.empty()) return false;
  }
  for (size_t s : cur)
    if (E.accepting.count(s) && E.right_of(s) == w.right) return true;
  return false;
}

inline bool untimed_member(const HDTA& A, const Ipomset& P) {
  auto E = sparse_normalize(build_region_automaton(A));
  return word_member(E, sparse_decompose(P));
}

inline bool untimed_empty(const HDTA& A) {
  return build_region_automaton(A).accepting.empty();  // reachable part only
}

/// All sparse step sequences of the language using at most maxLetters
/// letters.
inline std::vector<StepSequence> enumerate_language(const SparseNormalizedAutomaton& E,
                                                    size_t maxLetters) {
  std::vector<StepSequence> out;
  std::set<std::string> seen;
  struct Item {
    std::set<size_t> states;
    Conclist left;
    std::vector<StepLetter> letters;
  };
  std::deque<Item> work;
  std::map<std::string, std::pair<std::set<size_t>, Conclist>> byLeft;
  for (size_t s : E.initial) {
    auto& e = byLeft[conclist_key(E.base.conclists[E.states[s].base])];
    e.first.insert(s);
    e.second = E.base.conclists[E.states[s].base];
  }
  for (auto& [k, e] : byLeft) work.push_back({detail::silent_closure(E, e.first), e.second, {}});
  while (!work.empty()) {
    Item it = std::move(work.front());
    work.pop_front();
    for (size_t s : it.states)
      if (E.accepting.count(s)) {
        StepSequence w{it.left, it.letters, E.right_of(s)};
        std::string k = "[" + conclist_key(w.left) + "]";
        for (const auto& l : w.letters) k += " " + letter_key(l);
        k += " [" + conclist_key(w.right) + "]";
        if (seen.insert(k).second) out.push_back(std::move(w));
      }
    if (it.letters.size() >= maxLetters) continue;
    std::map<std::string, StepLetter> nexts;
    for (size_t s : it.states)
      for (const auto& [l, to] : E.adj[s])
        if (l >= 0) nexts.emplace(letter_key(E.letters[l]), E.letters[l]);
    for (auto& [k, l] : nexts) {
      auto ns = detail::step_on(E, it.states, l);
      if (ns.empty()) continue;
      Item ni{std::move(ns), it.left, it.letters};
      ni.letters.push_back(l);
      work.push_back(std::move(ni));
    }
  }
  return out;
}

struct InclusionResult {
  bool included = true;
  std::optional<StepSequence> counterexample;
};

/// Untimed language inclusion: forward subset search of E1 against the
/// on-the-fly determinization of E2. Counterexamples come out shortest
/// first, ties broken lexicographically on letter keys.
inline InclusionResult untimed_inclusion(const HDTA& A1, const HDTA& A2) {
  auto E1 = sparse_normalize(build_region_automaton(A1));
  auto E2 = sparse_normalize(build_region_automaton(A2));

  auto accept_boundaries = [](const SparseNormalizedAutomaton& E, const std::set<size_t>& ss) {
    std::set<std::string> bs;
    for (size_t s : ss)
      if (E.accepting.count(s)) bs.insert(conclist_key(E.right_of(s)));
    return bs;
  };

  struct Item {
    std::set<size_t> s1, s2;
    Conclist left;
    std::vector<StepLetter> letters;
  };
  std::deque<Item> work;
  std::map<std::string, std::pair<std::set<size_t>, Conclist>> starts1;
  for (size_t s : E1.initial) {
    auto& e = starts1[conclist_key(E1.base.conclists[E1.states[s].base])];
    e.first.insert(s);
    e.second = E1.base.conclists[E1.states[s].base];
  }
  for (auto& [k, e] : starts1) {
    std::set<size_t> s2;
    for (size_t s : E2.initial)
      if (conclist_key(E2.base.conclists[E2.states[s].base]) == k) s2.insert(s);
    work.push_back(
        {detail::silent_closure(E1, e.first), detail::silent_closure(E2, std::move(s2)), e.second, {}});
  }

  std::set<std::string> visited;
  while (!work.empty()) {
    Item it = std::move(work.front());
    work.pop_front();
    auto b2 = accept_boundaries(E2, it.s2);
    for (size_t s : it.s1)
      if (E1.accepting.count(s) && !b2.count(conclist_key(E1.right_of(s))))
        return {false, StepSequence{it.left, it.letters, E1.right_of(s)}};
    std::map<std::string, StepLetter> nexts;
    for (size_t s : it.s1)
      for (const auto& [l, to] : E1.adj[s])
        if (l >= 0) nexts.emplace(letter_key(E1.letters[l]), E1.letters[l]);
    for (auto& [k, l] : nexts) {
      auto n1 = detail::step_on(E1, it.s1, l);
      if (n1.empty()) continue;
      auto n2 = detail::step_on(E2, it.s2, l);
      std::string vk = conclist_key(it.left) + "@";
      for (size_t s : n1) vk += std::to_string(s) + ",";
      vk += ";";
      for (size_t s : n2) vk += std::to_string(s) + ",";
      if (!visited.insert(vk).second) continue;
      Item ni{std::move(n1), std::move(n2), it.left, it.letters};
      ni.letters.push_back(l);
      work.push_back(std::move(ni));
    }
  }
  return {true, std::nullopt};
}

}  // namespace hdta
