#pragma once

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hdta/idword.hpp"
#include "hdta/model.hpp"
#include "hdta/regions.hpp"

namespace hdta {

struct Configuration {
  size_t cell;
  Valuation v;

  bool operator==(const Configuration&) const = default;
};

enum class MoveKind { Delay, Start, Finish };

struct Move {
  MoveKind kind;
  Rat d;          // Delay only
  uint32_t mask;  // Start: positions in ev(target); Finish: positions in ev(source)
  Configuration to;
};

struct Path {
  Configuration init;
  std::vector<Move> moves;

  const Configuration& last() const { return moves.empty() ? init : moves.back().to; }
};

inline std::vector<Configuration> initial_configurations(const HDTA& A) {
  std::vector<Configuration> out;
  Valuation v0 = zero_valuation(A.clocks);
  for (size_t s : A.start)
    if (satisfies(v0, A.inv[s])) out.push_back({s, v0});
  return out;
}

/// Delay within a cell. Invariants are convex conjunctions, so checking the
/// endpoint covers the whole segment.
inline std::optional<Configuration> delay_move(const HDTA& A, const Configuration& c, const Rat& d) {
  if (d < Rat(0)) return std::nullopt;
  Valuation v = delay_valuation(c.v, d);
  if (!satisfies(v, A.inv[c.cell])) return std::nullopt;
  return Configuration{c.cell, std::move(v)};
}

/// All upsteps and downsteps from c, for every nonempty event subset. Exit
/// clocks of the cell being left are reset before the target invariant check.
inline std::vector<Move> enabled_action_moves(const HDTA& A, const Configuration& c) {
  std::vector<Move> out;
  Valuation reset = reset_valuation(c.v, A.exit[c.cell]);
  for (size_t y = 0; y < A.X.size(); ++y) {
    size_t n = A.X.ev[y].size();
    if (n == 0 || n > 20) continue;
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
      auto f = A.X.face_subset(y, FaceDir::Lower, mask);
      if (f && *f == c.cell && satisfies(reset, A.inv[y]))
        out.push_back({MoveKind::Start, Rat(0), mask, {y, reset}});
    }
  }
  size_t n = A.X.ev[c.cell].size();
  for (uint32_t mask = 1; n > 0 && mask < (1u << n); ++mask) {
    auto f = A.X.face_subset(c.cell, FaceDir::Upper, mask);
    if (f && satisfies(reset, A.inv[*f]))
      out.push_back({MoveKind::Finish, Rat(0), mask, {*f, reset}});
  }
  return out;
}

namespace detail {

inline StepLetter move_letter(const HDTA& A, size_t cellOfCarrier, MoveKind kind, uint32_t mask) {
  const Conclist& carrier = A.X.ev[cellOfCarrier];
  std::vector<bool> moved(carrier.size(), false);
  for (size_t i = 0; i < carrier.size(); ++i)
    if (mask & (1u << i)) moved[i] = true;
  return StepLetter(carrier, kind == MoveKind::Start ? LetterKind::Starter : LetterKind::Terminator,
                    std::move(moved));
}

}  // namespace detail

/// Observable content of a path as raw idword tokens.
inline std::vector<IdToken> path_tokens(const HDTA& A, const Path& pi) {
  std::vector<IdToken> toks;
  toks.push_back(StepLetter::identity(A.X.ev[pi.init.cell]));
  size_t cur = pi.init.cell;
  for (const auto& m : pi.moves) {
    if (m.kind == MoveKind::Delay)
      toks.push_back(m.d);
    else
      toks.push_back(detail::move_letter(A, m.kind == MoveKind::Start ? m.to.cell : cur, m.kind,
                                         m.mask));
    cur = m.to.cell;
  }
  toks.push_back(StepLetter::identity(A.X.ev[cur]));
  return toks;
}

inline IdWord ev_path_idword(const HDTA& A, const Path& pi) {
  return normalize_idword(path_tokens(A, pi));
}

inline Tipomset ev_path(const HDTA& A, const Path& pi) {
  return idword_to_tipomset(ev_path_idword(A, pi));
}

/// Replays a path given as alternating delays and action masks; nothing when
/// some move is disabled.
inline std::optional<Path> run_path(const HDTA& A, size_t startCell,
                                    const std::vector<Move>& script);

struct ExploreFuel {
  size_t max_actions = 4;
  Rat max_duration = Rat(10);
  std::optional<Rat> delay_grid;  // extra uniform grid of candidate delays
  bool region_delays = true;      // region-boundary + midpoint candidates
  bool untimed = false;           // collect untimed words, dedup by region
};

struct ExploreResult {
  std::vector<Tipomset> tipomsets;
  std::vector<IdWord> idwords;   // same order as tipomsets
  std::vector<Ipomset> untimed;  // only in untimed mode
  bool truncated = false;        // some action was cut off by fuel
};

namespace detail {

inline std::vector<Rat> candidate_delays(const Valuation& v, long long M, const Rat& horizon,
                                         const ExploreFuel& fuel) {
  std::set<Rat> ds{Rat(0)};
  if (horizon > Rat(0)) {
    if (fuel.region_delays) {
      Rat h = std::min(horizon, Rat(M + 1));
      for (const Rat& d : critical_delays(v, M, h)) ds.insert(d);
    }
    if (fuel.delay_grid && *fuel.delay_grid > Rat(0))
      for (Rat d = *fuel.delay_grid; d <= horizon; d += *fuel.delay_grid) ds.insert(d);
  }
  return {ds.begin(), ds.end()};
}

inline std::string valuation_key(const Valuation& v) {
  std::string k;
  for (const auto& [c, x] : v) k += c + "=" + to_string(x) + ";";
  return k;
}

}  // namespace detail

namespace detail {

inline std::string region_key(const Region& r) {
  std::string k;
  for (long long p : r.ipart) k += std::to_string(p) + ",";
  k += "|";
  for (const auto& b : r.blocks) {
    for (size_t j : b) k += std::to_string(j) + " ";
    k += ";";
  }
  return k;
}

inline std::string step_word_key(const StepSequence& s) {
  std::string k = "[" + conclist_key(s.left) + "]";
  for (const auto& l : s.letters) k += " " + letter_key(l);
  return k + " [" + conclist_key(s.right) + "]";
}

}  // namespace detail

/// Bounded breadth-first language exploration. Delays come from region
/// boundaries (untimed-complete by the bisimulation lemma) and an optional
/// grid; action moves consume fuel. Accepting configurations record ev of the
/// path, deduplicated by canonical idword. In untimed mode, delays only serve
/// to move between regions: states are merged by region and normalized step
/// word, and the result is the set of untimed ipomsets.
inline ExploreResult explore(const HDTA& A, const ExploreFuel& fuel) {
  ExploreResult res;
  long long M = A.max_constant();
  std::set<std::string> found;
  std::set<std::string> visited;

  struct State {
    Configuration c;
    std::vector<IdToken> toks;
    size_t actions;
    Rat elapsed;
  };
  std::deque<State> queue;
  for (const auto& c0 : initial_configurations(A)) {
    State s{c0, {StepLetter::identity(A.X.ev[c0.cell])}, 0, Rat(0)};
    queue.push_back(std::move(s));
  }

  auto step_word = [&](const std::vector<IdToken>& toks, size_t cell) {
    std::vector<StepLetter> ls;
    for (const auto& t : toks)
      if (auto* l = std::get_if<StepLetter>(&t)) ls.push_back(*l);
    ls.push_back(StepLetter::identity(A.X.ev[cell]));
    return normalize_step_sequence(ls);
  };

  auto record = [&](const State& s) {
    if (!A.accept.count(s.c.cell)) return;
    if (fuel.untimed) {
      StepSequence w = step_word(s.toks, s.c.cell);
      if (found.insert(detail::step_word_key(w)).second)
        res.untimed.push_back(glue_sequence(w));
      return;
    }
    auto toks = s.toks;
    toks.push_back(StepLetter::identity(A.X.ev[s.c.cell]));
    IdWord w = normalize_idword(toks);
    std::string k = idword_key(w);
    if (!found.insert(k).second) return;
    res.tipomsets.push_back(idword_to_tipomset(w));
    res.idwords.push_back(std::move(w));
  };

  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    for (const Rat& d : detail::candidate_delays(s.c.v, M, fuel.max_duration - s.elapsed, fuel)) {
      auto cd = delay_move(A, s.c, d);
      if (!cd) continue;
      State sd{*cd, s.toks, s.actions, s.elapsed + d};
      if (d > Rat(0)) sd.toks.push_back(d);
      record(sd);
      auto actions = enabled_action_moves(A, *cd);
      if (actions.empty()) continue;
      if (s.actions >= fuel.max_actions) {
        res.truncated = true;
        continue;
      }
      for (const auto& m : actions) {
        State sn{m.to, sd.toks, s.actions + 1, sd.elapsed};
        sn.toks.push_back(detail::move_letter(A, m.kind == MoveKind::Start ? m.to.cell : cd->cell,
                                              m.kind, m.mask));
        std::string key;
        if (fuel.untimed)
          key = std::to_string(sn.c.cell) + "|" + detail::region_key(region_of(sn.c.v, M)) + "|" +
                std::to_string(sn.actions) + "|" +
                detail::step_word_key(step_word(sn.toks, sn.c.cell));
        else
          key = std::to_string(sn.c.cell) + "|" + detail::valuation_key(sn.c.v) + "|" +
                std::to_string(sn.actions) + "|" + idword_key(normalize_idword(sn.toks)) + " " +
                to_string(sn.elapsed);
        if (!visited.insert(key).second) continue;
        queue.push_back(std::move(sn));
      }
    }
  }
  return res;
}

inline std::optional<Path> run_path(const HDTA& A, size_t startCell,
                                    const std::vector<Move>& script) {
  Valuation v0 = zero_valuation(A.clocks);
  if (!A.start.count(startCell) || !satisfies(v0, A.inv[startCell])) return std::nullopt;
  Path pi{{startCell, v0}, {}};
  for (const auto& step : script) {
    const Configuration& cur = pi.last();
    if (step.kind == MoveKind::Delay) {
      auto c = delay_move(A, cur, step.d);
      if (!c) return std::nullopt;
      pi.moves.push_back({MoveKind::Delay, step.d, 0, *c});
    } else {
      bool done = false;
      for (const auto& m : enabled_action_moves(A, cur))
        if (m.kind == step.kind && m.mask == step.mask &&
            (step.kind == MoveKind::Finish || m.to.cell == step.to.cell)) {
          pi.moves.push_back(m);
          done = true;
          break;
        }
      if (!done) return std::nullopt;
    }
  }
  return pi;
}

/// Bounded delay-word language of a timed automaton; mirror of explore.
struct TaExploreResult {
  std::vector<DelayWord> words;
  bool truncated = false;
};

inline TaExploreResult ta_explore(const TimedAutomaton& A, const ExploreFuel& fuel) {
  TaExploreResult res;
  long long M = 0;
  for (const auto& phi : A.inv) M = std::max(M, phi.max_bound());
  for (const auto& e : A.edges) M = std::max(M, e.guard.max_bound());

  struct State {
    size_t loc;
    Valuation v;
    DelayWord w;  // delays has symbols.size() entries while in flight
    size_t actions;
    Rat elapsed;
  };
  std::set<std::string> seen;
  std::set<std::string> visited;
  std::deque<State> queue;
  Valuation v0 = zero_valuation(A.clocks);
  for (size_t s : A.start)
    if (satisfies(v0, A.inv[s])) queue.push_back({s, v0, {}, 0, Rat(0)});

  auto word_key = [](const DelayWord& w) {
    std::string k;
    for (size_t i = 0; i < w.symbols.size(); ++i)
      k += to_string(w.delays[i]) + " " + w.symbols[i] + " ";
    k += to_string(w.delays.back());
    return k;
  };

  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    for (const Rat& d : detail::candidate_delays(s.v, M, fuel.max_duration - s.elapsed, fuel)) {
      Valuation v = delay_valuation(s.v, d);
      if (!satisfies(v, A.inv[s.loc])) continue;
      if (A.accept.count(s.loc)) {
        DelayWord w = s.w;
        w.delays.push_back(d);
        if (seen.insert(word_key(w)).second) res.words.push_back(std::move(w));
      }
      bool any = false;
      for (const auto& e : A.edges) {
        if (e.src != s.loc || !satisfies(v, e.guard)) continue;
        Valuation vr = reset_valuation(v, e.resets);
        if (!satisfies(vr, A.inv[e.dst])) continue;
        any = true;
        if (s.actions >= fuel.max_actions) continue;
        State sn{e.dst, std::move(vr), s.w, s.actions + 1, s.elapsed + d};
        sn.w.symbols.push_back(e.label);
        sn.w.delays.push_back(d);
        std::string key = std::to_string(sn.loc) + "|" + detail::valuation_key(sn.v) + "|" +
                          std::to_string(sn.actions) + "|" + word_key(sn.w) + " _";
        if (!visited.insert(key).second) continue;
        queue.push_back(std::move(sn));
      }
      if (any && s.actions >= fuel.max_actions) res.truncated = true;
    }
  }
  return res;
}

}  // namespace hdta
