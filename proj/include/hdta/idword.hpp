#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hdta/rational.hpp"
#include "hdta/step_sequence.hpp"
#include "hdta/tipomset.hpp"

namespace hdta {

/// Interval delay word in sparse normal form: d0 P1 d1 ... Pn dn between two
/// identities. Zero delays occur only between letters of different kinds.
struct IdWord {
  Conclist left;
  std::vector<StepLetter> letters;
  std::vector<Rat> delays;  // letters.size() + 1 entries
  Conclist right;

  bool operator==(const IdWord&) const = default;

  Rat duration() const {
    Rat d(0);
    for (const auto& x : delays) d += x;
    return d;
  }
};

using IdToken = std::variant<Rat, StepLetter>;

/// Congruence normal form of a raw token list. Boundary identities come from
/// the first and last letter; a pure-delay word gets empty boundaries.
/// Adjacent delays are summed, interior identities dropped, and same-kind
/// letters at zero distance fused. The result is sparse and unique in its
/// congruence class.
inline IdWord normalize_idword(const std::vector<IdToken>& tokens) {
  IdWord out;
  const StepLetter* first = nullptr;
  const StepLetter* last = nullptr;
  for (const auto& t : tokens)
    if (auto* l = std::get_if<StepLetter>(&t)) {
      if (!first) first = l;
      last = l;
    }
  out.left = first ? first->source() : Conclist{};
  out.right = last ? last->target() : Conclist{};

  Conclist cur = out.left;
  Rat pending(0);
  for (const auto& t : tokens) {
    if (auto* d = std::get_if<Rat>(&t)) {
      if (*d < Rat(0)) throw std::invalid_argument("negative delay");
      pending += *d;
      continue;
    }
    const auto& l = std::get<StepLetter>(t);
    if (l.source() != cur) throw std::invalid_argument("incoherent idword");
    cur = l.target();
    if (l.is_identity()) continue;
    if (!out.letters.empty() && pending == Rat(0)) {
      auto fused = fuse_letters(out.letters.back(), l);
      if (fused) {
        out.letters.back() = *fused;
        continue;
      }
    }
    out.delays.push_back(pending);
    pending = Rat(0);
    out.letters.push_back(l);
  }
  if (cur != out.right) throw std::invalid_argument("incoherent idword");
  out.delays.push_back(pending);
  return out;
}

inline std::vector<IdToken> idword_tokens(const IdWord& w) {
  std::vector<IdToken> ts;
  ts.push_back(StepLetter::identity(w.left));
  for (size_t i = 0; i < w.letters.size(); ++i) {
    ts.push_back(w.delays[i]);
    ts.push_back(w.letters[i]);
  }
  ts.push_back(w.delays.back());
  ts.push_back(StepLetter::identity(w.right));
  return ts;
}

/// Partial monoid composition: defined when the inner identities match.
inline std::optional<IdWord> idword_concat(const IdWord& a, const IdWord& b) {
  if (a.right != b.left) return std::nullopt;
  auto ts = idword_tokens(a);
  auto tb = idword_tokens(b);
  ts.insert(ts.end(), tb.begin(), tb.end());
  return normalize_idword(ts);
}

inline std::string idword_key(const IdWord& w) {
  std::string k = "[" + conclist_key(w.left) + "]";
  for (size_t i = 0; i < w.letters.size(); ++i)
    k += " " + to_string(w.delays[i]) + " " + letter_key(w.letters[i]);
  k += " " + to_string(w.delays.back()) + " [" + conclist_key(w.right) + "]";
  return k;
}

/// The map tGlue: glues the letters, takes the delay total as the duration,
/// and reads each event's activity interval off the prefix sums at its first
/// and last letter.
inline Tipomset idword_to_tipomset(const IdWord& w) {
  constexpr long long kUnset = -1;
  Ipomset acc = letter_to_ipomset(StepLetter::identity(w.left));
  std::vector<Rat> start(acc.size(), Rat(0));
  std::vector<Rat> end(acc.size(), Rat(kUnset));
  Rat now(0);
  for (size_t i = 0; i < w.letters.size(); ++i) {
    now += w.delays[i];
    const auto& l = w.letters[i];
    std::vector<size_t> qmap;
    auto g = glue(acc, letter_to_ipomset(l), &qmap);
    if (!g) throw std::invalid_argument("incoherent idword");
    acc = std::move(*g);
    start.resize(acc.size(), Rat(kUnset));
    end.resize(acc.size(), Rat(kUnset));
    for (size_t j = 0; j < l.carrier.size(); ++j)
      if (l.moved[j]) {
        if (l.kind == LetterKind::Starter)
          start[qmap[j]] = now;
        else
          end[qmap[j]] = now;
      }
  }
  Rat dur = now + w.delays.back();
  for (size_t x = 0; x < acc.size(); ++x)
    if (end[x] == Rat(kUnset)) end[x] = dur;
  return make_tipomset(std::move(acc), std::move(start), std::move(end), dur);
}

namespace detail {

/// Restriction of an ipomset to the given events, with fresh interface flags.
inline Ipomset restrict_ipomset(const Ipomset& p, const std::vector<size_t>& keep,
                                const std::vector<bool>& src, const std::vector<bool>& tgt) {
  size_t n = keep.size();
  std::vector<std::string> labels(n);
  Relation prec = empty_relation(n), evord = empty_relation(n);
  for (size_t i = 0; i < n; ++i) {
    labels[i] = p.labels[keep[i]];
    for (size_t j = 0; j < n; ++j) {
      prec[i][j] = p.prec[keep[i]][keep[j]];
      evord[i][j] = p.evord[keep[i]][keep[j]];
    }
  }
  return make_ipomset(std::move(labels), std::move(prec), std::move(evord), src, tgt);
}

}  // namespace detail

/// Inverse of tGlue. Walks the distinct boundary instants of P; the events
/// alive at each instant form a sub-ipomset whose sparse decomposition gives
/// the letters there, with the gaps as delays.
inline IdWord tipomset_to_idword(const Tipomset& t) {
  std::set<Rat> instants;
  for (size_t x = 0; x < t.size(); ++x) {
    instants.insert(t.start[x]);
    instants.insert(t.end[x]);
  }
  std::vector<IdToken> tokens;
  tokens.push_back(StepLetter::identity(t.under.source_conclist()));
  Rat now(0);
  for (Rat tau : instants) {
    tokens.push_back(tau - now);
    now = tau;
    std::vector<size_t> alive;
    std::vector<bool> src, tgt;
    for (size_t x = 0; x < t.size(); ++x)
      if (t.start[x] <= tau && tau <= t.end[x]) {
        alive.push_back(x);
        src.push_back(t.start[x] < tau || t.under.source[x]);
        tgt.push_back(t.end[x] > tau || t.under.target[x]);
      }
    Ipomset slice = detail::restrict_ipomset(t.under, alive, src, tgt);
    for (const auto& l : sparse_decompose(slice).letters) tokens.push_back(l);
  }
  tokens.push_back(t.duration - now);
  tokens.push_back(StepLetter::identity(t.under.target_conclist()));
  return normalize_idword(tokens);
}

/// Delay word d0 a0 d1 ... an d_{n+1} in normal form.
struct DelayWord {
  std::vector<std::string> symbols;
  std::vector<Rat> delays;  // symbols.size() + 1 entries

  bool operator==(const DelayWord&) const = default;
};

/// Timed word: timestamped symbols plus a total duration.
struct TimedWord {
  std::vector<std::pair<std::string, Rat>> events;
  Rat duration = Rat(0);

  bool operator==(const TimedWord&) const = default;
};

inline TimedWord delay_to_timed(const DelayWord& w) {
  TimedWord out;
  Rat now(0);
  for (size_t i = 0; i < w.symbols.size(); ++i) {
    now += w.delays[i];
    out.events.emplace_back(w.symbols[i], now);
  }
  out.duration = now + w.delays.back();
  return out;
}

inline DelayWord timed_to_delay(const TimedWord& w) {
  DelayWord out;
  Rat prev(0);
  for (const auto& [a, t] : w.events) {
    if (t < prev) throw std::invalid_argument("timestamps not monotone");
    out.symbols.push_back(a);
    out.delays.push_back(t - prev);
    prev = t;
  }
  if (w.duration < prev) throw std::invalid_argument("duration before last timestamp");
  out.delays.push_back(w.duration - prev);
  return out;
}

/// i1: each symbol becomes an instantaneous start/end pair.
inline IdWord embed_delay_word(const DelayWord& w) {
  std::vector<IdToken> tokens;
  tokens.push_back(StepLetter::identity(Conclist{}));
  for (size_t i = 0; i < w.symbols.size(); ++i) {
    tokens.push_back(w.delays[i]);
    Conclist c({w.symbols[i]});
    tokens.push_back(StepLetter(c, LetterKind::Starter, {true}));
    tokens.push_back(Rat(0));
    tokens.push_back(StepLetter(c, LetterKind::Terminator, {true}));
  }
  tokens.push_back(w.delays.back());
  tokens.push_back(StepLetter::identity(Conclist{}));
  return normalize_idword(tokens);
}

/// i2: a step sequence is an idword with all delays zero.
inline IdWord embed_step_sequence(const StepSequence& s) {
  std::vector<IdToken> tokens;
  tokens.push_back(StepLetter::identity(s.left));
  for (const auto& l : s.letters) tokens.push_back(l);
  tokens.push_back(StepLetter::identity(s.right));
  return normalize_idword(tokens);
}

/// i3: sequential instantaneous events.
inline Tipomset embed_timed_word(const TimedWord& w) {
  size_t n = w.events.size();
  std::vector<std::string> labels(n);
  std::vector<Rat> start(n), end(n);
  Relation prec = empty_relation(n);
  for (size_t i = 0; i < n; ++i) {
    labels[i] = w.events[i].first;
    start[i] = end[i] = w.events[i].second;
    for (size_t j = i + 1; j < n; ++j) prec[i][j] = true;
  }
  Ipomset p = make_ipomset(std::move(labels), std::move(prec), empty_relation(n),
                           std::vector<bool>(n, false), std::vector<bool>(n, false));
  return make_tipomset(std::move(p), std::move(start), std::move(end), w.duration);
}

/// i4: everything instantaneous at time zero.
inline Tipomset embed_ipomset(const Ipomset& p) {
  size_t n = p.size();
  return make_tipomset(p, std::vector<Rat>(n, Rat(0)), std::vector<Rat>(n, Rat(0)), Rat(0));
}

}  // namespace hdta
