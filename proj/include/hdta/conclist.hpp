#pragma once

#include <string>
#include <vector>

namespace hdta {

/// A concurrency list: finite set of labeled events carrying a strict total
/// event order. The order is the list position, so well-formedness is
/// structural.
struct Conclist {
  std::vector<std::string> labels;

  Conclist() = default;
  explicit Conclist(std::vector<std::string> ls) : labels(std::move(ls)) {}

  size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }
  bool operator==(const Conclist&) const = default;
  auto operator<=>(const Conclist&) const = default;
};

enum class LetterKind { Starter, Terminator, Identity };

/// A discrete step: a starter begins the marked events of its carrier, a
/// terminator ends them, an identity moves nothing. Carrier events are
/// identified by position.
struct StepLetter {
  Conclist carrier;
  LetterKind kind = LetterKind::Identity;
  std::vector<bool> moved;  // one flag per carrier event; all false for identity

  StepLetter() = default;
  StepLetter(Conclist c, LetterKind k, std::vector<bool> m)
      : carrier(std::move(c)), kind(k), moved(std::move(m)) {}

  static StepLetter identity(Conclist c) {
    std::vector<bool> m(c.size(), false);
    return StepLetter(std::move(c), LetterKind::Identity, std::move(m));
  }

  bool is_identity() const {
    for (bool b : moved)
      if (b) return false;
    return true;
  }

  size_t moved_count() const {
    size_t n = 0;
    for (bool b : moved)
      if (b) ++n;
    return n;
  }

  /// Conclist of events present before this step is taken.
  Conclist source() const {
    if (kind != LetterKind::Starter) return carrier;
    Conclist s;
    for (size_t i = 0; i < carrier.size(); ++i)
      if (!moved[i]) s.labels.push_back(carrier.labels[i]);
    return s;
  }

  /// Conclist of events present after this step is taken.
  Conclist target() const {
    if (kind != LetterKind::Terminator) return carrier;
    Conclist t;
    for (size_t i = 0; i < carrier.size(); ++i)
      if (!moved[i]) t.labels.push_back(carrier.labels[i]);
    return t;
  }

  bool operator==(const StepLetter& o) const {
    if (carrier != o.carrier) return false;
    if (moved != o.moved) return false;
    // identities compare equal regardless of declared kind
    if (is_identity() && o.is_identity()) return true;
    return kind == o.kind;
  }
};

/// Canonical textual key for a letter; equal keys mean isomorphic letters.
inline std::string letter_key(const StepLetter& l) {
  std::string k;
  if (l.is_identity())
    k = "I";
  else
    k = l.kind == LetterKind::Starter ? "S" : "T";
  for (size_t i = 0; i < l.carrier.size(); ++i) {
    k += '|';
    k += l.carrier.labels[i];
    if (l.moved[i]) k += '*';
  }
  return k;
}

inline std::string conclist_key(const Conclist& u) {
  std::string k;
  for (auto& s : u.labels) {
    k += '|';
    k += s;
  }
  return k;
}

}  // namespace hdta
