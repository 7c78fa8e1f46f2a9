#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hdta/clocks.hpp"
#include "hdta/conclist.hpp"

namespace hdta {

enum class FaceDir { Lower, Upper };

/// Precubical set. Cells are dense indices; only singleton (generator) faces
/// are stored, composites are derived on demand via the precubical identity.
struct PrecubicalSet {
  std::vector<std::string> names;
  std::vector<Conclist> ev;
  // per cell: (direction, event position) -> target cell
  std::vector<std::map<std::pair<int, size_t>, size_t>> faces;

  size_t size() const { return names.size(); }

  size_t dim() const {
    size_t d = 0;
    for (const auto& c : ev) d = std::max(d, c.size());
    return d;
  }

  std::optional<size_t> find_cell(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }

  std::optional<size_t> face(size_t x, FaceDir v, size_t pos) const {
    auto it = faces[x].find({static_cast<int>(v), pos});
    if (it == faces[x].end()) return std::nullopt;
    return it->second;
  }

  /// Composite face for a position subset, applied highest position first so
  /// lower positions stay stable.
  std::optional<size_t> face_subset(size_t x, FaceDir v, uint32_t mask) const {
    size_t cur = x;
    for (size_t p = ev[x].size(); p-- > 0;)
      if (mask & (1u << p)) {
        auto f = face(cur, v, p);
        if (!f) return std::nullopt;
        cur = *f;
      }
    return cur;
  }
};

inline Conclist erase_position(const Conclist& c, size_t pos) {
  Conclist out;
  for (size_t i = 0; i < c.size(); ++i)
    if (i != pos) out.labels.push_back(c.labels[i]);
  return out;
}

inline std::vector<std::string> precubical_violations(const PrecubicalSet& X) {
  std::vector<std::string> bad;
  for (size_t x = 0; x < X.size(); ++x) {
    size_t n = X.ev[x].size();
    for (size_t p = 0; p < n; ++p)
      for (int v = 0; v < 2; ++v) {
        auto f = X.face(x, static_cast<FaceDir>(v), p);
        if (!f) {
          bad.push_back("cell " + X.names[x] + " misses " +
                        (v == 0 ? std::string("lower") : std::string("upper")) + " face at " +
                        X.ev[x].labels[p] + "#" + std::to_string(p));
          continue;
        }
        if (X.ev[*f] != erase_position(X.ev[x], p))
          bad.push_back("face of " + X.names[x] + " at position " + std::to_string(p) +
                        " has wrong conclist " + conclist_key(X.ev[*f]));
      }
    // precubical identity on generator pairs p < q: dropping q then p must
    // agree with dropping p then the shifted q, in all direction combinations
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q)
        for (int v = 0; v < 2; ++v)
          for (int u = 0; u < 2; ++u) {
            auto a1 = X.face(x, static_cast<FaceDir>(u), q);
            auto b1 = X.face(x, static_cast<FaceDir>(v), p);
            if (!a1 || !b1) continue;
            auto a2 = X.face(*a1, static_cast<FaceDir>(v), p);
            auto b2 = X.face(*b1, static_cast<FaceDir>(u), q - 1);
            if (a2 && b2 && *a2 != *b2)
              bad.push_back("precubical identity fails at " + X.names[x] + " positions " +
                            std::to_string(p) + "," + std::to_string(q) + " dirs " +
                            std::to_string(v) + std::to_string(u));
          }
  }
  return bad;
}

struct HDA {
  std::string name;
  std::set<std::string> alphabet;
  PrecubicalSet X;
  std::set<size_t> start, accept;
};

struct HDTA {
  std::string name;
  std::set<std::string> alphabet;
  PrecubicalSet X;
  std::set<size_t> start, accept;
  std::set<std::string> clocks;
  std::vector<ClockConstraint> inv;         // per cell
  std::vector<std::set<std::string>> exit;  // per cell

  long long max_constant() const {
    long long m = 0;
    for (const auto& phi : inv) m = std::max(m, phi.max_bound());
    return m;
  }
};

struct TimedAutomaton {
  std::string name;
  std::set<std::string> alphabet;
  std::set<std::string> clocks;
  std::vector<std::string> locations;
  std::vector<ClockConstraint> inv;  // per location
  std::set<size_t> start, accept;
  struct Edge {
    size_t src;
    ClockConstraint guard;
    std::string label;
    std::set<std::string> resets;
    size_t dst;
  };
  std::vector<Edge> edges;

  std::optional<size_t> find_location(const std::string& n) const {
    for (size_t i = 0; i < locations.size(); ++i)
      if (locations[i] == n) return i;
    return std::nullopt;
  }
};

inline std::vector<std::string> validate(const HDTA& A) {
  auto bad = precubical_violations(A.X);
  if (A.inv.size() != A.X.size() || A.exit.size() != A.X.size())
    bad.push_back("invariant/exit maps not total on cells");
  for (size_t s : A.start)
    if (s >= A.X.size()) bad.push_back("start cell out of range");
  for (size_t s : A.accept)
    if (s >= A.X.size()) bad.push_back("accept cell out of range");
  for (const auto& phi : A.inv)
    for (const auto& c : phi.conjuncts)
      if (!A.clocks.count(c.clock)) bad.push_back("invariant uses unknown clock " + c.clock);
  for (const auto& e : A.exit)
    for (const auto& c : e)
      if (!A.clocks.count(c)) bad.push_back("exit set uses unknown clock " + c);
  return bad;
}

inline std::vector<std::string> validate(const HDA& A) {
  auto bad = precubical_violations(A.X);
  for (size_t s : A.start)
    if (s >= A.X.size()) bad.push_back("start cell out of range");
  for (size_t s : A.accept)
    if (s >= A.X.size()) bad.push_back("accept cell out of range");
  return bad;
}

/// Untimed HDA viewed as an HDTA with no clocks; all sojourns allowed, all
/// delays inert.
inline HDTA hda_as_hdta(const HDA& A) {
  HDTA B;
  B.name = A.name;
  B.alphabet = A.alphabet;
  B.X = A.X;
  B.start = A.start;
  B.accept = A.accept;
  B.inv.assign(A.X.size(), ClockConstraint::top());
  B.exit.assign(A.X.size(), {});
  return B;
}

/// The map H: locations and edges become 0- and 1-cells; a fresh clock cT,
/// reset on leaving any location and forced to 0 on edge cells, makes action
/// sojourn instantaneous.
inline HDTA translate_ta(const TimedAutomaton& A) {
  HDTA B;
  B.name = A.name;
  B.alphabet = A.alphabet;
  B.clocks = A.clocks;
  std::string cT = "cT";
  while (B.clocks.count(cT)) cT += "_";
  B.clocks.insert(cT);

  for (size_t q = 0; q < A.locations.size(); ++q) {
    B.X.names.push_back(A.locations[q]);
    B.X.ev.push_back(Conclist{});
    B.X.faces.emplace_back();
    B.inv.push_back(A.inv[q]);
    B.exit.push_back({cT});
  }
  for (size_t i = 0; i < A.edges.size(); ++i) {
    const auto& e = A.edges[i];
    size_t cell = B.X.size();
    B.X.names.push_back("edge" + std::to_string(i));
    B.X.ev.push_back(Conclist({e.label}));
    B.X.faces.emplace_back();
    B.X.faces[cell][{static_cast<int>(FaceDir::Lower), 0}] = e.src;
    B.X.faces[cell][{static_cast<int>(FaceDir::Upper), 0}] = e.dst;
    ClockConstraint phi = e.guard;
    phi.conjuncts.push_back({cT, Rel::Le, 0});
    B.inv.push_back(std::move(phi));
    B.exit.push_back(e.resets);
  }
  B.start = A.start;
  B.accept = A.accept;
  return B;
}

}  // namespace hdta
