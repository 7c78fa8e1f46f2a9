#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "hdta/clocks.hpp"

namespace hdta {

/// Alur–Dill region over a fixed clock set. Clocks above the maximal constant
/// carry ipart -1; positive fractional parts are recorded as an ordered
/// partition (low to high) of the remaining clocks.
struct Region {
  std::vector<std::string> clocks;  // sorted
  std::vector<long long> ipart;     // per clock; -1 means "above M"
  std::vector<std::vector<size_t>> blocks;

  bool operator==(const Region&) const = default;
  auto operator<=>(const Region&) const = default;

  bool above(size_t i) const { return ipart[i] == -1; }

  bool all_above() const {
    for (long long p : ipart)
      if (p != -1) return false;
    return !ipart.empty();
  }

  std::optional<size_t> block_of(size_t i) const {
    for (size_t b = 0; b < blocks.size(); ++b)
      for (size_t j : blocks[b])
        if (j == i) return b;
    return std::nullopt;
  }
};

inline Region region_of(const Valuation& v, long long M) {
  Region r;
  for (const auto& [c, x] : v) r.clocks.push_back(c);
  std::vector<std::pair<Rat, size_t>> fracs;
  for (size_t i = 0; i < r.clocks.size(); ++i) {
    const Rat& x = v.at(r.clocks[i]);
    if (x > Rat(M)) {
      r.ipart.push_back(-1);
      continue;
    }
    long long fl = x.numerator() / x.denominator();  // x >= 0
    r.ipart.push_back(fl);
    Rat f = x - Rat(fl);
    if (f > Rat(0)) fracs.emplace_back(f, i);
  }
  std::sort(fracs.begin(), fracs.end());
  for (size_t k = 0; k < fracs.size(); ++k) {
    if (k == 0 || fracs[k].first != fracs[k - 1].first) r.blocks.emplace_back();
    r.blocks.back().push_back(fracs[k].second);
  }
  for (auto& b : r.blocks) std::sort(b.begin(), b.end());
  return r;
}

inline bool region_equivalent(const Valuation& v, const Valuation& w, long long M) {
  return region_of(v, M) == region_of(w, M);
}

/// Deterministic representative: block j of g gets fraction (j+1)/(g+1),
/// clocks above M sit at M+1.
inline Valuation representative(const Region& r, long long M) {
  Valuation v;
  size_t g = r.blocks.size();
  for (size_t i = 0; i < r.clocks.size(); ++i) {
    if (r.above(i)) {
      v[r.clocks[i]] = Rat(M + 1);
      continue;
    }
    Rat x(r.ipart[i]);
    if (auto b = r.block_of(i)) x += Rat(static_cast<long long>(*b) + 1, static_cast<long long>(g) + 1);
    v[r.clocks[i]] = x;
  }
  return v;
}

/// The elapse chain from r up to and including the all-above region; r first.
inline std::vector<Region> time_successors(const Region& r, long long M) {
  std::vector<Region> chain{r};
  while (true) {
    const Region& cur = chain.back();
    std::vector<size_t> zero;
    for (size_t i = 0; i < cur.clocks.size(); ++i)
      if (!cur.above(i) && !cur.block_of(i)) zero.push_back(i);
    if (!zero.empty()) {
      Region n = cur;
      std::vector<size_t> fresh;
      for (size_t i : zero) {
        if (cur.ipart[i] == M)
          n.ipart[i] = -1;  // leaves the bounded range immediately
        else
          fresh.push_back(i);
      }
      if (!fresh.empty()) n.blocks.insert(n.blocks.begin(), fresh);
      if (n == cur) break;
      chain.push_back(std::move(n));
      continue;
    }
    if (!cur.blocks.empty()) {
      Region n = cur;
      for (size_t i : cur.blocks.back()) n.ipart[i] += 1;
      n.blocks.pop_back();
      chain.push_back(std::move(n));
      continue;
    }
    break;  // all clocks above M: fixed point
  }
  return chain;
}

inline Region region_reset(const Region& r, const std::set<std::string>& resets, long long M) {
  return region_of(reset_valuation(representative(r, M), resets), M);
}

namespace detail {

inline void ordered_partitions(const std::vector<size_t>& xs, size_t i,
                               std::vector<std::vector<size_t>>& cur,
                               std::vector<std::vector<std::vector<size_t>>>& out) {
  if (i == xs.size()) {
    out.push_back(cur);
    return;
  }
  for (auto& b : cur) {
    b.push_back(xs[i]);
    ordered_partitions(xs, i + 1, cur, out);
    b.pop_back();
  }
  for (size_t pos = 0; pos <= cur.size(); ++pos) {
    cur.insert(cur.begin() + pos, {xs[i]});
    ordered_partitions(xs, i + 1, cur, out);
    cur.erase(cur.begin() + pos);
  }
}

}  // namespace detail

/// All regions over the given clocks. Exponential; intended for the small
/// clock sets of the models at hand.
inline std::vector<Region> enumerate_regions(const std::set<std::string>& clocks, long long M) {
  std::vector<std::string> cs(clocks.begin(), clocks.end());
  size_t n = cs.size();
  std::vector<Region> out;
  std::vector<long long> ipart(n, 0);
  // ipart value M+1 encodes "above"; positive fractions need ipart < M
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i < n) {
      for (long long p = 0; p <= M + 1; ++p) {
        ipart[i] = p;
        self(self, i + 1);
      }
      return;
    }
    std::vector<size_t> fracable;
    for (size_t k = 0; k < n; ++k)
      if (ipart[k] < M) fracable.push_back(k);
    // choose which of those actually carry a positive fraction
    for (uint32_t mask = 0; mask < (1u << fracable.size()); ++mask) {
      std::vector<size_t> frac;
      for (size_t k = 0; k < fracable.size(); ++k)
        if (mask & (1u << k)) frac.push_back(fracable[k]);
      std::vector<std::vector<std::vector<size_t>>> parts;
      std::vector<std::vector<size_t>> cur;
      detail::ordered_partitions(frac, 0, cur, parts);
      for (auto& p : parts) {
        Region r;
        r.clocks = cs;
        for (size_t k = 0; k < n; ++k) r.ipart.push_back(ipart[k] > M ? -1 : ipart[k]);
        r.blocks = p;
        for (auto& b : r.blocks) std::sort(b.begin(), b.end());
        out.push_back(std::move(r));
      }
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Regions all of whose valuations satisfy the constraint. Integer bounds
/// make constraints region-closed, so one representative decides.
inline std::vector<Region> regions_of_constraint(const ClockConstraint& phi,
                                                 const std::set<std::string>& clocks, long long M) {
  std::vector<Region> out;
  for (auto& r : enumerate_regions(clocks, M))
    if (satisfies(representative(r, M), phi)) out.push_back(r);
  return out;
}

/// Candidate delays from v that visit every region on the way to horizon:
/// the boundary-hitting delays plus midpoints, starting at zero.
inline std::vector<Rat> critical_delays(const Valuation& v, long long M, const Rat& horizon) {
  std::set<Rat> hits{Rat(0)};
  for (const auto& [c, x] : v)
    for (long long k = 0; k <= M + 1; ++k) {
      Rat d = Rat(k) - x;
      if (d > Rat(0) && d <= horizon) hits.insert(d);
    }
  hits.insert(horizon);
  std::vector<Rat> sorted(hits.begin(), hits.end());
  std::vector<Rat> out;
  for (size_t i = 0; i < sorted.size(); ++i) {
    out.push_back(sorted[i]);
    if (i + 1 < sorted.size()) out.push_back((sorted[i] + sorted[i + 1]) / 2);
  }
  return out;
}

}  // namespace hdta
