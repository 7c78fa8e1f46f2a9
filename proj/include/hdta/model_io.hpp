#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdta/model.hpp"

namespace hdta {

namespace detail {

/// Whitespace tokenizer with double-quoted tokens (which may be empty).
inline std::vector<std::string> tokenize_line(const std::string& line) {
  std::vector<std::string> out;
  size_t i = 0, n = line.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= n || line[i] == '#') break;
    if (line[i] == '"') {
      size_t j = line.find('"', i + 1);
      if (j == std::string::npos) throw std::invalid_argument("unterminated quote: " + line);
      out.push_back(line.substr(i + 1, j - i - 1));
      i = j + 1;
    } else {
      size_t j = i;
      while (j < n && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

inline Conclist parse_events(const std::string& s) {
  Conclist c;
  if (s.empty()) return c;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '<')) {
    // trim
    size_t a = part.find_first_not_of(" \t");
    size_t b = part.find_last_not_of(" \t");
    if (a == std::string::npos) throw std::invalid_argument("empty event in: " + s);
    c.labels.push_back(part.substr(a, b - a + 1));
  }
  return c;
}

inline std::set<std::string> parse_clock_set(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string w;
  while (ss >> w) out.insert(w);
  return out;
}

/// Event token `a` or `a#k` resolved to a position in the conclist.
inline size_t resolve_event(const Conclist& c, const std::string& tok) {
  std::string label = tok;
  long long want = -1;
  if (auto h = tok.find('#'); h != std::string::npos) {
    label = tok.substr(0, h);
    want = std::stoll(tok.substr(h + 1));
  }
  std::vector<size_t> hits;
  for (size_t i = 0; i < c.size(); ++i)
    if (c.labels[i] == label) hits.push_back(i);
  if (hits.empty()) throw std::invalid_argument("event " + tok + " not in cell");
  if (want >= 0) {
    if (static_cast<size_t>(want) >= c.size() || c.labels[want] != label)
      throw std::invalid_argument("event " + tok + " does not name a position");
    return static_cast<size_t>(want);
  }
  if (hits.size() > 1) throw std::invalid_argument("event " + tok + " ambiguous; use label#pos");
  return hits[0];
}

struct RawFace {
  std::string cell, dir, event, target;
};

}  // namespace detail

inline HDTA parse_hdta(std::istream& in) {
  HDTA A;
  std::vector<detail::RawFace> rawFaces;
  std::vector<std::string> inits, accepts;
  std::string line;
  bool headed = false;
  while (std::getline(in, line)) {
    auto t = detail::tokenize_line(line);
    if (t.empty()) continue;
    if (t[0] == "hdta") {
      A.name = t.size() > 1 ? t[1] : "";
      headed = true;
    } else if (t[0] == "alphabet") {
      for (size_t i = 1; i < t.size(); ++i) A.alphabet.insert(t[i]);
    } else if (t[0] == "clocks") {
      for (size_t i = 1; i < t.size(); ++i) A.clocks.insert(t[i]);
    } else if (t[0] == "cell") {
      if (t.size() != 8 || t[2] != "events" || t[4] != "inv" || t[6] != "exit")
        throw std::invalid_argument("bad cell line: " + line);
      A.X.names.push_back(t[1]);
      A.X.ev.push_back(detail::parse_events(t[3]));
      A.X.faces.emplace_back();
      A.inv.push_back(parse_constraint(t[5]));
      A.exit.push_back(detail::parse_clock_set(t[7]));
    } else if (t[0] == "face") {
      if (t.size() != 5) throw std::invalid_argument("bad face line: " + line);
      rawFaces.push_back({t[1], t[2], t[3], t[4]});
    } else if (t[0] == "init") {
      for (size_t i = 1; i < t.size(); ++i) inits.push_back(t[i]);
    } else if (t[0] == "accept") {
      for (size_t i = 1; i < t.size(); ++i) accepts.push_back(t[i]);
    } else {
      throw std::invalid_argument("unknown directive: " + t[0]);
    }
  }
  if (!headed) throw std::invalid_argument("missing hdta header");
  for (const auto& f : rawFaces) {
    auto x = A.X.find_cell(f.cell);
    auto y = A.X.find_cell(f.target);
    if (!x || !y) throw std::invalid_argument("face references unknown cell");
    if (f.dir != "lower" && f.dir != "upper")
      throw std::invalid_argument("face direction must be lower/upper");
    size_t pos = detail::resolve_event(A.X.ev[*x], f.event);
    A.X.faces[*x][{f.dir == "lower" ? 0 : 1, pos}] = *y;
  }
  for (const auto& n : inits) {
    auto x = A.X.find_cell(n);
    if (!x) throw std::invalid_argument("unknown init cell " + n);
    A.start.insert(*x);
  }
  for (const auto& n : accepts) {
    auto x = A.X.find_cell(n);
    if (!x) throw std::invalid_argument("unknown accept cell " + n);
    A.accept.insert(*x);
  }
  return A;
}

inline HDA parse_hda(std::istream& in) {
  // same grammar minus clocks/inv/exit
  HDA A;
  std::vector<detail::RawFace> rawFaces;
  std::string line;
  bool headed = false;
  while (std::getline(in, line)) {
    auto t = detail::tokenize_line(line);
    if (t.empty()) continue;
    if (t[0] == "hda") {
      A.name = t.size() > 1 ? t[1] : "";
      headed = true;
    } else if (t[0] == "alphabet") {
      for (size_t i = 1; i < t.size(); ++i) A.alphabet.insert(t[i]);
    } else if (t[0] == "cell") {
      if (t.size() != 4 || t[2] != "events")
        throw std::invalid_argument("bad cell line: " + line);
      A.X.names.push_back(t[1]);
      A.X.ev.push_back(detail::parse_events(t[3]));
      A.X.faces.emplace_back();
    } else if (t[0] == "face") {
      if (t.size() != 5) throw std::invalid_argument("bad face line: " + line);
      rawFaces.push_back({t[1], t[2], t[3], t[4]});
    } else if (t[0] == "init") {
      for (size_t i = 1; i < t.size(); ++i) {
        auto x = A.X.find_cell(t[i]);
        if (!x) throw std::invalid_argument("unknown init cell " + t[i]);
        A.start.insert(*x);
      }
    } else if (t[0] == "accept") {
      for (size_t i = 1; i < t.size(); ++i) {
        auto x = A.X.find_cell(t[i]);
        if (!x) throw std::invalid_argument("unknown accept cell " + t[i]);
        A.accept.insert(*x);
      }
    } else {
      throw std::invalid_argument("unknown directive: " + t[0]);
    }
  }
  if (!headed) throw std::invalid_argument("missing hda header");
  for (const auto& f : rawFaces) {
    auto x = A.X.find_cell(f.cell);
    auto y = A.X.find_cell(f.target);
    if (!x || !y) throw std::invalid_argument("face references unknown cell");
    size_t pos = detail::resolve_event(A.X.ev[*x], f.event);
    A.X.faces[*x][{f.dir == "lower" ? 0 : 1, pos}] = *y;
  }
  return A;
}

inline TimedAutomaton parse_ta(std::istream& in) {
  TimedAutomaton A;
  struct RawEdge {
    std::string src, guard, label, resets, dst;
  };
  std::vector<RawEdge> rawEdges;
  std::vector<std::string> inits, accepts;
  std::string line;
  bool headed = false;
  while (std::getline(in, line)) {
    auto t = detail::tokenize_line(line);
    if (t.empty()) continue;
    if (t[0] == "ta") {
      A.name = t.size() > 1 ? t[1] : "";
      headed = true;
    } else if (t[0] == "alphabet") {
      for (size_t i = 1; i < t.size(); ++i) A.alphabet.insert(t[i]);
    } else if (t[0] == "clocks") {
      for (size_t i = 1; i < t.size(); ++i) A.clocks.insert(t[i]);
    } else if (t[0] == "location") {
      if (t.size() != 4 || t[2] != "inv")
        throw std::invalid_argument("bad location line: " + line);
      A.locations.push_back(t[1]);
      A.inv.push_back(parse_constraint(t[3]));
    } else if (t[0] == "edge") {
      if (t.size() != 6) throw std::invalid_argument("bad edge line: " + line);
      rawEdges.push_back({t[1], t[2], t[3], t[4], t[5]});
    } else if (t[0] == "init") {
      for (size_t i = 1; i < t.size(); ++i) inits.push_back(t[i]);
    } else if (t[0] == "accept") {
      for (size_t i = 1; i < t.size(); ++i) accepts.push_back(t[i]);
    } else {
      throw std::invalid_argument("unknown directive: " + t[0]);
    }
  }
  if (!headed) throw std::invalid_argument("missing ta header");
  for (const auto& e : rawEdges) {
    auto s = A.find_location(e.src);
    auto d = A.find_location(e.dst);
    if (!s || !d) throw std::invalid_argument("edge references unknown location");
    A.edges.push_back({*s, parse_constraint(e.guard), e.label,
                       detail::parse_clock_set(e.resets), *d});
  }
  for (const auto& n : inits) {
    auto x = A.find_location(n);
    if (!x) throw std::invalid_argument("unknown init location " + n);
    A.start.insert(*x);
  }
  for (const auto& n : accepts) {
    auto x = A.find_location(n);
    if (!x) throw std::invalid_argument("unknown accept location " + n);
    A.accept.insert(*x);
  }
  return A;
}

namespace detail {

inline std::string events_str(const Conclist& c) {
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += "<";
    s += c.labels[i];
  }
  return s;
}

inline std::string join_set(const std::set<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty()) s += " ";
    s += x;
  }
  return s;
}

/// Face event token, disambiguated by position when labels repeat.
inline std::string event_token(const Conclist& c, size_t pos) {
  size_t count = 0;
  for (const auto& l : c.labels)
    if (l == c.labels[pos]) ++count;
  if (count == 1) return c.labels[pos];
  return c.labels[pos] + "#" + std::to_string(pos);
}

}  // namespace detail

inline void write_hdta(std::ostream& out, const HDTA& A) {
  out << "hdta " << A.name << "\n";
  out << "alphabet " << detail::join_set(A.alphabet) << "\n";
  out << "clocks " << detail::join_set(A.clocks) << "\n";
  for (size_t x = 0; x < A.X.size(); ++x)
    out << "cell " << A.X.names[x] << " events \"" << detail::events_str(A.X.ev[x]) << "\" inv \""
        << constraint_str(A.inv[x]) << "\" exit \"" << detail::join_set(A.exit[x]) << "\"\n";
  for (size_t x = 0; x < A.X.size(); ++x)
    for (const auto& [key, y] : A.X.faces[x])
      out << "face " << A.X.names[x] << " " << (key.first == 0 ? "lower" : "upper") << " \""
          << detail::event_token(A.X.ev[x], key.second) << "\" " << A.X.names[y] << "\n";
  for (size_t s : A.start) out << "init " << A.X.names[s] << "\n";
  for (size_t s : A.accept) out << "accept " << A.X.names[s] << "\n";
}

inline HDTA load_hdta(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return parse_hdta(f);
}

inline HDA load_hda(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return parse_hda(f);
}

inline TimedAutomaton load_ta(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return parse_ta(f);
}

}  // namespace hdta
