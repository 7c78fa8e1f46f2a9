#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdta/idword.hpp"
#include "hdta/ipomset.hpp"
#include "hdta/tipomset.hpp"

namespace hdta {

namespace detail {

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(trim(part));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

inline Conclist parse_conclist_text(const std::string& s) {
  Conclist c;
  for (const auto& l : split(s, '<'))
    if (!l.empty()) c.labels.push_back(l);
  return c;
}

inline std::string conclist_text(const Conclist& c) {
  std::string s;
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) s += "<";
    s += c.labels[i];
  }
  return s;
}

/// `a` or `a#pos` against a conclist.
inline size_t resolve_label(const Conclist& c, const std::string& tok) {
  std::string label = tok;
  long long pos = -1;
  if (auto h = tok.find('#'); h != std::string::npos) {
    label = tok.substr(0, h);
    pos = std::stoll(tok.substr(h + 1));
  }
  if (pos >= 0) {
    if (static_cast<size_t>(pos) >= c.size() || c.labels[pos] != label)
      throw std::invalid_argument("no event " + tok);
    return static_cast<size_t>(pos);
  }
  size_t hit = c.size();
  for (size_t i = 0; i < c.size(); ++i)
    if (c.labels[i] == label) {
      if (hit != c.size()) throw std::invalid_argument("ambiguous event " + tok + "; use #pos");
      hit = i;
    }
  if (hit == c.size()) throw std::invalid_argument("no event " + tok);
  return hit;
}

}  // namespace detail

/// `id{a<b}` | `start{a<b}` | `term{a<b}` | `starter{carrier: a<b; start: b}`
/// | `term{carrier: a<b; end: a}`.
inline StepLetter parse_letter(const std::string& text) {
  auto open = text.find('{');
  auto close = text.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("bad letter: " + text);
  std::string head = detail::trim(text.substr(0, open));
  std::string body = text.substr(open + 1, close - open - 1);
  if (head == "id") return StepLetter::identity(detail::parse_conclist_text(body));
  bool starter = head == "start" || head == "starter";
  if (!starter && head != "term" && head != "end")
    throw std::invalid_argument("bad letter kind: " + head);
  LetterKind kind = starter ? LetterKind::Starter : LetterKind::Terminator;
  if (body.find(':') == std::string::npos) {
    Conclist c = detail::parse_conclist_text(body);
    return StepLetter(c, kind, std::vector<bool>(c.size(), true));
  }
  Conclist carrier;
  std::vector<std::string> movedToks;
  for (const auto& field : detail::split(body, ';')) {
    auto colon = field.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad letter field: " + field);
    std::string key = detail::trim(field.substr(0, colon));
    std::string val = field.substr(colon + 1);
    if (key == "carrier")
      carrier = detail::parse_conclist_text(val);
    else if (key == "start" || key == "end" || key == "term")
      for (const auto& t : detail::split(val, ','))
        if (!t.empty()) movedToks.push_back(t);
    else
      throw std::invalid_argument("bad letter field: " + key);
  }
  std::vector<bool> moved(carrier.size(), false);
  for (const auto& t : movedToks) moved[detail::resolve_label(carrier, t)] = true;
  return StepLetter(std::move(carrier), kind, std::move(moved));
}

inline std::string letter_str(const StepLetter& l) {
  if (l.is_identity()) return "id{" + detail::conclist_text(l.carrier) + "}";
  std::string kind = l.kind == LetterKind::Starter ? "start" : "term";
  if (l.moved_count() == l.carrier.size()) return kind + "{" + detail::conclist_text(l.carrier) + "}";
  std::string head = l.kind == LetterKind::Starter ? "starter" : "term";
  std::string moved;
  for (size_t i = 0; i < l.carrier.size(); ++i)
    if (l.moved[i]) {
      if (!moved.empty()) moved += ", ";
      size_t dup = 0;
      for (const auto& x : l.carrier.labels)
        if (x == l.carrier.labels[i]) ++dup;
      moved += dup > 1 ? l.carrier.labels[i] + "#" + std::to_string(i) : l.carrier.labels[i];
    }
  return head + "{carrier: " + detail::conclist_text(l.carrier) + "; " +
         (l.kind == LetterKind::Starter ? "start" : "end") + ": " + moved + "}";
}

namespace detail {

struct NamedEvents {
  std::vector<std::string> names;

  size_t index_of(const std::string& n) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return i;
    throw std::invalid_argument("unknown event " + n);
  }
};

struct RecordFields {
  std::map<std::string, std::string> fields;
  std::vector<std::string> order;
};

inline RecordFields parse_record(const std::string& text) {
  auto open = text.find('{');
  auto close = text.rfind('}');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw std::invalid_argument("bad record: " + text);
  RecordFields r;
  for (const auto& field : split(text.substr(open + 1, close - open - 1), ';')) {
    if (field.empty()) continue;
    auto colon = field.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad field: " + field);
    std::string key = trim(field.substr(0, colon));
    r.fields[key] = trim(field.substr(colon + 1));
    r.order.push_back(key);
  }
  return r;
}

inline void parse_pairs(const std::string& val, const NamedEvents& ev, Relation& rel) {
  for (const auto& pair : split(val, ',')) {
    if (pair.empty()) continue;
    auto lt = pair.find('<');
    if (lt == std::string::npos) throw std::invalid_argument("bad pair: " + pair);
    rel[ev.index_of(trim(pair.substr(0, lt)))][ev.index_of(trim(pair.substr(lt + 1)))] = true;
  }
}

}  // namespace detail

/// `{events: x1:a, x2:b; prec: x1<x2; evord: ; S: x1; T: x2}`
inline Ipomset parse_ipomset(const std::string& text) {
  auto r = detail::parse_record(text);
  detail::NamedEvents ev;
  std::vector<std::string> labels;
  for (const auto& e : detail::split(r.fields["events"], ',')) {
    if (e.empty()) continue;
    auto colon = e.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad event: " + e);
    ev.names.push_back(detail::trim(e.substr(0, colon)));
    labels.push_back(detail::trim(e.substr(colon + 1)));
  }
  size_t n = labels.size();
  Relation prec = empty_relation(n), evord = empty_relation(n);
  detail::parse_pairs(r.fields["prec"], ev, prec);
  detail::parse_pairs(r.fields["evord"], ev, evord);
  transitive_close(prec);
  transitive_close(evord);
  std::vector<bool> source(n, false), target(n, false);
  for (const auto& x : detail::split(r.fields["S"], ','))
    if (!x.empty()) source[ev.index_of(x)] = true;
  for (const auto& x : detail::split(r.fields["T"], ','))
    if (!x.empty()) target[ev.index_of(x)] = true;
  return make_ipomset(std::move(labels), std::move(prec), std::move(evord), std::move(source),
                      std::move(target));
}

namespace detail {

inline std::string pairs_str(const Relation& rel, const std::vector<std::string>& names) {
  std::string s;
  for (size_t i = 0; i < rel.size(); ++i)
    for (size_t j = 0; j < rel.size(); ++j)
      if (rel[i][j]) {
        if (!s.empty()) s += ", ";
        s += names[i] + "<" + names[j];
      }
  return s;
}

inline std::vector<std::string> event_names(size_t n) {
  std::vector<std::string> names;
  for (size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

}  // namespace detail

inline std::string ipomset_str(const Ipomset& p) {
  auto names = detail::event_names(p.size());
  std::string ev;
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) ev += ", ";
    ev += names[i] + ":" + p.labels[i];
  }
  std::string s, t;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p.source[i]) s += (s.empty() ? "" : ", ") + names[i];
    if (p.target[i]) t += (t.empty() ? "" : ", ") + names[i];
  }
  return "{events: " + ev + "; prec: " + detail::pairs_str(p.prec, names) +
         "; evord: " + detail::pairs_str(p.evord, names) + "; S: " + s + "; T: " + t + "}";
}

/// Same record with timed events `x1:a:[0,5]` and a `dur` field.
inline Tipomset parse_tipomset(const std::string& text) {
  auto r = detail::parse_record(text);
  detail::NamedEvents ev;
  std::vector<std::string> labels;
  std::vector<Rat> start, end;
  for (const auto& e : detail::split(r.fields["events"], ',')) {
    if (e.empty()) continue;
    auto c1 = e.find(':');
    auto br = e.find('[');
    auto dots = e.find("..", br);
    auto close = e.find(']', br);
    if (c1 == std::string::npos || br == std::string::npos || close == std::string::npos ||
        dots == std::string::npos || dots > close)
      throw std::invalid_argument("bad timed event: " + e);
    ev.names.push_back(detail::trim(e.substr(0, c1)));
    auto c2 = e.find(':', c1 + 1);
    labels.push_back(detail::trim(e.substr(c1 + 1, c2 - c1 - 1)));
    start.push_back(parse_rational(detail::trim(e.substr(br + 1, dots - br - 1))));
    end.push_back(parse_rational(detail::trim(e.substr(dots + 2, close - dots - 2))));
  }
  size_t n = labels.size();
  Relation prec = empty_relation(n), evord = empty_relation(n);
  detail::parse_pairs(r.fields["prec"], ev, prec);
  detail::parse_pairs(r.fields["evord"], ev, evord);
  transitive_close(prec);
  transitive_close(evord);
  std::vector<bool> source(n, false), target(n, false);
  for (const auto& x : detail::split(r.fields["S"], ','))
    if (!x.empty()) source[ev.index_of(x)] = true;
  for (const auto& x : detail::split(r.fields["T"], ','))
    if (!x.empty()) target[ev.index_of(x)] = true;
  Ipomset p = make_ipomset(std::move(labels), std::move(prec), std::move(evord), std::move(source),
                           std::move(target));
  if (!r.fields.count("dur")) throw std::invalid_argument("tipomset misses dur");
  return make_tipomset(std::move(p), std::move(start), std::move(end),
                       parse_rational(r.fields["dur"]));
}

inline std::string tipomset_str(const Tipomset& t) {
  auto names = detail::event_names(t.size());
  std::string ev;
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) ev += ", ";
    ev += names[i] + ":" + t.under.labels[i] + ":[" + to_string(t.start[i]) + ".." +
          to_string(t.end[i]) + "]";
  }
  std::string s, tt;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t.under.source[i]) s += (s.empty() ? "" : ", ") + names[i];
    if (t.under.target[i]) tt += (tt.empty() ? "" : ", ") + names[i];
  }
  return "{events: " + ev + "; prec: " + detail::pairs_str(t.under.prec, names) +
         "; evord: " + detail::pairs_str(t.under.evord, names) + "; S: " + s + "; T: " + tt +
         "; dur: " + to_string(t.duration) + "}";
}

/// Whitespace-separated rationals and letters, brace-aware:
/// `id{} 5 start{a} 2 term{a} 5 id{}`.
inline IdWord parse_idword(const std::string& text) {
  std::vector<IdToken> tokens;
  size_t i = 0, n = text.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    size_t j = i;
    int depth = 0;
    while (j < n && (depth > 0 || !std::isspace(static_cast<unsigned char>(text[j])))) {
      if (text[j] == '{') ++depth;
      if (text[j] == '}') --depth;
      ++j;
    }
    std::string tok = text.substr(i, j - i);
    i = j;
    if (tok.find('{') != std::string::npos)
      tokens.push_back(parse_letter(tok));
    else
      tokens.push_back(parse_rational(tok));
  }
  return normalize_idword(tokens);
}

inline std::string idword_str(const IdWord& w) {
  std::string s = "id{" + detail::conclist_text(w.left) + "}";
  for (size_t i = 0; i < w.letters.size(); ++i)
    s += " " + to_string(w.delays[i]) + " " + letter_str(w.letters[i]);
  s += " " + to_string(w.delays.back()) + " id{" + detail::conclist_text(w.right) + "}";
  return s;
}

}  // namespace hdta
