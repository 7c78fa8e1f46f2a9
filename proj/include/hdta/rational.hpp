#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hdta {

/// Exact rational time values. All delays, timestamps and durations use
/// these; normal forms and region checks need exact comparison.
using Rat = boost::rational<long long>;

inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ipart = s.substr(0, dot);
    std::string fpart = s.substr(dot + 1);
    if (fpart.size() > 12) throw std::invalid_argument("too many decimals: " + s);
    bool neg = !ipart.empty() && ipart[0] == '-';
    long long i = ipart.empty() || ipart == "-" ? 0 : std::stoll(ipart);
    long long den = 1;
    for (size_t k = 0; k < fpart.size(); ++k) den *= 10;
    long long f = fpart.empty() ? 0 : std::stoll(fpart);
    Rat r(std::abs(i), 1);
    r += Rat(f, den);
    return neg ? -r : r;
  }
  return Rat(std::stoll(s), 1);
}

/// Prints integers bare, finite decimal expansions as decimals, and
/// everything else as p/q. Round-trips through parse_rational.
inline std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  long long den = r.denominator();
  long long pow10 = 1;
  for (int k = 0; k < 12 && pow10 % den != 0; ++k) pow10 *= 10;
  if (pow10 % den == 0) {
    long long scaled = r.numerator() * (pow10 / den);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string digits = std::to_string(scaled);
    std::string pad(std::to_string(pow10).size() - 1, '0');
    if (digits.size() < pad.size() + 1) digits = std::string(pad.size() + 1 - digits.size(), '0') + digits;
    std::string ip = digits.substr(0, digits.size() - pad.size());
    std::string fp = digits.substr(digits.size() - pad.size());
    while (fp.size() > 1 && fp.back() == '0') fp.pop_back();
    return (neg ? "-" : "") + ip + "." + fp;
  }
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace hdta
